//! Closed forms for the deterministic (mean-field) epidemic.
//!
//! The scaled process `X_N(t)/N` tracks the solution of
//!
//! ```text
//! dx/dt = lambda * x * (1 - x) + epsilon * (1 - x) - mu * x
//! ```
//!
//! which, centred at the stable fixed point `x_star` (write
//! `y = x - x_star`), is the Riccati equation `dy/dt = -lambda y^2 - J y`.
//! Everything here is in closed form: the solution itself, an exponential
//! envelope for the distance to the fixed point, and the pair of
//! mean-envelope solutions obtained when the drift is perturbed by a
//! constant (the perturbation that a variance term of size
//! `delta (2J - delta) / (4 lambda)` induces).

use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};

/// Solution of the epidemic ODE started from proportion `alpha` in `[0, 1]`,
/// evaluated at time `t >= 0`:
///
/// ```text
/// x(t) = x_star + (J/lambda)(alpha - x_star)
///                 / ((alpha - x1_star) e^{tJ} - (alpha - x_star))
/// ```
///
/// The correction is evaluated with `e^{-tJ}` factored out, so large `t`
/// cannot overflow; once the correction underflows the fixed point is
/// returned exactly.
pub fn ode_solution(params: &ModelParams, alpha: f64, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!(
            "initial proportion alpha must lie in [0,1], got {alpha}"
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    let d = params.derived();
    let decay = (-t * d.j).exp();
    if decay == 0.0 {
        return Ok(d.x_star);
    }
    // denominator >= (alpha - x1_star) - (alpha - x_star) = J/lambda > 0
    let denom = (alpha - d.x1_star) - (alpha - d.x_star) * decay;
    let correction = (d.j / params.lambda()) * (alpha - d.x_star) * decay / denom;
    Ok(d.x_star + correction)
}

/// Exponential envelope for the centred solution:
/// `|x(t) - x_star| <= 2J / (J - (lambda - mu - epsilon)) * |y0| e^{-tJ}`,
/// where `y0 = x(0) - x_star` must lie in the viable range
/// `[-x_star, 1 - x_star]`.
pub fn decay_bound(params: &ModelParams, y0: f64, t: f64) -> Result<f64> {
    let d = params.derived();
    if !(-d.x_star..=1.0 - d.x_star).contains(&y0) {
        return Err(Error::Domain(format!(
            "centred proportion {y0} outside viable range [{}, {}]",
            -d.x_star,
            1.0 - d.x_star
        )));
    }
    let a = params.lambda() - params.mu() - params.epsilon();
    Ok(2.0 * d.j / (d.j - a) * y0.abs() * (-t * d.j).exp())
}

/// Constants of the perturbed centred ODE
/// `dz/dt = -lambda z^2 - J z - delta (2J - delta) / (4 lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeParams {
    /// Perturbation rate, `0 <= delta < J`.
    pub delta: f64,
    /// `J - delta`, the perturbed decay rate.
    pub c1: f64,
    /// `-delta / (2 lambda)`, the perturbed stable fixed point.
    pub c2: f64,
    /// `-J/lambda + delta / (2 lambda)`, the other fixed point; also the
    /// lower edge of the viable initial range.
    pub c3: f64,
}

impl EnvelopeParams {
    /// Validates `0 <= delta < J` and derives the constants.
    pub fn new(params: &ModelParams, delta: f64) -> Result<Self> {
        let d = params.derived();
        if !(delta >= 0.0) || delta >= d.j {
            return Err(Error::Domain(format!(
                "perturbation delta must satisfy 0 <= delta < J = {}, got {delta}",
                d.j
            )));
        }
        let lambda = params.lambda();
        Ok(Self {
            delta,
            c1: d.j - delta,
            c2: -delta / (2.0 * lambda),
            c3: -d.j / lambda + delta / (2.0 * lambda),
        })
    }
}

/// Lower and upper mean envelopes at one time point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanEnvelope {
    /// Solution of the perturbed equation (drift lowered by
    /// `delta (2J - delta) / (4 lambda)`); bounds the centred mean from
    /// below.
    pub lower: f64,
    /// Unperturbed solution (`delta = 0`); bounds it from above.
    pub upper: f64,
}

// z(t) = c2 + (c1/lambda)(y0 - c2) e^{-Jt}
//             / ((y0 - c3) e^{-delta t} - (y0 - c2) e^{-Jt})
// For viable y0 (> c3) the denominator is strictly positive for all t.
fn envelope_eval(lambda: f64, j: f64, env: &EnvelopeParams, y0: f64, t: f64) -> f64 {
    let fast = (-t * j).exp();
    if fast == 0.0 {
        return env.c2;
    }
    let slow = (-t * env.delta).exp();
    let num = (env.c1 / lambda) * (y0 - env.c2) * fast;
    let denom = (y0 - env.c3) * slow - (y0 - env.c2) * fast;
    env.c2 + num / denom
}

/// Evaluates both mean envelopes at time `t` for the centred start `y0`.
///
/// Requires `0 <= delta < J` and `y0 > -(2J - delta) / (2 lambda)` (starts
/// at or below the unstable root are not biologically viable). With
/// `delta = 0` the two branches coincide.
pub fn mean_envelope(params: &ModelParams, y0: f64, delta: f64, t: f64) -> Result<MeanEnvelope> {
    let env = EnvelopeParams::new(params, delta)?;
    if y0 <= env.c3 {
        return Err(Error::Domain(format!(
            "centred start {y0} not viable: must exceed -(2J - delta)/(2 lambda) = {}",
            env.c3
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    let lambda = params.lambda();
    let j = params.derived().j;
    let unperturbed = EnvelopeParams::new(params, 0.0)?;
    Ok(MeanEnvelope {
        lower: envelope_eval(lambda, j, &env, y0, t),
        upper: envelope_eval(lambda, j, &unperturbed, y0, t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 2.0, 0.5, 1000).unwrap()
    }

    #[test]
    fn fixed_point_is_stationary() {
        let p = params();
        let xs = p.derived().x_star;
        for t in [0.0, 0.3, 2.0, 50.0, 1e6] {
            assert!((ode_solution(&p, xs, t).unwrap() - xs).abs() < 1e-15);
        }
    }

    #[test]
    fn initial_condition_recovered_at_t0() {
        let p = params();
        for alpha in [0.0, 0.1, 0.5, 0.9, 1.0] {
            assert!((ode_solution(&p, alpha, 0.0).unwrap() - alpha).abs() < 1e-14);
        }
    }

    #[test]
    fn stays_in_unit_interval_and_is_monotone() {
        let p = params();
        let xs = p.derived().x_star;
        for alpha in [0.0, 0.05, 0.7, 1.0] {
            let mut prev = alpha;
            for i in 1..200 {
                let t = i as f64 * 0.05;
                let x = ode_solution(&p, alpha, t).unwrap();
                assert!((0.0..=1.0).contains(&x));
                if alpha < xs {
                    assert!(x >= prev, "should increase toward x_star");
                } else {
                    assert!(x <= prev, "should decrease toward x_star");
                }
                prev = x;
            }
        }
    }

    #[test]
    fn long_time_limit_is_exact_fixed_point() {
        let p = params();
        let xs = p.derived().x_star;
        // exp(-tJ) underflows far before t = 1e6.
        assert_eq!(ode_solution(&p, 0.0, 1e6).unwrap(), xs);
        assert_eq!(ode_solution(&p, 1.0, 1e6).unwrap(), xs);
    }

    #[test]
    fn rejects_bad_domain() {
        let p = params();
        assert!(ode_solution(&p, -0.1, 1.0).is_err());
        assert!(ode_solution(&p, 1.1, 1.0).is_err());
        assert!(ode_solution(&p, 0.5, -1.0).is_err());
        assert!(decay_bound(&p, 0.9, 1.0).is_err()); // above 1 - x_star
        assert!(decay_bound(&p, -0.5, 1.0).is_err()); // below -x_star
    }

    #[test]
    fn decay_bound_values() {
        let p = params();
        assert_eq!(decay_bound(&p, 0.0, 3.0).unwrap(), 0.0);
        // 2J/(J + 1.5) * 0.1, frozen from extended-precision evaluation.
        let b = decay_bound(&p, 0.1, 0.0).unwrap();
        assert!((b - 0.115_767_078_078_675_46).abs() < 1e-15);
    }

    #[test]
    fn decay_bound_dominates_centred_solution() {
        let p = params();
        let xs = p.derived().x_star;
        for alpha in [0.0, 0.1, 0.28, 0.6, 1.0] {
            for i in 0..=60 {
                let t = i as f64 * 0.25;
                let dev = (ode_solution(&p, alpha, t).unwrap() - xs).abs();
                let bound = decay_bound(&p, alpha - xs, t).unwrap();
                assert!(
                    dev <= bound + 1e-15,
                    "alpha={alpha} t={t}: {dev} > {bound}"
                );
            }
        }
    }

    #[test]
    fn envelope_delta_zero_collapses() {
        let p = params();
        for t in [0.0, 0.5, 2.0, 10.0] {
            let e = mean_envelope(&p, 0.15, 0.0, t).unwrap();
            assert_eq!(e.lower, e.upper);
        }
    }

    #[test]
    fn envelope_fixed_point_of_perturbed_equation() {
        let p = params();
        let delta = 0.02;
        let env = EnvelopeParams::new(&p, delta).unwrap();
        for t in [0.0, 1.0, 7.0, 100.0] {
            let e = mean_envelope(&p, env.c2, delta, t).unwrap();
            assert!((e.lower - env.c2).abs() < 1e-15);
        }
    }

    #[test]
    fn envelope_ordering_and_domain() {
        let p = params();
        for t in [0.0, 0.4, 1.0, 3.0, 20.0] {
            for y0 in [-0.2, -0.01, 0.0, 0.1, 0.5] {
                let e = mean_envelope(&p, y0, 0.01, t).unwrap();
                assert!(e.lower <= e.upper + 1e-15, "y0={y0} t={t}");
            }
        }
        let d = params().derived();
        assert!(mean_envelope(&p, 0.1, d.j, 1.0).is_err()); // delta >= J
        assert!(mean_envelope(&p, -3.0, 0.01, 1.0).is_err()); // below c3
    }

    #[test]
    fn envelopes_monotone_in_initial_value() {
        let p = params();
        for t in [0.1, 1.0, 4.0] {
            let mut prev: Option<MeanEnvelope> = None;
            for i in 0..30 {
                let y0 = -0.25 + i as f64 * 0.03;
                let e = mean_envelope(&p, y0, 0.015, t).unwrap();
                if let Some(q) = prev {
                    assert!(e.lower >= q.lower - 1e-14);
                    assert!(e.upper >= q.upper - 1e-14);
                }
                prev = Some(e);
            }
        }
    }

    #[test]
    fn semigroup_property() {
        let p = params();
        for alpha in [0.0, 0.2, 0.9] {
            for (s, t) in [(0.3, 0.7), (1.0, 2.5), (0.05, 4.0)] {
                let whole = ode_solution(&p, alpha, s + t).unwrap();
                let mid = ode_solution(&p, alpha, s).unwrap();
                let two_step = ode_solution(&p, mid, t).unwrap();
                assert!((whole - two_step).abs() < 1e-10);
            }
        }
    }
}
