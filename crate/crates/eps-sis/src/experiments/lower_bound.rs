//! Lower-bound witness: the chain is still far from stationarity shortly
//! before the cutoff time.

use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::exact::{stationary_distribution, transient_distribution, tv_distance, ProbabilityVector};
use crate::experiments::report::fmt_g17;
use crate::experiments::stationary_conc::{minimal_covering_radius, TAIL_TARGET};
use crate::simulate::default_radius;

/// Exact separation diagnostics at time `t_n - xi`.
///
/// The witness start is `x_bar = floor((x_star + r/2) N)`. The reference
/// ball `S_N` is the smallest ball around `x_star N` holding 95% of the
/// stationary mass; its radius plays the role of the concentration
/// radius `O(sqrt(N))` without fixing any unproven constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBoundReport {
    /// Population size.
    pub n: usize,
    /// Offset before the reference time.
    pub xi: f64,
    /// Evaluation time `t_n - xi`.
    pub t_eval: f64,
    /// Witness starting state.
    pub x_bar: usize,
    /// Exact `||P^{t}(x_bar, .) - pi||_TV`.
    pub tv: f64,
    /// Mass the transient law puts inside `S_N`.
    pub mass_in_ball: f64,
    /// Radius of `S_N` in states.
    pub ball_radius: f64,
    /// The same radius in units of `sqrt(N)`.
    pub ball_c: f64,
    /// Stationary mass inside `S_N` (at least 95% by construction).
    pub pi_mass_in_ball: f64,
}

impl LowerBoundReport {
    /// Single-row CSV rendering.
    pub fn to_csv(&self) -> String {
        format!(
            "N,xi,t_eval,x_bar,tv,mass_in_ball,ball_radius,ball_c,pi_mass_in_ball\n{},{},{},{},{},{},{},{},{}\n",
            self.n,
            fmt_g17(self.xi),
            fmt_g17(self.t_eval),
            self.x_bar,
            fmt_g17(self.tv),
            fmt_g17(self.mass_in_ball),
            fmt_g17(self.ball_radius),
            fmt_g17(self.ball_c),
            fmt_g17(self.pi_mass_in_ball)
        )
    }
}

/// Computes the exact TV distance from the witness start at `t_n - xi`
/// and the transient mass inside the stationary 95% ball.
///
/// `radius` is the good-set radius `r` defining the witness start
/// (defaults to the crate-wide default radius). `t_n - xi < 0` is a
/// domain error: the witness time must be a valid time point.
pub fn lower_bound_witness(
    params: &ModelParams,
    xi: f64,
    radius: Option<f64>,
) -> Result<LowerBoundReport> {
    let d = params.derived();
    let t_eval = d.t_n - xi;
    if t_eval < 0.0 {
        return Err(Error::Domain(format!(
            "t_n - xi = {} - {xi} is negative; choose xi below t_n",
            d.t_n
        )));
    }
    let r = radius.unwrap_or_else(|| default_radius(params));
    if !(r > 0.0) || d.x_star + r / 2.0 > 1.0 {
        return Err(Error::Domain(format!("invalid witness radius {r}")));
    }
    let n = params.n();
    let x_bar = ((d.x_star + r / 2.0) * n as f64).floor() as usize;

    let pi = stationary_distribution(params);
    let center = d.x_star * n as f64;
    let ball_radius = minimal_covering_radius(&pi, center, TAIL_TARGET);

    let initial = ProbabilityVector::point_mass(n + 1, x_bar)?;
    let tr = transient_distribution(params, &initial, t_eval)?;
    Ok(LowerBoundReport {
        n,
        xi,
        t_eval,
        x_bar,
        tv: tv_distance(&tr.law, &pi)?,
        mass_in_ball: tr.law.mass_within(center, ball_radius),
        ball_radius,
        ball_c: ball_radius / (n as f64).sqrt(),
        pi_mass_in_ball: pi.mass_within(center, ball_radius),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_zero_evaluates_at_t_n() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 300).unwrap();
        let rep = lower_bound_witness(&p, 0.0, None).unwrap();
        assert_eq!(rep.t_eval, p.derived().t_n);
        assert!(rep.tv > 0.0 && rep.tv < 1.0);
        assert!(rep.pi_mass_in_ball >= 0.95);
    }

    #[test]
    fn negative_witness_time_is_domain_error() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 300).unwrap();
        // t_n(300) is about 1.38, so xi = 2 lands before time zero.
        assert!(matches!(
            lower_bound_witness(&p, 2.0, None),
            Err(Error::Domain(_))
        ));
    }
}
