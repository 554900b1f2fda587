//! The chain reflected at the boundary of a good set.
//!
//! On states whose proportion lies in `I(r)` the reflected chain moves
//! exactly like the free chain. The two states just outside, `l` below
//! and `u` above, are one-way: `u` only jumps down (at its usual death
//! rate) and `l` only jumps up (at its usual birth rate). Started inside,
//! the reflected and free chains driven by the same randomness agree
//! path-wise until the first exit of `I(r)`.

use rand::Rng;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::simulate::{exp_time, ScaledInterval, Seed, Trajectory};

/// Boundary states `(l, u)` of the reflected chain for radius `r`: the
/// first states below and above the proportion window `I(r)`.
pub(crate) fn reflecting_bounds(
    params: &ModelParams,
    interval: &ScaledInterval,
) -> Result<(usize, usize)> {
    let n = params.n();
    let (lo, hi) = interval.state_bounds(n);
    let ell = lo - 1;
    let u = hi + 1;
    if ell < 0 || u > n as i64 {
        return Err(Error::Domain(format!(
            "reflected boundary ({ell}, {u}) leaves the state space 0..={n}; radius too large"
        )));
    }
    if lo > hi {
        return Err(Error::Domain(
            "good-set interval contains no states".to_string(),
        ));
    }
    Ok((ell as usize, u as usize))
}

/// Simulates the reflected chain from `x0` (which must lie in the closure
/// `{l, .., u}` of the good set) up to `t_max`.
///
/// Consumes randomness in the same pattern as
/// [`simulate_path`](crate::simulate::simulate_path) (one holding-time
/// draw and one branch draw per event), so a shared seed yields paths
/// that agree with the free chain until the exit time.
pub fn simulate_reflected(
    params: &ModelParams,
    x0: usize,
    r: f64,
    t_max: f64,
    seed: Seed,
) -> Result<Trajectory> {
    if !(t_max >= 0.0) || !t_max.is_finite() {
        return Err(Error::Domain(format!(
            "horizon must be finite and nonnegative, got {t_max}"
        )));
    }
    let d = params.derived();
    let interval = ScaledInterval::new(d.x_star - r, d.x_star + r)?;
    let (ell, u) = reflecting_bounds(params, &interval)?;
    if x0 < ell || x0 > u {
        return Err(Error::Domain(format!(
            "start {x0} outside the good-set closure {ell}..={u}"
        )));
    }

    let mut rng = seed.rng();
    let mut traj = Trajectory::new(x0, t_max, params.n());
    let mut t = 0.0;
    let mut x = x0;
    loop {
        let (b, dn) = if x == u {
            (0.0, params.death_raw(x))
        } else if x == ell {
            (params.birth_raw(x), 0.0)
        } else {
            (params.birth_raw(x), params.death_raw(x))
        };
        let g = b + dn; // death(u) >= mu > 0, birth(l) >= eps > 0
        t += exp_time(&mut rng, g);
        let pick: f64 = rng.random();
        if t > t_max {
            break;
        }
        if pick * g < b {
            x += 1;
        } else {
            x -= 1;
        }
        traj.push(t, x);
    }
    Ok(traj)
}
