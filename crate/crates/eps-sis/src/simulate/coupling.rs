//! Independent coupling of two copies of the chain.
//!
//! Before coalescence the pair `(W, Z)` is a single two-dimensional jump
//! process with the four rates
//!
//! ```text
//! (w, z) -> (w+1, z)  at  birth(w)        (w, z) -> (w-1, z)  at  death(w)
//! (w, z) -> (w, z+1)  at  birth(z)        (w, z) -> (w, z-1)  at  death(z)
//! ```
//!
//! so simultaneous jumps are structurally impossible and, started with
//! `w0 <= z0`, the copies never cross without meeting: the coupling is
//! monotone. After the coalescence time the copies move in unison.

use rand::Rng;
use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::simulate::{exp_time, GoodSet, Seed, Trajectory};

/// A realized coupled pair with its coalescence and good-set exit times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingTrace {
    /// Path of the lower copy.
    pub w: Trajectory,
    /// Path of the upper copy.
    pub z: Trajectory,
    /// First time the copies met; `None` if they did not before the
    /// horizon.
    pub tau_couple: Option<f64>,
    /// First time either copy's proportion left the good set's `I(r)`;
    /// `None` if neither did before the horizon.
    pub tau_exit: Option<f64>,
}

impl CouplingTrace {
    /// Checks `W <= Z` along the merged event timeline. The coupling
    /// makes this structural; the walk exists as a diagnostic for the
    /// invariant suite.
    pub fn is_monotone(&self) -> bool {
        let (wt, ws) = (self.w.times(), self.w.states());
        let (zt, zs) = (self.z.times(), self.z.states());
        let (mut i, mut j) = (0, 0);
        let mut ok = ws[0] <= zs[0];
        while ok && (i + 1 < wt.len() || j + 1 < zt.len()) {
            let tw = wt.get(i + 1).copied().unwrap_or(f64::INFINITY);
            let tz = zt.get(j + 1).copied().unwrap_or(f64::INFINITY);
            if tw <= tz {
                i += 1;
            }
            if tz <= tw {
                j += 1;
            }
            ok = ws[i] <= zs[j];
        }
        ok
    }
}

/// Runs the coupled pair from `w0 <= z0` up to `t_max`, recording both
/// paths, the coalescence time, and the first exit of `good_set`'s `I(r)`
/// by either copy. Deterministic given the seed.
pub fn simulate_coupled(
    params: &ModelParams,
    w0: usize,
    z0: usize,
    t_max: f64,
    good_set: &GoodSet,
    seed: Seed,
) -> Result<CouplingTrace> {
    let n = params.n();
    if z0 > n {
        return Err(Error::StateOutOfRange { state: z0, max: n });
    }
    if w0 > z0 {
        return Err(Error::Domain(format!(
            "coupling requires w0 <= z0, got ({w0}, {z0})"
        )));
    }
    if !(t_max >= 0.0) || !t_max.is_finite() {
        return Err(Error::Domain(format!(
            "horizon must be finite and nonnegative, got {t_max}"
        )));
    }

    let (lo, hi) = good_set.interval().state_bounds(n);
    let outside = |x: usize| (x as i64) < lo || (x as i64) > hi;

    let mut rng = seed.rng();
    let mut w = w0;
    let mut z = z0;
    let mut t = 0.0;
    let mut w_traj = Trajectory::new(w0, t_max, n);
    let mut z_traj = Trajectory::new(z0, t_max, n);
    let mut tau_couple = if w0 == z0 { Some(0.0) } else { None };
    let mut tau_exit = if outside(w0) || outside(z0) {
        Some(0.0)
    } else {
        None
    };

    loop {
        if tau_couple.is_some() {
            // Coalesced: one chain, mirrored into both records.
            let b = params.birth_raw(w);
            let d = params.death_raw(w);
            let g = b + d;
            t += exp_time(&mut rng, g);
            let u: f64 = rng.random();
            if t > t_max {
                break;
            }
            if u * g < b {
                w += 1;
            } else {
                w -= 1;
            }
            z = w;
            w_traj.push(t, w);
            z_traj.push(t, z);
        } else {
            let iw = params.birth_raw(w);
            let iz = params.birth_raw(z);
            let cw = params.death_raw(w);
            let cz = params.death_raw(z);
            let g = iw + iz + cw + cz;
            t += exp_time(&mut rng, g);
            let pick = rng.random::<f64>() * g;
            if t > t_max {
                break;
            }
            if pick < iw {
                w += 1;
                w_traj.push(t, w);
            } else if pick < iw + iz {
                z += 1;
                z_traj.push(t, z);
            } else if pick < iw + iz + cw {
                w -= 1;
                w_traj.push(t, w);
            } else {
                z -= 1;
                z_traj.push(t, z);
            }
            debug_assert!(w <= z);
            if w == z {
                tau_couple = Some(t);
            }
        }
        if tau_exit.is_none() && (outside(w) || outside(z)) {
            tau_exit = Some(t);
        }
    }

    Ok(CouplingTrace {
        w: w_traj,
        z: z_traj,
        tau_couple,
        tau_exit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::default_radius;

    fn setup(n: usize) -> (ModelParams, GoodSet) {
        let p = ModelParams::new(1.0, 2.0, 0.5, n).unwrap();
        let g = GoodSet::new(&p, default_radius(&p), 0.5).unwrap();
        (p, g)
    }

    #[test]
    fn equal_starts_coalesce_immediately() {
        let (p, g) = setup(50);
        let tr = simulate_coupled(&p, 20, 20, 1.0, &g, Seed::new(1, 0)).unwrap();
        assert_eq!(tr.tau_couple, Some(0.0));
        assert_eq!(tr.w, tr.z);
    }

    #[test]
    fn monotone_and_identical_after_coalescence() {
        let (p, g) = setup(100);
        for rep in 0..50 {
            let tr = simulate_coupled(&p, 0, 100, 8.0, &g, Seed::new(77, rep)).unwrap();
            assert!(tr.is_monotone(), "rep {rep}");
            if let Some(tc) = tr.tau_couple {
                assert_eq!(tr.w.state_at(tc), tr.z.state_at(tc));
                // Events after coalescence appear in both paths.
                let wi = tr.w.times().iter().filter(|&&s| s > tc).count();
                let zi = tr.z.times().iter().filter(|&&s| s > tc).count();
                assert_eq!(wi, zi);
                assert_eq!(tr.w.state_at(8.0), tr.z.state_at(8.0));
            }
        }
    }

    #[test]
    fn no_simultaneous_jumps_before_coalescence() {
        let (p, g) = setup(80);
        for rep in 0..20 {
            let tr = simulate_coupled(&p, 10, 70, 4.0, &g, Seed::new(5, rep)).unwrap();
            let cut = tr.tau_couple.unwrap_or(f64::INFINITY);
            for &tw in tr.w.times().iter().skip(1).filter(|&&s| s <= cut) {
                assert!(
                    !tr.z.times().iter().skip(1).any(|&tz| tz == tw),
                    "simultaneous jump at {tw}"
                );
            }
        }
    }

    #[test]
    fn exit_recorded_for_outside_start() {
        let (p, g) = setup(100);
        let tr = simulate_coupled(&p, 0, 100, 0.5, &g, Seed::new(2, 0)).unwrap();
        assert_eq!(tr.tau_exit, Some(0.0));
    }

    #[test]
    fn rejects_crossed_starts() {
        let (p, g) = setup(10);
        assert!(simulate_coupled(&p, 5, 3, 1.0, &g, Seed::new(0, 0)).is_err());
        assert!(simulate_coupled(&p, 5, 11, 1.0, &g, Seed::new(0, 0)).is_err());
    }

    #[test]
    fn determinism() {
        let (p, g) = setup(60);
        let a = simulate_coupled(&p, 0, 60, 5.0, &g, Seed::new(9, 3)).unwrap();
        let b = simulate_coupled(&p, 0, 60, 5.0, &g, Seed::new(9, 3)).unwrap();
        assert_eq!(a, b);
    }
}
