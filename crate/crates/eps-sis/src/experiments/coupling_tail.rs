//! Empirical tail of the coalescence time around the cutoff time.

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::experiments::report::{fmt_g17, wilson, WilsonInterval};
use crate::experiments::stream_id;
use crate::simulate::{default_radius, simulate_coupled, GoodSet, Seed};

/// One grid point of the coalescence-tail table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingTailRow {
    /// Offset from the reference time `t_n`.
    pub xi: f64,
    /// Absolute time `t_n + xi`.
    pub t: f64,
    /// Empirical `P(tau_couple > t_n + xi)`.
    pub tail: f64,
    /// 95% Wilson interval for the tail.
    pub ci: WilsonInterval,
    /// Overlay of the theoretical tail shape
    /// `4 / sqrt(mu min eps) * xi^{-1/2} + C4 e^{-(J/2) xi}` with the
    /// configured `C4`.
    pub psi1: f64,
}

/// Empirical coalescence-tail table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingTailReport {
    /// Population size.
    pub n: usize,
    /// Starting pair.
    pub w0: usize,
    /// Starting pair.
    pub z0: usize,
    /// Replications.
    pub replications: usize,
    /// Master seed.
    pub master_seed: u64,
    /// The `C4` used in the overlay (a fit surrogate; the theory proves
    /// existence, not a value).
    pub c4: f64,
    /// One row per grid offset.
    pub rows: Vec<CouplingTailRow>,
}

impl CouplingTailReport {
    /// CSV rendering, one row per xi.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("xi,t,tail,ci_lo,ci_hi,psi1\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_g17(r.xi),
                fmt_g17(r.t),
                fmt_g17(r.tail),
                fmt_g17(r.ci.lo),
                fmt_g17(r.ci.hi),
                fmt_g17(r.psi1)
            ));
        }
        out
    }
}

/// Simulates independently coupled pairs from `(w0, z0)` and tabulates
/// the empirical tail `P(tau_couple > t_n + xi)` on the grid, with Wilson
/// intervals and the theoretical tail-shape overlay.
pub fn coupling_tail(
    params: &ModelParams,
    w0: usize,
    z0: usize,
    xi_grid: &[f64],
    replications: usize,
    master_seed: u64,
    c4: f64,
) -> Result<CouplingTailReport> {
    if xi_grid.is_empty() {
        return Err(Error::Domain("empty xi grid".to_string()));
    }
    if xi_grid.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::Domain("xi values must be positive".to_string()));
    }
    if xi_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "xi grid must be strictly increasing".to_string(),
        ));
    }
    if replications == 0 {
        return Err(Error::Domain("need at least one replication".to_string()));
    }
    let d = params.derived();
    let t_max = d.t_n + xi_grid.last().unwrap();
    let good = GoodSet::new(params, default_radius(params), 0.5)?;

    let taus: Vec<Option<f64>> = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let seed = Seed::new(master_seed, stream_id(0, rep));
            let trace = simulate_coupled(params, w0, z0, t_max, &good, seed)?;
            Ok(trace.tau_couple)
        })
        .collect::<Result<_>>()?;

    let rate_floor = params.mu().min(params.epsilon());
    let rows = xi_grid
        .iter()
        .map(|&xi| {
            let t = d.t_n + xi;
            let over = taus
                .iter()
                .filter(|tau| tau.map_or(true, |v| v > t))
                .count();
            CouplingTailRow {
                xi,
                t,
                tail: over as f64 / replications as f64,
                ci: wilson(over, replications),
                psi1: 4.0 / rate_floor.sqrt() / xi.sqrt() + c4 * (-0.5 * d.j * xi).exp(),
            }
        })
        .collect();

    Ok(CouplingTailReport {
        n: params.n(),
        w0,
        z0,
        replications,
        master_seed,
        c4,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_starts_have_zero_tail() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 60).unwrap();
        let rep = coupling_tail(&p, 25, 25, &[0.5, 1.0, 2.0], 200, 3, 1.0).unwrap();
        assert!(rep.rows.iter().all(|r| r.tail == 0.0));
    }

    #[test]
    fn tail_is_non_increasing() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 80).unwrap();
        let rep = coupling_tail(&p, 0, 80, &[0.25, 0.5, 1.0, 2.0, 4.0], 400, 11, 1.0).unwrap();
        for w in rep.rows.windows(2) {
            assert!(w[1].tail <= w[0].tail);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 60).unwrap();
        assert!(coupling_tail(&p, 0, 60, &[], 100, 0, 1.0).is_err());
        assert!(coupling_tail(&p, 0, 60, &[0.0, 1.0], 100, 0, 1.0).is_err());
        assert!(coupling_tail(&p, 0, 60, &[2.0, 1.0], 100, 0, 1.0).is_err());
        assert!(coupling_tail(&p, 0, 60, &[1.0], 0, 0, 1.0).is_err());
    }
}
