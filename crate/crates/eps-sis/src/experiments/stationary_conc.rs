//! Stationary concentration: exact tail mass outside sqrt(N)-balls
//! around the fixed point.

use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::exact::{stationary_distribution, ProbabilityVector};
use crate::experiments::report::fmt_g17;

/// The tail target defining the "minimal covering radius" summary.
pub const TAIL_TARGET: f64 = 0.05;

/// Smallest radius (in states) of a ball around `center` holding at least
/// `1 - tail_target` of the mass.
pub(crate) fn minimal_covering_radius(
    law: &ProbabilityVector,
    center: f64,
    tail_target: f64,
) -> f64 {
    let mut order: Vec<usize> = (0..law.len()).collect();
    order.sort_by(|&a, &b| {
        (a as f64 - center)
            .abs()
            .total_cmp(&(b as f64 - center).abs())
    });
    let mut mass = 0.0;
    for &x in &order {
        mass += law.values()[x];
        if mass >= 1.0 - tail_target {
            return (x as f64 - center).abs();
        }
    }
    // Unreachable for a normalized law; the whole space always covers.
    (law.len() - 1) as f64
}

/// Tail masses for one population size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryConcRow {
    /// Population size.
    pub n: usize,
    /// `pi_N(|x - x_star N| > c sqrt(N))` aligned with the scanned grid.
    pub tails: Vec<f64>,
    /// Minimal `c` with tail at most [`TAIL_TARGET`].
    pub c_min: f64,
}

/// Exact stationary-concentration table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryConcReport {
    /// Scanned ball radii, in units of `sqrt(N)`.
    pub c_grid: Vec<f64>,
    /// One row per population size.
    pub rows: Vec<StationaryConcRow>,
    /// `max c_min / min c_min` across the scanned populations.
    pub c_min_ratio: f64,
}

impl StationaryConcReport {
    /// CSV rendering, one row per `(N, c)` pair plus the per-N summary
    /// radius.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,c,tail,c_min\n");
        for row in &self.rows {
            for (c, tail) in self.c_grid.iter().zip(&row.tails) {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    row.n,
                    fmt_g17(*c),
                    fmt_g17(*tail),
                    fmt_g17(row.c_min)
                ));
            }
        }
        out
    }
}

/// Computes, for each population size, the exact stationary mass outside
/// balls of radius `c sqrt(N)` around `x_star N` for every `c` on the
/// grid, and the minimal `c` whose tail is at most 5%.
pub fn stationary_concentration(
    params: &ModelParams,
    n_list: &[usize],
    c_grid: &[f64],
) -> Result<StationaryConcReport> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "population list must be nonempty and strictly increasing".to_string(),
        ));
    }
    if c_grid.is_empty() || c_grid.iter().any(|&c| c < 0.0) {
        return Err(Error::Domain(
            "c grid must be nonempty and nonnegative".to_string(),
        ));
    }
    if c_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "c grid must be strictly increasing".to_string(),
        ));
    }

    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let p = params.with_population(n)?;
        let pi = stationary_distribution(&p);
        let center = p.derived().x_star * n as f64;
        let sqrt_n = (n as f64).sqrt();
        let tails: Vec<f64> = c_grid
            .iter()
            .map(|&c| (1.0 - pi.mass_within(center, c * sqrt_n)).max(0.0))
            .collect();
        let c_min = minimal_covering_radius(&pi, center, TAIL_TARGET) / sqrt_n;
        rows.push(StationaryConcRow { n, tails, c_min });
    }
    let c_min_max = rows.iter().map(|r| r.c_min).fold(f64::MIN, f64::max);
    let c_min_min = rows.iter().map(|r| r.c_min).fold(f64::MAX, f64::min);
    Ok(StationaryConcReport {
        c_grid: c_grid.to_vec(),
        rows,
        c_min_ratio: c_min_max / c_min_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covering_ball_has_zero_tail() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 100).unwrap();
        // c sqrt(N) = 10 sqrt(100) = 100 covers every state.
        let rep = stationary_concentration(&p, &[100], &[0.5, 10.0]).unwrap();
        assert_eq!(rep.rows[0].tails[1], 0.0);
    }

    #[test]
    fn tails_decrease_in_c() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 200).unwrap();
        let grid: Vec<f64> = (1..20).map(|i| i as f64 * 0.25).collect();
        let rep = stationary_concentration(&p, &[200], &grid).unwrap();
        for w in rep.rows[0].tails.windows(2) {
            assert!(w[1] <= w[0] + 1e-15);
        }
    }

    #[test]
    fn minimal_radius_is_consistent_with_tail() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 150).unwrap();
        let pi = stationary_distribution(&p);
        let center = p.derived().x_star * 150.0;
        let rho = minimal_covering_radius(&pi, center, TAIL_TARGET);
        assert!(pi.mass_within(center, rho) >= 0.95);
        assert!(pi.mass_within(center, rho - 1.0) < 0.95);
    }

    #[test]
    fn rejects_bad_grids() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 100).unwrap();
        assert!(stationary_concentration(&p, &[], &[1.0]).is_err());
        assert!(stationary_concentration(&p, &[100], &[]).is_err());
        assert!(stationary_concentration(&p, &[100], &[1.0, 0.5]).is_err());
        assert!(stationary_concentration(&p, &[100], &[-1.0, 0.5]).is_err());
    }
}
