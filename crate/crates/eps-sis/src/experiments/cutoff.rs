//! Cutoff scan: mixing times across population sizes.

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::exact::{mixing_time, uniformization_steps, StartSet, UniformizationOptions};
use crate::experiments::report::{fmt_g17, linear_fit};

/// Options for [`cutoff_scan`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutoffOptions {
    /// Level whose mixing times are fitted against `log N` (picked from
    /// the scanned levels; the closest one is used).
    pub fit_level: f64,
    /// Starting states for the worst case.
    pub start_set: StartSet,
    /// Uniformization tolerances.
    pub uniformization: UniformizationOptions,
    /// Budget on the estimated total work (kernel steps times states);
    /// scans estimated above it are refused rather than started.
    pub max_step_ops: f64,
}

impl Default for CutoffOptions {
    fn default() -> Self {
        Self {
            fit_level: 0.25,
            start_set: StartSet::Endpoints,
            uniformization: UniformizationOptions::default(),
            max_step_ops: 1e12,
        }
    }
}

/// Mixing times for one population size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutoffRow {
    /// Population size.
    pub n: usize,
    /// `t_mix(N, delta)` aligned with the scanned levels.
    pub t_mix: Vec<f64>,
    /// `t_mix` at the smallest level minus `t_mix` at the largest:
    /// the width of the cutoff window.
    pub window: f64,
    /// The reference time `log(N) / (2J)`.
    pub t_n: f64,
}

/// Result of a cutoff scan over several population sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutoffReport {
    /// Scanned levels, strictly decreasing.
    pub delta_levels: Vec<f64>,
    /// One row per population size.
    pub rows: Vec<CutoffRow>,
    /// The level actually used for the slope fit.
    pub fit_level: f64,
    /// Fitted slope of `t_mix(N, fit_level)` against `log N`.
    pub fitted_slope: f64,
    /// Fitted intercept.
    pub fitted_intercept: f64,
    /// The predicted slope `1 / (2J)`.
    pub predicted_slope: f64,
    /// `window(N_max) / window(N_min)`.
    pub window_ratio: f64,
}

impl CutoffReport {
    /// CSV rendering: one row per population size, one `tmix_<level>`
    /// column per level, then the window and `t_n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N");
        for l in &self.delta_levels {
            out.push_str(&format!(",tmix_{l}"));
        }
        out.push_str(",window,t_n\n");
        for row in &self.rows {
            out.push_str(&row.n.to_string());
            for t in &row.t_mix {
                out.push(',');
                out.push_str(&fmt_g17(*t));
            }
            out.push(',');
            out.push_str(&fmt_g17(row.window));
            out.push(',');
            out.push_str(&fmt_g17(row.t_n));
            out.push('\n');
        }
        out
    }
}

/// Exact mixing times `t_mix(N, delta)` for every `(N, delta)` pair, the
/// least-squares slope of `t_mix(., fit_level)` against `log N`, and the
/// window-width ratio between the largest and smallest populations.
///
/// `n_list` must be strictly increasing and `delta_levels` strictly
/// decreasing within `(0, 1)`. The rates are taken from `params`; its
/// population size is ignored.
pub fn cutoff_scan(
    params: &ModelParams,
    n_list: &[usize],
    delta_levels: &[f64],
    opts: &CutoffOptions,
) -> Result<CutoffReport> {
    if n_list.is_empty() {
        return Err(Error::Domain("empty population list".to_string()));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "population list must be strictly increasing".to_string(),
        ));
    }
    if delta_levels.is_empty() {
        return Err(Error::Domain("empty level list".to_string()));
    }
    if delta_levels
        .iter()
        .any(|&l| !(l > 0.0 && l < 1.0))
    {
        return Err(Error::Domain(
            "levels must lie strictly between 0 and 1".to_string(),
        ));
    }
    if delta_levels.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Domain(
            "levels must be strictly decreasing".to_string(),
        ));
    }

    // Refuse workloads whose estimated cost exceeds the budget. The
    // estimate assumes every bisection step probes the top of the
    // bracket, so it overshoots the real cost by a small factor.
    let mut estimate = 0.0f64;
    for &n in n_list {
        let p = params.with_population(n)?;
        let d = p.derived();
        let bracket = 4.0 * d.t_n + 50.0 / d.j;
        let iters = (bracket / 1e-4).log2().ceil() + 2.0;
        let starts = opts.start_set.resolve(n)?.len() as f64;
        let per_eval = uniformization_steps(&p, bracket) as f64 * (n as f64 + 1.0);
        estimate += delta_levels.len() as f64 * iters * starts * per_eval;
    }
    if estimate > opts.max_step_ops {
        return Err(Error::Infeasible(format!(
            "cutoff scan estimated at {estimate:.3e} step-ops, budget is {:.3e}",
            opts.max_step_ops
        )));
    }

    let pairs: Vec<(usize, f64)> = n_list
        .iter()
        .flat_map(|&n| delta_levels.iter().map(move |&l| (n, l)))
        .collect();
    let times: Vec<f64> = pairs
        .par_iter()
        .map(|&(n, level)| {
            let p = params.with_population(n)?;
            mixing_time(&p, level, &opts.start_set, &opts.uniformization)
        })
        .collect::<Result<_>>()?;

    let k = delta_levels.len();
    let mut rows = Vec::with_capacity(n_list.len());
    for (i, &n) in n_list.iter().enumerate() {
        let t_mix = times[i * k..(i + 1) * k].to_vec();
        let window = t_mix[k - 1] - t_mix[0];
        rows.push(CutoffRow {
            n,
            t_mix,
            window,
            t_n: params.with_population(n)?.derived().t_n,
        });
    }

    let fit_idx = delta_levels
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 - opts.fit_level)
                .abs()
                .total_cmp(&(b.1 - opts.fit_level).abs())
        })
        .map(|(i, _)| i)
        .unwrap();
    let xs: Vec<f64> = n_list.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.t_mix[fit_idx]).collect();
    let fit = linear_fit(&xs, &ys);

    let window_ratio = rows.last().unwrap().window / rows.first().unwrap().window;
    Ok(CutoffReport {
        delta_levels: delta_levels.to_vec(),
        rows,
        fit_level: delta_levels[fit_idx],
        fitted_slope: fit.slope,
        fitted_intercept: fit.intercept,
        predicted_slope: 1.0 / (2.0 * params.derived().j),
        window_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::mixing_time;

    #[test]
    fn degenerate_scan_is_exactly_mixing_time() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 1).unwrap();
        let opts = CutoffOptions::default();
        let report = cutoff_scan(&p, &[40], &[0.25], &opts).unwrap();
        let q = p.with_population(40).unwrap();
        let direct = mixing_time(&q, 0.25, &opts.start_set, &opts.uniformization).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].t_mix, vec![direct]);
        assert_eq!(report.rows[0].window, 0.0);
    }

    #[test]
    fn rejects_bad_lists_and_budget() {
        let p = ModelParams::new(1.0, 2.0, 0.5, 1).unwrap();
        let opts = CutoffOptions::default();
        assert!(cutoff_scan(&p, &[], &[0.25], &opts).is_err());
        assert!(cutoff_scan(&p, &[100, 100], &[0.25], &opts).is_err());
        assert!(cutoff_scan(&p, &[100], &[0.25, 0.5], &opts).is_err());
        assert!(cutoff_scan(&p, &[100], &[1.5], &opts).is_err());
        let tight = CutoffOptions {
            max_step_ops: 10.0,
            ..CutoffOptions::default()
        };
        assert!(matches!(
            cutoff_scan(&p, &[100], &[0.25], &tight),
            Err(Error::Infeasible(_))
        ));
    }
}
