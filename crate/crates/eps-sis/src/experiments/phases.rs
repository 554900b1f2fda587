//! Three-phase coupling instrumentation.
//!
//! The coalescence argument splits `[0, t_n + xi]` into a burn-in phase
//! of length `((1-h)/2J) log N` after which both copies should sit in the
//! interior of the good set, an intermediate phase of another
//! `(h/2J) log N + xi/2` after which their distance should be below
//! `sqrt(N)`, and a final phase of `xi/2` in which they should meet.
//! This experiment measures the three conditional success frequencies.

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::experiments::report::{fmt_g17, wilson, WilsonInterval};
use crate::experiments::stream_id;
use crate::simulate::{simulate_coupled, GoodSet, Seed};

/// Success counts for one phase, with the conditional frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseStat {
    /// Replications that qualified for this phase.
    pub trials: usize,
    /// Qualified replications that met the phase's success criterion.
    pub successes: usize,
    /// `successes / trials` (NaN when no replication qualified).
    pub frequency: f64,
    /// 95% Wilson interval.
    pub ci: WilsonInterval,
}

fn stat(successes: usize, trials: usize) -> PhaseStat {
    PhaseStat {
        trials,
        successes,
        frequency: if trials > 0 {
            successes as f64 / trials as f64
        } else {
            f64::NAN
        },
        ci: wilson(successes, trials),
    }
}

/// Phase boundary times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseTimes {
    /// End of burn-in, `((1-h)/2J) log N`.
    pub burn_in_end: f64,
    /// End of the intermediate phase, burn-in plus
    /// `(h/2J) log N + xi/2`.
    pub intermediate_end: f64,
    /// End of the final phase, another `xi/2` later.
    pub final_end: f64,
}

/// Measured success frequencies of the three coupling phases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseReport {
    /// Population size.
    pub n: usize,
    /// Window parameter `xi`.
    pub xi: f64,
    /// Deviation exponent `h`.
    pub h: f64,
    /// Good-set radius `eta(N)` for the configured surrogates.
    pub eta: f64,
    /// Starting pair.
    pub w0: usize,
    /// Starting pair.
    pub z0: usize,
    /// Total replications.
    pub replications: usize,
    /// Master seed.
    pub master_seed: u64,
    /// Phase boundaries.
    pub times: PhaseTimes,
    /// Both copies inside the interior good set at the end of burn-in.
    pub burn_in: PhaseStat,
    /// Among burn-in successes that did not leave the good set during the
    /// intermediate phase: distance at most `sqrt(N)` at its end.
    pub intermediate: PhaseStat,
    /// Among intermediate successes that did not leave the good set
    /// during the final phase: coalesced by its end.
    pub final_phase: PhaseStat,
}

impl PhaseReport {
    /// CSV rendering, one row per phase.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("phase,end_time,trials,successes,frequency,ci_lo,ci_hi\n");
        for (name, end, s) in [
            ("burn_in", self.times.burn_in_end, &self.burn_in),
            ("intermediate", self.times.intermediate_end, &self.intermediate),
            ("final", self.times.final_end, &self.final_phase),
        ] {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                name,
                fmt_g17(end),
                s.trials,
                s.successes,
                fmt_g17(s.frequency),
                fmt_g17(s.ci.lo),
                fmt_g17(s.ci.hi)
            ));
        }
        out
    }
}

/// Runs coupled pairs from `(w0, z0)` and instruments them at the phase
/// boundaries. Requires `eta(N) < J / (2 lambda)` for the configured
/// surrogates (the contraction margin of the intermediate phase);
/// smaller populations are rejected.
#[allow(clippy::too_many_arguments)]
pub fn phase_verification(
    params: &ModelParams,
    w0: usize,
    z0: usize,
    xi: f64,
    replications: usize,
    master_seed: u64,
    good: &GoodSet,
) -> Result<PhaseReport> {
    if !(xi > 0.0) {
        return Err(Error::Domain(format!("xi must be positive, got {xi}")));
    }
    if replications == 0 {
        return Err(Error::Domain("need at least one replication".to_string()));
    }
    let d = params.derived();
    if good.eta() >= d.j / (2.0 * params.lambda()) {
        return Err(Error::Domain(format!(
            "eta(N) = {} is not below J/(2 lambda) = {}; population too small \
             for the contraction phase at these surrogates",
            good.eta(),
            d.j / (2.0 * params.lambda())
        )));
    }
    let h = good.h();
    let log_n = params.n_f64().ln();
    let t1 = (1.0 - h) / (2.0 * d.j) * log_n;
    let t2 = t1 + h / (2.0 * d.j) * log_n + xi / 2.0;
    let t3 = t2 + xi / 2.0;
    let sqrt_n = params.n_f64().sqrt();
    let hat = good.interval_hat();
    let interior = good.interval_interior();

    #[derive(Default)]
    struct Counts {
        burn_trials: usize,
        burn_ok: usize,
        mid_trials: usize,
        mid_ok: usize,
        fin_trials: usize,
        fin_ok: usize,
    }

    let per_rep: Vec<Counts> = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let seed = Seed::new(master_seed, stream_id(0, rep));
            let trace = simulate_coupled(params, w0, z0, t3, good, seed)?;
            let mut c = Counts {
                burn_trials: 1,
                ..Counts::default()
            };
            let n = params.n();
            let w_in = interior.contains_state(trace.w.state_at(t1), n);
            let z_in = interior.contains_state(trace.z.state_at(t1), n);
            if w_in && z_in {
                c.burn_ok = 1;
                let exit_mid = [&trace.w, &trace.z]
                    .iter()
                    .filter_map(|tr| tr.first_exit_after(&hat, t1))
                    .fold(f64::INFINITY, f64::min);
                if exit_mid > t2 {
                    c.mid_trials = 1;
                    let dist = trace.z.state_at(t2).abs_diff(trace.w.state_at(t2));
                    if (dist as f64) <= sqrt_n {
                        c.mid_ok = 1;
                        let exit_fin = [&trace.w, &trace.z]
                            .iter()
                            .filter_map(|tr| tr.first_exit_after(&hat, t2))
                            .fold(f64::INFINITY, f64::min);
                        if exit_fin > t3 {
                            c.fin_trials = 1;
                            if trace.tau_couple.is_some_and(|tc| tc <= t3) {
                                c.fin_ok = 1;
                            }
                        }
                    }
                }
            }
            Ok(c)
        })
        .collect::<Result<_>>()?;

    let mut total = Counts::default();
    for c in per_rep {
        total.burn_trials += c.burn_trials;
        total.burn_ok += c.burn_ok;
        total.mid_trials += c.mid_trials;
        total.mid_ok += c.mid_ok;
        total.fin_trials += c.fin_trials;
        total.fin_ok += c.fin_ok;
    }

    Ok(PhaseReport {
        n: params.n(),
        xi,
        h,
        eta: good.eta(),
        w0,
        z0,
        replications,
        master_seed,
        times: PhaseTimes {
            burn_in_end: t1,
            intermediate_end: t2,
            final_end: t3,
        },
        burn_in: stat(total.burn_ok, total.burn_trials),
        intermediate: stat(total.mid_ok, total.mid_trials),
        final_phase: stat(total.fin_ok, total.fin_trials),
    })
}
