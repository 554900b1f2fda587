//! Worst-case total-variation profiles and mixing times.

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::exact::{
    stationary_distribution, transient_distribution_with, tv_distance, ProbabilityVector,
    UniformizationOptions,
};

/// Which starting states the worst case is taken over.
///
/// The exact worst case maximizes over every state, which costs a full
/// transient solve per state and is only feasible for small populations.
/// The endpoint set `{0, N}` is the default; it is validated against the
/// full scan in the test suite rather than assumed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum StartSet {
    /// `{0, N}`.
    Endpoints,
    /// Every state `{0, .., N}`.
    Full,
    /// An explicit list of states.
    States(Vec<usize>),
}

impl StartSet {
    /// Concrete list of starting states for population size `n`.
    pub fn resolve(&self, n: usize) -> Result<Vec<usize>> {
        let states = match self {
            StartSet::Endpoints => {
                if n == 0 {
                    vec![0]
                } else {
                    vec![0, n]
                }
            }
            StartSet::Full => (0..=n).collect(),
            StartSet::States(xs) => xs.clone(),
        };
        if states.is_empty() {
            return Err(Error::Domain("empty start set".to_string()));
        }
        for &x in &states {
            if x > n {
                return Err(Error::StateOutOfRange { state: x, max: n });
            }
        }
        Ok(states)
    }
}

/// Worst-case total-variation distance to stationarity along a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingProfile {
    /// Evaluation times, increasing.
    pub times: Vec<f64>,
    /// `rho(t) = max over the start set of ||P^t(x, .) - pi||_TV`;
    /// non-increasing along `times`.
    pub rho: Vec<f64>,
    /// The starting states the maximum was taken over.
    pub start_set: Vec<usize>,
}

fn tv_from_start(
    params: &ModelParams,
    pi: &ProbabilityVector,
    x0: usize,
    t: f64,
    opts: &UniformizationOptions,
) -> Result<f64> {
    let init = ProbabilityVector::point_mass(params.n() + 1, x0)?;
    let tr = transient_distribution_with(params, &init, t, opts)?;
    tv_distance(&tr.law, pi)
}

fn rho_at(
    params: &ModelParams,
    pi: &ProbabilityVector,
    starts: &[usize],
    t: f64,
    opts: &UniformizationOptions,
) -> Result<f64> {
    let tvs: Vec<Result<f64>> = starts
        .par_iter()
        .map(|&x0| tv_from_start(params, pi, x0, t, opts))
        .collect();
    // Reduce in index order; max is order-independent but the error
    // short-circuit should be deterministic too.
    let mut best = 0.0f64;
    for tv in tvs {
        best = best.max(tv?);
    }
    Ok(best)
}

/// Evaluates the worst-case TV profile `rho` on an increasing time grid.
pub fn mixing_profile(
    params: &ModelParams,
    times: &[f64],
    start_set: &StartSet,
    opts: &UniformizationOptions,
) -> Result<MixingProfile> {
    if times.is_empty() {
        return Err(Error::Domain("empty time grid".to_string()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "time grid must be strictly increasing".to_string(),
        ));
    }
    if !(times[0] >= 0.0) {
        return Err(Error::Domain(format!(
            "times must be nonnegative, got {}",
            times[0]
        )));
    }
    let starts = start_set.resolve(params.n())?;
    let pi = stationary_distribution(params);
    let pairs: Vec<(f64, usize)> = times
        .iter()
        .flat_map(|&t| starts.iter().map(move |&x0| (t, x0)))
        .collect();
    let cells: Vec<f64> = pairs
        .par_iter()
        .map(|&(t, x0)| tv_from_start(params, &pi, x0, t, opts))
        .collect::<Result<_>>()?;
    let rho = (0..times.len())
        .map(|i| {
            cells[i * starts.len()..(i + 1) * starts.len()]
                .iter()
                .fold(0.0f64, |a, &b| a.max(b))
        })
        .collect();
    Ok(MixingProfile {
        times: times.to_vec(),
        rho,
        start_set: starts,
    })
}

/// Absolute bisection tolerance for mixing times, in time units.
pub const MIXING_TIME_TOLERANCE: f64 = 1e-4;

/// First time the worst-case TV distance drops to `delta`:
/// `inf { t : rho(t) <= delta }`, located by bisection (valid because
/// `rho` is non-increasing) to within [`MIXING_TIME_TOLERANCE`].
///
/// The bracket `[0, 4 t_n + 50/J]` comfortably contains the cutoff for
/// any level at desk scale.
pub fn mixing_time(
    params: &ModelParams,
    delta: f64,
    start_set: &StartSet,
    opts: &UniformizationOptions,
) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!(
            "level must lie strictly between 0 and 1, got {delta}"
        )));
    }
    let starts = start_set.resolve(params.n())?;
    let pi = stationary_distribution(params);
    if rho_at(params, &pi, &starts, 0.0, opts)? <= delta {
        return Ok(0.0);
    }
    let d = params.derived();
    let mut lo = 0.0;
    let mut hi = 4.0 * d.t_n + 50.0 / d.j;
    if rho_at(params, &pi, &starts, hi, opts)? > delta {
        return Err(Error::Numerical(format!(
            "rho({hi}) still above {delta}; bracket assumption violated"
        )));
    }
    while hi - lo > MIXING_TIME_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if rho_at(params, &pi, &starts, mid, opts)? <= delta {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
