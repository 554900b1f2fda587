//! Exact event-driven paths of the chain.

use rand::Rng;
use serde::Serialize;

use crate::chain::ModelParams;
use crate::error::{Error, Result};
use crate::simulate::{exp_time, ScaledInterval, Seed};

/// One realized path: event times (starting at 0) and the state holding
/// from each event time until the next, up to the horizon `t_end`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<usize>,
    t_end: f64,
    n: usize,
}

impl Trajectory {
    pub(crate) fn new(x0: usize, t_end: f64, n: usize) -> Self {
        Self {
            times: vec![0.0],
            states: vec![x0],
            t_end,
            n,
        }
    }

    pub(crate) fn push(&mut self, t: f64, x: usize) {
        debug_assert!(t > *self.times.last().unwrap());
        debug_assert!(self.states.last().unwrap().abs_diff(x) == 1);
        self.times.push(t);
        self.states.push(x);
    }

    /// Event times, strictly increasing, `times[0] = 0`.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// State holding from each event time; `states[0]` is the initial state.
    pub fn states(&self) -> &[usize] {
        &self.states
    }

    /// Simulation horizon.
    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Population size of the generating chain.
    pub fn population(&self) -> usize {
        self.n
    }

    /// Initial state.
    pub fn initial(&self) -> usize {
        self.states[0]
    }

    /// Number of jumps recorded.
    pub fn event_count(&self) -> usize {
        self.times.len() - 1
    }

    /// State occupied at time `t` (piecewise-constant, right-continuous).
    pub fn state_at(&self, t: f64) -> usize {
        let idx = self.times.partition_point(|&s| s <= t);
        self.states[idx.saturating_sub(1)]
    }

    /// First time in `[t_from, t_end]` at which the scaled state lies
    /// outside `interval`; `None` if it never does.
    pub fn first_exit_after(&self, interval: &ScaledInterval, t_from: f64) -> Option<f64> {
        let (a, b) = interval.state_bounds(self.n);
        let outside = |x: usize| (x as i64) < a || (x as i64) > b;
        if outside(self.state_at(t_from)) {
            return Some(t_from);
        }
        let start = self.times.partition_point(|&s| s <= t_from);
        for i in start..self.times.len() {
            if outside(self.states[i]) {
                return Some(self.times[i]);
            }
        }
        None
    }
}

/// Simulates one exact path by the direct method: at each state, an
/// exponential holding time at the total rate, then an upward move with
/// probability `birth / (birth + death)`. Deterministic given the seed.
pub fn simulate_path(
    params: &ModelParams,
    x0: usize,
    t_max: f64,
    seed: Seed,
) -> Result<Trajectory> {
    let n = params.n();
    if x0 > n {
        return Err(Error::StateOutOfRange { state: x0, max: n });
    }
    if !(t_max >= 0.0) || !t_max.is_finite() {
        return Err(Error::Domain(format!(
            "horizon must be finite and nonnegative, got {t_max}"
        )));
    }
    let mut rng = seed.rng();
    let mut traj = Trajectory::new(x0, t_max, n);
    let mut t = 0.0;
    let mut x = x0;
    loop {
        let b = params.birth_raw(x);
        let d = params.death_raw(x);
        let g = b + d; // >= (mu min eps) N > 0 at every state
        t += exp_time(&mut rng, g);
        let u: f64 = rng.random();
        if t > t_max {
            break;
        }
        if u * g < b {
            x += 1;
        } else {
            x -= 1;
        }
        traj.push(t, x);
    }
    Ok(traj)
}
