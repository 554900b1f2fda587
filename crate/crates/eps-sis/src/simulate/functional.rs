//! Path functionals: sup-deviation from the deterministic solution, the
//! Dynkin martingale with its discounted stochastic integral, and exit
//! times of proportion intervals.

use serde::Serialize;

use crate::chain::ModelParams;
use crate::deterministic::ode_solution;
use crate::error::Result;
use crate::simulate::{ScaledInterval, Trajectory};

/// Supremum over the horizon of `|X(t)/N - x(t)|`, where `x` solves the
/// deterministic equation started from the path's own initial proportion.
///
/// The path is piecewise constant and the solution is monotone, so on
/// each constant piece the supremum is attained at one of the two
/// endpoints; both are evaluated.
pub fn sup_deviation(traj: &Trajectory, params: &ModelParams) -> Result<f64> {
    let n = traj.population() as f64;
    let alpha = traj.initial() as f64 / n;
    let times = traj.times();
    let states = traj.states();
    let mut sup = 0.0f64;
    for i in 0..times.len() {
        let s = states[i] as f64 / n;
        let t_lo = times[i];
        let t_hi = if i + 1 < times.len() {
            times[i + 1]
        } else {
            traj.t_end()
        };
        let a = (s - ode_solution(params, alpha, t_lo)?).abs();
        let b = (s - ode_solution(params, alpha, t_hi)?).abs();
        sup = sup.max(a).max(b);
    }
    Ok(sup)
}

/// The Dynkin martingale of the centred proportion and its exponentially
/// discounted stochastic integral, sampled at the event times (and at the
/// horizon when it extends past the last event).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MartingalePath {
    /// Sample times: the path's event times, plus the horizon.
    pub times: Vec<f64>,
    /// `M(t) = Y(t) - Y(0) + int_0^t (lambda Y^2 + J Y) ds`, the jump part
    /// minus the compensator; zero-mean for every `t`.
    pub martingale: Vec<f64>,
    /// `int_0^t e^{-J (t - s)} dM(s)`, accumulated incrementally so long
    /// horizons cannot overflow.
    pub discounted: Vec<f64>,
}

/// Evaluates the martingale and its discounted integral along a path.
///
/// `Y` is piecewise constant, so the compensator integral over each piece
/// is exact: `(lambda v^2 + J v) * dt` for the plain martingale and
/// `(lambda v^2 + J v) (1 - e^{-J dt}) / J` for the discounted one, with
/// the running value damped by `e^{-J dt}` across each piece.
pub fn martingale_functional(traj: &Trajectory, params: &ModelParams) -> MartingalePath {
    let d = params.derived();
    let lambda = params.lambda();
    let n = traj.population() as f64;
    let y = |x: usize| x as f64 / n - d.x_star;

    let event_times = traj.times();
    let states = traj.states();
    let horizon_tail = traj.t_end() > *event_times.last().unwrap();
    let len = event_times.len() + usize::from(horizon_tail);

    let mut times = Vec::with_capacity(len);
    let mut martingale = Vec::with_capacity(len);
    let mut discounted = Vec::with_capacity(len);
    times.push(0.0);
    martingale.push(0.0);
    discounted.push(0.0);

    let mut m = 0.0;
    let mut disc = 0.0;
    let push_piece = |from: usize, t_hi: f64, jump: f64, m: &mut f64, disc: &mut f64| {
        let v = y(states[from]);
        let dt = t_hi - event_times[from];
        let drift = lambda * v * v + d.j * v;
        *m += drift * dt + jump;
        let damp = (-d.j * dt).exp();
        *disc = *disc * damp + drift * (1.0 - damp) / d.j + jump;
    };

    for i in 1..event_times.len() {
        let jump = y(states[i]) - y(states[i - 1]);
        push_piece(i - 1, event_times[i], jump, &mut m, &mut disc);
        times.push(event_times[i]);
        martingale.push(m);
        discounted.push(disc);
    }
    if horizon_tail {
        push_piece(event_times.len() - 1, traj.t_end(), 0.0, &mut m, &mut disc);
        times.push(traj.t_end());
        martingale.push(m);
        discounted.push(disc);
    }
    MartingalePath {
        times,
        martingale,
        discounted,
    }
}

/// First event time at which the scaled state leaves `interval`; `None`
/// when the whole path stays inside. An initial state outside returns 0.
pub fn exit_time(traj: &Trajectory, interval: &ScaledInterval) -> Option<f64> {
    traj.first_exit_after(interval, 0.0)
}
