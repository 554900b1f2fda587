//! Shared test oracles, independent of the library's evaluation paths.

/// Adaptive Dormand-Prince 5(4) integration of a scalar ODE
/// `dy/dt = f(t, y)` from `(t0, y0)` to `t_end`.
///
/// This is the independent oracle for every closed-form solution in the
/// library: it sees only the drift function, never the closed form.
#[allow(dead_code)]
pub fn rk45<F: Fn(f64, f64) -> f64>(f: F, t0: f64, y0: f64, t_end: f64, tol: f64) -> f64 {
    assert!(t_end >= t0);
    if t_end == t0 {
        return y0;
    }
    let mut t = t0;
    let mut y = y0;
    let mut h = (t_end - t0) / 100.0;
    let mut k1 = f(t, y);
    while t < t_end {
        if t + h > t_end {
            h = t_end - t;
        }
        let k2 = f(t + h / 5.0, y + h * (k1 / 5.0));
        let k3 = f(t + 3.0 * h / 10.0, y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
        let k4 = f(
            t + 4.0 * h / 5.0,
            y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3),
        );
        let k5 = f(
            t + 8.0 * h / 9.0,
            y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3
                - 212.0 / 729.0 * k4),
        );
        let k6 = f(
            t + h,
            y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3
                + 49.0 / 176.0 * k4
                - 5103.0 / 18656.0 * k5),
        );
        let y5 = y + h
            * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4
                - 2187.0 / 6784.0 * k5
                + 11.0 / 84.0 * k6);
        let k7 = f(t + h, y5);
        let y4 = y + h
            * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 + 393.0 / 640.0 * k4
                - 92097.0 / 339200.0 * k5
                + 187.0 / 2100.0 * k6
                + k7 / 40.0);
        let scale = tol + tol * y.abs().max(y5.abs());
        let err = ((y5 - y4) / scale).abs();
        if err <= 1.0 {
            t += h;
            y = y5;
            k1 = k7; // first-same-as-last
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
    }
    y
}

#[allow(dead_code)]
pub fn chi_square_two_cell(obs_up: usize, obs_down: usize, p_up: f64) -> f64 {
    let n = (obs_up + obs_down) as f64;
    let exp_up = n * p_up;
    let exp_down = n * (1.0 - p_up);
    (obs_up as f64 - exp_up).powi(2) / exp_up + (obs_down as f64 - exp_down).powi(2) / exp_down
}

/// Exact probability that the chain leaves the state window
/// `[lo, hi]` by time `t`, by uniformization of the chain with the two
/// boundary states made absorbing. Independent of the library's
/// transient solver (hand-rolled kernel, no shared code path).
#[allow(dead_code)]
pub fn exact_exit_probability(
    params: &eps_sis::ModelParams,
    x0: usize,
    lo: usize,
    hi: usize,
    t: f64,
) -> f64 {
    let n = params.n();
    assert!(lo >= 1 && hi + 1 <= n && lo <= x0 && x0 <= hi);
    let q = params.uniformization_rate();
    let mut birth: Vec<f64> = (0..=n).map(|x| params.birth_rate(x).unwrap() / q).collect();
    let mut death: Vec<f64> = (0..=n).map(|x| params.death_rate(x).unwrap() / q).collect();
    for a in [lo - 1, hi + 1] {
        birth[a] = 0.0;
        death[a] = 0.0;
    }
    let m = q * t;
    let k_hi = (m + 12.0 * m.sqrt() + 30.0).ceil() as usize;
    let mut v = vec![0.0f64; n + 1];
    v[x0] = 1.0;
    let mut acc = vec![0.0f64; n + 1];
    // Poisson weights by recurrence from the mode (an intentionally
    // different scheme from the library's per-term log pmf).
    let mode = m.floor() as usize;
    let mut w = vec![0.0f64; k_hi + 1];
    w[mode.min(k_hi)] = 1.0;
    for k in (mode.min(k_hi) + 1)..=k_hi {
        w[k] = w[k - 1] * m / k as f64;
    }
    for k in (0..mode.min(k_hi)).rev() {
        w[k] = w[k + 1] * (k + 1) as f64 / m;
    }
    let z: f64 = w.iter().sum();
    for k in 0..=k_hi {
        let wk = w[k] / z;
        for (a, &vi) in acc.iter_mut().zip(&v) {
            *a += wk * vi;
        }
        let mut next = vec![0.0f64; n + 1];
        for x in 0..=n {
            let mut y = v[x] * (1.0 - birth[x] - death[x]);
            if x > 0 {
                y += v[x - 1] * birth[x - 1];
            }
            if x < n {
                y += v[x + 1] * death[x + 1];
            }
            next[x] = y;
        }
        v = next;
    }
    acc[..lo].iter().sum::<f64>() + acc[hi + 1..].iter().sum::<f64>()
}
