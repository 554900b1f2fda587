//! Behaviour of the experiment layer at moderate scale.

use eps_sis::experiments::report::wilson;
use eps_sis::experiments::{
    coupling_tail, lower_bound_witness, phase_verification, stationary_concentration,
};
use eps_sis::simulate::{default_radius, GoodSet};
use eps_sis::ModelParams;

fn params(n: usize) -> ModelParams {
    ModelParams::new(1.0, 2.0, 0.5, n).unwrap()
}

fn good(p: &ModelParams) -> GoodSet {
    GoodSet::new(p, default_radius(p), 0.5).unwrap()
}

#[test]
fn final_phase_failure_is_monotone_in_xi() {
    let p = params(300);
    let g = good(&p);
    let fail = |xi: f64| {
        let rep = phase_verification(&p, 0, 300, xi, 400, 21, &g).unwrap();
        rep.final_phase.trials - rep.final_phase.successes
    };
    assert!(fail(64.0) <= fail(4.0));
}

#[test]
fn burn_in_succeeds_at_moderate_population() {
    let p = params(2000);
    let g = good(&p);
    let rep = phase_verification(&p, 0, 2000, 4.0, 1000, 5, &g).unwrap();
    assert!(
        rep.burn_in.frequency >= 0.99,
        "burn-in frequency {}",
        rep.burn_in.frequency
    );
}

#[test]
fn intermediate_phase_fit_then_validate() {
    // Fit the contraction constant at xi = 2 (as a Wilson upper bound so
    // it is never zero), then check the exponential failure shape at
    // xi = 4 and 8.
    let p = params(2000);
    let g = good(&p);
    let j = p.derived().j;
    let reps = 1000;
    let failure = |xi: f64| {
        let rep = phase_verification(&p, 0, 2000, xi, reps, 99, &g).unwrap();
        let s = rep.intermediate;
        (s.trials - s.successes, s.trials)
    };
    let (f2, n2) = failure(2.0);
    let c_bar = wilson(f2, n2).hi / (-0.5 * j * 2.0).exp();
    for xi in [4.0, 8.0] {
        let (f, n) = failure(xi);
        let bound = 2.0 * c_bar * (-0.5 * j * xi).exp();
        assert!(
            f as f64 / n as f64 <= bound,
            "xi={xi}: failure {f}/{n} above 2 C e^(-J xi / 2) = {bound}"
        );
    }
}

#[test]
fn coupling_tail_extreme_pair_at_n_1000() {
    // At xi = 16 the dominant-term bound (with slack 2) holds; it is a
    // loose constant-order check of the tail's normalization.
    let p = params(1000);
    let rep = coupling_tail(&p, 0, 1000, &[1.0, 4.0, 16.0], 10_000, 7, 1.0).unwrap();
    let last = rep.rows.last().unwrap();
    let bound = 2.0 * (4.0 / p.mu().min(p.epsilon()).sqrt()) / 16.0f64.sqrt();
    assert!(last.tail <= bound, "tail {} above {bound}", last.tail);
    // In practice almost every pair has met long before t_n + 16.
    assert!(last.tail < 0.05);
}

#[test]
fn stationary_concentration_tail_shrinks_with_radius() {
    let p = params(1);
    let grid: Vec<f64> = (1..=12).map(|i| i as f64 * 0.5).collect();
    let rep = stationary_concentration(&p, &[200, 400], &grid).unwrap();
    for row in &rep.rows {
        for w in row.tails.windows(2) {
            assert!(w[1] <= w[0] + 1e-15);
        }
        assert!(row.c_min > 0.0);
    }
}

#[test]
fn lower_bound_witness_at_a_feasible_offset() {
    // t_n(1000) is about 1.675, so xi = 1.6 evaluates at a small positive
    // time: the walk started above the fixed point has not reached the
    // stationary ball, and the exact separation is nearly total.
    let p = params(1000);
    let rep = lower_bound_witness(&p, 1.6, None).unwrap();
    assert!(rep.t_eval > 0.0);
    assert!(rep.tv >= 0.9, "TV {}", rep.tv);
    assert!(rep.mass_in_ball <= 0.1, "ball mass {}", rep.mass_in_ball);
    assert!(rep.pi_mass_in_ball >= 0.95);
}
