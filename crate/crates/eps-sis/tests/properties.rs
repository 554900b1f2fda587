//! Property suites over random parameter sets.

use eps_sis::deterministic::{decay_bound, mean_envelope, ode_solution};
use eps_sis::exact::{stationary_distribution, tv_distance, ProbabilityVector};
use eps_sis::simulate::{simulate_path, sup_deviation, Seed};
use eps_sis::ModelParams;
use proptest::prelude::*;

fn rate() -> impl Strategy<Value = f64> {
    0.05f64..5.0
}

fn arb_params() -> impl Strategy<Value = ModelParams> {
    (rate(), rate(), rate(), 1usize..400)
        .prop_map(|(l, m, e, n)| ModelParams::new(l, m, e, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn total_rate_within_uniformization_bounds(p in arb_params(), frac in 0.0f64..=1.0) {
        let x = (frac * p.n() as f64).round() as usize;
        let row = p.generator_row(x).unwrap();
        prop_assert!(row.up >= 0.0 && row.down >= 0.0);
        // Row sums vanish exactly: diag is defined as the negated sum.
        prop_assert_eq!(row.up + row.down + row.diag, 0.0);
        let total = row.up + row.down;
        prop_assert!(total <= p.uniformization_rate() * (1.0 + 1e-12));
        prop_assert!(total >= p.min_total_rate() * (1.0 - 1e-12));
    }

    #[test]
    fn fixed_point_strictly_interior(p in arb_params()) {
        let d = p.derived();
        prop_assert!(d.j > 0.0);
        prop_assert!(d.x_star > 0.0 && d.x_star < 1.0);
        prop_assert!(d.x1_star <= 0.0);
        let f = p.lambda() * d.x_star * (1.0 - d.x_star)
            + p.epsilon() * (1.0 - d.x_star)
            - p.mu() * d.x_star;
        prop_assert!(f.abs() < 1e-12);
    }

    #[test]
    fn ode_stays_in_unit_interval_with_semigroup(
        p in arb_params(),
        alpha in 0.0f64..=1.0,
        s in 0.0f64..3.0,
        t in 0.0f64..3.0,
    ) {
        let x = ode_solution(&p, alpha, s + t).unwrap();
        prop_assert!((0.0..=1.0).contains(&x));
        let mid = ode_solution(&p, alpha, s).unwrap();
        let two = ode_solution(&p, mid, t).unwrap();
        prop_assert!((x - two).abs() < 1e-10);
        // The exponential envelope dominates.
        let d = p.derived();
        let dev = (x - d.x_star).abs();
        prop_assert!(dev <= decay_bound(&p, alpha - d.x_star, s + t).unwrap() + 1e-12);
    }

    #[test]
    fn envelopes_are_ordered(p in arb_params(), y0 in -0.2f64..0.7, frac in 0.0f64..0.9, t in 0.0f64..5.0) {
        let d = p.derived();
        let delta = frac * d.j * 0.5;
        let c3 = -d.j / p.lambda() + delta / (2.0 * p.lambda());
        prop_assume!(y0 > c3 + 1e-9);
        let env = mean_envelope(&p, y0, delta, t).unwrap();
        prop_assert!(env.lower <= env.upper + 1e-12);
    }

    #[test]
    fn stationary_law_is_normalized_and_invariant(p in arb_params()) {
        let pi = stationary_distribution(&p);
        let sum: f64 = pi.values().iter().sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
        let mut worst: f64 = 0.0;
        for x in 0..=p.n() {
            let mut r = -pi.values()[x] * (p.birth_rate(x).unwrap() + p.death_rate(x).unwrap());
            if x > 0 {
                r += pi.values()[x - 1] * p.birth_rate(x - 1).unwrap();
            }
            if x < p.n() {
                r += pi.values()[x + 1] * p.death_rate(x + 1).unwrap();
            }
            worst = worst.max(r.abs());
        }
        prop_assert!(worst <= 1e-12 * p.uniformization_rate());
    }

    #[test]
    fn tv_distance_is_a_bounded_metric(
        raw_a in proptest::collection::vec(0.0f64..1.0, 5),
        raw_b in proptest::collection::vec(0.0f64..1.0, 5),
    ) {
        let norm = |v: Vec<f64>| {
            let s: f64 = v.iter().sum::<f64>().max(1e-9);
            ProbabilityVector::from_values(v.iter().map(|x| x / s).collect()).unwrap()
        };
        let a = norm(raw_a);
        let b = norm(raw_b);
        let d = tv_distance(&a, &b).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
        prop_assert_eq!(tv_distance(&b, &a).unwrap(), d);
        prop_assert_eq!(tv_distance(&a, &a).unwrap(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn simulated_paths_are_well_formed(
        p in arb_params(),
        frac in 0.0f64..=1.0,
        seed in 0u64..1000,
        t_max in 0.0f64..2.0,
    ) {
        let x0 = (frac * p.n() as f64).round() as usize;
        let traj = simulate_path(&p, x0, t_max, Seed::new(seed, 0)).unwrap();
        prop_assert_eq!(traj.states()[0], x0);
        prop_assert!(traj.states().iter().all(|&x| x <= p.n()));
        for w in traj.times().windows(2) {
            prop_assert!(w[1] > w[0]);
        }
        for w in traj.states().windows(2) {
            prop_assert_eq!(w[0].abs_diff(w[1]), 1);
        }
        let dev = sup_deviation(&traj, &p).unwrap();
        prop_assert!((0.0..=1.0).contains(&dev));
    }
}
