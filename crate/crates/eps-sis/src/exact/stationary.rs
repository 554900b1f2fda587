//! Stationary law via detailed balance.

use crate::chain::ModelParams;
use crate::exact::{compensated_sum, ProbabilityVector};

/// Stationary distribution of the chain, from the detailed-balance
/// recursion `pi(x+1) / pi(x) = birth(x) / death(x+1)`.
///
/// The unnormalized weights are built as cumulative log-ratios and
/// normalized by log-sum-exp: direct products of N rate ratios overflow
/// already around N of a few thousand, while the log weights stay small.
pub fn stationary_distribution(params: &ModelParams) -> ProbabilityVector {
    let n = params.n();
    let mut log_w = Vec::with_capacity(n + 1);
    log_w.push(0.0);
    let mut acc = 0.0;
    for x in 0..n {
        // birth_raw(x) > 0 for x < N and death_raw(x+1) > 0 always.
        acc += params.birth_raw(x).ln() - params.death_raw(x + 1).ln();
        log_w.push(acc);
    }
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut w: Vec<f64> = log_w.iter().map(|&l| (l - max).exp()).collect();
    let z = compensated_sum(w.iter().copied());
    for v in &mut w {
        *v /= z;
    }
    ProbabilityVector::from_normalized(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_state_chain() {
        // N = 1: up-rate epsilon, down-rate mu; pi(1) = eps / (eps + mu).
        let p = ModelParams::new(1.0, 2.0, 0.5, 1).unwrap();
        let pi = stationary_distribution(&p);
        assert!((pi.values()[0] - 0.8).abs() < 1e-15);
        assert!((pi.values()[1] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn detailed_balance_holds() {
        // States whose weight underflows the representable range hold
        // exact zeros; the ratio identity is checked wherever both sides
        // carry representable mass.
        for n in [1usize, 7, 100, 3200] {
            let p = ModelParams::new(1.0, 2.0, 0.5, n).unwrap();
            let pi = stationary_distribution(&p);
            for x in 0..n {
                let lhs = pi.values()[x] * p.birth_raw(x);
                let rhs = pi.values()[x + 1] * p.death_raw(x + 1);
                let scale = lhs.max(rhs);
                if scale > 1e-290 {
                    assert!(
                        (lhs - rhs).abs() / scale <= 1e-12,
                        "n={n} x={x}: relative residual {}",
                        (lhs - rhs).abs() / scale
                    );
                }
            }
        }
    }

    #[test]
    fn generator_residual_is_tiny() {
        for n in [1usize, 50, 400] {
            let p = ModelParams::new(1.3, 0.9, 0.2, n).unwrap();
            let pi = stationary_distribution(&p);
            let v = pi.values();
            let mut worst: f64 = 0.0;
            for x in 0..=n {
                let mut r = -v[x] * (p.birth_raw(x) + p.death_raw(x));
                if x > 0 {
                    r += v[x - 1] * p.birth_raw(x - 1);
                }
                if x < n {
                    r += v[x + 1] * p.death_raw(x + 1);
                }
                worst = worst.max(r.abs());
            }
            assert!(
                worst <= 1e-12 * p.uniformization_rate(),
                "n={n}: residual {worst}"
            );
        }
    }
}
