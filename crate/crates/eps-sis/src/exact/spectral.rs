//! Spectral gap of the generator.
//!
//! Birth-death chains are reversible, so `-Q` is similar (via the diagonal
//! scaling by `sqrt(pi)`) to the symmetric tridiagonal matrix with
//! diagonal `birth(x) + death(x)` and off-diagonal
//! `-sqrt(birth(x) * death(x+1))`. Its eigenvalues are real and
//! nonnegative with a simple zero; the gap is the second-smallest one,
//! found by Sturm-count bisection (the negative-pivot count of the
//! shifted LDL^T factorization equals the number of eigenvalues below the
//! shift).

use serde::Serialize;

use crate::chain::ModelParams;

/// Smallest nonzero eigenvalue of `-Q` and its reciprocal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralGap {
    /// Smallest nonzero eigenvalue of `-Q`; strictly positive for every
    /// irreducible finite chain.
    pub gap: f64,
    /// Relaxation time `1 / gap`.
    pub relaxation_time: f64,
}

/// Number of eigenvalues of the symmetric tridiagonal `(diag, off)`
/// strictly below `shift`.
fn sturm_count(diag: &[f64], off_sq: &[f64], shift: f64) -> usize {
    let mut count = 0;
    let mut d = diag[0] - shift;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        if d == 0.0 {
            // Standard zero-pivot guard.
            d = f64::MIN_POSITIVE;
        }
        d = (diag[i] - shift) - off_sq[i - 1] / d;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Spectral gap and relaxation time of the chain's generator.
pub fn spectral_gap(params: &ModelParams) -> SpectralGap {
    let n = params.n();
    let diag: Vec<f64> = (0..=n)
        .map(|x| params.birth_raw(x) + params.death_raw(x))
        .collect();
    let off_sq: Vec<f64> = (0..n)
        .map(|x| params.birth_raw(x) * params.death_raw(x + 1))
        .collect();

    // Gershgorin upper bound for the largest eigenvalue.
    let mut hi = 0.0f64;
    for x in 0..=n {
        let mut row = diag[x];
        if x > 0 {
            row += off_sq[x - 1].sqrt();
        }
        if x < n {
            row += off_sq[x].sqrt();
        }
        hi = hi.max(row);
    }

    // Bisect for the second-smallest eigenvalue: the infimum of shifts
    // with at least two eigenvalues below them.
    let mut lo = 0.0f64;
    let scale = hi;
    while hi - lo > 1e-13 * scale {
        let mid = 0.5 * (lo + hi);
        if sturm_count(&diag, &off_sq, mid) >= 2 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let gap = 0.5 * (lo + hi);
    SpectralGap {
        gap,
        relaxation_time: 1.0 / gap,
    }
}
