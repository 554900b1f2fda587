//! Exact finite-N analysis of the chain.
//!
//! Stationary law by detailed balance (log-space), transient law by
//! uniformization, total-variation distances, worst-case mixing profiles
//! and mixing times, transient moments, and the spectral gap of the
//! generator. Everything in this module is deterministic numerics; the
//! Monte Carlo counterpart lives in [`crate::simulate`].

mod mixing;
mod spectral;
mod stationary;
mod transient;

pub use mixing::{mixing_profile, mixing_time, MixingProfile, StartSet};
pub use spectral::{spectral_gap, SpectralGap};
pub use stationary::stationary_distribution;
pub use transient::{
    transient_distribution, transient_distribution_with, transient_moments, uniformization_steps,
    Moments, Transient, UniformizationOptions,
};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest admissible defect `|sum - 1|` before renormalization.
pub(crate) const MAX_PRENORM_DEFECT: f64 = 1e-9;

/// Compensated (Neumaier) summation; keeps probability-vector bookkeeping
/// well below the 1e-12 tolerance even for long vectors.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// A probability distribution on the state space `{0, .., N}`.
///
/// Entries are nonnegative and sum to one within 1e-12. Carrier of both
/// the stationary law and transient laws `P^t(x, .)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityVector {
    values: Vec<f64>,
}

impl ProbabilityVector {
    /// Builds a distribution from raw values, renormalizing. Rejects
    /// negative entries, empty input, and pre-normalization defects above
    /// 1e-9 (large defects indicate a numerical failure upstream, not a
    /// rounding artifact worth hiding).
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::check_and_normalize(values, MAX_PRENORM_DEFECT)
    }

    pub(crate) fn check_and_normalize(mut values: Vec<f64>, max_defect: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("empty probability vector".to_string()));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Numerical(format!(
                    "probability entry {i} is {v}; entries must be finite and nonnegative"
                )));
            }
        }
        let sum = compensated_sum(values.iter().copied());
        if (sum - 1.0).abs() > max_defect {
            return Err(Error::Numerical(format!(
                "pre-normalization defect |{sum} - 1| exceeds {max_defect}"
            )));
        }
        if sum != 1.0 {
            for v in &mut values {
                *v /= sum;
            }
        }
        Ok(Self { values })
    }

    /// For construction sites that have already normalized in place.
    pub(crate) fn from_normalized(values: Vec<f64>) -> Self {
        debug_assert!((compensated_sum(values.iter().copied()) - 1.0).abs() < 1e-12);
        Self { values }
    }

    /// Point mass at state `x` on a space with `len` states.
    pub fn point_mass(len: usize, x: usize) -> Result<Self> {
        if x >= len {
            return Err(Error::StateOutOfRange {
                state: x,
                max: len.saturating_sub(1),
            });
        }
        let mut values = vec![0.0; len];
        values[x] = 1.0;
        Ok(Self { values })
    }

    /// Number of states (`N + 1` for the chain on `{0, .., N}`).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when the vector has no entries (never holds for constructed
    /// instances; present for clippy-completeness).
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The underlying probabilities, indexed by state.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Mean state `sum_x x p(x)`.
    pub fn mean(&self) -> f64 {
        compensated_sum(self.values.iter().enumerate().map(|(i, &p)| i as f64 * p))
    }

    /// Variance of the state.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        compensated_sum(
            self.values
                .iter()
                .enumerate()
                .map(|(i, &p)| (i as f64 - m).powi(2) * p),
        )
    }

    /// Probability mass on `{x : |x - center| <= radius}`.
    pub fn mass_within(&self, center: f64, radius: f64) -> f64 {
        compensated_sum(
            self.values
                .iter()
                .enumerate()
                .filter(|(i, _)| (*i as f64 - center).abs() <= radius)
                .map(|(_, &p)| p),
        )
    }
}

/// Total variation distance `(1/2) sum_i |p_i - q_i|`, in `[0, 1]`.
pub fn tv_distance(p: &ProbabilityVector, q: &ProbabilityVector) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let s = compensated_sum(
        p.values
            .iter()
            .zip(&q.values)
            .map(|(&a, &b)| (a - b).abs()),
    );
    Ok(0.5 * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_and_moments() {
        let p = ProbabilityVector::point_mass(11, 3).unwrap();
        assert_eq!(p.mean(), 3.0);
        assert_eq!(p.variance(), 0.0);
        assert!(ProbabilityVector::point_mass(11, 11).is_err());
    }

    #[test]
    fn from_values_normalizes_and_guards() {
        let p = ProbabilityVector::from_values(vec![0.25, 0.25, 0.5 + 3e-10]).unwrap();
        assert!((compensated_sum(p.values().iter().copied()) - 1.0).abs() < 1e-15);
        assert!(ProbabilityVector::from_values(vec![0.5, -0.5, 1.0]).is_err());
        assert!(ProbabilityVector::from_values(vec![0.6, 0.6]).is_err());
        assert!(ProbabilityVector::from_values(vec![]).is_err());
    }

    #[test]
    fn tv_examples() {
        let a = ProbabilityVector::from_values(vec![1.0, 0.0]).unwrap();
        let b = ProbabilityVector::from_values(vec![0.5, 0.5]).unwrap();
        assert_eq!(tv_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(tv_distance(&a, &b).unwrap(), 0.5);
        let p0 = ProbabilityVector::point_mass(101, 0).unwrap();
        let pn = ProbabilityVector::point_mass(101, 100).unwrap();
        assert_eq!(tv_distance(&p0, &pn).unwrap(), 1.0);
        let short = ProbabilityVector::point_mass(5, 0).unwrap();
        assert!(tv_distance(&p0, &short).is_err());
    }

    #[test]
    fn mass_within_is_monotone_in_radius() {
        let p = ProbabilityVector::from_values(vec![0.1, 0.2, 0.4, 0.2, 0.1]).unwrap();
        assert!((p.mass_within(2.0, 0.0) - 0.4).abs() < 1e-15);
        assert!((p.mass_within(2.0, 1.0) - 0.8).abs() < 1e-15);
        assert!((p.mass_within(2.0, 2.0) - 1.0).abs() < 1e-15);
    }
}
