//! The logistic SIS birth-death chain with self-infection.
//!
//! The chain `X_N(t)` lives on `{0, 1, .., N}` and jumps
//!
//! ```text
//! x -> x+1   at rate   lambda * x * (1 - x/N) + epsilon * (N - x)
//! x -> x-1   at rate   mu * x
//! ```
//!
//! Infected individuals contact uniformly random members of the population
//! at rate `lambda` and recover at rate `mu`; susceptibles additionally
//! catch the infection from an external reservoir at rate `epsilon`.
//! With `epsilon > 0` the chain is irreducible and has a non-degenerate
//! stationary law.
//!
//! This module holds the defining parameters, the transition rates, the
//! tridiagonal generator rows, and the closed-form constants derived from
//! them: the drift rate `J`, the fixed points `x_star` and `x1_star` of the
//! scaled drift, the reference time `t_n = log(N) / (2J)`, and
//! `k = (lambda + mu + epsilon) / (2J)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Defining constants of the chain: contact rate `lambda`, recovery rate
/// `mu`, self-infection rate `epsilon` (all strictly positive) and the
/// population size `N >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    lambda: f64,
    mu: f64,
    epsilon: f64,
    n: usize,
}

/// Closed-form constants derived from [`ModelParams`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedQuantities {
    /// `J = sqrt((lambda - mu - epsilon)^2 + 4 * lambda * epsilon)`, the
    /// exponential decay rate of the scaled drift around `x_star`.
    pub j: f64,
    /// Stable fixed point of the scaled drift, in `(0, 1)`.
    pub x_star: f64,
    /// The other (non-positive) root of the scaled drift.
    pub x1_star: f64,
    /// `log(N) / (2J)`, the reference mixing time scale.
    pub t_n: f64,
    /// `(lambda + mu + epsilon) / (2J)`.
    pub k: f64,
}

/// One row of the tridiagonal generator: rates out of a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorRow {
    /// Rate of `x -> x-1`. Zero at `x = 0`.
    pub down: f64,
    /// Rate of `x -> x+1`. Zero at `x = N`.
    pub up: f64,
    /// Diagonal entry, `-(down + up)`; row sums are exactly zero.
    pub diag: f64,
}

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must be a finite positive number, got {value}"),
        });
    }
    Ok(())
}

impl ModelParams {
    /// Validates and builds a parameter set. All three rates must be
    /// strictly positive (`epsilon = 0` is the classical SIS chain, which
    /// is absorbing at 0 and out of scope here) and `n >= 1`.
    pub fn new(lambda: f64, mu: f64, epsilon: f64, n: usize) -> Result<Self> {
        require_positive("lambda", lambda)?;
        require_positive("mu", mu)?;
        require_positive("epsilon", epsilon)?;
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "N",
                reason: "population size must be at least 1".to_string(),
            });
        }
        Ok(Self {
            lambda,
            mu,
            epsilon,
            n,
        })
    }

    /// Contact rate.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Recovery rate.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Self-infection rate.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Population size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Population size as a float.
    pub fn n_f64(&self) -> f64 {
        self.n as f64
    }

    /// Same rates, different population size.
    pub fn with_population(&self, n: usize) -> Result<Self> {
        Self::new(self.lambda, self.mu, self.epsilon, n)
    }

    fn check_state(&self, x: usize) -> Result<()> {
        if x > self.n {
            return Err(Error::StateOutOfRange {
                state: x,
                max: self.n,
            });
        }
        Ok(())
    }

    /// Upward jump rate `lambda * x * (1 - x/N) + epsilon * (N - x)`.
    ///
    /// Zero exactly at `x = N`. The proportion `x/N` is formed before
    /// multiplying so the absolute rounding error stays `O(N * ulp)` for
    /// large populations. Out-of-range states are rejected: they indicate
    /// a caller bug, not data.
    pub fn birth_rate(&self, x: usize) -> Result<f64> {
        self.check_state(x)?;
        Ok(self.birth_raw(x))
    }

    /// Downward jump rate `mu * x`. Zero exactly at `x = 0`.
    pub fn death_rate(&self, x: usize) -> Result<f64> {
        self.check_state(x)?;
        Ok(self.death_raw(x))
    }

    pub(crate) fn birth_raw(&self, x: usize) -> f64 {
        let n = self.n_f64();
        let xf = x as f64;
        self.lambda * xf * (1.0 - xf / n) + self.epsilon * ((self.n - x) as f64)
    }

    pub(crate) fn death_raw(&self, x: usize) -> f64 {
        self.mu * x as f64
    }

    /// Generator row at `x`: `(down, up, diag)` with `diag = -(down + up)`.
    pub fn generator_row(&self, x: usize) -> Result<GeneratorRow> {
        self.check_state(x)?;
        let down = self.death_raw(x);
        let up = self.birth_raw(x);
        Ok(GeneratorRow {
            down,
            up,
            diag: -(down + up),
        })
    }

    /// All derived closed-form constants.
    pub fn derived(&self) -> DerivedQuantities {
        let a = self.lambda - self.mu - self.epsilon;
        let j = (a * a + 4.0 * self.lambda * self.epsilon).sqrt();
        DerivedQuantities {
            j,
            x_star: (a + j) / (2.0 * self.lambda),
            x1_star: (a - j) / (2.0 * self.lambda),
            t_n: self.n_f64().ln() / (2.0 * j),
            k: (self.lambda + self.mu + self.epsilon) / (2.0 * j),
        }
    }

    /// The uniform event-rate bound `q = (lambda + mu + epsilon) * N`;
    /// `birth_rate(x) + death_rate(x) <= q` for every state.
    pub fn uniformization_rate(&self) -> f64 {
        (self.lambda + self.mu + self.epsilon) * self.n_f64()
    }

    /// Lower bound `(mu min epsilon) * N` on the total event rate; the
    /// quadratic `birth + death` is minimised at one of the two endpoints,
    /// where it equals `epsilon * N` or `mu * N`.
    pub fn min_total_rate(&self) -> f64 {
        self.mu.min(self.epsilon) * self.n_f64()
    }
}
