//! Exact and Monte Carlo analysis of the logistic SIS epidemic chain with
//! self-infection (the eps-SIS chain).
//!
//! The chain on `{0, .., N}` jumps up at rate
//! `lambda x (1 - x/N) + epsilon (N - x)` and down at rate `mu x`. With
//! `epsilon > 0` it has a non-degenerate stationary law, concentrates
//! around the fixed point `x_star` of the mean-field logistic equation,
//! and its worst-case total-variation distance to stationarity collapses
//! around `t_n = log(N) / (2J)` with a window of constant order, where
//! `J = sqrt((lambda - mu - epsilon)^2 + 4 lambda epsilon)`.
//!
//! The crate provides:
//!
//! - [`chain`]: parameters, transition rates, generator rows, derived
//!   constants;
//! - [`deterministic`]: closed forms for the mean-field equation and its
//!   envelopes;
//! - [`exact`]: stationary law (detailed balance), transient law
//!   (uniformization), TV distances, mixing profiles and times, moments,
//!   spectral gap;
//! - [`simulate`]: exact event-driven paths, coupled pairs, the reflected
//!   chain, path functionals, reproducible replication streams;
//! - [`experiments`]: the full verification suite (cutoff scan,
//!   concentration scans, coupling tails, phase analysis, stationary
//!   concentration, lower-bound witness) with CSV/JSON reporting;
//! - [`config`] and [`cli`]: the file/flag configuration surface and the
//!   subcommand dispatcher behind the `eps-sis` binary.
//!
//! Runnable demonstrations of every capability live in `examples/`.

pub mod chain;
pub mod cli;
pub mod config;
pub mod deterministic;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod simulate;

pub use chain::{DerivedQuantities, GeneratorRow, ModelParams};
pub use error::{Error, Result};
