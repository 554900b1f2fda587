//! Event-driven stochastic simulation.
//!
//! Exact-in-law continuous-time paths of the chain (Gillespie's direct
//! method), independently coupled pairs, the chain reflected at the
//! boundary of a good set, and the path functionals used by the
//! concentration experiments.

mod coupling;
mod functional;
mod good_set;
mod path;
mod reflected;
mod rng;

pub use coupling::{simulate_coupled, CouplingTrace};
pub use functional::{exit_time, martingale_functional, sup_deviation, MartingalePath};
pub use good_set::{default_radius, GoodSet, ScaledInterval};
pub use path::{simulate_path, Trajectory};
pub use reflected::simulate_reflected;
pub use rng::Seed;

pub(crate) use rng::exp_time;
