//! Reproducible replication streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

/// Identifies one replication's random stream.
///
/// Streams are derived from `(master, replication)` by counter-based
/// splitting: the master seed keys the generator and the replication
/// index selects an independent ChaCha stream. Replications can therefore
/// run on any thread in any order and still produce identical output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Seed {
    /// Experiment-wide master seed.
    pub master: u64,
    /// Replication index within the experiment.
    pub replication: u64,
}

impl Seed {
    /// Bundles a master seed with a replication index.
    pub fn new(master: u64, replication: u64) -> Self {
        Self {
            master,
            replication,
        }
    }

    /// The generator for this replication.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master);
        rng.set_stream(self.replication);
        rng
    }
}

/// Exponential holding time with the given rate, by inversion.
pub(crate) fn exp_time(rng: &mut ChaCha12Rng, rate: f64) -> f64 {
    let mut u: f64 = rng.random();
    if u <= 0.0 {
        u = f64::MIN_POSITIVE;
    }
    -u.ln() / rate
}
