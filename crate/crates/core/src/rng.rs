//! Reproducible counter-based random streams.
//!
//! Every sampler in this crate takes a [`RandomStream`], a (master seed,
//! stream id) pair. The same pair always yields the same ChaCha stream, and
//! distinct stream ids select distinct 64-bit counter prefixes of the same
//! keyed cipher, so replicates can fan out across workers without
//! coordination.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Handle for one deterministic substream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RandomStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self {
            master_seed,
            stream_id,
        }
    }

    /// Replicate `i` of the experiment seeded by this stream's master seed.
    pub fn substream(&self, i: u64) -> Self {
        Self {
            master_seed: self.master_seed,
            stream_id: self.stream_id.wrapping_add(i),
        }
    }

    /// Instantiate the generator. Same (master_seed, stream_id) gives a
    /// bit-identical sequence.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}
