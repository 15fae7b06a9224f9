//! Reproducible random streams.
//!
//! A stream is addressed by `(master_seed, stream_index)`. The master seed is
//! expanded into a ChaCha8 key and the index selects the ChaCha stream, so
//! distinct indices under one key never overlap and a stream can be rebuilt
//! anywhere without coordination between threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags used to derive independent child streams from one record stream.
pub mod purpose {
    pub const SAMPLE: u64 = 0x5341_4d50_4c45;
    pub const SIMULATE: u64 = 0x5349_4d55_4c41;
    pub const NOISE: u64 = 0x004e_4f49_5345;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub const fn new(master_seed: u64, stream_index: u64) -> Self {
        Self {
            master_seed,
            stream_index,
        }
    }

    /// Builds the generator for this stream, positioned at its first draw.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        let mut state = self.master_seed;
        for chunk in key.chunks_exact_mut(8) {
            state = splitmix64(state);
            chunk.copy_from_slice(&state.to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.stream_index);
        rng
    }

    /// Child stream with the same index under a key derived from `tag`.
    pub fn derive(&self, tag: u64) -> Self {
        Self {
            master_seed: splitmix64(self.master_seed ^ splitmix64(tag)),
            stream_index: self.stream_index,
        }
    }
}
