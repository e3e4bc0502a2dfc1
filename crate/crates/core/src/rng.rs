//! Counter-based random streams.
//!
//! Every random quantity in an experiment is drawn from a ChaCha8 stream keyed
//! by `(master seed, ensemble id)` and selected by the sample index. No stream
//! depends on which thread consumed another, so ensembles come out identical
//! under any schedule and can be sharded across processes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StreamKey {
    pub master: u64,
    pub ensemble: u64,
}

impl StreamKey {
    pub fn new(master: u64, ensemble: u64) -> Self {
        Self { master, ensemble }
    }

    /// Key for a named ensemble; the id is a stable hash of the label.
    pub fn labeled(master: u64, label: &str) -> Self {
        Self::new(master, fnv1a(label.as_bytes()))
    }

    /// Derive a sub-key, e.g. one per grid point of a sweep.
    pub fn child(&self, tag: u64) -> Self {
        Self::new(self.master, splitmix64(self.ensemble ^ splitmix64(tag)))
    }

    /// The random stream for sample `index` of this ensemble.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut state = self.master ^ splitmix64(self.ensemble.wrapping_add(0x5851_f42d_4c95_7f2d));
        let mut seed = [0u8; 32];
        for chunk in seed.chunks_exact_mut(8) {
            state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            chunk.copy_from_slice(&splitmix64(state).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(seed);
        rng.set_stream(index);
        rng
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
