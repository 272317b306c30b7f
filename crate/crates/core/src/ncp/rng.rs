//! Seed derivation. Every random draw is addressed by (seed, stream kind,
//! entity id), so outcomes do not depend on the order draws are made in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Child seed for `(index, tag)` under `master`.
pub fn derive_seed(master: u64, index: u64, tag: u64) -> u64 {
    mix64(mix64(mix64(master) ^ index) ^ tag.rotate_left(32))
}

pub(crate) const TAG_COLOUR: u64 = 0x636f_6c6f_7572;
pub(crate) const TAG_DIRECTION: u64 = 0x6469_7265_6374;
pub(crate) const TAG_ATTEMPT: u64 = 0x6174_7465_6d70;
pub(crate) const TAG_ROUND: u64 = 0x726f_756e_64;
pub(crate) const TAG_TRIAL: u64 = 0x7472_6961_6c;

/// Counter-style access to a ChaCha8 key: entity `i` reads stream `i` from
/// its start.
pub struct EntityRng {
    rng: ChaCha8Rng,
}

impl EntityRng {
    pub fn new(seed: u64, tag: u64) -> Self {
        let mut key = [0u8; 32];
        for (i, chunk) in key.chunks_mut(8).enumerate() {
            chunk.copy_from_slice(&derive_seed(seed, i as u64, tag).to_le_bytes());
        }
        EntityRng {
            rng: ChaCha8Rng::from_seed(key),
        }
    }

    /// Generator positioned at the start of `entity`'s stream.
    pub fn at(&mut self, entity: u64) -> &mut ChaCha8Rng {
        self.rng.set_stream(entity);
        self.rng.set_word_pos(0);
        &mut self.rng
    }

    pub fn index(&mut self, entity: u64, len: usize) -> usize {
        self.at(entity).gen_range(0..len)
    }

    pub fn coin(&mut self, entity: u64) -> bool {
        self.at(entity).gen::<bool>()
    }
}
