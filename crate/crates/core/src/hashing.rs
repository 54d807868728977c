//! Keyed pseudorandom functions shared by every randomized component.
//!
//! All randomness in a run is a deterministic function of a 64-bit seed so
//! that explicit and lazy hypergraph backends, and repeated runs, agree bit
//! for bit on every platform.

use std::hash::Hasher;

use siphasher::sip::SipHasher24;

use crate::vset::VertexSet;

/// Domain tags keep the keyed functions derived from one seed independent.
#[derive(Clone, Copy, Debug)]
#[repr(u64)]
pub enum Domain {
    EdgeCoin = 0x636f_696e,
    QueryOrder = 0x7369_676b,
    StartOrder = 0x7369_676a,
    BatchOrder = 0x6261_7463,
}

/// SplitMix64 output function. A bijection on `u64`.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A keyed SipHash-2-4 function over canonical vertex sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetHash {
    k0: u64,
    k1: u64,
}

impl SetHash {
    pub fn new(seed: u64, domain: Domain) -> Self {
        let d = domain as u64;
        SetHash {
            k0: mix64(seed ^ mix64(d)),
            k1: mix64(seed.wrapping_add(0x9e37_79b9_7f4a_7c15) ^ mix64(!d)),
        }
    }

    pub fn hash_set(&self, set: &VertexSet) -> u64 {
        let mut h = SipHasher24::new_with_keys(self.k0, self.k1);
        h.write(&[set.len() as u8]);
        for v in set.as_slice() {
            h.write(&v.to_le_bytes());
        }
        h.finish()
    }

    pub fn hash_u64(&self, x: u64) -> u64 {
        let mut h = SipHasher24::new_with_keys(self.k0, self.k1);
        h.write(&x.to_le_bytes());
        h.finish()
    }
}

/// Maps a 64-bit hash to a uniform float in `[0, 1)` with 53 bits.
pub fn unit_f64(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A keyed pseudorandom permutation of `0..size`, realized as a balanced
/// Feistel network with cycle walking.
#[derive(Clone, Debug)]
pub struct IndexPermutation {
    size: u64,
    half_bits: u32,
    round_keys: [SetHash; 4],
}

impl IndexPermutation {
    pub fn new(size: u64, seed: u64, domain: Domain) -> Self {
        let bits = 64 - size.saturating_sub(1).leading_zeros();
        let half_bits = bits.div_ceil(2).max(1);
        let round_keys = std::array::from_fn(|r| SetHash::new(mix64(seed ^ (r as u64 + 1)), domain));
        IndexPermutation {
            size,
            half_bits,
            round_keys,
        }
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    fn encrypt(&self, x: u64) -> u64 {
        let mask = (1u64 << self.half_bits) - 1;
        let (mut left, mut right) = (x >> self.half_bits, x & mask);
        for key in &self.round_keys {
            let f = key.hash_u64(right) & mask;
            (left, right) = (right, left ^ f);
        }
        (left << self.half_bits) | right
    }

    /// Image of position `i` (`i < size`).
    pub fn apply(&self, i: u64) -> u64 {
        debug_assert!(i < self.size);
        let mut x = self.encrypt(i);
        while x >= self.size {
            x = self.encrypt(x);
        }
        x
    }
}
