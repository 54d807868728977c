//! Canonical small vertex sets.
//!
//! Every j-set and k-set handled by the crate is a [`VertexSet`]: a sorted,
//! duplicate-free array of at most [`MAX_SET`] vertex ids stored inline so
//! that hashing and comparison never touch the heap.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Vertex identifier, 0-based.
pub type VertexId = u32;

/// Largest supported uniformity.
pub const MAX_SET: usize = 16;

/// A sorted set of distinct vertices with at most [`MAX_SET`] members.
#[derive(Clone, Copy)]
pub struct VertexSet {
    len: u8,
    items: [VertexId; MAX_SET],
}

/// A canonical k-set (candidate edge).
pub type KSet = VertexSet;
/// A canonical j-set.
pub type JSet = VertexSet;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet {
        len: 0,
        items: [0; MAX_SET],
    };

    /// Builds a set from arbitrary-order input, sorting it. Rejects
    /// duplicates and oversize input.
    pub fn new(vertices: &[VertexId]) -> Result<Self> {
        if vertices.len() > MAX_SET {
            return Err(Error::SetTooLarge(vertices.len()));
        }
        let mut items = [0; MAX_SET];
        items[..vertices.len()].copy_from_slice(vertices);
        let slice = &mut items[..vertices.len()];
        slice.sort_unstable();
        if slice.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex);
        }
        Ok(VertexSet {
            len: vertices.len() as u8,
            items,
        })
    }

    /// Builds a set from input that is already strictly increasing.
    ///
    /// Panics in debug builds when the input is not canonical.
    pub fn from_sorted(vertices: &[VertexId]) -> Self {
        debug_assert!(vertices.len() <= MAX_SET);
        debug_assert!(
            vertices.windows(2).all(|w| w[0] < w[1]),
            "vertex set not canonical: {vertices:?}"
        );
        let mut items = [0; MAX_SET];
        items[..vertices.len()].copy_from_slice(vertices);
        VertexSet {
            len: vertices.len() as u8,
            items,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.items[..self.len as usize]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.as_slice().binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.as_slice().iter().all(|&v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.as_slice().iter().all(|&v| !other.contains(v))
    }

    /// Union of two disjoint sets. Panics if the result exceeds [`MAX_SET`].
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = [0; MAX_SET];
        let (a, b) = (self.as_slice(), other.as_slice());
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i] <= b[j]);
            let v = if take_a {
                i += 1;
                a[i - 1]
            } else {
                j += 1;
                b[j - 1]
            };
            if n > 0 && out[n - 1] == v {
                continue;
            }
            out[n] = v;
            n += 1;
        }
        VertexSet {
            len: n as u8,
            items: out,
        }
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = [0; MAX_SET];
        let mut n = 0;
        for &v in self.as_slice() {
            if !other.contains(v) {
                out[n] = v;
                n += 1;
            }
        }
        VertexSet {
            len: n as u8,
            items: out,
        }
    }

    /// Subset selected by the bit mask over positions.
    pub fn select(&self, mask: u32) -> VertexSet {
        let mut out = [0; MAX_SET];
        let mut n = 0;
        for (i, &v) in self.as_slice().iter().enumerate() {
            if mask & (1 << i) != 0 {
                out[n] = v;
                n += 1;
            }
        }
        VertexSet {
            len: n as u8,
            items: out,
        }
    }

    /// All subsets of the given size, in lexicographic order.
    pub fn subsets(&self, size: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if size > self.len() {
            return out;
        }
        for_each_combination(self.len(), size, |idx| {
            let picked: Vec<VertexId> = idx.iter().map(|&i| self.items[i]).collect();
            out.push(VertexSet::from_sorted(&picked));
        });
        out
    }

    /// Little-endian byte encoding used as hash input.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.as_slice()
            .iter()
            .flat_map(|v| v.to_le_bytes())
            .collect()
    }
}

impl Deref for VertexSet {
    type Target = [VertexId];
    fn deref(&self) -> &[VertexId] {
        self.as_slice()
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl Eq for VertexSet {}

impl Hash for VertexSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.as_slice().hash(state);
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_slice().cmp(other.as_slice())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.as_slice()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.as_slice().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<VertexId>::deserialize(d)?;
        VertexSet::new(&v).map_err(serde::de::Error::custom)
    }
}

/// Calls `f` with every strictly increasing index tuple of length `size`
/// drawn from `0..n`, in lexicographic order.
pub fn for_each_combination(n: usize, size: usize, mut f: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx);
        // advance
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - size + i {
                idx[i] += 1;
                for t in i + 1..size {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Binomial coefficient as `u128`, saturating at `u128::MAX`.
pub fn binomial_u128(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Colex rank of a sorted set among all sets of its size.
pub fn colex_rank(set: &[VertexId]) -> u128 {
    set.iter()
        .enumerate()
        .map(|(i, &v)| binomial_u128(v as u64, i as u64 + 1))
        .sum()
}

/// Inverse of [`colex_rank`] for sets of size `size`.
pub fn colex_unrank(mut rank: u128, size: usize) -> VertexSet {
    let mut out = [0 as VertexId; MAX_SET];
    for i in (0..size).rev() {
        // largest v with C(v, i+1) <= rank
        let mut lo = i as u64;
        let mut hi = lo + 1;
        while binomial_u128(hi, i as u64 + 1) <= rank {
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if binomial_u128(mid, i as u64 + 1) <= rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out[i] = lo as VertexId;
        rank -= binomial_u128(lo, i as u64 + 1);
    }
    VertexSet::from_sorted(&out[..size])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn new_sorts_and_rejects_duplicates() {
        let s = VertexSet::new(&[3, 1, 2]).unwrap();
        assert_eq!(s.as_slice(), &[1, 2, 3]);
        assert!(VertexSet::new(&[1, 1]).is_err());
        assert!(VertexSet::new(&[0; 17]).is_err());
    }

    #[test]
    fn set_operations() {
        let a = VertexSet::new(&[1, 2]).unwrap();
        let b = VertexSet::new(&[2, 5]).unwrap();
        assert_eq!(a.union(&b).as_slice(), &[1, 2, 5]);
        assert_eq!(a.union(&b).difference(&a).as_slice(), &[5]);
        assert!(!a.is_disjoint(&b));
        assert!(a.is_subset_of(&a.union(&b)));
        assert_eq!(a.union(&b).subsets(2).len(), 3);
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_combination(5, 0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_u128(98, 1), 98);
        assert_eq!(binomial_u128(20, 3), 1140);
        assert_eq!(binomial_u128(3, 5), 0);
        assert_eq!(binomial_u128(2000, 3), 1_331_334_000);
    }

    proptest! {
        #[test]
        fn colex_roundtrip(rank in 0u128..1_000_000, size in 1usize..6) {
            let s = colex_unrank(rank, size);
            prop_assert_eq!(s.len(), size);
            prop_assert_eq!(colex_rank(&s), rank);
        }
    }
}
