//! Hypergraph backends.
//!
//! Two sources answer "is this k-set an edge": [`ExplicitHypergraph`], a
//! stored edge set, and [`LazyHypergraph`], which realizes `H^k(n, p)` by
//! flipping a keyed coin the first time each k-set is asked about. Both use
//! the same [`EdgeCoin`], so an explicit hypergraph generated from a seed
//! answers every query exactly as the lazy one with that seed would.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::hashing::{unit_f64, Domain, SetHash};
use crate::vset::{binomial_u128, colex_unrank, for_each_combination, KSet, VertexId, VertexSet};

/// Default cap on `C(n, k)` for explicit generation.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// Anything that can answer edge queries on `k`-sets over `[0, n)`.
pub trait EdgeQuery {
    fn vertex_count(&self) -> u32;
    fn uniformity(&self) -> usize;
    /// Whether `set` is an edge. `set` must be canonical with `k` members.
    fn query_edge(&mut self, set: &KSet) -> bool;
}

/// Independent Bernoulli(p) outcome for every k-set, keyed by a seed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeCoin {
    hash: SetHash,
    p: f64,
}

impl EdgeCoin {
    pub fn new(p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidProbability(p));
        }
        Ok(EdgeCoin {
            hash: SetHash::new(seed, Domain::EdgeCoin),
            p,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    #[inline]
    pub fn flip(&self, set: &KSet) -> bool {
        unit_f64(self.hash.hash_set(set)) < self.p
    }
}

/// A stored k-uniform hypergraph on `[0, n)`.
#[derive(Clone, Debug, Default)]
pub struct ExplicitHypergraph {
    n: u32,
    k: usize,
    edges: FxHashSet<KSet>,
}

impl ExplicitHypergraph {
    pub fn new(n: u32, k: usize) -> Self {
        ExplicitHypergraph {
            n,
            k,
            edges: FxHashSet::default(),
        }
    }

    /// Builds a hypergraph from edge lists in any vertex order.
    pub fn from_edges(n: u32, k: usize, edges: &[&[VertexId]]) -> Result<Self> {
        let mut h = Self::new(n, k);
        for e in edges {
            h.insert(VertexSet::new(e)?)?;
        }
        Ok(h)
    }

    /// The complete k-uniform hypergraph on `n` vertices.
    pub fn complete(n: u32, k: usize) -> Self {
        let mut h = Self::new(n, k);
        for_each_combination(n as usize, k, |idx| {
            let v: Vec<VertexId> = idx.iter().map(|&i| i as VertexId).collect();
            h.edges.insert(VertexSet::from_sorted(&v));
        });
        h
    }

    pub fn insert(&mut self, edge: KSet) -> Result<bool> {
        if edge.len() != self.k {
            return Err(Error::WrongEdgeSize {
                got: edge.len(),
                k: self.k,
            });
        }
        if let Some(&v) = edge.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n as u64,
            });
        }
        Ok(self.edges.insert(edge))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn contains(&self, set: &KSet) -> bool {
        self.edges.contains(set)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &KSet> {
        self.edges.iter()
    }

    /// Edges in lexicographic order.
    pub fn sorted_edges(&self) -> Vec<KSet> {
        let mut v: Vec<KSet> = self.edges.iter().copied().collect();
        v.sort_unstable();
        v
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Self> {
        let mut h = Self::new(self.n, self.k);
        for e in &self.edges {
            let mapped: Vec<VertexId> = e.iter().map(|&v| perm[v as usize]).collect();
            h.insert(VertexSet::new(&mapped)?)?;
        }
        Ok(h)
    }

    /// Text form: header `n k`, then one sorted edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for e in self.sorted_edges() {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r
            .lines()
            .enumerate()
            .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
        let parse_err = |line: usize, msg: &str| Error::Parse {
            line: line + 1,
            msg: msg.to_string(),
        };
        let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let header = header?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(parse_err(hline, "header must be `n k`"));
        }
        let n: u32 = nums[0].parse().map_err(|_| parse_err(hline, "bad n"))?;
        let k: usize = nums[1].parse().map_err(|_| parse_err(hline, "bad k"))?;
        let mut h = Self::new(n, k);
        for (i, line) in lines {
            let line = line?;
            let verts: std::result::Result<Vec<VertexId>, _> =
                line.split_whitespace().map(str::parse).collect();
            let verts = verts.map_err(|_| parse_err(i, "bad vertex id"))?;
            if verts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(parse_err(i, "edge not sorted"));
            }
            h.insert(VertexSet::new(&verts)?)
                .map_err(|e| parse_err(i, &e.to_string()))?;
        }
        Ok(h)
    }
}

impl EdgeQuery for ExplicitHypergraph {
    fn vertex_count(&self) -> u32 {
        self.n
    }
    fn uniformity(&self) -> usize {
        self.k
    }
    fn query_edge(&mut self, set: &KSet) -> bool {
        self.contains(set)
    }
}

impl EdgeQuery for &ExplicitHypergraph {
    fn vertex_count(&self) -> u32 {
        self.n
    }
    fn uniformity(&self) -> usize {
        self.k
    }
    fn query_edge(&mut self, set: &KSet) -> bool {
        self.contains(set)
    }
}

fn check_shape(n: u32, k: usize) -> Result<()> {
    if !(2..=crate::vset::MAX_SET).contains(&k) {
        return Err(Error::InvalidUniformity(k));
    }
    if (n as usize) < k {
        return Err(Error::TooFewVertices { n: n as u64, k });
    }
    Ok(())
}

/// Flips the keyed coin for every k-set of `[0, n)`.
///
/// Refused when `C(n, k)` exceeds `budget`; such instances must use
/// [`LazyHypergraph`] or [`generate_sparse`].
pub fn generate_explicit(
    n: u32,
    k: usize,
    p: f64,
    seed: u64,
    budget: u128,
) -> Result<ExplicitHypergraph> {
    check_shape(n, k)?;
    let coin = EdgeCoin::new(p, seed)?;
    let count = binomial_u128(n as u64, k as u64);
    if count > budget {
        return Err(Error::ExplicitBudget { count, budget });
    }
    let mut h = ExplicitHypergraph::new(n, k);
    let mut buf = vec![0 as VertexId; k];
    for_each_combination(n as usize, k, |idx| {
        for (b, &i) in buf.iter_mut().zip(idx) {
            *b = i as VertexId;
        }
        let set = VertexSet::from_sorted(&buf);
        if coin.flip(&set) {
            h.edges.insert(set);
        }
    });
    Ok(h)
}

/// Samples `H^k(n, p)` in time proportional to its edge count by skipping
/// over colex ranks with geometric gaps.
///
/// This draws from the same distribution as [`generate_explicit`] but from
/// a different random stream, so its edges do not match the lazy backend
/// for the same seed. It exists for sparse instances whose `C(n, k)` is
/// far beyond enumeration.
pub fn generate_sparse(n: u32, k: usize, p: f64, seed: u64) -> Result<ExplicitHypergraph> {
    check_shape(n, k)?;
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidProbability(p));
    }
    let total = binomial_u128(n as u64, k as u64);
    let mut h = ExplicitHypergraph::new(n, k);
    if p == 0.0 {
        return Ok(h);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (-p).ln_1p();
    let mut rank: u128 = 0;
    loop {
        let gap = if p >= 1.0 {
            0
        } else {
            // P(gap = g) = (1-p)^g p
            let u: f64 = 1.0 - rng.random::<f64>();
            (u.ln() / log_q).floor() as u128
        };
        rank = match rank.checked_add(gap) {
            Some(r) if r < total => r,
            _ => break,
        };
        h.edges.insert(colex_unrank(rank, k));
        rank += 1;
    }
    Ok(h)
}

/// `H^k(n, p)` revealed one coin flip at a time.
#[derive(Clone, Debug)]
pub struct LazyHypergraph {
    n: u32,
    k: usize,
    coin: EdgeCoin,
    revealed: Option<FxHashMap<KSet, bool>>,
    queries: u64,
    repeats: u64,
}

impl LazyHypergraph {
    pub fn new(n: u32, k: usize, p: f64, seed: u64) -> Result<Self> {
        check_shape(n, k)?;
        Ok(LazyHypergraph {
            n,
            k,
            coin: EdgeCoin::new(p, seed)?,
            revealed: None,
            queries: 0,
            repeats: 0,
        })
    }

    /// Keeps every outcome so repeated queries can be detected.
    pub fn with_recording(mut self) -> Self {
        self.revealed = Some(FxHashMap::default());
        self
    }

    pub fn p(&self) -> f64 {
        self.coin.p()
    }

    /// Total queries answered.
    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// Queries that asked about an already revealed k-set. Only counted
    /// when recording is on.
    pub fn repeated_queries(&self) -> u64 {
        self.repeats
    }

    pub fn revealed(&self) -> Option<&FxHashMap<KSet, bool>> {
        self.revealed.as_ref()
    }

    /// Edge count is undefined until every k-set has been flipped.
    pub fn edge_count(&self) -> Result<usize> {
        Err(Error::LazyBackend)
    }
}

impl EdgeQuery for LazyHypergraph {
    fn vertex_count(&self) -> u32 {
        self.n
    }
    fn uniformity(&self) -> usize {
        self.k
    }
    #[inline]
    fn query_edge(&mut self, set: &KSet) -> bool {
        debug_assert_eq!(set.len(), self.k);
        self.queries += 1;
        match &mut self.revealed {
            None => self.coin.flip(set),
            Some(map) => {
                if let Some(&seen) = map.get(set) {
                    self.repeats += 1;
                    return seen;
                }
                let outcome = self.coin.flip(set);
                map.insert(*set, outcome);
                outcome
            }
        }
    }
}

/// Either backend behind one type, for callers choosing at runtime.
pub enum Backend<'a> {
    Explicit(&'a ExplicitHypergraph),
    Lazy(LazyHypergraph),
}

impl EdgeQuery for Backend<'_> {
    fn vertex_count(&self) -> u32 {
        match self {
            Backend::Explicit(h) => h.n(),
            Backend::Lazy(h) => h.vertex_count(),
        }
    }
    fn uniformity(&self) -> usize {
        match self {
            Backend::Explicit(h) => h.k(),
            Backend::Lazy(h) => h.uniformity(),
        }
    }
    fn query_edge(&mut self, set: &KSet) -> bool {
        match self {
            Backend::Explicit(h) => h.contains(set),
            Backend::Lazy(h) => h.query_edge(set),
        }
    }
}
