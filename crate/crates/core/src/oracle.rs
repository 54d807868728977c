//! Brute-force ground truth for small instances: exact longest j-tight
//! path, equivalence-class sizes and a Monte-Carlo estimate of the expected
//! number of path classes.

use num_bigint::BigUint;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::combinatorics::{z_ell, StructuralParams};
use crate::error::{Error, Result};
use crate::hashing::mix64;
use crate::hypergraph::{generate_explicit, ExplicitHypergraph};
use crate::path::JTightPath;
use crate::vset::{JSet, KSet, VertexId, VertexSet};

/// Largest path (in vertices) whose orderings are enumerated.
pub const Z_ENUMERATION_LIMIT: usize = 11;

/// Default cap on search-tree nodes for [`longest_path_exact`].
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Largest `n` accepted by [`expectation_monte_carlo`].
pub const MONTE_CARLO_MAX_N: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestPath {
    pub length: usize,
    pub witness: JTightPath,
    /// The node budget ran out; `length` is only a lower bound.
    pub censored: bool,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

/// Group ids of `count` consecutive path positions starting `offset`
/// positions into an edge window. Positions in one group lie in the same
/// windows forever after, so their order never matters.
fn position_groups(offset: usize, count: usize, step: usize) -> Vec<usize> {
    (0..count).map(|d| (offset + d) / step).collect()
}

/// Orderings of `items` that are increasing within each group.
fn grouped_orderings(items: &[VertexId], groups: &[usize]) -> Vec<Vec<VertexId>> {
    fn rec(
        items: &[VertexId],
        groups: &[usize],
        used: &mut Vec<bool>,
        cur: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let q = cur.len();
        if q == items.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..items.len() {
            if used[i] {
                continue;
            }
            if q > 0 && groups[q] == groups[q - 1] && items[i] < cur[q - 1] {
                continue;
            }
            used[i] = true;
            cur.push(items[i]);
            rec(items, groups, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    rec(
        &sorted,
        groups,
        &mut vec![false; sorted.len()],
        &mut Vec::with_capacity(sorted.len()),
        &mut out,
    );
    out
}

struct Search {
    j: usize,
    step: usize,
    index: FxHashMap<JSet, Vec<KSet>>,
    ext_groups: Vec<usize>,
    orderings: FxHashMap<KSet, Vec<Vec<VertexId>>>,
    used: Vec<bool>,
    seq: Vec<VertexId>,
    best: Vec<VertexId>,
    max_possible: usize,
    nodes: u64,
    budget: u64,
    censored: bool,
}

impl Search {
    fn len_of(&self, seq_len: usize) -> usize {
        (seq_len - self.j) / self.step
    }

    fn done(&self) -> bool {
        self.censored || self.len_of(self.best.len().max(self.j)) >= self.max_possible
    }

    fn record(&mut self) {
        if self.seq.len() > self.best.len() {
            self.best.clone_from(&self.seq);
        }
    }

    fn extend(&mut self) {
        self.record();
        if self.done() {
            return;
        }
        let last = VertexSet::new(&self.seq[self.seq.len() - self.j..]).expect("distinct");
        let Some(edges) = self.index.get(&last) else {
            return;
        };
        for e in edges.clone() {
            let x = e.difference(&last);
            if x.iter().any(|&v| self.used[v as usize]) {
                continue;
            }
            let orders = self
                .orderings
                .entry(x)
                .or_insert_with(|| grouped_orderings(x.as_slice(), &self.ext_groups))
                .clone();
            for order in orders {
                self.nodes += 1;
                if self.nodes > self.budget {
                    self.censored = true;
                    return;
                }
                for &v in &order {
                    self.used[v as usize] = true;
                    self.seq.push(v);
                }
                self.extend();
                for &v in &order {
                    self.used[v as usize] = false;
                }
                self.seq.truncate(self.seq.len() - self.step);
                if self.done() {
                    return;
                }
            }
        }
    }
}

/// Longest j-tight path of `h` by exhaustive backtracking, extending
/// `k - j` vertices at a time from every ordering of every edge.
///
/// The search stops after `budget` nodes and reports `censored`; the
/// returned path is then the best found so far.
pub fn longest_path_exact(h: &ExplicitHypergraph, j: usize, budget: u64) -> Result<LongestPath> {
    let k = h.k();
    let params = StructuralParams::new(k, j)?;
    let step = params.step();
    let n = h.n() as usize;
    let mut index: FxHashMap<JSet, Vec<KSet>> = FxHashMap::default();
    for e in h.sorted_edges() {
        for sub in e.subsets(j) {
            index.entry(sub).or_default().push(e);
        }
    }
    let mut search = Search {
        j,
        step,
        index,
        ext_groups: position_groups(j, step, step),
        orderings: FxHashMap::default(),
        used: vec![false; n],
        seq: Vec::new(),
        best: (0..j as VertexId).collect(),
        max_possible: (n - j) / step,
        nodes: 0,
        budget,
        censored: false,
    };
    let start_groups = position_groups(0, k, step);
    'outer: for e in h.sorted_edges() {
        for order in grouped_orderings(e.as_slice(), &start_groups) {
            if search.done() {
                break 'outer;
            }
            search.nodes += 1;
            if search.nodes > search.budget {
                search.censored = true;
                break 'outer;
            }
            for &v in &order {
                search.used[v as usize] = true;
            }
            search.seq = order.clone();
            search.extend();
            for &v in &search.seq {
                search.used[v as usize] = false;
            }
            search.seq.clear();
        }
    }
    let witness = JTightPath::new(k, j, search.best)?;
    Ok(LongestPath {
        length: witness.len(),
        witness,
        censored: search.censored,
        nodes: search.nodes,
    })
}

/// Counts the orderings of a reference path on `v(len)` vertices whose
/// edge windows are exactly the reference edges.
pub fn z_ell_bruteforce(k: usize, j: usize, len: usize) -> Result<BigUint> {
    let params = StructuralParams::new(k, j)?;
    let v = params.vertex_count(len);
    if v > Z_ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit {
            vertices: v,
            limit: Z_ENUMERATION_LIMIT,
        });
    }
    let step = params.step();
    let window = |w: usize| -> u32 { ((1u32 << k) - 1) << (w * step) };
    let reference: Vec<u32> = (0..len).map(window).collect();

    struct Count<'a> {
        v: usize,
        k: usize,
        step: usize,
        reference: &'a [u32],
        seq: Vec<u32>,
        total: u64,
    }
    impl Count<'_> {
        fn go(&mut self, used: u32) {
            let q = self.seq.len();
            if q == self.v {
                self.total += 1;
                return;
            }
            for x in 0..self.v as u32 {
                if used & (1 << x) != 0 {
                    continue;
                }
                self.seq.push(x);
                // position q closes window w when q = w*step + k - 1
                let ok = if q + 1 >= self.k && (q + 1 - self.k) % self.step == 0 {
                    let start = q + 1 - self.k;
                    let mask = self.seq[start..].iter().fold(0u32, |m, &y| m | (1 << y));
                    self.reference.contains(&mask)
                } else {
                    true
                };
                if ok {
                    self.go(used | (1 << x));
                }
                self.seq.pop();
            }
        }
    }
    let mut c = Count {
        v,
        k,
        step,
        reference: &reference,
        seq: Vec::with_capacity(v),
        total: 0,
    };
    c.go(0);
    Ok(BigUint::from(c.total))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Labeled paths of length `len` in the hypergraph whose edges are the
/// bitmasks flagged in `is_edge`, with the distinct edge sets they use.
fn count_paths(
    n: usize,
    k: usize,
    step: usize,
    v: usize,
    is_edge: &[bool],
) -> (u64, FxHashSet<Vec<u32>>) {
    struct Walk<'a> {
        n: usize,
        k: usize,
        step: usize,
        v: usize,
        is_edge: &'a [bool],
        seq: Vec<u32>,
        edges: Vec<u32>,
        labeled: u64,
        classes: FxHashSet<Vec<u32>>,
    }
    impl Walk<'_> {
        fn go(&mut self, used: u32) {
            let q = self.seq.len();
            if q == self.v {
                self.labeled += 1;
                let mut key = self.edges.clone();
                key.sort_unstable();
                self.classes.insert(key);
                return;
            }
            for x in 0..self.n as u32 {
                if used & (1 << x) != 0 {
                    continue;
                }
                self.seq.push(x);
                let closes = q + 1 >= self.k && (q + 1 - self.k) % self.step == 0;
                if closes {
                    let mask = self.seq[q + 1 - self.k..]
                        .iter()
                        .fold(0u32, |m, &y| m | (1 << y));
                    if self.is_edge[mask as usize] {
                        self.edges.push(mask);
                        self.go(used | (1 << x));
                        self.edges.pop();
                    }
                } else {
                    self.go(used | (1 << x));
                }
                self.seq.pop();
            }
        }
    }
    let mut w = Walk {
        n,
        k,
        step,
        v,
        is_edge,
        seq: Vec::with_capacity(v),
        edges: Vec::new(),
        labeled: 0,
        classes: FxHashSet::default(),
    };
    w.go(0);
    (w.labeled, w.classes)
}

/// Estimates the expected number of equivalence classes of j-tight paths
/// of length `len` in `H^k(n, p)` from `samples` independent hypergraphs.
///
/// Every sample checks that its labeled path count is the class count
/// times `z_len`.
pub fn expectation_monte_carlo(
    n: u32,
    k: usize,
    j: usize,
    len: usize,
    p: f64,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    let params = StructuralParams::new(k, j)?;
    if n > MONTE_CARLO_MAX_N {
        return Err(Error::EnumerationLimit {
            vertices: n as usize,
            limit: MONTE_CARLO_MAX_N as usize,
        });
    }
    if len == 0 {
        return Err(Error::NonPositive {
            name: "len",
            value: 0.0,
        });
    }
    if samples == 0 {
        return Err(Error::NonPositive {
            name: "samples",
            value: 0.0,
        });
    }
    let v = params.vertex_count(len);
    let z: u64 = z_ell(k, j, len)?
        .try_into()
        .map_err(|_| Error::Config("class size exceeds u64".into()))?;
    let mut is_edge = vec![false; 1 << n];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for i in 0..samples {
        let h = generate_explicit(n, k, p, mix64(seed ^ mix64(i)), u128::MAX)?;
        is_edge.iter_mut().for_each(|b| *b = false);
        for e in h.edges() {
            is_edge[e.iter().fold(0usize, |m, &x| m | (1 << x))] = true;
        }
        let classes = if v > n as usize {
            0
        } else {
            let (labeled, classes) = count_paths(n as usize, k, params.step(), v, &is_edge);
            assert_eq!(
                labeled,
                classes.len() as u64 * z,
                "labeled path count is not a multiple of the class size"
            );
            classes.len() as u64
        } as f64;
        sum += classes;
        sum_sq += classes * classes;
    }
    let m = samples as f64;
    let mean = sum / m;
    let var = if samples > 1 {
        ((sum_sq - m * mean * mean) / (m - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        mean,
        std_error: (var / m).sqrt(),
        samples,
    })
}
