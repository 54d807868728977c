//! Step-by-step checks of a PathFinder run against quantities recomputed
//! from scratch: the trace, the explicit hypergraph and plain enumeration.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use hyperpaths::hypergraph::ExplicitHypergraph;
use hyperpaths::monitor::StoppingConfig;
use hyperpaths::pathfinder::{PathFinder, RunConfig, Step};
use hyperpaths::trace::{RunSummary, TraceEvent, TraceLevel};
use hyperpaths::vset::{VertexId, VertexSet};

pub fn binom(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All `size`-subsets of `items`, in lexicographic order.
pub fn subsets(items: &[u32], size: usize) -> Vec<Vec<u32>> {
    fn rec(items: &[u32], size: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, size, 0, &mut Vec::new(), &mut out);
    out
}

pub fn vs(v: &[u32]) -> VertexSet {
    VertexSet::new(v).unwrap()
}

/// Violation counters; every field must be zero on a correct run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Violations {
    pub duplicate_queries: u64,
    pub active_bound: u64,
    pub standard_count: u64,
    pub discovered_count: u64,
    pub invalid_path: u64,
    pub active_outside_path: u64,
    pub bad_partition: u64,
    pub incomplete_exploration: u64,
    pub skipped_members: u64,
    pub f1_formula: u64,
    pub f1_bound: u64,
    pub f2_formula: u64,
    pub f2_bound: u64,
    pub decreasing_time: u64,
}

impl Violations {
    pub fn is_clean(&self) -> bool {
        *self == Violations::default()
    }

    pub fn add(&mut self, o: &Violations) {
        self.duplicate_queries += o.duplicate_queries;
        self.active_bound += o.active_bound;
        self.standard_count += o.standard_count;
        self.discovered_count += o.discovered_count;
        self.invalid_path += o.invalid_path;
        self.active_outside_path += o.active_outside_path;
        self.bad_partition += o.bad_partition;
        self.incomplete_exploration += o.incomplete_exploration;
        self.skipped_members += o.skipped_members;
        self.f1_formula += o.f1_formula;
        self.f1_bound += o.f1_bound;
        self.f2_formula += o.f2_formula;
        self.f2_bound += o.f2_bound;
        self.decreasing_time += o.decreasing_time;
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Forbidden-set counters at every step, with degree tracking on.
    pub monitoring: bool,
    /// At each exploration, every unqueried extension was forbidden.
    pub completeness: bool,
    /// Allowed candidates match the definition at every step.
    pub candidates: bool,
}

#[derive(Debug)]
pub struct CheckedRun {
    pub summary: RunSummary,
    pub steps: u64,
    pub violations: Violations,
    /// Forbidden-counter evaluations where both the exact and the bound
    /// type-2 values were available.
    pub f2_compared: u64,
}

/// Calls `f` on every `size`-subset of `items` in lexicographic order.
pub fn for_each_subset(items: &[u32], size: usize, mut f: impl FnMut(&[u32])) {
    fn rec(items: &[u32], size: usize, start: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..=items.len().saturating_sub(size - cur.len()) {
            if i >= items.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut Vec::with_capacity(size), &mut f);
}

fn forbidden_by_definition(
    n: u32,
    k: usize,
    top: &VertexSet,
    path: &HashSet<VertexId>,
    explored: &HashSet<VertexSet>,
) -> (u64, u64) {
    let j = top.len();
    let pool: Vec<u32> = (0..n).filter(|v| !top.contains(*v)).collect();
    let (mut f1, mut f2) = (0, 0);
    let mut full = Vec::with_capacity(k);
    for_each_subset(&pool, k - j, |x| {
        if x.iter().any(|v| path.contains(v)) {
            f1 += 1;
        }
        full.clear();
        full.extend(top.iter().copied().chain(x.iter().copied()));
        full.sort_unstable();
        let mut hit = false;
        for_each_subset(&full, j, |s| {
            if !hit {
                let s = vs(s);
                hit = s != *top && explored.contains(&s);
            }
        });
        if hit {
            f2 += 1;
        }
    });
    (f1, f2)
}

/// Runs PathFinder to exhaustion on `h` while checking every invariant
/// after each step.
pub fn checked_run(h: &ExplicitHypergraph, j: usize, seed: u64, opts: CheckOptions) -> CheckedRun {
    let k = h.k();
    let n = h.n();
    let step_size = k - j;
    let a = {
        let r = k % step_size;
        if r == 0 { step_size } else { r }
    };
    let batch = binom(step_size as u64, a as u64);
    let mut config =
        RunConfig::new(seed, StoppingConfig::exhaustive(k, j)).with_trace(TraceLevel::Full);
    if opts.monitoring {
        config = config.with_degrees();
    }
    let mut pf = PathFinder::new(h, j, config).unwrap();

    let mut v = Violations::default();
    let mut queried: HashSet<VertexSet> = HashSet::new();
    let mut queried_from: HashMap<VertexSet, HashSet<VertexSet>> = HashMap::new();
    let mut discovered: HashSet<VertexSet> = HashSet::new();
    let (mut new_starts, mut standard, mut positives) = (0u64, 0u64, 0u64);
    let mut seen_events = 0;
    let mut last_t = 0;
    let mut steps = 0;
    let mut f2_compared = 0;
    // rebuilt from the step outcomes rather than read back from the finder
    let mut explored: HashSet<VertexSet> = HashSet::new();
    let mut path_before: HashSet<VertexId> = HashSet::new();

    loop {
        let top_before = pf.top().copied();

        if opts.candidates {
            if let Some(top) = top_before {
                let mut got = pf.allowed_candidates();
                got.sort();
                let pool: Vec<u32> = (0..n).filter(|v| !top.contains(*v)).collect();
                let none = HashSet::new();
                let asked = queried_from.get(&top).unwrap_or(&none);
                let mut want: Vec<VertexSet> = subsets(&pool, step_size)
                    .into_iter()
                    .map(|x| vs(&x))
                    .filter(|x| !x.iter().any(|u| path_before.contains(u)))
                    .filter(|x| !asked.contains(x))
                    .filter(|x| {
                        let full = top.union(x);
                        !full.subsets(j).iter().any(|s| *s != top && explored.contains(s))
                    })
                    .collect();
                want.sort();
                assert_eq!(got, want, "allowed candidates differ from the definition");
            }
        }

        let outcome = pf.step();
        steps += 1;

        for e in &pf.events()[seen_events..] {
            if e.time() < last_t {
                v.decreasing_time += 1;
            }
            last_t = e.time();
            match e {
                TraceEvent::NewStart { jset, .. } => {
                    new_starts += 1;
                    if !discovered.insert(*jset) {
                        v.discovered_count += 1;
                    }
                }
                TraceEvent::Query { jset, kset, outcome, .. } => {
                    if !queried.insert(*kset) {
                        v.duplicate_queries += 1;
                    }
                    queried_from.entry(*jset).or_default().insert(kset.difference(jset));
                    if *outcome {
                        positives += 1;
                    }
                    if *outcome != h.contains(kset) {
                        v.invalid_path += 1;
                    }
                }
                TraceEvent::BatchActivated { jsets, .. } => {
                    standard += jsets.len() as u64;
                    for s in jsets {
                        if !discovered.insert(*s) {
                            v.discovered_count += 1;
                        }
                    }
                }
                TraceEvent::BatchMemberSkipped { .. } => {
                    standard += 1;
                    v.skipped_members += 1;
                }
                _ => {}
            }
        }
        seen_events = pf.events().len();

        if let Step::Explored(jset) = outcome {
            if opts.completeness {
                let pool: Vec<u32> = (0..n).filter(|u| !jset.contains(*u)).collect();
                let none = HashSet::new();
                let asked = queried_from.get(&jset).unwrap_or(&none);
                for x in subsets(&pool, step_size) {
                    let x = vs(&x);
                    if asked.contains(&x) {
                        continue;
                    }
                    let type1 = x.iter().any(|u| path_before.contains(u));
                    let type2 = jset
                        .union(&x)
                        .subsets(j)
                        .iter()
                        .any(|s| *s != jset && explored.contains(s));
                    if !type1 && !type2 {
                        v.incomplete_exploration += 1;
                    }
                }
            }
            explored.insert(jset);
        }
        if explored.len() != pf.explored().len() {
            v.discovered_count += 1;
        }

        let len = pf.len() as u64;
        if pf.active_len() as u64 > 1 + batch * len {
            v.active_bound += 1;
        }
        if standard != batch * positives || pf.monitor().standard() != standard {
            v.standard_count += 1;
        }
        if new_starts + standard != discovered.len() as u64
            || pf.monitor().new_starts() + pf.monitor().standard() != pf.discovered_len() as u64
            || pf.active_len() + pf.explored().len() != discovered.len()
        {
            v.discovered_count += 1;
        }

        // the path: distinct vertices, right length, every window an edge
        let verts = pf.path_vertices();
        let distinct: HashSet<VertexId> = verts.iter().copied().collect();
        path_before = distinct.clone();
        let expected_len = if pf.active_len() == 0 { 0 } else { step_size * pf.len() + j };
        if distinct.len() != verts.len() || verts.len() != expected_len {
            v.invalid_path += 1;
        } else {
            for (i, e) in pf.edges().iter().enumerate() {
                let window = vs(&verts[i * step_size..i * step_size + k]);
                if window != *e || !h.contains(e) {
                    v.invalid_path += 1;
                }
            }
        }
        for (jset, partition, _) in pf.active() {
            if !jset.iter().all(|u| distinct.contains(u)) {
                v.active_outside_path += 1;
            }
            if !partition.is_valid(pf.params()) || partition.jset() != *jset {
                v.bad_partition += 1;
            }
        }

        if opts.monitoring {
            if let (Some(top), Some(c)) = (pf.top().copied(), pf.forbidden_counts()) {
                let (f1, f2) = forbidden_by_definition(n, k, &top, &distinct, &explored);
                if c.f1 != f1 as f64 {
                    v.f1_formula += 1;
                }
                let bound = len * step_size as u64 * binom(n as u64 - j as u64 - 1, step_size as u64 - 1);
                if f1 > bound {
                    v.f1_bound += 1;
                }
                if let Some(exact) = c.f2_exact {
                    if exact != f2 {
                        v.f2_formula += 1;
                    }
                    if let Some(b) = c.f2_bound {
                        f2_compared += 1;
                        if exact as f64 > b + 1e-9 * b.max(1.0) {
                            v.f2_bound += 1;
                        }
                    }
                }
            }
        }

        if let Step::Finished(_) = outcome {
            break;
        }
    }
    CheckedRun {
        summary: pf.summary(),
        steps,
        violations: v,
        f2_compared,
    }
}

/// Class size of labeled paths of length `len`: the permutations of a
/// reference path on `v(len)` vertices with the same edge set, counted by
/// running over all of them.
pub fn naive_z(k: usize, j: usize, len: usize) -> u64 {
    let step = k - j;
    let v = step * len + j;
    let edges = |seq: &[u32]| {
        let mut e: Vec<u32> = (0..len)
            .map(|i| seq[i * step..i * step + k].iter().fold(0, |m, &x| m | 1 << x))
            .collect();
        e.sort_unstable();
        e
    };
    let mut perm: Vec<u32> = (0..v as u32).collect();
    let target = edges(&perm);
    let mut count = 1;
    // Heap's algorithm
    let mut c = vec![0usize; v];
    let mut i = 0;
    while i < v {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if edges(&perm) == target {
                count += 1;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    count
}
