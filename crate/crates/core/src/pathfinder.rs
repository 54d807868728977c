//! Depth-first search for j-tight paths that queries every k-set at most
//! once.
//!
//! The search keeps every j-set in one of three states: neutral
//! (undiscovered), active (on the stack) or explored. From the active j-set
//! `J` on top of the stack it queries the next allowed k-set `K ⊃ J` in a
//! fixed pseudorandom order, where allowed means:
//!
//! * `K \ J` avoids the current path,
//! * `K` was not queried from `J` before,
//! * `K` contains no explored j-set.
//!
//! A positive answer appends `K` to the path and activates a batch of
//! `C(k-j, a)` new j-sets inside `K`, each with an [`ExtendablePartition`]
//! recording where its vertices sit on the path. When no allowed `K` is
//! left, `J` becomes explored; once a whole batch is explored the edge that
//! created it is removed. An empty stack triggers a new start from the
//! first neutral j-set in a pseudorandom order.

use rustc_hash::FxHashSet;

use crate::combinatorics::StructuralParams;
use crate::error::{Error, Result};
use crate::hashing::{Domain, IndexPermutation, SetHash};
use crate::hypergraph::EdgeQuery;
use crate::monitor::{forbidden_counts, ForbiddenCounters, ForbiddenInput, Monitor, StopReason, StopView, StoppingConfig};
use crate::path::JTightPath;
use crate::trace::{RunSummary, RunTrace, TraceEvent, TraceLevel, TRACE_SCHEMA_VERSION};
use crate::vset::{binomial_u128, colex_unrank, for_each_combination, JSet, KSet, VertexId, VertexSet, MAX_SET};

/// An ordered split `(C_0, C_1, .., C_r)` of a j-set with `|C_0| = a` and
/// `|C_i| = k - j` for `i >= 1`. `C_r` holds the newest path vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendablePartition {
    parts: Vec<VertexSet>,
}

impl ExtendablePartition {
    pub fn new(parts: Vec<VertexSet>, params: &StructuralParams) -> Result<Self> {
        let p = ExtendablePartition { parts };
        if !p.is_valid(params) {
            return Err(Error::Config(format!(
                "not an extendable partition for k={}, j={}: {:?}",
                params.k, params.j, p.parts
            )));
        }
        Ok(p)
    }

    /// Splits a j-set in sorted order: the `a` smallest vertices form
    /// `C_0`, then consecutive runs of `k - j`.
    pub fn lexicographic(jset: &JSet, params: &StructuralParams) -> Self {
        let v = jset.as_slice();
        let mut parts = vec![VertexSet::from_sorted(&v[..params.a])];
        for chunk in v[params.a..].chunks(params.step()) {
            parts.push(VertexSet::from_sorted(chunk));
        }
        ExtendablePartition { parts }
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn jset(&self) -> JSet {
        self.parts
            .iter()
            .fold(VertexSet::EMPTY, |acc, p| acc.union(p))
    }

    pub fn is_valid(&self, params: &StructuralParams) -> bool {
        if self.parts.len() != params.r + 1 || self.parts[0].len() != params.a {
            return false;
        }
        if self.parts[1..].iter().any(|p| p.len() != params.step()) {
            return false;
        }
        let total: usize = self.parts.iter().map(|p| p.len()).sum();
        total == params.j && self.jset().len() == params.j
    }

    fn to_lists(&self) -> Vec<Vec<u32>> {
        self.parts.iter().map(|p| p.to_vec()).collect()
    }
}

/// The batch of j-sets made extendable by the edge `k_set` found from the
/// j-set with partition `partition`.
///
/// With `r >= 1` the members are `Z ∪ C_2 ∪ .. ∪ C_r ∪ (K \ J)` for every
/// a-subset `Z` of `C_1`, partitioned as `(Z, C_2, .., C_r, K \ J)`. With
/// `r = 0` there is no `C_1`; the members are the a-subsets `Z` of
/// `K \ J`, each partitioned as `(Z)`.
pub fn activate_batch(
    params: &StructuralParams,
    partition: &ExtendablePartition,
    k_set: &KSet,
) -> Vec<(JSet, ExtendablePartition)> {
    let jset = partition.jset();
    let fresh = k_set.difference(&jset);
    debug_assert_eq!(fresh.len(), params.step());
    let parts = partition.parts();
    if params.r == 0 {
        return fresh
            .subsets(params.a)
            .into_iter()
            .map(|z| (z, ExtendablePartition { parts: vec![z] }))
            .collect();
    }
    parts[1]
        .subsets(params.a)
        .into_iter()
        .map(|z| {
            let mut next = Vec::with_capacity(params.r + 1);
            next.push(z);
            next.extend_from_slice(&parts[2..]);
            next.push(fresh);
            let p = ExtendablePartition { parts: next };
            (p.jset(), p)
        })
        .collect()
}

/// The (k-j)-sets `X` that may still be queried from `jset`, straight from
/// the definition: `X` avoids the path and `jset`, was not queried from
/// `jset`, and `jset ∪ X` contains no explored j-set.
pub fn allowed_extensions(
    n: u32,
    k: usize,
    jset: &JSet,
    path_vertices: &[VertexId],
    queried: &FxHashSet<VertexSet>,
    explored: &FxHashSet<JSet>,
) -> Vec<VertexSet> {
    let blocked: FxHashSet<VertexId> = path_vertices.iter().chain(jset.iter()).copied().collect();
    let pool: Vec<VertexId> = (0..n).filter(|v| !blocked.contains(v)).collect();
    let mut out = Vec::new();
    let mut buf = vec![0; k - jset.len()];
    for_each_combination(pool.len(), k - jset.len(), |idx| {
        for (b, &i) in buf.iter_mut().zip(idx) {
            *b = pool[i];
        }
        let x = VertexSet::from_sorted(&buf);
        if queried.contains(&x) {
            return;
        }
        let full = jset.union(&x);
        let hits_explored = full
            .subsets(jset.len())
            .iter()
            .any(|s| s != jset && explored.contains(s));
        if !hits_explored {
            out.push(x);
        }
    });
    out
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Seeds the query order, the new-start order and the batch order.
    pub seed: u64,
    pub stop: StoppingConfig,
    pub trace_level: TraceLevel,
    /// Keeps degree maps even when S4 is off, for the forbidden-set bound.
    pub track_degrees: bool,
}

impl RunConfig {
    pub fn new(seed: u64, stop: StoppingConfig) -> Self {
        RunConfig {
            seed,
            stop,
            trace_level: TraceLevel::Summary,
            track_degrees: false,
        }
    }

    pub fn with_trace(mut self, level: TraceLevel) -> Self {
        self.trace_level = level;
        self
    }

    pub fn with_degrees(mut self) -> Self {
        self.track_degrees = true;
        self
    }
}

/// What one call to [`PathFinder::step`] did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    NewStart(JSet),
    Query { kset: KSet, outcome: bool },
    Explored(JSet),
    Finished(StopReason),
}

/// Queue of extensions for one active j-set, in query order.
#[derive(Debug)]
struct Candidates {
    /// Flattened (k-j)-sets.
    items: Vec<VertexId>,
    pos: usize,
}

#[derive(Debug)]
struct Active {
    jset: JSet,
    partition: ExtendablePartition,
    batch: usize,
    candidates: Option<Candidates>,
}

#[derive(Clone, Copy, Debug)]
struct BatchState {
    size: usize,
    done: usize,
}

/// Query priorities keep the top 40 hash bits; the low bits hold the
/// candidate's lexicographic index as a tie-break.
const INDEX_BITS: u32 = 24;

pub struct PathFinder<H: EdgeQuery> {
    graph: H,
    params: StructuralParams,
    n: u32,
    query_order: SetHash,
    batch_order: SetHash,
    start_order: IndexPermutation,
    start_pos: u64,
    subset_masks: Vec<u32>,
    stack: Vec<Active>,
    discovered: FxHashSet<JSet>,
    explored: FxHashSet<JSet>,
    path: Vec<VertexId>,
    in_path: Vec<bool>,
    edges: Vec<KSet>,
    batches: Vec<BatchState>,
    time: u64,
    max_len: usize,
    positives: u64,
    skipped: u64,
    monitor: Monitor,
    level: TraceLevel,
    events: Vec<TraceEvent>,
    stopped: Option<StopReason>,
}

impl<H: EdgeQuery> PathFinder<H> {
    pub fn new(graph: H, j: usize, config: RunConfig) -> Result<Self> {
        let k = graph.uniformity();
        let n = graph.vertex_count();
        let params = StructuralParams::new(k, j)?;
        if (n as usize) <= k {
            return Err(Error::TooFewVertices { n: n as u64, k });
        }
        config.stop.validate()?;
        let jsets = binomial_u128(n as u64, j as u64);
        if jsets > u64::MAX as u128 / 2 {
            return Err(Error::Config(format!("C({n},{j}) j-sets exceed the start-order range")));
        }
        let mut subset_masks = Vec::new();
        for_each_combination(k, j, |idx| {
            subset_masks.push(idx.iter().fold(0u32, |m, &i| m | (1 << i)));
        });
        Ok(PathFinder {
            graph,
            params,
            n,
            query_order: SetHash::new(config.seed, Domain::QueryOrder),
            batch_order: SetHash::new(config.seed, Domain::BatchOrder),
            start_order: IndexPermutation::new(jsets as u64, config.seed, Domain::StartOrder),
            start_pos: 0,
            subset_masks,
            stack: Vec::new(),
            discovered: FxHashSet::default(),
            explored: FxHashSet::default(),
            path: Vec::new(),
            in_path: vec![false; n as usize],
            edges: Vec::new(),
            batches: Vec::new(),
            time: 0,
            max_len: 0,
            positives: 0,
            skipped: 0,
            monitor: Monitor::new(&params, n, config.stop, config.track_degrees),
            level: config.trace_level,
            events: Vec::new(),
            stopped: None,
        })
    }

    pub fn params(&self) -> &StructuralParams {
        &self.params
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Queries made so far.
    pub fn time(&self) -> u64 {
        self.time
    }

    /// Current path length.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn positive_queries(&self) -> u64 {
        self.positives
    }

    pub fn skipped_batch_members(&self) -> u64 {
        self.skipped
    }

    pub fn active_len(&self) -> usize {
        self.stack.len()
    }

    /// Active j-sets from the bottom of the stack, with partition and batch.
    pub fn active(&self) -> impl Iterator<Item = (&JSet, &ExtendablePartition, usize)> {
        self.stack.iter().map(|a| (&a.jset, &a.partition, a.batch))
    }

    pub fn top(&self) -> Option<&JSet> {
        self.stack.last().map(|a| &a.jset)
    }

    pub fn discovered_len(&self) -> usize {
        self.discovered.len()
    }

    pub fn explored(&self) -> &FxHashSet<JSet> {
        &self.explored
    }

    pub fn path_vertices(&self) -> &[VertexId] {
        &self.path
    }

    pub fn edges(&self) -> &[KSet] {
        &self.edges
    }

    /// The current path; `None` between a finished branch and the next
    /// new start.
    pub fn path(&self) -> Option<JTightPath> {
        if self.path.is_empty() {
            return None;
        }
        JTightPath::new(self.params.k, self.params.j, self.path.clone()).ok()
    }

    pub fn monitor(&self) -> &Monitor {
        &self.monitor
    }

    pub fn graph(&self) -> &H {
        &self.graph
    }

    pub fn stopped(&self) -> Option<StopReason> {
        self.stopped
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    /// Forbidden-set counters for the top of the stack.
    pub fn forbidden_counts(&self) -> Option<ForbiddenCounters> {
        let top = self.top()?;
        Some(forbidden_counts(&ForbiddenInput {
            n: self.n,
            params: &self.params,
            top,
            path_vertices: &self.path,
            path_len: self.edges.len(),
            explored: &self.explored,
            degrees: self.monitor.degrees(),
        }))
    }

    /// Extensions still allowed from the top of the stack, in query order.
    pub fn allowed_candidates(&self) -> Vec<VertexSet> {
        let Some(top) = self.stack.last() else {
            return Vec::new();
        };
        let step = self.params.step();
        let owned;
        let (items, pos) = match &top.candidates {
            Some(c) => (&c.items, c.pos),
            None => {
                owned = self.build_candidates(&top.jset).items;
                (&owned, 0)
            }
        };
        items[pos * step..]
            .chunks(step)
            .map(VertexSet::from_sorted)
            .filter(|x| !self.hits_explored(&top.jset.union(x), &top.jset))
            .collect()
    }

    fn emit(&mut self, event: impl FnOnce() -> TraceEvent) {
        if self.level == TraceLevel::Full {
            self.events.push(event());
        }
    }

    /// Whether a j-subset of `k_set` other than `current` is explored.
    #[inline]
    fn hits_explored(&self, k_set: &KSet, current: &JSet) -> bool {
        if self.explored.is_empty() {
            return false;
        }
        self.subset_masks.iter().any(|&m| {
            let sub = k_set.select(m);
            sub != *current && self.explored.contains(&sub)
        })
    }

    fn build_candidates(&self, jset: &JSet) -> Candidates {
        let step = self.params.step();
        let loose = self.params.j == 1;
        let pool: Vec<VertexId> = (0..self.n)
            .filter(|&v| {
                !self.in_path[v as usize]
                    && !(loose && self.explored.contains(&VertexSet::from_sorted(&[v])))
            })
            .collect();
        let mut raw: Vec<VertexId> = Vec::new();
        let mut keys: Vec<u128> = Vec::new();
        let mut buf = [0 as VertexId; MAX_SET];
        for_each_combination(pool.len(), step, |idx| {
            for (b, &i) in buf.iter_mut().zip(idx) {
                *b = pool[i];
            }
            let x = VertexSet::from_sorted(&buf[..step]);
            let k_set = jset.union(&x);
            // explored only grows, so a set excluded now stays excluded
            if !loose && self.hits_explored(&k_set, jset) {
                return;
            }
            let prio = self.query_order.hash_set(&k_set) >> INDEX_BITS;
            keys.push(((prio as u128) << 64) | (raw.len() / step) as u128);
            raw.extend_from_slice(&buf[..step]);
        });
        let count = keys.len();
        let order: Vec<usize> = if count < (1 << INDEX_BITS) {
            let mut packed: Vec<u64> = keys
                .iter()
                .map(|&key| (((key >> 64) as u64) << INDEX_BITS) | (key as u64))
                .collect();
            drop(keys);
            packed.sort_unstable();
            packed
                .into_iter()
                .map(|p| (p & ((1 << INDEX_BITS) - 1)) as usize)
                .collect()
        } else {
            keys.sort_unstable();
            keys.into_iter().map(|key| key as u64 as usize).collect()
        };
        let items = if step == 1 {
            order.into_iter().map(|i| raw[i]).collect()
        } else {
            let mut items = Vec::with_capacity(raw.len());
            for i in order {
                items.extend_from_slice(&raw[i * step..(i + 1) * step]);
            }
            items
        };
        Candidates { items, pos: 0 }
    }

    fn next_neutral(&mut self) -> Option<JSet> {
        while self.start_pos < self.start_order.size() {
            let rank = self.start_order.apply(self.start_pos);
            self.start_pos += 1;
            let jset = colex_unrank(rank as u128, self.params.j);
            if !self.discovered.contains(&jset) {
                return Some(jset);
            }
        }
        None
    }

    fn finish(&mut self, reason: StopReason) -> Step {
        self.stopped = Some(reason);
        let t = self.time;
        self.emit(|| TraceEvent::Stopped { t, reason });
        Step::Finished(reason)
    }

    fn check_stop(&mut self) -> Option<StopReason> {
        self.monitor.check_stop(StopView {
            time: self.time,
            len: self.edges.len(),
        })
    }

    /// Performs one new start, query or exploration.
    pub fn step(&mut self) -> Step {
        if let Some(reason) = self.stopped {
            return Step::Finished(reason);
        }
        if self.stack.is_empty() {
            return self.new_start();
        }
        let step = self.params.step();
        if self.stack.last().unwrap().candidates.is_none() {
            let jset = self.stack.last().unwrap().jset;
            let c = self.build_candidates(&jset);
            self.stack.last_mut().unwrap().candidates = Some(c);
        }
        let top = self.stack.last().unwrap();
        let jset = top.jset;
        let cands = top.candidates.as_ref().unwrap();
        let mut pos = cands.pos;
        let mut found = None;
        while (pos + 1) * step <= cands.items.len() {
            let x = VertexSet::from_sorted(&cands.items[pos * step..(pos + 1) * step]);
            pos += 1;
            let k_set = jset.union(&x);
            if !self.hits_explored(&k_set, &jset) {
                found = Some(k_set);
                break;
            }
        }
        self.stack.last_mut().unwrap().candidates.as_mut().unwrap().pos = pos;
        match found {
            Some(k_set) => self.query(jset, k_set),
            None => self.explore_top(),
        }
    }

    fn new_start(&mut self) -> Step {
        let Some(jset) = self.next_neutral() else {
            return self.finish(StopReason::Exhausted);
        };
        let partition = ExtendablePartition::lexicographic(&jset, &self.params);
        debug_assert!(self.path.is_empty() && self.edges.is_empty());
        for p in partition.parts() {
            for &v in p.iter() {
                self.path.push(v);
                self.in_path[v as usize] = true;
            }
        }
        self.batches.clear();
        self.batches.push(BatchState { size: 1, done: 0 });
        self.discovered.insert(jset);
        self.monitor.record_new_start(&jset);
        let t = self.time;
        let lists = partition.to_lists();
        self.emit(|| TraceEvent::NewStart {
            t,
            jset,
            partition: lists,
        });
        self.stack.push(Active {
            jset,
            partition,
            batch: 0,
            candidates: None,
        });
        if let Some(reason) = self.check_stop() {
            self.finish(reason);
        }
        Step::NewStart(jset)
    }

    /// Span of path positions holding block `b`: the leading a-part for
    /// `b = 0`, then blocks of `k - j`.
    fn block_range(&self, b: usize) -> std::ops::Range<usize> {
        let a = self.params.a;
        let step = self.params.step();
        if b == 0 {
            0..a
        } else {
            a + (b - 1) * step..a + b * step
        }
    }

    fn query(&mut self, jset: JSet, k_set: KSet) -> Step {
        self.time += 1;
        let outcome = self.graph.query_edge(&k_set);
        let t = self.time;
        self.emit(|| TraceEvent::Query {
            t,
            jset,
            kset: k_set,
            outcome,
        });
        if outcome {
            self.positives += 1;
            self.extend(jset, k_set);
        }
        if let Some(reason) = self.check_stop() {
            self.finish(reason);
        }
        Step::Query {
            kset: k_set,
            outcome,
        }
    }

    fn extend(&mut self, jset: JSet, k_set: KSet) {
        let level = self.edges.len();
        let top = self.stack.last().unwrap();
        debug_assert_eq!(top.batch, level);
        let partition = top.partition.clone();
        // the oldest part must end its block so that the last j path
        // vertices are exactly this j-set
        if level > 0 {
            let range = self.block_range(level);
            let c0 = &partition.parts()[0];
            let block = &mut self.path[range];
            block.sort_by_key(|v| c0.contains(*v));
        }
        let fresh = k_set.difference(&jset);
        for &v in fresh.iter() {
            self.path.push(v);
            self.in_path[v as usize] = true;
        }
        self.edges.push(k_set);
        debug_assert_eq!(
            VertexSet::new(&self.path[self.path.len() - self.params.k..]).unwrap(),
            k_set
        );
        let len = self.edges.len();
        self.max_len = self.max_len.max(len);

        let mut batch = activate_batch(&self.params, &partition, &k_set);
        batch.sort_by_key(|(s, _)| (self.batch_order.hash_set(s), *s));
        let mut fresh_sets = Vec::with_capacity(batch.len());
        let mut skipped = 0;
        let t = self.time;
        for (s, p) in batch {
            if !self.discovered.insert(s) {
                skipped += 1;
                self.skipped += 1;
                self.emit(|| TraceEvent::BatchMemberSkipped { t, jset: s });
                continue;
            }
            fresh_sets.push(s);
            self.stack.push(Active {
                jset: s,
                partition: p,
                batch: len,
                candidates: None,
            });
        }
        self.monitor.record_standard(&fresh_sets, skipped);
        self.batches.push(BatchState {
            size: fresh_sets.len() + skipped,
            done: skipped,
        });
        self.emit(|| TraceEvent::BatchActivated {
            t,
            len,
            jsets: fresh_sets,
        });
        if skipped == self.params.batch_size {
            self.remove_last_edge();
        }
    }

    fn remove_last_edge(&mut self) {
        self.edges.pop();
        self.batches.pop();
        let keep = self.path.len() - self.params.step();
        for &v in &self.path[keep..] {
            self.in_path[v as usize] = false;
        }
        self.path.truncate(keep);
        let (t, len) = (self.time, self.edges.len());
        self.emit(|| TraceEvent::EdgeRemoved { t, len });
    }

    fn explore_top(&mut self) -> Step {
        let top = self.stack.pop().unwrap();
        self.explored.insert(top.jset);
        let t = self.time;
        let jset = top.jset;
        self.emit(|| TraceEvent::Explored { t, jset });
        if top.batch == 0 {
            debug_assert!(self.stack.is_empty() && self.edges.is_empty());
            for &v in &self.path {
                self.in_path[v as usize] = false;
            }
            self.path.clear();
            self.batches.clear();
        } else {
            debug_assert_eq!(top.batch, self.edges.len());
            let b = &mut self.batches[top.batch];
            b.done += 1;
            if b.done == b.size {
                self.remove_last_edge();
            }
        }
        Step::Explored(jset)
    }

    /// Steps until a stopping condition or exhaustion.
    pub fn run_to_end(&mut self) -> StopReason {
        loop {
            if let Step::Finished(reason) = self.step() {
                return reason;
            }
        }
    }

    pub fn summary(&self) -> RunSummary {
        RunSummary {
            schema_version: TRACE_SCHEMA_VERSION,
            n: self.n,
            k: self.params.k,
            j: self.params.j,
            max_len: self.max_len,
            final_len: self.edges.len(),
            queries: self.time,
            new_starts: self.monitor.new_starts(),
            edges_found: self.positives,
            standard: self.monitor.standard(),
            explored: self.explored.len() as u64,
            skipped_batch_members: self.skipped,
            stop_reason: self.stopped.unwrap_or(StopReason::Exhausted),
        }
    }

    pub fn into_trace(self) -> RunTrace {
        let summary = self.summary();
        RunTrace {
            events: self.events,
            summary,
        }
    }
}

/// Runs the search to completion on `graph` and returns its trace.
pub fn run<H: EdgeQuery>(graph: H, j: usize, config: RunConfig) -> Result<RunTrace> {
    let mut pf = PathFinder::new(graph, j, config)?;
    pf.run_to_end();
    Ok(pf.into_trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::ExplicitHypergraph;

    fn set(v: &[u32]) -> VertexSet {
        VertexSet::new(v).unwrap()
    }

    fn exhaustive(seed: u64, k: usize, j: usize) -> RunConfig {
        RunConfig::new(seed, StoppingConfig::exhaustive(k, j)).with_trace(TraceLevel::Full)
    }

    #[test]
    fn lexicographic_partition_shapes() {
        let params = StructuralParams::new(5, 3).unwrap();
        let p = ExtendablePartition::lexicographic(&set(&[4, 1, 9]), &params);
        assert_eq!(p.parts(), &[set(&[1]), set(&[4, 9])]);
        assert!(p.is_valid(&params));
        let params = StructuralParams::new(5, 2).unwrap();
        let p = ExtendablePartition::lexicographic(&set(&[4, 1]), &params);
        assert_eq!(p.parts(), &[set(&[1, 4])]);
        assert!(ExtendablePartition::new(vec![set(&[1])], &params).is_err());
    }

    #[test]
    fn batch_tight_triples() {
        let params = StructuralParams::new(3, 2).unwrap();
        let part = ExtendablePartition::new(vec![set(&[1]), set(&[2])], &params).unwrap();
        let batch = activate_batch(&params, &part, &set(&[1, 2, 3]));
        assert_eq!(batch.len(), 1);
        assert_eq!(batch[0].0, set(&[2, 3]));
        assert_eq!(batch[0].1.parts(), &[set(&[2]), set(&[3])]);
    }

    #[test]
    fn batch_without_middle_parts() {
        let params = StructuralParams::new(5, 2).unwrap();
        let part = ExtendablePartition::new(vec![set(&[1, 2])], &params).unwrap();
        let batch: Vec<JSet> = activate_batch(&params, &part, &set(&[1, 2, 3, 4, 5]))
            .into_iter()
            .map(|(s, _)| s)
            .collect();
        assert_eq!(batch, vec![set(&[3, 4]), set(&[3, 5]), set(&[4, 5])]);

        let params = StructuralParams::new(4, 1).unwrap();
        let part = ExtendablePartition::new(vec![set(&[1])], &params).unwrap();
        let batch: Vec<JSet> = activate_batch(&params, &part, &set(&[1, 2, 3, 4]))
            .into_iter()
            .map(|(s, _)| s)
            .collect();
        assert_eq!(batch, vec![set(&[2]), set(&[3]), set(&[4])]);
    }

    #[test]
    fn batch_with_middle_parts() {
        // k=5, j=3: a=1, r=1, step 2
        let params = StructuralParams::new(5, 3).unwrap();
        let part = ExtendablePartition::new(vec![set(&[0]), set(&[1, 2])], &params).unwrap();
        let batch = activate_batch(&params, &part, &set(&[0, 1, 2, 3, 4]));
        let sets: Vec<JSet> = batch.iter().map(|(s, _)| *s).collect();
        assert_eq!(sets, vec![set(&[1, 3, 4]), set(&[2, 3, 4])]);
        for (_, p) in &batch {
            assert!(p.is_valid(&params));
            assert_eq!(p.parts()[1], set(&[3, 4]));
        }
    }

    #[test]
    fn allowed_extension_examples() {
        let none = FxHashSet::default();
        let j = set(&[1, 2]);
        assert_eq!(
            allowed_extensions(4, 3, &j, &[1, 2], &none, &none),
            vec![set(&[0]), set(&[3])]
        );
        assert_eq!(
            allowed_extensions(4, 3, &j, &[1, 2, 3], &none, &none),
            vec![set(&[0])]
        );
        let mut explored = FxHashSet::default();
        explored.insert(set(&[2, 3]));
        assert_eq!(
            allowed_extensions(4, 3, &j, &[1, 2], &none, &explored),
            vec![set(&[0])]
        );
    }

    #[test]
    fn empty_hypergraph_explores_everything() {
        let h = ExplicitHypergraph::new(5, 3);
        let trace = run(&h, 2, exhaustive(1, 3, 2)).unwrap();
        assert_eq!(trace.summary.max_len, 0);
        assert_eq!(trace.summary.stop_reason, StopReason::Exhausted);
        assert_eq!(trace.summary.explored, 10);
        assert!(trace.events.iter().all(|e| match e {
            TraceEvent::Query { outcome, .. } => !outcome,
            _ => true,
        }));
    }

    #[test]
    fn complete_on_four_vertices() {
        let h = ExplicitHypergraph::complete(4, 3);
        for seed in 0..10 {
            let trace = run(&h, 2, exhaustive(seed, 3, 2)).unwrap();
            assert_eq!(trace.summary.max_len, 2);
        }
    }

    #[test]
    fn two_chained_edges() {
        let h = ExplicitHypergraph::from_edges(4, 3, &[&[0, 1, 2], &[1, 2, 3]]).unwrap();
        let mut found = false;
        for seed in 0..50 {
            let mut pf = PathFinder::new(&h, 2, exhaustive(seed, 3, 2)).unwrap();
            if let Step::NewStart(s) = pf.step() {
                if s == set(&[0, 1]) {
                    pf.run_to_end();
                    assert_eq!(pf.max_len(), 2);
                    found = true;
                }
            }
        }
        assert!(found, "no seed started at {{0,1}}");
    }

    #[test]
    fn lone_start_explores_without_removal() {
        let h = ExplicitHypergraph::new(5, 3);
        let mut pf = PathFinder::new(&h, 2, exhaustive(3, 3, 2)).unwrap();
        let Step::NewStart(s) = pf.step() else {
            panic!("expected a new start")
        };
        while pf.active_len() == 1 {
            if let Step::Explored(e) = pf.step() {
                assert_eq!(e, s);
            }
        }
        assert_eq!(pf.len(), 0);
        assert!(pf.path_vertices().is_empty());
        assert!(pf.events().iter().all(|e| !matches!(e, TraceEvent::EdgeRemoved { .. })));
    }

    #[test]
    fn single_member_batch_removes_edge() {
        // one edge {0,1,2}; whichever pair inside it starts, the path grows
        // to length 1 and shrinks back once the lone batch member is done
        let h = ExplicitHypergraph::from_edges(5, 3, &[&[0, 1, 2]]).unwrap();
        for seed in 0..20 {
            let mut pf = PathFinder::new(&h, 2, exhaustive(seed, 3, 2)).unwrap();
            loop {
                let before = pf.len();
                match pf.step() {
                    Step::Explored(_) if before == 1 => {
                        assert_eq!(pf.len(), 0);
                        break;
                    }
                    Step::Finished(_) => break,
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn edge_removed_on_last_batch_member() {
        // k=5, j=2: batches of three; the edge goes only when all three
        // members are explored
        let h = ExplicitHypergraph::from_edges(8, 5, &[&[0, 1, 2, 3, 4]]).unwrap();
        for seed in 0..40 {
            let mut pf = PathFinder::new(&h, 2, exhaustive(seed, 5, 2)).unwrap();
            let mut explored_in_batch = 0;
            loop {
                let before = pf.len();
                match pf.step() {
                    Step::Explored(_) if before == 1 => {
                        explored_in_batch += 1;
                        if explored_in_batch < 3 {
                            assert_eq!(pf.len(), 1);
                        } else {
                            assert_eq!(pf.len(), 0);
                            break;
                        }
                    }
                    Step::Finished(_) => break,
                    _ => {}
                }
            }
            assert!(explored_in_batch == 0 || explored_in_batch == 3);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let h = crate::hypergraph::generate_explicit(12, 3, 0.3, 9, 1 << 20).unwrap();
        let a = run(&h, 2, exhaustive(5, 3, 2)).unwrap();
        let b = run(&h, 2, exhaustive(5, 3, 2)).unwrap();
        assert_eq!(a, b);
        let c = run(&h, 2, exhaustive(6, 3, 2)).unwrap();
        assert_ne!(a.events, c.events);
    }
}
