//! Stopping conditions and analysis counters for a PathFinder run.
//!
//! The monitor tracks new starts `R_t`, standard discoveries `S_t`, the
//! degree `d_t(I)` of every i-set `I` (`i < j`) in the discovered j-graph,
//! and evaluates the stopping conditions:
//!
//! * S1: path length reached `target_length`;
//! * S2: query clock reached `time_cap`;
//! * S3: `|R_t| >= 2 (k-j)! sqrt(t n^beta / n^(k-j)) + n^beta / 2`;
//! * S4: some i-set has `d_t(I) >= C_{k,j,i} t / n^(k-j+i) + n^beta`.

use std::fmt;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial_f64, ln_binomial, StructuralParams};
use crate::error::{Error, Result};
use crate::vset::{for_each_combination, JSet, VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StopReason {
    S1,
    S2,
    S3,
    S4,
    /// Every j-set was explored.
    #[serde(rename = "exhausted")]
    Exhausted,
    /// Hard query cap hit.
    #[serde(rename = "budget")]
    Budget,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::S1 => "S1",
            StopReason::S2 => "S2",
            StopReason::S3 => "S3",
            StopReason::S4 => "S4",
            StopReason::Exhausted => "exhausted",
            StopReason::Budget => "budget",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which stopping conditions are live.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnabledConditions {
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
    pub s4: bool,
}

impl EnabledConditions {
    pub const NONE: Self = EnabledConditions {
        s1: false,
        s2: false,
        s3: false,
        s4: false,
    };
    pub const ALL: Self = EnabledConditions {
        s1: true,
        s2: true,
        s3: true,
        s4: true,
    };
    /// S1 and S2 only; the benchmark configuration.
    pub const LENGTH_AND_TIME: Self = EnabledConditions {
        s1: true,
        s2: true,
        s3: false,
        s4: false,
    };

    /// Parses a comma list such as `S1,S2`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::NONE;
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.to_ascii_uppercase().as_str() {
                "S1" => out.s1 = true,
                "S2" => out.s2 = true,
                "S3" => out.s3 = true,
                "S4" => out.s4 = true,
                "NONE" => {}
                "ALL" => out = Self::ALL,
                other => return Err(Error::Config(format!("unknown stopping condition {other}"))),
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StoppingConfig {
    /// S1 threshold on the path length.
    pub target_length: f64,
    /// S2 cap on the query clock.
    pub time_cap: f64,
    pub beta: f64,
    /// `C_{k,j,0} .. C_{k,j,j-1}`.
    pub c_ladder: Vec<f64>,
    pub enabled: EnabledConditions,
    /// Hard cap on queries, independent of the enabled conditions.
    pub budget: Option<u64>,
}

impl StoppingConfig {
    /// No stopping conditions; the run continues until every j-set is
    /// explored or `budget` is hit.
    pub fn exhaustive(k: usize, j: usize) -> Self {
        StoppingConfig {
            target_length: f64::INFINITY,
            time_cap: f64::INFINITY,
            beta: 0.1,
            c_ladder: default_c_ladder(k, j),
            enabled: EnabledConditions::NONE,
            budget: None,
        }
    }

    /// Stop at `target_length` or `time_cap`, plus an optional hard budget.
    pub fn length_and_time(k: usize, j: usize, target_length: f64, time_cap: f64) -> Self {
        StoppingConfig {
            target_length,
            time_cap,
            enabled: EnabledConditions::LENGTH_AND_TIME,
            ..Self::exhaustive(k, j)
        }
    }

    /// The high-order configuration: target `(1-delta) eps n/(k-j)^2`,
    /// cap `n^(k-j+1)/eps`, all four conditions live.
    pub fn high_order(n: u64, k: usize, j: usize, eps: f64, delta: f64) -> Self {
        StoppingConfig {
            target_length: crate::combinatorics::supercritical_target(n, k, j, eps, delta),
            time_cap: crate::combinatorics::supercritical_time_horizon(n, k, j, eps),
            enabled: EnabledConditions::ALL,
            ..Self::exhaustive(k, j)
        }
    }

    /// The loose-path configuration: target `(1-delta) eps^2 n/(4(k-1)^2)`
    /// and cap `eps n C(n-1,k-1)/(2(k-1))`.
    pub fn loose(n: u64, k: usize, eps: f64, delta: f64) -> Self {
        Self::length_and_time(
            k,
            1,
            crate::combinatorics::loose_target(n, k, eps, delta),
            crate::combinatorics::loose_time_horizon(n, k, eps),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::Config(format!("beta {} outside (0,1)", self.beta)));
        }
        if !(self.target_length >= 0.0) {
            return Err(Error::Config("target_length must be >= 0".into()));
        }
        if self.c_ladder.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("C ladder must be strictly increasing".into()));
        }
        Ok(())
    }
}

/// `C_{k,j,0} = 40 ((k-j)!)^2`, `C_{k,j,i} = 2^(3k+4) k! C_{k,j,i-1}`.
pub fn default_c_ladder(k: usize, j: usize) -> Vec<f64> {
    let fact = |m: usize| (1..=m).map(|x| x as f64).product::<f64>();
    let growth = 2f64.powi(3 * k as i32 + 4) * fact(k);
    let mut out = Vec::with_capacity(j);
    let mut c = 40.0 * fact(k - j).powi(2);
    for _ in 0..j {
        out.push(c);
        c *= growth;
    }
    out
}

/// `d_t(I)` for every i-set `I` with `i < j`, over the discovered j-sets.
#[derive(Clone, Debug)]
pub struct DegreeTracker {
    j: usize,
    by_size: Vec<FxHashMap<VertexSet, u64>>,
    seen: FxHashSet<JSet>,
}

impl DegreeTracker {
    pub fn new(j: usize) -> Self {
        DegreeTracker {
            j,
            by_size: vec![FxHashMap::default(); j],
            seen: FxHashSet::default(),
        }
    }

    pub fn degree(&self, set: &VertexSet) -> u64 {
        self.by_size
            .get(set.len())
            .and_then(|m| m.get(set))
            .copied()
            .unwrap_or(0)
    }

    /// Number of discovered j-sets, `d(emptyset)`.
    pub fn discovered(&self) -> u64 {
        self.degree(&VertexSet::EMPTY)
    }

    /// Largest degree among i-sets.
    pub fn max_degree(&self, i: usize) -> u64 {
        self.by_size[i].values().copied().max().unwrap_or(0)
    }

    /// Sum of `d(I)` over all i-sets.
    pub fn degree_sum(&self, i: usize) -> u64 {
        self.by_size[i].values().sum()
    }

    /// Records one newly discovered j-set, calling `touched` with every
    /// proper subset whose degree changed.
    pub fn discover(&mut self, set: &JSet, mut touched: impl FnMut(&VertexSet, u64)) -> Result<()> {
        if set.len() != self.j {
            return Err(Error::WrongEdgeSize {
                got: set.len(),
                k: self.j,
            });
        }
        if !self.seen.insert(*set) {
            return Err(Error::Config(format!("j-set {set} discovered twice")));
        }
        for mask in 0u32..(1 << self.j) - 1 {
            let sub = set.select(mask);
            let d = self.by_size[sub.len()].entry(sub).or_insert(0);
            *d += 1;
            touched(&sub, *d);
        }
        Ok(())
    }
}

/// Convenience wrapper over [`DegreeTracker::discover`] for a batch.
pub fn update_degrees(tracker: &mut DegreeTracker, sets: &[JSet]) -> Result<()> {
    for s in sets {
        tracker.discover(s, |_, _| {})?;
    }
    Ok(())
}

/// The part of a run's state the stopping conditions depend on.
#[derive(Clone, Copy, Debug)]
pub struct StopView {
    pub time: u64,
    pub len: usize,
}

/// Counters and stopping logic owned by one run.
#[derive(Clone, Debug)]
pub struct Monitor {
    config: StoppingConfig,
    n: f64,
    step: usize,
    step_factorial: f64,
    new_starts: u64,
    standard: u64,
    degrees: Option<DegreeTracker>,
    /// i-sets whose degree rose since the last check, with the new degree.
    touched: Vec<(usize, u64)>,
}

impl Monitor {
    /// `track_degrees` turns on the per-i-set degree maps; they are needed
    /// for S4 and for the type-2 forbidden bound.
    pub fn new(params: &StructuralParams, n: u32, config: StoppingConfig, track_degrees: bool) -> Self {
        let step = params.step();
        let track = track_degrees || config.enabled.s4;
        Monitor {
            n: n as f64,
            step,
            step_factorial: (1..=step).map(|x| x as f64).product(),
            new_starts: 0,
            standard: 0,
            degrees: track.then(|| DegreeTracker::new(params.j)),
            touched: Vec::new(),
            config,
        }
    }

    pub fn config(&self) -> &StoppingConfig {
        &self.config
    }

    /// `|R_t|`.
    pub fn new_starts(&self) -> u64 {
        self.new_starts
    }

    /// `|S_t|`.
    pub fn standard(&self) -> u64 {
        self.standard
    }

    pub fn degrees(&self) -> Option<&DegreeTracker> {
        self.degrees.as_ref()
    }

    pub fn record_new_start(&mut self, set: &JSet) {
        self.new_starts += 1;
        self.discover(set);
    }

    /// Records the members of an activated batch. Members that were skipped
    /// as already discovered still count towards `S_t`.
    pub fn record_standard(&mut self, fresh: &[JSet], skipped: usize) {
        self.standard += (fresh.len() + skipped) as u64;
        for s in fresh {
            self.discover(s);
        }
    }

    fn discover(&mut self, set: &JSet) {
        if let Some(tracker) = &mut self.degrees {
            let touched = &mut self.touched;
            tracker
                .discover(set, |sub, d| touched.push((sub.len(), d)))
                .expect("a j-set is discovered at most once");
        }
    }

    /// S3 threshold at time `t`.
    pub fn new_start_threshold(&self, t: u64) -> f64 {
        let nb = self.n.powf(self.config.beta);
        2.0 * self.step_factorial * (t as f64 * nb / self.n.powi(self.step as i32)).sqrt() + nb / 2.0
    }

    /// S4 threshold for i-sets at time `t`.
    pub fn degree_threshold(&self, i: usize, t: u64) -> f64 {
        self.config.c_ladder[i] * t as f64 / self.n.powi((self.step + i) as i32)
            + self.n.powf(self.config.beta)
    }

    /// First triggered enabled condition in order S1..S4, then the budget.
    pub fn check_stop(&mut self, view: StopView) -> Option<StopReason> {
        let en = self.config.enabled;
        let touched = std::mem::take(&mut self.touched);
        if en.s1 && crate::combinatorics::meets(view.len, self.config.target_length) {
            return Some(StopReason::S1);
        }
        if en.s2 && view.time as f64 >= self.config.time_cap {
            return Some(StopReason::S2);
        }
        if en.s3 && self.new_starts as f64 >= self.new_start_threshold(view.time) {
            return Some(StopReason::S3);
        }
        // thresholds grow with t, so only sets whose degree just rose can cross
        if en.s4
            && touched
                .iter()
                .any(|&(i, d)| d as f64 >= self.degree_threshold(i, view.time))
        {
            return Some(StopReason::S4);
        }
        if let Some(b) = self.config.budget {
            if view.time >= b {
                return Some(StopReason::Budget);
            }
        }
        None
    }
}

/// Forbidden (k-j)-set counts for the current top-of-stack j-set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ForbiddenCounters {
    /// Sets meeting the current path, exactly.
    pub f1: f64,
    /// `l_t (k-j) C(n-j-1, k-j-1)`.
    pub f1_bound: f64,
    /// Upper bound on sets containing an explored j-set; needs degrees.
    pub f2_bound: Option<f64>,
    /// Exact count of the same, when `C(n-j, k-j)` is small enough.
    pub f2_exact: Option<u64>,
}

/// Largest `C(n-j, k-j)` for which [`forbidden_counts`] enumerates type-2
/// sets exactly.
pub const F2_EXACT_LIMIT: f64 = 1e6;

/// Inputs for [`forbidden_counts`], borrowed from a run.
pub struct ForbiddenInput<'a> {
    pub n: u32,
    pub params: &'a StructuralParams,
    pub top: &'a JSet,
    pub path_vertices: &'a [VertexId],
    pub path_len: usize,
    pub explored: &'a FxHashSet<JSet>,
    pub degrees: Option<&'a DegreeTracker>,
}

/// Type-1 count by complement, the type-2 bound from proper-subset degrees,
/// and an exact type-2 count by enumeration when affordable.
pub fn forbidden_counts(input: &ForbiddenInput<'_>) -> ForbiddenCounters {
    let n = input.n as u64;
    let j = input.params.j as u64;
    let step = input.params.step() as u64;
    let outside = input
        .path_vertices
        .iter()
        .filter(|v| !input.top.contains(**v))
        .count() as u64;
    let f1 = binomial_f64(n - j, step) - binomial_f64(n - j - outside, step);
    let f1_bound = input.path_len as f64 * step as f64 * binomial_f64(n - j - 1, step - 1);

    let f2_bound = input.degrees.map(|deg| {
        let mut total = 0.0;
        for z in 0..j as usize {
            // C(n-2j+z, k-2j+z) with a negative lower index read as zero
            let lower = step as i64 - j as i64 + z as i64;
            if lower < 0 {
                continue;
            }
            let max_d = input
                .top
                .subsets(z)
                .iter()
                .map(|s| deg.degree(s))
                .max()
                .unwrap_or(0);
            let count = ln_binomial(n as f64 - 2.0 * j as f64 + z as f64, lower as u64).exp();
            total += binomial_f64(j, z as u64) * max_d as f64 * count;
        }
        total
    });

    let f2_exact = (binomial_f64(n - j, step) <= F2_EXACT_LIMIT).then(|| {
        let pool: Vec<VertexId> = (0..input.n).filter(|v| !input.top.contains(*v)).collect();
        let mut count = 0u64;
        let mut buf = vec![0; step as usize];
        for_each_combination(pool.len(), step as usize, |idx| {
            for (b, &i) in buf.iter_mut().zip(idx) {
                *b = pool[i];
            }
            let k_set = input.top.union(&VertexSet::from_sorted(&buf));
            if contains_explored(&k_set, input.top, input.explored) {
                count += 1;
            }
        });
        count
    });

    ForbiddenCounters {
        f1,
        f1_bound,
        f2_bound,
        f2_exact,
    }
}

/// Whether some j-subset of `k_set` other than `current` is explored.
pub fn contains_explored(k_set: &VertexSet, current: &JSet, explored: &FxHashSet<JSet>) -> bool {
    if explored.is_empty() {
        return false;
    }
    let j = current.len();
    let mut found = false;
    for_each_combination(k_set.len(), j, |idx| {
        if found {
            return;
        }
        let mut buf = [0; crate::vset::MAX_SET];
        for (b, &i) in buf.iter_mut().zip(idx) {
            *b = k_set[i];
        }
        let sub = VertexSet::from_sorted(&buf[..j]);
        if sub != *current && explored.contains(&sub) {
            found = true;
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u32]) -> VertexSet {
        VertexSet::new(v).unwrap()
    }

    #[test]
    fn degree_updates() {
        let mut t = DegreeTracker::new(2);
        update_degrees(&mut t, &[set(&[1, 2])]).unwrap();
        assert_eq!(t.discovered(), 1);
        assert_eq!(t.degree(&set(&[1])), 1);
        assert_eq!(t.degree(&set(&[2])), 1);
        update_degrees(&mut t, &[set(&[1, 3])]).unwrap();
        assert_eq!(t.degree(&set(&[1])), 2);
        assert_eq!(t.degree(&set(&[3])), 1);
        assert_eq!(t.discovered(), 2);
        assert!(update_degrees(&mut t, &[set(&[1, 2])]).is_err());
    }

    #[test]
    fn degree_double_counting() {
        let mut t = DegreeTracker::new(3);
        let sets: Vec<VertexSet> = (0..20u32)
            .map(|i| set(&[i, i + 1 + (i % 3), i + 7]))
            .collect();
        update_degrees(&mut t, &sets).unwrap();
        assert_eq!(t.degree_sum(1), 3 * 20);
        assert_eq!(t.degree_sum(2), 3 * 20);
        assert_eq!(t.degree_sum(0), 20);
    }

    #[test]
    fn default_ladder_increasing() {
        let c = default_c_ladder(4, 3);
        assert_eq!(c[0], 40.0);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        let cfg = StoppingConfig::exhaustive(4, 3);
        cfg.validate().unwrap();
        let bad = StoppingConfig {
            beta: 1.5,
            ..cfg.clone()
        };
        assert!(bad.validate().is_err());
    }

    fn monitor(config: StoppingConfig) -> Monitor {
        let params = StructuralParams::new(3, 2).unwrap();
        Monitor::new(&params, 100, config, false)
    }

    #[test]
    fn s1_fires_at_target() {
        let mut m = monitor(StoppingConfig::length_and_time(3, 2, 4.5, 1e9));
        assert_eq!(m.check_stop(StopView { time: 10, len: 4 }), None);
        assert_eq!(
            m.check_stop(StopView { time: 10, len: 5 }),
            Some(StopReason::S1)
        );
    }

    #[test]
    fn s2_fires_at_cap() {
        let mut m = monitor(StoppingConfig::length_and_time(3, 2, 50.0, 1000.0));
        assert_eq!(m.check_stop(StopView { time: 999, len: 0 }), None);
        assert_eq!(
            m.check_stop(StopView { time: 1000, len: 0 }),
            Some(StopReason::S2)
        );
    }

    #[test]
    fn s1_precedes_s2_and_budget_last() {
        let mut cfg = StoppingConfig::length_and_time(3, 2, 1.0, 5.0);
        cfg.budget = Some(5);
        let mut m = monitor(cfg);
        assert_eq!(
            m.check_stop(StopView { time: 5, len: 1 }),
            Some(StopReason::S1)
        );
        let mut cfg = StoppingConfig::exhaustive(3, 2);
        cfg.budget = Some(5);
        let mut m = monitor(cfg);
        assert_eq!(
            m.check_stop(StopView { time: 5, len: 1 }),
            Some(StopReason::Budget)
        );
    }

    #[test]
    fn s3_counts_new_starts() {
        let mut cfg = StoppingConfig::exhaustive(3, 2);
        cfg.enabled = EnabledConditions::parse("S3").unwrap();
        let mut m = monitor(cfg);
        // n = 100, beta = 0.1: threshold at t = 0 is 100^0.1 / 2 ~ 0.79
        m.record_new_start(&set(&[0, 1]));
        assert_eq!(m.check_stop(StopView { time: 0, len: 0 }), Some(StopReason::S3));
    }

    #[test]
    fn s4_degree_of_empty_set() {
        // j=2, i=0: d(emptyset) = |D_t| against C_0 t / n^(k-j) + n^beta
        let params = StructuralParams::new(3, 2).unwrap();
        let mut cfg = StoppingConfig::exhaustive(3, 2);
        cfg.enabled = EnabledConditions::parse("S4").unwrap();
        let mut m = Monitor::new(&params, 10, cfg, true);
        // threshold at t=1: 40 * 1 / 10 + 10^0.1 = 5.26
        for v in 0..5u32 {
            m.record_standard(&[set(&[v, 9])], 0);
        }
        assert_eq!(m.check_stop(StopView { time: 1, len: 1 }), None);
        m.record_standard(&[set(&[5, 9])], 0);
        assert_eq!(m.check_stop(StopView { time: 1, len: 1 }), Some(StopReason::S4));
    }

    #[test]
    fn parse_conditions() {
        let e = EnabledConditions::parse("S1, s4").unwrap();
        assert!(e.s1 && e.s4 && !e.s2 && !e.s3);
        assert_eq!(EnabledConditions::parse("all").unwrap(), EnabledConditions::ALL);
        assert!(EnabledConditions::parse("S5").is_err());
    }

    #[test]
    fn forbidden_small_cases() {
        let params = StructuralParams::new(3, 2).unwrap();
        let explored = FxHashSet::default();
        let top = set(&[0, 1]);
        let c = forbidden_counts(&ForbiddenInput {
            n: 6,
            params: &params,
            top: &top,
            path_vertices: &[0, 1],
            path_len: 0,
            explored: &explored,
            degrees: None,
        });
        assert_eq!(c.f1, 0.0);
        assert_eq!(c.f2_exact, Some(0));

        let mut explored = FxHashSet::default();
        explored.insert(set(&[1, 2]));
        let c = forbidden_counts(&ForbiddenInput {
            n: 6,
            params: &params,
            top: &top,
            path_vertices: &[0, 1],
            path_len: 0,
            explored: &explored,
            degrees: None,
        });
        assert_eq!(c.f2_exact, Some(1));

        let top = set(&[2, 3]);
        let c = forbidden_counts(&ForbiddenInput {
            n: 6,
            params: &params,
            top: &top,
            path_vertices: &[0, 1, 2, 3],
            path_len: 2,
            explored: &FxHashSet::default(),
            degrees: None,
        });
        // C(4,1) - C(2,1)
        assert_eq!(c.f1, 2.0);
        assert!(c.f1 <= c.f1_bound);
    }
}
