//! Seeded sweeps over `(n, eps)` around the threshold `p0`, with CSV output
//! and aggregation against the predicted bound curves.
//!
//! `eps` is signed: `-0.3` means `p = 0.7 p0`, `0.2` means `p = 1.2 p0`.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::combinatorics::{meets, theorem_bounds, threshold_p0, within_upper, Regime};
use crate::error::{Error, Result};
use crate::hashing::mix64;
use crate::hypergraph::{generate_explicit, generate_sparse, LazyHypergraph, DEFAULT_ENUMERATION_BUDGET};
use crate::monitor::{EnabledConditions, StopReason, StoppingConfig};
use crate::oracle::{longest_path_exact, DEFAULT_NODE_BUDGET};
use crate::pathfinder::{PathFinder, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    PathfinderLazy,
    PathfinderExplicit,
    /// Exact longest path on an explicitly enumerated hypergraph.
    OracleExact,
    /// Exact longest path on a sparse sample, for subcritical large `n`.
    OracleEnumerateSubcritical,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::PathfinderLazy,
        Mode::PathfinderExplicit,
        Mode::OracleExact,
        Mode::OracleEnumerateSubcritical,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::PathfinderLazy => "pathfinder_lazy",
            Mode::PathfinderExplicit => "pathfinder_explicit",
            Mode::OracleExact => "oracle_exact",
            Mode::OracleEnumerateSubcritical => "oracle_enumerate_subcritical",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown mode {s:?}")))
    }
}

/// A scalar or a list in config files.
fn one_or_many<'de, D, T>(d: D) -> std::result::Result<Vec<T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany<T> {
        One(T),
        Many(Vec<T>),
    }
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(x) => vec![x],
        OneOrMany::Many(v) => v,
    })
}

fn conditions_from_str<'de, D>(d: D) -> std::result::Result<Option<EnabledConditions>, D::Error>
where
    D: Deserializer<'de>,
{
    let text: Option<String> = Option::deserialize(d)?;
    text.map(|t| EnabledConditions::parse(&t).map_err(serde::de::Error::custom))
        .transpose()
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub k: usize,
    pub j: usize,
    #[serde(deserialize_with = "one_or_many")]
    pub n: Vec<u32>,
    /// Signed: negative is subcritical.
    #[serde(deserialize_with = "one_or_many")]
    pub eps: Vec<f64>,
    pub trials: u32,
    pub mode: Mode,
    pub delta: f64,
    pub omega: f64,
    pub seed: u64,
    /// Hard cap on PathFinder queries.
    pub query_budget: Option<u64>,
    /// Node cap for the oracle modes.
    pub node_budget: u64,
    /// Overrides the stopping conditions of supercritical PathFinder runs.
    #[serde(deserialize_with = "conditions_from_str")]
    pub conditions: Option<EnabledConditions>,
    /// Record wall time; off gives byte-identical CSV across runs.
    pub timing: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            k: 3,
            j: 2,
            n: Vec::new(),
            eps: Vec::new(),
            trials: 1,
            mode: Mode::PathfinderLazy,
            delta: 0.5,
            omega: 6.0,
            seed: 0,
            query_budget: None,
            node_budget: DEFAULT_NODE_BUDGET,
            conditions: None,
            timing: true,
        }
    }
}

impl SweepSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        crate::combinatorics::StructuralParams::new(self.k, self.j)?;
        for &e in &self.eps {
            if e == 0.0 || e.abs() >= 1.0 || e.is_nan() {
                return Err(Error::InvalidEpsilon(e));
            }
        }
        for &n in &self.n {
            if n as usize <= self.k {
                return Err(Error::TooFewVertices {
                    n: n as u64,
                    k: self.k,
                });
            }
        }
        if self.n.len() >= 1 << 16 || self.eps.len() >= 1 << 16 {
            return Err(Error::Config("at most 65535 values of n and eps".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!("delta {} outside (0,1)", self.delta)));
        }
        if !(self.omega > 0.0) {
            return Err(Error::NonPositive {
                name: "omega",
                value: self.omega,
            });
        }
        Ok(())
    }

    /// Edge probability `(1 + eps) p0(n)`.
    pub fn probability(&self, n: u32, eps: f64) -> Result<f64> {
        Ok((1.0 + eps) * threshold_p0(n as u64, self.k, self.j)?)
    }

    /// Predicted `[lower, upper]` longest-path range at `(n, eps)`: the
    /// subcritical pair below the threshold; above it the supercritical
    /// pair, with the loose lower curve for `j = 1`.
    pub fn bounds(&self, n: u32, eps: f64) -> Result<(f64, f64)> {
        let curves = theorem_bounds(n as f64, self.k, self.j, eps.abs(), self.omega, self.delta)?;
        let get = |r: Regime| curves.iter().find(|c| c.regime == r).map(|c| c.value);
        let (lo, hi) = if eps < 0.0 {
            (Regime::SubcriticalLower, Regime::SubcriticalUpper)
        } else if self.j == 1 {
            (Regime::LooseLower, Regime::SupercriticalUpper)
        } else {
            (Regime::SupercriticalLower, Regime::SupercriticalUpper)
        };
        Ok((get(lo).unwrap(), get(hi).unwrap()))
    }

    /// Stopping rule of a PathFinder trial. Below the threshold the run
    /// explores everything; above it the run stops at the target length or
    /// the time horizon.
    pub fn stopping(&self, n: u32, eps: f64) -> StoppingConfig {
        let mut stop = if eps < 0.0 {
            StoppingConfig::exhaustive(self.k, self.j)
        } else if self.j == 1 {
            StoppingConfig::loose(n as u64, self.k, eps, self.delta)
        } else {
            StoppingConfig::high_order(n as u64, self.k, self.j, eps, self.delta)
        };
        if eps > 0.0 {
            if let Some(c) = self.conditions {
                stop.enabled = c;
            }
        }
        stop.budget = self.query_budget;
        stop
    }
}

/// Per-trial seed `mix64(master + mix64(n_idx << 48 | eps_idx << 32 | trial) + G)`
/// with wrapping addition and `G` the 64-bit golden ratio. The packing is injective for fewer than 2^16
/// values of n and eps, and every other step is a bijection.
pub fn trial_seed(master: u64, n_idx: usize, eps_idx: usize, trial: u32) -> u64 {
    let packed = (n_idx as u64) << 48 | (eps_idx as u64) << 32 | trial as u64;
    mix64(master.wrapping_add(mix64(packed)).wrapping_add(0x9e37_79b9_7f4a_7c15))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: u32,
    pub k: usize,
    pub j: usize,
    pub eps: f64,
    pub p: f64,
    pub seed: u64,
    pub trial: u32,
    pub mode: Mode,
    #[serde(rename = "L")]
    pub l: usize,
    pub censored: bool,
    pub queries: u64,
    pub new_starts: u64,
    /// Positive queries for PathFinder; hypergraph edges for oracle modes.
    pub edges: u64,
    /// A stop reason, or `n/a` for oracle modes.
    pub stop_reason: String,
    pub ms: u64,
}

fn run_trial(spec: &SweepSpec, n: u32, eps: f64, seed: u64, trial: u32) -> TrialRecord {
    let start = Instant::now();
    let mut rec = TrialRecord {
        n,
        k: spec.k,
        j: spec.j,
        eps,
        p: spec.probability(n, eps).unwrap_or(f64::NAN),
        seed,
        trial,
        mode: spec.mode,
        l: 0,
        censored: false,
        queries: 0,
        new_starts: 0,
        edges: 0,
        stop_reason: "n/a".into(),
        ms: 0,
    };
    if let Err(_e) = fill_trial(spec, &mut rec) {
        rec.censored = true;
    }
    if spec.timing {
        rec.ms = start.elapsed().as_millis() as u64;
    }
    rec
}

fn fill_trial(spec: &SweepSpec, rec: &mut TrialRecord) -> Result<()> {
    let (n, k, j, p, seed) = (rec.n, spec.k, spec.j, rec.p, rec.seed);
    let pathfinder = |rec: &mut TrialRecord, pf_summary: crate::trace::RunSummary| {
        rec.l = pf_summary.max_len;
        rec.queries = pf_summary.queries;
        rec.new_starts = pf_summary.new_starts;
        rec.edges = pf_summary.edges_found;
        rec.stop_reason = pf_summary.stop_reason.as_str().into();
        rec.censored = pf_summary.stop_reason == StopReason::Budget;
    };
    let config = RunConfig::new(seed, spec.stopping(n, rec.eps));
    match spec.mode {
        Mode::PathfinderLazy => {
            let mut pf = PathFinder::new(LazyHypergraph::new(n, k, p, seed)?, j, config)?;
            pf.run_to_end();
            pathfinder(rec, pf.summary());
        }
        Mode::PathfinderExplicit => {
            let h = generate_explicit(n, k, p, seed, DEFAULT_ENUMERATION_BUDGET)?;
            let mut pf = PathFinder::new(&h, j, config)?;
            pf.run_to_end();
            pathfinder(rec, pf.summary());
        }
        Mode::OracleExact | Mode::OracleEnumerateSubcritical => {
            let h = if spec.mode == Mode::OracleExact {
                generate_explicit(n, k, p, seed, DEFAULT_ENUMERATION_BUDGET)?
            } else {
                generate_sparse(n, k, p, seed)?
            };
            let best = longest_path_exact(&h, j, spec.node_budget)?;
            rec.l = best.length;
            rec.censored = best.censored;
            rec.edges = h.edge_count() as u64;
        }
    }
    Ok(())
}

/// Runs every `(n, eps, trial)` point of `spec` on up to `jobs` threads
/// and returns the records in spec order.
pub fn run_sweep(spec: &SweepSpec, jobs: usize) -> Result<Vec<TrialRecord>> {
    spec.validate()?;
    let mut points = Vec::new();
    for (ni, &n) in spec.n.iter().enumerate() {
        for (ei, &eps) in spec.eps.iter().enumerate() {
            for trial in 0..spec.trials {
                points.push((n, eps, trial, trial_seed(spec.seed, ni, ei, trial)));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(|| {
        points
            .par_iter()
            .map(|&(n, eps, trial, seed)| run_trial(spec, n, eps, seed, trial))
            .collect()
    }))
}

pub fn write_records_csv<W: Write>(records: &[TrialRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    if records.is_empty() {
        out.write_record([
            "n", "k", "j", "eps", "p", "seed", "trial", "mode", "L", "censored", "queries",
            "new_starts", "edges", "stop_reason", "ms",
        ])?;
    }
    for r in records {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: u32,
    pub eps: f64,
    pub trials: usize,
    pub uncensored: usize,
    #[serde(rename = "mean_L")]
    pub mean_l: Option<f64>,
    /// Over uncensored records only.
    #[serde(rename = "min_L")]
    pub min_l: Option<usize>,
    #[serde(rename = "max_L")]
    pub max_l: usize,
    pub lower: f64,
    pub upper: f64,
    /// Share of uncensored records with `lower <= L <= upper`.
    pub fraction_within: Option<f64>,
    pub censoring_rate: f64,
}

/// Groups records by `(n, eps)` in order of first appearance and compares
/// them with `bounds(n, eps)`. Censored lengths count towards the maximum
/// only.
pub fn aggregate(
    records: &[TrialRecord],
    bounds: impl Fn(u32, f64) -> (f64, f64),
) -> Vec<SummaryRow> {
    let mut keys: Vec<(u32, f64)> = Vec::new();
    for r in records {
        if !keys.iter().any(|&(n, e)| n == r.n && e == r.eps) {
            keys.push((r.n, r.eps));
        }
    }
    keys.into_iter()
        .map(|(n, eps)| {
            let group: Vec<&TrialRecord> =
                records.iter().filter(|r| r.n == n && r.eps == eps).collect();
            let clean: Vec<usize> = group.iter().filter(|r| !r.censored).map(|r| r.l).collect();
            let (lower, upper) = bounds(n, eps);
            let within = clean
                .iter()
                .filter(|&&l| meets(l, lower) && within_upper(l, upper))
                .count();
            let u = clean.len();
            SummaryRow {
                n,
                eps,
                trials: group.len(),
                uncensored: u,
                mean_l: (u > 0).then(|| clean.iter().sum::<usize>() as f64 / u as f64),
                min_l: clean.iter().copied().min(),
                max_l: group.iter().map(|r| r.l).max().unwrap_or(0),
                lower,
                upper,
                fraction_within: (u > 0).then(|| within as f64 / u as f64),
                censoring_rate: (group.len() - u) as f64 / group.len() as f64,
            }
        })
        .collect()
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

/// Named sweeps matching the shipped experiment configurations.
pub fn preset(name: &str) -> Option<SweepSpec> {
    let base = SweepSpec::default();
    Some(match name {
        "supercritical" => SweepSpec {
            n: vec![10_000],
            eps: vec![0.2],
            trials: 10,
            query_budget: Some(1_000_000_000),
            ..base
        },
        "loose" => SweepSpec {
            j: 1,
            n: vec![2000],
            eps: vec![0.4],
            trials: 10,
            ..base
        },
        "subcritical" => SweepSpec {
            n: vec![2000],
            eps: vec![-0.3],
            trials: 20,
            mode: Mode::OracleEnumerateSubcritical,
            ..base
        },
        "small-explicit" => SweepSpec {
            n: vec![8, 10, 12],
            eps: vec![-0.5, 0.5],
            trials: 20,
            mode: Mode::PathfinderExplicit,
            ..base
        },
        "small-oracle" => SweepSpec {
            n: vec![8, 10, 12],
            eps: vec![-0.5, 0.5],
            trials: 20,
            mode: Mode::OracleExact,
            ..base
        },
        _ => return None,
    })
}

pub const PRESETS: [&str; 5] = [
    "supercritical",
    "loose",
    "subcritical",
    "small-explicit",
    "small-oracle",
];

/// Outcome of one cross-check suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub passed: usize,
    pub total: usize,
    /// Extra statistic reported next to the pass count.
    pub note: String,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

/// Closed-form class sizes against brute force for `2 <= k <= max_k`,
/// every `j`, and every `l >= s+2` with at most `max_vertices` vertices.
pub fn verify_z(max_k: usize, max_vertices: usize) -> Result<VerifyReport> {
    let (mut passed, mut total) = (0, 0);
    for k in 2..=max_k {
        for j in 1..k {
            let params = crate::combinatorics::StructuralParams::new(k, j)?;
            let mut len = params.s + 2;
            while params.vertex_count(len) <= max_vertices {
                total += 1;
                let closed = crate::combinatorics::z_ell_closed_form(&params, len);
                if closed == Some(crate::oracle::z_ell_bruteforce(k, j, len)?) {
                    passed += 1;
                }
                len += 1;
            }
        }
    }
    Ok(VerifyReport {
        passed,
        total,
        note: "closed forms match".into(),
    })
}

/// Paired full-trace runs on the lazy and explicit backends with shared
/// seeds at `p = (1 + eps) p0`.
pub fn verify_lazy_explicit(
    n: u32,
    k: usize,
    j: usize,
    eps: f64,
    trials: u32,
    seed: u64,
) -> Result<VerifyReport> {
    let p = (1.0 + eps) * threshold_p0(n as u64, k, j)?;
    let mut passed = 0;
    for t in 0..trials {
        let s = trial_seed(seed, 0, 0, t);
        let config = RunConfig::new(s, StoppingConfig::exhaustive(k, j))
            .with_trace(crate::trace::TraceLevel::Full);
        let mut lazy = PathFinder::new(LazyHypergraph::new(n, k, p, s)?.with_recording(), j, config.clone())?;
        lazy.run_to_end();
        let repeats = lazy.graph().repeated_queries();
        let h = generate_explicit(n, k, p, s, DEFAULT_ENUMERATION_BUDGET)?;
        let mut explicit = PathFinder::new(&h, j, config)?;
        explicit.run_to_end();
        if repeats == 0 && lazy.into_trace() == explicit.into_trace() {
            passed += 1;
        }
    }
    Ok(VerifyReport {
        passed,
        total: trials as usize,
        note: "traces identical".into(),
    })
}

/// PathFinder's longest path never exceeds the exact optimum.
pub fn verify_oracle_bound(
    n: u32,
    k: usize,
    j: usize,
    eps: f64,
    trials: u32,
    seed: u64,
) -> Result<VerifyReport> {
    let p = (1.0 + eps) * threshold_p0(n as u64, k, j)?;
    let (mut passed, mut equal) = (0, 0);
    for t in 0..trials {
        let s = trial_seed(seed, 0, 0, t);
        let h = generate_explicit(n, k, p, s, DEFAULT_ENUMERATION_BUDGET)?;
        let mut pf = PathFinder::new(&h, j, RunConfig::new(s, StoppingConfig::exhaustive(k, j)))?;
        pf.run_to_end();
        let best = longest_path_exact(&h, j, DEFAULT_NODE_BUDGET)?;
        if !best.censored && pf.max_len() <= best.length {
            passed += 1;
            if pf.max_len() == best.length {
                equal += 1;
            }
        }
    }
    Ok(VerifyReport {
        passed,
        total: trials as usize,
        note: format!("within the exact optimum ({equal} equal)"),
    })
}
