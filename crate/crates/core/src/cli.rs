//! Command-line front end. Every subcommand is a thin wrapper over a
//! library call; `--config` files use the long flag names as keys, with
//! flags taking precedence.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a budget ran out or a
//! result is censored (results are still written).

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use crate::combinatorics::{
    expected_path_classes, expected_path_classes_exact, theorem_bounds, threshold_p0, z_ell,
    StructuralParams,
};
use crate::error::{Error, Result};
use crate::experiments::{
    aggregate, preset, run_sweep, verify_lazy_explicit, verify_oracle_bound, verify_z,
    write_records_csv, write_summary_csv, Mode, SweepSpec, VerifyReport,
};
use crate::hypergraph::{
    generate_explicit, generate_sparse, ExplicitHypergraph, LazyHypergraph,
    DEFAULT_ENUMERATION_BUDGET,
};
use crate::monitor::{EnabledConditions, StopReason, StoppingConfig};
use crate::oracle::{expectation_monte_carlo, longest_path_exact, DEFAULT_NODE_BUDGET};
use crate::pathfinder::{PathFinder, RunConfig};
use crate::trace::TraceLevel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CENSORED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hyperpaths", version, about = "j-tight paths in random k-uniform hypergraphs")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file: run flags by long name, or a sweep spec.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the full event trace of `run` as JSON lines.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    /// Worker threads for `sweep`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural parameters a, b, s, r and the batch size.
    Params {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        j: usize,
    },
    /// Threshold p0 and the predicted longest-path curves.
    Bounds {
        #[arg(short)]
        n: u64,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        j: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 6.0)]
        omega: f64,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
    },
    /// Equivalence-class size of labeled paths of length l.
    Z {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        j: usize,
        #[arg(short)]
        l: usize,
    },
    /// Expected number of path classes of length l.
    Expectation {
        #[arg(short)]
        n: u64,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        j: usize,
        #[arg(short)]
        l: usize,
        /// Edge probability as a decimal, e.g. 0.3.
        #[arg(short)]
        p: String,
        /// Print the exact rational value as well.
        #[arg(long)]
        exact: bool,
        /// Also estimate by sampling this many hypergraphs.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Sample an explicit hypergraph and write it as text.
    Gen {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        p: Option<f64>,
        /// Set p = (1 + eps) p0 instead; needs -j.
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<f64>,
        #[arg(short)]
        j: Option<usize>,
        /// Geometric-skip sampler for sparse large instances.
        #[arg(long)]
        sparse: bool,
    },
    /// One PathFinder run; prints its summary as JSON.
    Run(RunArgs),
    /// Exact longest path of a hypergraph file.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(short)]
        j: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Run a sweep from a config file or preset.
    Sweep(SweepArgs),
    /// Cross-check suites.
    Verify {
        /// z, lazy-explicit, oracle or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(short, default_value_t = 20)]
        n: u32,
        #[arg(short, default_value_t = 3)]
        k: usize,
        #[arg(short, default_value_t = 2)]
        j: usize,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        eps: f64,
    },
}

#[derive(Args, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RunArgs {
    #[arg(short)]
    n: Option<u32>,
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    j: Option<usize>,
    #[arg(short)]
    p: Option<f64>,
    /// Set p = (1 + eps) p0 instead of -p.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<f64>,
    /// Hypergraph file; replaces the lazy coin flips.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Comma list of live stopping conditions, e.g. S1,S2.
    #[arg(long)]
    conditions: Option<String>,
    #[arg(long)]
    target_length: Option<f64>,
    #[arg(long)]
    time_cap: Option<f64>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[serde(skip)]
    #[arg(skip)]
    seed: Option<u64>,
}

#[derive(Args, Debug, Default)]
struct SweepArgs {
    /// supercritical, loose, subcritical, small-explicit or small-oracle.
    #[arg(long)]
    preset: Option<String>,
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    j: Option<usize>,
    #[arg(short, value_delimiter = ',')]
    n: Option<Vec<u32>>,
    /// Signed list: negative values are subcritical.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    eps: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    query_budget: Option<u64>,
    #[arg(long)]
    node_budget: Option<u64>,
    #[arg(long)]
    conditions: Option<String>,
    /// Write ms = 0 so repeated sweeps give identical files.
    #[arg(long)]
    no_timing: bool,
    /// Summary table path; printed to stderr otherwise.
    #[arg(long)]
    summary: Option<PathBuf>,
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_config(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn open_out(path: &Option<PathBuf>, out: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => body(out),
    }
}

/// Parses a decimal such as `0.3` or `1e-4` into an exact rational.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Config(format!("not a decimal number: {text:?}"));
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (text, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-shift) as usize))
    })
}

fn probability(p: Option<f64>, eps: Option<f64>, n: u32, k: usize, j: Option<usize>) -> Result<f64> {
    match (p, eps) {
        (Some(p), None) => Ok(p),
        (None, Some(eps)) => {
            let j = j.ok_or_else(|| Error::Config("--eps needs -j".into()))?;
            Ok((1.0 + eps) * threshold_p0(n as u64, k, j)?)
        }
        _ => Err(Error::Config("give exactly one of -p and --eps".into())),
    }
}

fn report(out: &mut dyn Write, name: &str, r: &VerifyReport) -> Result<bool> {
    writeln!(out, "{name}: {}/{} {}", r.passed, r.total, r.note)?;
    Ok(r.ok())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Params { k, j } => {
            let p = StructuralParams::new(k, j)?;
            writeln!(out, "a={} b={} s={} r={} batch={}", p.a, p.b, p.s, p.r, p.batch_size)?;
        }
        Command::Bounds {
            n,
            k,
            j,
            eps,
            omega,
            delta,
        } => {
            writeln!(out, "p0 {:e}", threshold_p0(n, k, j)?)?;
            for c in theorem_bounds(n as f64, k, j, eps, omega, delta)? {
                writeln!(out, "{} {:.4}", c.regime.name(), c.value)?;
            }
        }
        Command::Z { k, j, l } => writeln!(out, "{}", z_ell(k, j, l)?)?,
        Command::Expectation {
            n,
            k,
            j,
            l,
            p,
            exact,
            samples,
        } => {
            let pf: f64 = p
                .parse()
                .map_err(|_| Error::Config(format!("not a probability: {p:?}")))?;
            writeln!(out, "expected {:e}", expected_path_classes(n, k, j, l, pf)?)?;
            if exact {
                let v = expected_path_classes_exact(n, k, j, l, &parse_decimal(&p)?)?;
                writeln!(out, "exact {v}")?;
            }
            if let Some(samples) = samples {
                let n32 = u32::try_from(n).map_err(|_| Error::Config("n too large".into()))?;
                let est = expectation_monte_carlo(n32, k, j, l, pf, samples, seed)?;
                writeln!(out, "monte_carlo {:.6} +- {:.6} ({} samples)", est.mean, est.std_error, samples)?;
            }
        }
        Command::Gen {
            n,
            k,
            p,
            eps,
            j,
            sparse,
        } => {
            let p = probability(p, eps, n, k, j)?;
            let h = if sparse {
                generate_sparse(n, k, p, seed)?
            } else {
                generate_explicit(n, k, p, seed, DEFAULT_ENUMERATION_BUDGET)?
            };
            open_out(&cli.out, out, |w| h.write_text(w))?;
        }
        Command::Run(flags) => {
            let file = match &cli.config {
                Some(path) => toml::from_str(&read_config(path)?)
                    .map_err(|e| Error::Config(e.to_string()))?,
                None => RunArgs::default(),
            };
            let args = RunArgs {
                seed: cli.seed,
                ..flags.merge(file)
            };
            return run_command(args, &cli.trace, &cli.out, out);
        }
        Command::Oracle { input, j, budget } => {
            let h = ExplicitHypergraph::read_text(BufReader::new(File::open(&input)?))?;
            let best = longest_path_exact(&h, j, budget)?;
            open_out(&cli.out, out, |w| {
                writeln!(w, "L={} censored={} nodes={}", best.length, best.censored, best.nodes)?;
                let verts: Vec<String> = best.witness.vertices.iter().map(|v| v.to_string()).collect();
                writeln!(w, "witness {}", verts.join(" "))?;
                Ok(())
            })?;
            if best.censored {
                return Ok(EXIT_CENSORED);
            }
        }
        Command::Sweep(flags) => {
            let mut spec = match (&flags.preset, &cli.config) {
                (Some(name), _) => preset(name)
                    .ok_or_else(|| Error::Config(format!("unknown preset {name:?}")))?,
                (None, Some(path)) => SweepSpec::from_toml(&read_config(path)?)?,
                (None, None) => SweepSpec::default(),
            };
            if flags.preset.is_some() {
                if let Some(path) = &cli.config {
                    spec = overlay_sweep(spec, &read_config(path)?)?;
                }
            }
            let spec = flags.apply(spec, cli.seed)?;
            let records = run_sweep(&spec, cli.jobs.unwrap_or(1))?;
            open_out(&cli.out, out, |w| write_records_csv(&records, w))?;
            let rows = aggregate(&records, |n, eps| {
                spec.bounds(n, eps).unwrap_or((f64::NAN, f64::NAN))
            });
            match &flags.summary {
                Some(path) => write_summary_csv(&rows, BufWriter::new(File::create(path)?))?,
                None => write_summary_csv(&rows, &mut *err)?,
            }
            if spec.eps.iter().any(|&e| e < 0.0) {
                writeln!(
                    err,
                    "note: the bound curves are asymptotic in n; finite-n agreement is a proxy only"
                )?;
            }
            if records.iter().any(|r| r.censored) {
                return Ok(EXIT_CENSORED);
            }
        }
        Command::Verify {
            suite,
            n,
            k,
            j,
            trials,
            eps,
        } => {
            let all = suite == "all";
            if !all && !["z", "lazy-explicit", "oracle"].contains(&suite.as_str()) {
                return Err(Error::Config(format!("unknown suite {suite:?}")));
            }
            let mut ok = true;
            if all || suite == "z" {
                ok &= report(out, "z", &verify_z(6, 9)?)?;
            }
            if all || suite == "lazy-explicit" {
                ok &= report(out, "lazy-explicit", &verify_lazy_explicit(n, k, j, eps, trials, seed)?)?;
            }
            if all || suite == "oracle" {
                let small = n.min(12);
                ok &= report(out, "oracle", &verify_oracle_bound(small, k, j, eps, trials, seed)?)?;
            }
            if !ok {
                writeln!(err, "verification failed")?;
                return Ok(EXIT_USAGE);
            }
        }
    }
    Ok(EXIT_OK)
}

impl RunArgs {
    fn merge(self, file: RunArgs) -> RunArgs {
        RunArgs {
            n: self.n.or(file.n),
            k: self.k.or(file.k),
            j: self.j.or(file.j),
            p: self.p.or(file.p),
            eps: self.eps.or(file.eps),
            input: self.input.or(file.input),
            conditions: self.conditions.or(file.conditions),
            target_length: self.target_length.or(file.target_length),
            time_cap: self.time_cap.or(file.time_cap),
            budget: self.budget.or(file.budget),
            delta: self.delta.or(file.delta),
            beta: self.beta.or(file.beta),
            seed: self.seed.or(file.seed),
        }
    }
}

fn run_command(
    args: RunArgs,
    trace: &Option<PathBuf>,
    out_path: &Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let seed = args.seed.unwrap_or(0);
    let missing = |name: &str| Error::Config(format!("run needs {name}"));
    let explicit = match &args.input {
        Some(path) => Some(ExplicitHypergraph::read_text(BufReader::new(File::open(path)?))?),
        None => None,
    };
    let (n, k) = match &explicit {
        Some(h) => (h.n(), h.k()),
        None => (args.n.ok_or_else(|| missing("-n"))?, args.k.ok_or_else(|| missing("-k"))?),
    };
    let j = args.j.ok_or_else(|| missing("-j"))?;
    let mut stop = match (args.eps, j) {
        (Some(eps), 1) if eps > 0.0 => StoppingConfig::loose(n as u64, k, eps, args.delta.unwrap_or(0.5)),
        (Some(eps), _) if eps > 0.0 => {
            StoppingConfig::high_order(n as u64, k, j, eps, args.delta.unwrap_or(0.5))
        }
        _ => StoppingConfig::exhaustive(k, j),
    };
    if let Some(c) = &args.conditions {
        stop.enabled = EnabledConditions::parse(c)?;
    }
    if let Some(t) = args.target_length {
        stop.target_length = t;
    }
    if let Some(t) = args.time_cap {
        stop.time_cap = t;
    }
    if let Some(b) = args.beta {
        stop.beta = b;
    }
    stop.budget = args.budget;
    let mut config = RunConfig::new(seed, stop);
    if trace.is_some() {
        config = config.with_trace(TraceLevel::Full);
    }
    let result = match &explicit {
        Some(h) => {
            let mut pf = PathFinder::new(h, j, config)?;
            pf.run_to_end();
            pf.into_trace()
        }
        None => {
            let p = probability(args.p, args.eps, n, k, Some(j))?;
            let mut pf = PathFinder::new(LazyHypergraph::new(n, k, p, seed)?, j, config)?;
            pf.run_to_end();
            pf.into_trace()
        }
    };
    if let Some(path) = trace {
        let mut w = BufWriter::new(File::create(path)?);
        result.write_jsonl(&mut w)?;
        w.flush()?;
    }
    open_out(out_path, out, |w| {
        serde_json::to_writer_pretty(&mut *w, &result.summary)?;
        writeln!(w)?;
        Ok(())
    })?;
    Ok(if result.summary.stop_reason == StopReason::Budget {
        EXIT_CENSORED
    } else {
        EXIT_OK
    })
}

/// Config keys applied on top of a preset.
fn overlay_sweep(base: SweepSpec, text: &str) -> Result<SweepSpec> {
    let table: toml::Table = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let mut merged: toml::Table = toml::from_str(&sweep_to_toml(&base))
        .map_err(|e| Error::Config(e.to_string()))?;
    merged.extend(table);
    SweepSpec::from_toml(&merged.to_string())
}

fn sweep_to_toml(s: &SweepSpec) -> String {
    let list = |v: Vec<String>| format!("[{}]", v.join(", "));
    let mut text = format!(
        "k = {}\nj = {}\nn = {}\neps = {}\ntrials = {}\nmode = \"{}\"\ndelta = {:?}\nomega = {:?}\nseed = {}\nnode_budget = {}\ntiming = {}\n",
        s.k,
        s.j,
        list(s.n.iter().map(|x| x.to_string()).collect()),
        list(s.eps.iter().map(|x| format!("{x:?}")).collect()),
        s.trials,
        s.mode,
        s.delta,
        s.omega,
        s.seed,
        s.node_budget,
        s.timing
    );
    if let Some(b) = s.query_budget {
        text.push_str(&format!("query_budget = {b}\n"));
    }
    if let Some(c) = s.conditions {
        let names: Vec<&str> = [(c.s1, "S1"), (c.s2, "S2"), (c.s3, "S3"), (c.s4, "S4")]
            .into_iter()
            .filter_map(|(on, name)| on.then_some(name))
            .collect();
        text.push_str(&format!("conditions = \"{}\"\n", if names.is_empty() { "none".into() } else { names.join(",") }));
    }
    text
}

impl SweepArgs {
    fn apply(&self, mut spec: SweepSpec, seed: Option<u64>) -> Result<SweepSpec> {
        if let Some(k) = self.k {
            spec.k = k;
        }
        if let Some(j) = self.j {
            spec.j = j;
        }
        if let Some(n) = &self.n {
            spec.n = n.clone();
        }
        if let Some(eps) = &self.eps {
            spec.eps = eps.clone();
        }
        if let Some(t) = self.trials {
            spec.trials = t;
        }
        if let Some(m) = &self.mode {
            spec.mode = m.parse::<Mode>()?;
        }
        if let Some(d) = self.delta {
            spec.delta = d;
        }
        if let Some(o) = self.omega {
            spec.omega = o;
        }
        if let Some(b) = self.query_budget {
            spec.query_budget = Some(b);
        }
        if let Some(b) = self.node_budget {
            spec.node_budget = b;
        }
        if let Some(c) = &self.conditions {
            spec.conditions = Some(EnabledConditions::parse(c)?);
        }
        if self.no_timing {
            spec.timing = false;
        }
        if let Some(s) = seed {
            spec.seed = s;
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["hyperpaths"];
        full.extend_from_slice(args);
        let code = execute(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn params_and_z() {
        let (code, out, _) = run(&["params", "-k", "5", "-j", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "a=2 b=1 s=1 r=0 batch=3");
        let (code, out, _) = run(&["z", "-k", "2", "-j", "1", "-l", "4"]);
        assert_eq!((code, out.trim()), (0, "2"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(&["params", "-k", "5"]).0, 1);
        assert_eq!(run(&["params", "-k", "3", "-j", "3"]).0, 1);
        assert_eq!(run(&["bogus"]).0, 1);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("0.3").unwrap(), BigRational::new(3.into(), 10.into()));
        assert_eq!(parse_decimal("1e-2").unwrap(), BigRational::new(1.into(), 100.into()));
        assert_eq!(parse_decimal("2").unwrap(), BigRational::from_integer(2.into()));
        assert!(parse_decimal("x").is_err());
    }

    #[test]
    fn run_config_matches_flags() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.toml");
        std::fs::write(&cfg, "n = 30\nk = 3\nj = 2\neps = 0.5\nconditions = \"S1\"\ntarget_length = 4\n").unwrap();
        let from_file = run(&["run", "--seed", "3", "--config", cfg.to_str().unwrap()]);
        let from_flags = run(&[
            "run", "--seed", "3", "-n", "30", "-k", "3", "-j", "2", "--eps", "0.5", "--conditions", "S1",
            "--target-length", "4",
        ]);
        assert_eq!(from_file.0, 0, "{}", from_file.2);
        assert_eq!(from_file, from_flags);
        let mixed = run(&["run", "--seed", "3", "--config", cfg.to_str().unwrap(), "-n", "40"]);
        assert_ne!(mixed.1, from_file.1);
    }

    #[test]
    fn budget_exit_code() {
        let (code, out, _) = run(&["run", "-n", "30", "-k", "3", "-j", "2", "-p", "0.01", "--budget", "5"]);
        assert_eq!(code, 2);
        assert!(out.contains("\"budget\""));
    }

    #[test]
    fn sweep_writes_csv() {
        let dir = tempfile::tempdir().unwrap();
        let csv_a = dir.path().join("a.csv");
        let csv_b = dir.path().join("b.csv");
        for path in [&csv_a, &csv_b] {
            let (code, _, err) = run(&[
                "sweep", "-n", "10,12", "--eps=-0.5,0.5", "--trials", "2", "--mode", "pathfinder_explicit",
                "--seed", "5", "--no-timing", "--jobs", "2", "--out", path.to_str().unwrap(),
            ]);
            assert_eq!(code, 0, "{err}");
            assert!(err.contains("fraction_within"));
        }
        let a = std::fs::read(&csv_a).unwrap();
        assert_eq!(a, std::fs::read(&csv_b).unwrap());
        assert_eq!(String::from_utf8(a).unwrap().lines().count(), 9);
    }

    #[test]
    fn gen_then_oracle() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("h.txt");
        let (code, _, _) = run(&["gen", "-n", "9", "-k", "3", "-p", "0.3", "--seed", "2", "--out", file.to_str().unwrap()]);
        assert_eq!(code, 0);
        let (code, out, _) = run(&["oracle", "--input", file.to_str().unwrap(), "-j", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("L="));
    }

    #[test]
    fn verify_lazy_explicit_suite() {
        let (code, out, _) = run(&["verify", "--suite", "lazy-explicit", "-n", "20", "--trials", "10"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "lazy-explicit: 10/10 traces identical");
    }
}
