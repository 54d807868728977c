//! A sweep described in TOML, run on all cores, written as CSV together
//! with the per-point summary.

use hyperpaths::experiments::{aggregate, run_sweep, write_records_csv, write_summary_csv, SweepSpec};

const SPEC: &str = r#"
k = 3
j = 2
n = [200, 400]
eps = [-0.3, 0.3]
trials = 4
mode = "pathfinder_lazy"
seed = 7
timing = false
# at n this small the new-start condition S3 fires on the first start
conditions = "S1,S2"
"#;

fn main() -> hyperpaths::Result<()> {
    let spec = SweepSpec::from_toml(SPEC)?;
    let records = run_sweep(&spec, 0)?;
    write_records_csv(&records, std::io::stdout())?;
    let rows = aggregate(&records, |n, eps| spec.bounds(n, eps).unwrap_or((f64::NAN, f64::NAN)));
    println!();
    write_summary_csv(&rows, std::io::stdout())?;
    Ok(())
}
