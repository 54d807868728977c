//! Drives a run one step at a time and prints the path length, the stack
//! and the forbidden-set counters of the set on top.

use hyperpaths::hypergraph::generate_explicit;
use hyperpaths::pathfinder::{PathFinder, RunConfig, Step};
use hyperpaths::{threshold_p0, StoppingConfig};

fn main() -> hyperpaths::Result<()> {
    let (n, k, j, seed) = (16, 3, 2, 5);
    let p = 2.0 * threshold_p0(n as u64, k, j)?;
    let h = generate_explicit(n, k, p, seed, 1 << 20)?;
    let config = RunConfig::new(seed, StoppingConfig::exhaustive(k, j)).with_degrees();
    let mut pf = PathFinder::new(&h, j, config)?;
    loop {
        let step = pf.step();
        let counters = pf.forbidden_counts();
        match &step {
            Step::Query { kset, outcome: true } => print!("t={:<4} edge {kset}", pf.time()),
            Step::NewStart(s) => print!("t={:<4} start {s}", pf.time()),
            Step::Explored(s) => print!("t={:<4} explored {s}", pf.time()),
            Step::Finished(reason) => {
                println!("finished: {reason}");
                break;
            }
            Step::Query { .. } => continue,
        }
        print!("  len={} stack={}", pf.len(), pf.active_len());
        if let Some(c) = counters {
            print!(
                "  f1={} (bound {}) f2={:?} (bound {:?})",
                c.f1, c.f1_bound, c.f2_exact, c.f2_bound
            );
        }
        println!();
    }
    let s = pf.summary();
    println!(
        "max_len={} queries={} new_starts={} standard={} explored={}",
        s.max_len, s.queries, s.new_starts, s.standard, s.explored
    );
    Ok(())
}
