//! One supercritical run on the lazy backend, stopping at the target length.

use std::time::Instant;

use hyperpaths::pathfinder::{PathFinder, RunConfig};
use hyperpaths::{threshold_p0, LazyHypergraph, StoppingConfig};

fn main() -> hyperpaths::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args.get(1).map_or(10_000, |s| s.parse().unwrap());
    let seed: u64 = args.get(2).map_or(1, |s| s.parse().unwrap());
    let (k, j, eps, delta) = (3, 2, 0.2, 0.5);
    let p = (1.0 + eps) * threshold_p0(n as u64, k, j)?;
    let mut stop = StoppingConfig::high_order(n as u64, k, j, eps, delta);
    stop.budget = Some(1_000_000_000);
    let graph = LazyHypergraph::new(n, k, p, seed)?;
    let mut pf = PathFinder::new(graph, j, RunConfig::new(seed, stop))?;
    let start = Instant::now();
    let reason = pf.run_to_end();
    let s = pf.summary();
    println!(
        "n={n} p={p:.3e} target={:.0} stop={reason} max_len={} queries={} new_starts={} explored={} in {:.1?}",
        pf.monitor().config().target_length,
        s.max_len,
        s.queries,
        s.new_starts,
        s.explored,
        start.elapsed()
    );
    Ok(())
}
