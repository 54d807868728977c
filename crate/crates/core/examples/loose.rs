//! Loose paths (j = 1) above the threshold, stopped at the loose target
//! length or the time horizon.

use std::time::Instant;

use hyperpaths::pathfinder::{PathFinder, RunConfig};
use hyperpaths::{threshold_p0, LazyHypergraph, StoppingConfig};

fn main() -> hyperpaths::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args.get(1).map_or(2000, |s| s.parse().unwrap());
    let seed: u64 = args.get(2).map_or(1, |s| s.parse().unwrap());
    let (k, eps, delta) = (3, 0.4, 0.5);
    let p = (1.0 + eps) * threshold_p0(n as u64, k, 1)?;
    let stop = StoppingConfig::loose(n as u64, k, eps, delta);
    let target = stop.target_length;
    let mut pf = PathFinder::new(LazyHypergraph::new(n, k, p, seed)?, 1, RunConfig::new(seed, stop))?;
    let start = Instant::now();
    let reason = pf.run_to_end();
    println!(
        "n={n} target={target:.2} stop={reason} max_len={} queries={} in {:.1?}",
        pf.max_len(),
        pf.summary().queries,
        start.elapsed()
    );
    Ok(())
}
