//! The lazy and explicit backends share a keyed coin, so a search run on
//! either sees the same hypergraph and produces the same trace.

use hyperpaths::hypergraph::generate_explicit;
use hyperpaths::pathfinder::{PathFinder, RunConfig};
use hyperpaths::{threshold_p0, LazyHypergraph, StoppingConfig, TraceLevel};

fn main() -> hyperpaths::Result<()> {
    let (n, k, j) = (24, 3, 2);
    let p = 2.0 * threshold_p0(n as u64, k, j)?;
    for seed in 0..5 {
        let config = RunConfig::new(seed, StoppingConfig::exhaustive(k, j)).with_trace(TraceLevel::Full);
        let mut lazy = PathFinder::new(LazyHypergraph::new(n, k, p, seed)?.with_recording(), j, config.clone())?;
        lazy.run_to_end();
        let revealed = lazy.graph().revealed().map_or(0, |m| m.len());
        let h = generate_explicit(n, k, p, seed, 1 << 20)?;
        let mut explicit = PathFinder::new(&h, j, config)?;
        explicit.run_to_end();
        println!(
            "seed {seed}: lazy revealed {revealed} k-sets, H has {} edges, max_len {}, traces identical: {}",
            h.edge_count(),
            lazy.max_len(),
            lazy.into_trace() == explicit.into_trace()
        );
    }
    Ok(())
}
