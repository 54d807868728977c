//! Runs the search on small explicit random hypergraphs and compares the
//! longest path it held with the exact optimum.

use hyperpaths::hypergraph::generate_explicit;
use hyperpaths::oracle::{longest_path_exact, DEFAULT_NODE_BUDGET};
use hyperpaths::pathfinder::{PathFinder, RunConfig};
use hyperpaths::{threshold_p0, StoppingConfig};

fn main() -> hyperpaths::Result<()> {
    let (n, k, j) = (11, 3, 1);
    let p = 3.0 * threshold_p0(n as u64, k, j)?;
    let mut equal = 0;
    for seed in 0..20 {
        let h = generate_explicit(n, k, p, seed, 1 << 20)?;
        let mut pf = PathFinder::new(&h, j, RunConfig::new(seed, StoppingConfig::exhaustive(k, j)))?;
        pf.run_to_end();
        let best = longest_path_exact(&h, j, DEFAULT_NODE_BUDGET)?;
        assert!(pf.max_len() <= best.length);
        equal += usize::from(pf.max_len() == best.length);
        println!(
            "seed {seed:>2}: {:>3} edges, search {} / optimum {} (witness {:?})",
            h.edge_count(),
            pf.max_len(),
            best.length,
            best.witness.vertices
        );
    }
    println!("search matched the optimum on {equal}/20 instances");
    Ok(())
}
