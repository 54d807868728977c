//! Below the threshold the longest path is logarithmic in n. Samples a
//! sparse hypergraph and finds its longest path by exhaustive search.

use std::time::Instant;

use hyperpaths::hypergraph::generate_sparse;
use hyperpaths::oracle::{longest_path_exact, DEFAULT_NODE_BUDGET};
use hyperpaths::{theorem_bounds, threshold_p0};

fn main() -> hyperpaths::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args.get(1).map_or(500, |s| s.parse().unwrap());
    let trials: u64 = args.get(2).map_or(3, |s| s.parse().unwrap());
    let (k, j, eps, omega) = (3, 2, 0.3, 6.0);
    let p = (1.0 - eps) * threshold_p0(n as u64, k, j)?;
    let bounds = theorem_bounds(n as f64, k, j, eps, omega, 0.5)?;
    println!(
        "n={n} p={p:.3e}: predicted window [{:.1}, {:.1}]",
        bounds[0].value, bounds[1].value
    );
    for seed in 0..trials {
        let start = Instant::now();
        let h = generate_sparse(n, k, p, seed)?;
        let best = longest_path_exact(&h, j, DEFAULT_NODE_BUDGET)?;
        println!(
            "seed {seed}: {} edges, longest path {}{} ({} nodes, {:.1?})",
            h.edge_count(),
            best.length,
            if best.censored { " (censored)" } else { "" },
            best.nodes,
            start.elapsed()
        );
    }
    Ok(())
}
