//! Sample mean of the number of path classes against the exact first
//! moment, on a few tiny shapes.

use hyperpaths::combinatorics::expected_path_classes;
use hyperpaths::oracle::expectation_monte_carlo;

fn main() -> hyperpaths::Result<()> {
    for (n, k, j, len, p) in [(7, 3, 2, 2, 0.3), (8, 3, 1, 2, 0.2), (9, 4, 2, 3, 0.5), (8, 2, 1, 4, 0.4)] {
        let exact = expected_path_classes(n as u64, k, j, len, p)?;
        let est = expectation_monte_carlo(n, k, j, len, p, 20_000, 1)?;
        println!(
            "n={n} k={k} j={j} l={len} p={p}: exact {exact:.4}, sampled {:.4} +- {:.4} ({:+.2} SE)",
            est.mean,
            est.std_error,
            (est.mean - exact) / est.std_error
        );
    }
    Ok(())
}
