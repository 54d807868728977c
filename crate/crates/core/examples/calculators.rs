//! Structural parameters, thresholds, class sizes and first moments.

use hyperpaths::combinatorics::{expected_path_classes, expected_path_classes_exact};
use hyperpaths::{structural_params, theorem_bounds, threshold_p0, z_ell};
use num_bigint::BigInt;
use num_rational::BigRational;

fn main() -> hyperpaths::Result<()> {
    println!("k j | a b s r batch | z_(s+2)");
    for k in 2..=6 {
        for j in 1..k {
            let p = structural_params(k, j)?;
            println!(
                "{k} {j} | {} {} {} {} {:>5} | {}",
                p.a,
                p.b,
                p.s,
                p.r,
                p.batch_size,
                z_ell(k, j, p.s + 2)?
            );
        }
    }

    let (n, k, j) = (1000, 3, 2);
    let p0 = threshold_p0(n, k, j)?;
    println!("\np0(n={n}, k={k}, j={j}) = {p0:.4e}");
    for len in [5, 10, 20, 40] {
        let below = expected_path_classes(n, k, j, len, 0.7 * p0)?;
        let above = expected_path_classes(n, k, j, len, 1.3 * p0)?;
        println!("E X_{len:<2} at 0.7 p0 = {below:.3e}, at 1.3 p0 = {above:.3e}");
    }

    // exact rational moment on a small instance
    let p = BigRational::new(BigInt::from(3), BigInt::from(10));
    println!("\nE X_2 on n=7, k=3, j=2, p=3/10: {}", expected_path_classes_exact(7, 3, 2, 2, &p)?);

    println!("\nbounds for n=1e6, k=3, j=1, eps=0.1, omega=2, delta=0.5:");
    for b in theorem_bounds(1e6, 3, 1, 0.1, 2.0, 0.5)? {
        println!("  {:<20} {:.2}", b.regime.name(), b.value);
    }
    Ok(())
}
