mod common;

use common::{naive_z, vs};
use hyperpaths::combinatorics::{expected_path_classes, expected_path_classes_exact, z_ell_closed_form, StructuralParams};
use hyperpaths::hypergraph::{generate_explicit, ExplicitHypergraph};
use hyperpaths::monitor::StoppingConfig;
use hyperpaths::oracle::{expectation_monte_carlo, longest_path_exact, z_ell_bruteforce, DEFAULT_NODE_BUDGET};
use hyperpaths::pathfinder::{PathFinder, RunConfig};
use hyperpaths::threshold_p0;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Longest path by trying every vertex sequence one position at a time.
fn naive_longest(h: &ExplicitHypergraph, j: usize) -> usize {
    fn go(h: &ExplicitHypergraph, k: usize, step: usize, seq: &mut Vec<u32>, best: &mut usize, j: usize) {
        let q = seq.len();
        if q >= k && (q - k) % step == 0 {
            *best = (*best).max((q - j) / step);
        }
        for x in 0..h.n() {
            if seq.contains(&x) {
                continue;
            }
            seq.push(x);
            let closes = seq.len() >= k && (seq.len() - k) % step == 0;
            if !closes || h.contains(&vs(&seq[seq.len() - k..])) {
                go(h, k, step, seq, best, j);
            }
            seq.pop();
        }
    }
    let mut best = 0;
    go(h, h.k(), h.k() - j, &mut Vec::new(), &mut best, j);
    best
}

#[test]
fn z_matches_naive_permutations() {
    for k in 2..=5 {
        for j in 1..k {
            let params = StructuralParams::new(k, j).unwrap();
            let mut len = 1;
            while params.vertex_count(len) <= 8 {
                assert_eq!(
                    z_ell_bruteforce(k, j, len).unwrap(),
                    BigUint::from(naive_z(k, j, len)),
                    "k={k} j={j} l={len}"
                );
                len += 1;
            }
        }
    }
}

#[test]
fn z_closed_form_up_to_eleven_vertices() {
    for k in 2..=7 {
        for j in 1..k {
            let params = StructuralParams::new(k, j).unwrap();
            let mut len = params.s + 2;
            while params.vertex_count(len) <= 11 {
                assert_eq!(
                    z_ell_closed_form(&params, len).unwrap(),
                    z_ell_bruteforce(k, j, len).unwrap(),
                    "k={k} j={j} l={len}"
                );
                len += 1;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn exact_longest_matches_naive(
        (k, j) in prop_oneof![Just((3usize, 2usize)), Just((3, 1)), Just((4, 2)), Just((4, 3)), Just((4, 1)), Just((2, 1))],
        n in 5u32..=8,
        p in 0.05f64..0.6,
        seed in any::<u64>(),
    ) {
        let h = generate_explicit(n, k, p, seed, 1 << 20).unwrap();
        let best = longest_path_exact(&h, j, DEFAULT_NODE_BUDGET).unwrap();
        prop_assert!(!best.censored);
        prop_assert_eq!(best.length, naive_longest(&h, j));
        for e in best.witness.edges() {
            prop_assert!(h.contains(&e));
        }
    }

    #[test]
    fn exact_longest_ignores_labels(n in 6u32..=10, p in 0.05f64..0.4, seed in any::<u64>()) {
        let h = generate_explicit(n, 3, p, seed, 1 << 20).unwrap();
        let mut perm: Vec<u32> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let g = h.relabel(&perm).unwrap();
        for j in 1..=2 {
            prop_assert_eq!(
                longest_path_exact(&h, j, DEFAULT_NODE_BUDGET).unwrap().length,
                longest_path_exact(&g, j, DEFAULT_NODE_BUDGET).unwrap().length
            );
        }
    }

    #[test]
    fn pathfinder_never_beats_oracle(
        (k, j) in prop_oneof![Just((3usize, 2usize)), Just((3, 1)), Just((4, 2)), Just((4, 3))],
        n in 6u32..=10,
        scale in 0.5f64..6.0,
        seed in any::<u64>(),
    ) {
        let p = (scale * threshold_p0(n as u64, k, j).unwrap()).min(1.0);
        let h = generate_explicit(n, k, p, seed, 1 << 20).unwrap();
        let mut pf = PathFinder::new(&h, j, RunConfig::new(seed, StoppingConfig::exhaustive(k, j))).unwrap();
        pf.run_to_end();
        let best = longest_path_exact(&h, j, DEFAULT_NODE_BUDGET).unwrap();
        prop_assert!(pf.max_len() <= best.length);
    }
}

#[test]
fn exact_expectation_agrees_with_float() {
    let p = BigRational::new(3.into(), 10.into());
    for (n, k, j, len) in [(7, 3, 2, 2), (9, 3, 1, 2), (10, 4, 2, 3), (12, 5, 3, 2)] {
        let exact = expected_path_classes_exact(n, k, j, len, &p).unwrap().to_f64().unwrap();
        let float = expected_path_classes(n, k, j, len, 0.3).unwrap();
        assert!((exact - float).abs() <= 1e-9 * exact, "{n} {k} {j} {len}: {exact} vs {float}");
    }
}

#[test]
fn monte_carlo_examples() {
    assert_eq!(expectation_monte_carlo(7, 3, 2, 2, 0.0, 1000, 3).unwrap().mean, 0.0);
    let full = expectation_monte_carlo(7, 3, 2, 1, 1.0, 1000, 3).unwrap();
    assert_eq!((full.mean, full.std_error), (35.0, 0.0));
}

#[test]
fn monte_carlo_tracks_expectation_on_other_shapes() {
    for (n, k, j, len, p) in [(8, 3, 1, 2, 0.2), (9, 4, 2, 2, 0.15), (8, 2, 1, 3, 0.3)] {
        let est = expectation_monte_carlo(n, k, j, len, p, 20_000, 11).unwrap();
        let want = expected_path_classes(n as u64, k, j, len, p).unwrap();
        assert!(
            (est.mean - want).abs() <= 4.0 * est.std_error,
            "{n} {k} {j} {len}: {} +- {} vs {want}",
            est.mean,
            est.std_error
        );
    }
}
