//! Closed-form quantities of j-tight paths in k-uniform hypergraphs.
//!
//! Everything here is a pure function of `(n, k, j, l, eps, p)`. Quantities
//! that overflow fixed-width types (falling factorials, class counts) are
//! evaluated in log space; [`expected_path_classes_exact`] gives an
//! arbitrary-precision rational evaluation for small `n`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle;
use crate::path::JTightPath;
use crate::vset::{binomial_u128, VertexId, MAX_SET};

/// Parameters determined by the pair `(k, j)`.
///
/// `a` is the unique value in `[1, k-j]` congruent to `k` modulo `k-j`;
/// it is the overlap between edges `s` steps apart. A j-set carried along
/// the path splits as `a + r(k-j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralParams {
    pub k: usize,
    pub j: usize,
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub r: usize,
    pub batch_size: usize,
}

impl StructuralParams {
    pub fn new(k: usize, j: usize) -> Result<Self> {
        if !(2..=MAX_SET).contains(&k) {
            return Err(Error::InvalidUniformity(k));
        }
        if j == 0 || j >= k {
            return Err(Error::InvalidTightness { k, j });
        }
        let step = k - j;
        let a = match k % step {
            0 => step,
            rem => rem,
        };
        let s = k.div_ceil(step) - 1;
        let r = s - 1;
        Ok(StructuralParams {
            k,
            j,
            a,
            b: step - a,
            s,
            r,
            batch_size: binomial_u128(step as u64, a as u64) as usize,
        })
    }

    /// `k - j`, the number of new vertices per edge.
    pub fn step(&self) -> usize {
        self.k - self.j
    }

    /// Vertices on a path of length `len`.
    pub fn vertex_count(&self, len: usize) -> usize {
        path_vertex_count(self.k, self.j, len)
    }
}

pub fn structural_params(k: usize, j: usize) -> Result<StructuralParams> {
    StructuralParams::new(k, j)
}

/// `(k-j) l + j`.
pub fn path_vertex_count(k: usize, j: usize, len: usize) -> usize {
    (k - j) * len + j
}

/// Natural log of `C(n, r)` as a float; `-inf` when `r > n`.
pub fn ln_binomial(n: f64, r: u64) -> f64 {
    if (r as f64) > n {
        return f64::NEG_INFINITY;
    }
    let mut acc = 0.0;
    for i in 0..r {
        acc += (n - i as f64).ln() - ((i + 1) as f64).ln();
    }
    acc
}

/// `C(n, r)` as a float, exact while it fits in `u128`.
pub fn binomial_f64(n: u64, r: u64) -> f64 {
    match binomial_u128(n, r) {
        u128::MAX => ln_binomial(n as f64, r).exp(),
        x => x as f64,
    }
}

/// Natural log of the falling factorial `(n)_v`; `-inf` when `v > n`.
pub fn ln_falling_factorial(n: u64, v: u64) -> f64 {
    if v > n {
        return f64::NEG_INFINITY;
    }
    (0..v).map(|i| ((n - i) as f64).ln()).sum()
}

/// The threshold `p0 = 1 / (C(k-j, a) C(n-j, k-j))`.
pub fn threshold_p0(n: u64, k: usize, j: usize) -> Result<f64> {
    let params = StructuralParams::new(k, j)?;
    if n <= k as u64 {
        return Err(Error::TooFewVertices { n, k });
    }
    let step = params.step() as u64;
    match binomial_u128(n - j as u64, step) {
        u128::MAX => {
            let ln = (params.batch_size as f64).ln() + ln_binomial((n - j as u64) as f64, step);
            Ok((-ln).exp())
        }
        c => Ok(1.0 / (params.batch_size as f64 * c as f64)),
    }
}

fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// The closed form `2/b! (a! b!)^(l-s) ((k-j)!)^(2s)`, defined for `l >= s+2`.
pub fn z_ell_closed_form(params: &StructuralParams, len: usize) -> Option<BigUint> {
    if len < params.s + 2 {
        return None;
    }
    let a_fact = factorial(params.a);
    let b_fact = factorial(params.b);
    let step_fact = factorial(params.step());
    let reps = (len - params.s) as u32;
    // 2/b! * (a!b!)^reps == 2 * a!^reps * b!^(reps-1)
    Some(
        BigUint::from(2u32)
            * a_fact.pow(reps)
            * b_fact.pow(reps - 1)
            * step_fact.pow(2 * params.s as u32),
    )
}

/// Size of each equivalence class of labeled j-tight paths of length `len`
/// sharing one edge set.
///
/// Short paths (`len <= s+1`) have no closed form; their class size is
/// counted by exhaustive enumeration and is therefore limited to paths on at
/// most [`oracle::Z_ENUMERATION_LIMIT`] vertices.
pub fn z_ell(k: usize, j: usize, len: usize) -> Result<BigUint> {
    let params = StructuralParams::new(k, j)?;
    match z_ell_closed_form(&params, len) {
        Some(z) => Ok(z),
        None => oracle::z_ell_bruteforce(k, j, len),
    }
}

/// Natural log of `E(X_l) = (n)_v p^l / z_l`, the expected number of
/// equivalence classes of j-tight paths of length `len` in `H^k(n, p)`.
/// Returns `-inf` when the expectation is zero.
pub fn ln_expected_path_classes(n: u64, k: usize, j: usize, len: usize, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::InvalidProbability(p));
    }
    let params = StructuralParams::new(k, j)?;
    let v = params.vertex_count(len) as u64;
    if v > n || (p == 0.0 && len > 0) {
        return Ok(f64::NEG_INFINITY);
    }
    let z = z_ell(k, j, len)?;
    Ok(ln_falling_factorial(n, v) + len as f64 * p.ln() - ln_biguint(&z))
}

/// `E(X_l)` as a float; zero when no path fits on `n` vertices.
pub fn expected_path_classes(n: u64, k: usize, j: usize, len: usize, p: f64) -> Result<f64> {
    Ok(ln_expected_path_classes(n, k, j, len, p)?.exp())
}

/// Exact rational `E(X_l)`, for cross-checks on small `n`.
pub fn expected_path_classes_exact(
    n: u64,
    k: usize,
    j: usize,
    len: usize,
    p: &BigRational,
) -> Result<BigRational> {
    let params = StructuralParams::new(k, j)?;
    let v = params.vertex_count(len) as u64;
    if v > n {
        return Ok(BigRational::zero());
    }
    let falling: BigUint = (0..v).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i));
    let z = z_ell(k, j, len)?;
    let mut p_pow = BigRational::one();
    for _ in 0..len {
        p_pow *= p;
    }
    Ok(BigRational::from_integer(falling.into()) * p_pow / BigRational::from_integer(z.into()))
}

fn ln_biguint(x: &BigUint) -> f64 {
    match x.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => {
            let bits = x.bits();
            let shift = bits.saturating_sub(60);
            let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// Which side of which regime a bound curve describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SubcriticalLower,
    SubcriticalUpper,
    SupercriticalLower,
    SupercriticalUpper,
    LooseLower,
}

impl Regime {
    pub fn name(&self) -> &'static str {
        match self {
            Regime::SubcriticalLower => "subcritical_lower",
            Regime::SubcriticalUpper => "subcritical_upper",
            Regime::SupercriticalLower => "supercritical_lower",
            Regime::SupercriticalUpper => "supercritical_upper",
            Regime::LooseLower => "loose_lower",
        }
    }
}

/// Inputs shared by all bound curves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundParams {
    pub n: f64,
    pub k: usize,
    pub j: usize,
    pub eps: f64,
    pub omega: f64,
    pub delta: f64,
}

/// A predicted longest-path length. Values are real; callers floor them
/// when comparing against measured integer lengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundCurve {
    pub regime: Regime,
    pub value: f64,
    pub params: BoundParams,
}

/// The longest-path bounds for `p = (1 -/+ eps) p0`.
///
/// The subcritical pair uses `omega`; the supercritical and loose curves use
/// `delta`. The loose lower curve is present only for `j = 1`.
pub fn theorem_bounds(
    n: f64,
    k: usize,
    j: usize,
    eps: f64,
    omega: f64,
    delta: f64,
) -> Result<Vec<BoundCurve>> {
    StructuralParams::new(k, j)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidEpsilon(eps));
    }
    if !(omega > 0.0) {
        return Err(Error::NonPositive {
            name: "omega",
            value: omega,
        });
    }
    if !(delta > 0.0) {
        return Err(Error::NonPositive {
            name: "delta",
            value: delta,
        });
    }
    let params = BoundParams {
        n,
        k,
        j,
        eps,
        omega,
        delta,
    };
    let jf = j as f64;
    let step_sq = ((k - j) * (k - j)) as f64;
    let rate = -(1.0 - eps).ln();
    let curve = |regime, value| BoundCurve {
        regime,
        value,
        params,
    };
    let mut out = vec![
        curve(
            Regime::SubcriticalLower,
            (jf * n.ln() - omega + 3.0 * eps.ln()) / rate,
        ),
        curve(Regime::SubcriticalUpper, (jf * n.ln() + omega) / rate),
        curve(Regime::SupercriticalLower, (1.0 - delta) * eps * n / step_sq),
        curve(
            Regime::SupercriticalUpper,
            (1.0 + delta) * 2.0 * eps * n / step_sq,
        ),
    ];
    if j == 1 {
        let km1 = (k - 1) as f64;
        out.push(curve(
            Regime::LooseLower,
            (1.0 - delta) * eps * eps * n / (4.0 * km1 * km1),
        ));
    }
    Ok(out)
}

/// Whether an integer length meets a real-valued bound, allowing for
/// rounding in the bound (`10.000000000000002` counts as 10).
pub fn meets(len: usize, bound: f64) -> bool {
    len as f64 >= bound - 1e-9 * bound.abs().max(1.0)
}

/// Whether an integer length stays below a real-valued bound, with the
/// same allowance as [`meets`].
pub fn within_upper(len: usize, bound: f64) -> bool {
    len as f64 <= bound + 1e-9 * bound.abs().max(1.0)
}

/// Supercritical target length `(1-delta) eps n / (k-j)^2`.
pub fn supercritical_target(n: u64, k: usize, j: usize, eps: f64, delta: f64) -> f64 {
    (1.0 - delta) * eps * n as f64 / ((k - j) * (k - j)) as f64
}

/// Loose-case target length `(1-delta) eps^2 n / (4 (k-1)^2)`.
pub fn loose_target(n: u64, k: usize, eps: f64, delta: f64) -> f64 {
    let km1 = (k - 1) as f64;
    (1.0 - delta) * eps * eps * n as f64 / (4.0 * km1 * km1)
}

/// Loose-case query horizon `eps n C(n-1, k-1) / (2(k-1))`.
pub fn loose_time_horizon(n: u64, k: usize, eps: f64) -> f64 {
    eps * n as f64 * binomial_f64(n - 1, k as u64 - 1) / (2.0 * (k - 1) as f64)
}

/// High-order query horizon `n^(k-j+1) / eps`.
pub fn supercritical_time_horizon(n: u64, k: usize, j: usize, eps: f64) -> f64 {
    (n as f64).powi((k - j + 1) as i32) / eps
}

/// Role of a part in the vertex partition of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PartKind {
    /// Head block `F_i`.
    Head(usize),
    /// Overlap `A_i` of edges `i` and `i+s`.
    Overlap(usize),
    /// Complement `B_i`.
    Complement(usize),
    /// Tail block `G_i`.
    Tail(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathPart {
    pub kind: PartKind,
    /// Members in path order.
    pub vertices: Vec<VertexId>,
}

/// Splits the vertices of a path of length `>= s+2` into maximal blocks
/// whose members lie in exactly the same edges, in path order:
/// `F_1..F_s, A_1, B_1, .., A_{l-s}, G_1..G_s`.
///
/// `B` parts are listed even when `b = 0` (they are then empty).
pub fn partition_path(path: &JTightPath) -> Result<Vec<PathPart>> {
    let params = StructuralParams::new(path.k, path.j)?;
    let len = path.len();
    let s = params.s;
    if len < s + 2 {
        return Err(Error::ShortPath {
            len,
            min: s + 2,
        });
    }
    let edges = path.edges();
    // e(i) is 1-based to match the set definitions
    let e = |i: usize| &edges[i - 1];
    let in_order = |keep: &dyn Fn(VertexId) -> bool| -> Vec<VertexId> {
        path.vertices.iter().copied().filter(|&v| keep(v)).collect()
    };
    let mut parts = Vec::with_capacity(2 * len);
    for i in 1..=s {
        parts.push(PathPart {
            kind: PartKind::Head(i),
            vertices: in_order(&|v| e(i).contains(v) && !e(i + 1).contains(v)),
        });
    }
    for i in 1..=len - s {
        parts.push(PathPart {
            kind: PartKind::Overlap(i),
            vertices: in_order(&|v| e(i).contains(v) && e(i + s).contains(v)),
        });
        if i < len - s {
            parts.push(PathPart {
                kind: PartKind::Complement(i),
                vertices: in_order(&|v| {
                    e(i + s).contains(v) && !e(i + s + 1).contains(v) && !e(i).contains(v)
                }),
            });
        }
    }
    for i in 1..=s {
        let hi = len - s + i;
        parts.push(PathPart {
            kind: PartKind::Tail(i),
            vertices: in_order(&|v| e(hi).contains(v) && !e(hi - 1).contains(v)),
        });
    }
    Ok(parts)
}
