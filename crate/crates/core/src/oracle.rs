//! Brute-force references for tiny instances.
//!
//! These engines share nothing with the search code beyond the closed-form
//! norms used for feasibility; they exist to cross-check the estimators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{NormBracket, NormEstimate};
use crate::exponent::Exponent;
use crate::operators::{exact_norm, OperatorMat};
use crate::par;
use crate::space::lp_norm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Intervals per cube edge.
    pub resolution: usize,
    pub refinement_rounds: usize,
    /// Maximum number of grid evaluations.
    pub cap: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { resolution: 64, refinement_rounds: 200, cap: 10_000_000 }
    }
}

impl GridSpec {
    pub fn with_resolution(resolution: usize) -> Self {
        GridSpec { resolution, ..Self::default() }
    }
}

fn ratio(t: &OperatorMat, x: &[f64]) -> f64 {
    let n = lp_norm(x, t.domain);
    if n == 0.0 {
        0.0
    } else {
        lp_norm(&t.mul(x), t.codomain) / n
    }
}

/// Points of the boundary of `[-1, 1]^d` on a `k`-interval lattice.
fn cube_surface(d: usize, k: usize) -> Vec<Vec<f64>> {
    let side = k + 1;
    let total = side.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut pt = Vec::with_capacity(d);
        let mut on_face = false;
        for _ in 0..d {
            let c = rest % side;
            rest /= side;
            on_face |= c == 0 || c == k;
            pt.push(-1.0 + 2.0 * c as f64 / k as f64);
        }
        if on_face {
            out.push(pt);
        }
    }
    out
}

/// Coordinate-wise compass search from `x`, halving the step on failure.
fn compass<F: Fn(&[f64]) -> f64>(f: F, mut x: Vec<f64>, step: f64, rounds: usize) -> (f64, Vec<f64>) {
    let mut fx = f(&x);
    let mut h = step;
    for _ in 0..rounds {
        let mut improved = false;
        for i in 0..x.len() {
            for s in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += s * h;
                let fy = f(&y);
                if fy > fx {
                    x = y;
                    fx = fy;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
            if h < 1e-12 {
                break;
            }
        }
    }
    (fx, x)
}

fn grid_max(t: &OperatorMat, k: usize) -> (f64, Vec<f64>) {
    let pts = cube_surface(t.cols, k);
    let vals = par::map_slice(&pts, |x| ratio(t, x));
    let (i, v) = par::argmax(vals).unwrap_or((0, 0.0));
    (v, pts.get(i).cloned().unwrap_or_default())
}

/// `‖T‖_{a→b}` by dense sampling of the unit sphere (`d_in ≤ 3`).
///
/// The lower bound refines the best point of every dyadic sub-grid, so it is
/// nondecreasing when the resolution doubles. The upper bound follows from
/// the mesh: every unit vector is within `d^{1/a}·h/2` of a grid point.
pub fn grid_op_norm(t: &OperatorMat, g: GridSpec) -> Result<NormBracket> {
    let d = t.cols;
    if d == 0 || d > 3 {
        return Err(Error::InvalidArgument(format!("grid oracle needs 1 ≤ d_in ≤ 3, got {d}")));
    }
    let k = g.resolution.max(1);
    let needed = ((k + 1) as u64).pow(d as u32) * 2;
    if needed > g.cap {
        return Err(Error::CapExceeded { needed, cap: g.cap });
    }
    let mut levels = vec![k];
    let mut l = k;
    while l.is_multiple_of(2) && l > 2 {
        l /= 2;
        levels.push(l);
    }
    let mut lower = 0.0f64;
    let mut top_grid = 0.0;
    for (j, &lv) in levels.iter().enumerate() {
        let (v, x) = grid_max(t, lv);
        if j == 0 {
            top_grid = v;
        }
        let (r, _) = compass(|y| ratio(t, y), x, 1.0 / lv as f64, g.refinement_rounds);
        lower = lower.max(v).max(r);
    }
    let eps = (d as f64).powf(t.domain.recip()) / k as f64;
    let upper = if eps < 1.0 {
        top_grid.max(lower) * (1.0 + eps) / (1.0 - eps)
    } else {
        let max_col = (0..d).map(|j| lp_norm(&t.column(j), t.codomain)).fold(0.0, f64::max);
        (d as f64).powf(1.0 - t.domain.recip()) * max_col
    };
    Ok(NormBracket {
        lower: NormEstimate::lower(lower, "oracle:grid", 0, None),
        upper: NormEstimate::upper(upper.max(lower), "oracle:grid-mesh"),
    })
}

/// Exhaustive `π_1` lower bound for `T : ℓ_∞^d → ℓ_b` over `m`-tuples.
///
/// The weak-1 unit ball of `m`-tuples in `ℓ_∞^d` is a product over
/// coordinates of `ℓ_1^m` balls, so its extreme points put a single `±1` in
/// one tuple member per coordinate. The objective is convex, which makes
/// the maximum over these `(2m)^d` vertices the maximum over all `m`-tuples.
pub fn signvec_pi1(t: &OperatorMat, m: usize, cap: u64) -> Result<NormEstimate> {
    if !t.domain.is_infinite() {
        return Err(Error::SpaceMismatch(format!("sign-vector oracle needs an l_inf domain, got l_{}", t.domain)));
    }
    let d = t.cols;
    if d > 16 || m == 0 {
        return Err(Error::InvalidArgument(format!("need d_in ≤ 16 and m ≥ 1, got d_in={d}, m={m}")));
    }
    let base = 2 * m as u64;
    let total = base.checked_pow(d as u32).unwrap_or(u64::MAX);
    if total > cap {
        return Err(Error::CapExceeded { needed: total, cap });
    }
    if d == 0 || t.is_zero() {
        return Ok(NormEstimate::lower(0.0, "oracle:sign-vectors", 0, None));
    }
    let cols: Vec<Vec<f64>> = (0..d).map(|j| t.column(j)).collect();
    const BLOCK: u64 = 4096;
    let blocks = total.div_ceil(BLOCK) as usize;
    let best = par::map_indexed(blocks, |bi| {
        let mut best = 0.0f64;
        let mut groups = vec![vec![0.0; t.rows]; m];
        for code in (bi as u64 * BLOCK)..((bi as u64 + 1) * BLOCK).min(total) {
            groups.iter_mut().for_each(|g| g.iter_mut().for_each(|x| *x = 0.0));
            let mut c = code;
            for col in &cols {
                let digit = (c % base) as usize;
                c /= base;
                let s = if digit.is_multiple_of(2) { 1.0 } else { -1.0 };
                for (y, v) in groups[digit / 2].iter_mut().zip(col) {
                    *y += s * v;
                }
            }
            let v: f64 = groups.iter().map(|g| lp_norm(g, t.codomain)).sum();
            best = best.max(v);
        }
        best
    });
    // each vertex tuple has weak-1 norm exactly 1 (max row ℓ_1 norm of E_β)
    let v = best.into_iter().fold(0.0, f64::max);
    Ok(NormEstimate::lower(v, "oracle:sign-vectors", 0, None))
}

fn weak_norm_2(x1: &[f64], x2: &[f64], a: Exponent, p: Exponent, g: GridSpec) -> f64 {
    let ex = OperatorMat {
        rows: x1.len(),
        cols: 2,
        entries: x1.iter().zip(x2).flat_map(|(u, v)| [*u, *v]).collect(),
        domain: p.dual(),
        codomain: a,
    };
    match exact_norm(&ex) {
        Some((v, _, _)) => v,
        None => grid_op_norm(&ex, g).map(|b| b.value()).unwrap_or(f64::NAN),
    }
}

/// Grid search for `π_p(T)` over tuples of `m ≤ 2` vectors in `ℓ_a^{d}`,
/// `d ≤ 2`.
///
/// The ratio is invariant under scaling the whole tuple and under swapping
/// its members, so the first vector runs over the boundary of the square and
/// the second over `t·v` with `t ∈ [0, 1]`.
pub fn brute_pi_p(t: &OperatorMat, p: Exponent, m: usize, g: GridSpec) -> Result<NormEstimate> {
    p.finite()?;
    let d = t.cols;
    if d == 0 || d > 2 || m == 0 || m > 2 {
        return Err(Error::InvalidArgument(format!("need d_in ≤ 2 and 1 ≤ m ≤ 2, got d_in={d}, m={m}")));
    }
    let k = g.resolution.max(1);
    let boundary = cube_surface(d, k);
    let ts: Vec<f64> = (0..=k).map(|i| i as f64 / k as f64).collect();
    let needed = if m == 1 { boundary.len() as u64 } else { (boundary.len() * boundary.len() * ts.len()) as u64 };
    if needed > g.cap {
        return Err(Error::CapExceeded { needed, cap: g.cap });
    }
    let (a, b) = (t.domain, t.codomain);
    if m == 1 {
        let vals = par::map_slice(&boundary, |x| ratio(t, x));
        let (i, v) = par::argmax(vals).unwrap();
        let (r, _) = compass(|y| ratio(t, y), boundary[i].clone(), 1.0 / k as f64, g.refinement_rounds);
        return Ok(NormEstimate::lower(v.max(r), "oracle:grid-tuples", 0, None));
    }
    let inner = GridSpec { resolution: 16, refinement_rounds: 30, cap: g.cap };
    let value = |x1: &[f64], x2: &[f64]| {
        let w = weak_norm_2(x1, x2, a, p, inner);
        if !(w > 0.0) {
            return 0.0;
        }
        let s = lp_norm(&[lp_norm(&t.mul(x1), b), lp_norm(&t.mul(x2), b)], p);
        s / w
    };
    let rows = par::map_slice(&boundary, |u| {
        let mut best = (0.0f64, vec![0.0; 2 * d]);
        for v in &boundary {
            for &tt in &ts {
                let x2: Vec<f64> = v.iter().map(|c| tt * c).collect();
                let r = value(u, &x2);
                if r > best.0 {
                    best = (r, u.iter().chain(&x2).copied().collect());
                }
            }
        }
        best
    });
    let (i, _) = par::argmax(rows.iter().map(|r| r.0)).unwrap();
    let start = rows[i].1.clone();
    let (refined, _) = compass(|z| value(&z[..d], &z[d..]), start, 1.0 / k as f64, g.refinement_rounds);
    Ok(NormEstimate::lower(refined.max(rows[i].0), "oracle:grid-tuples", 0, None))
}
