//! Absolutely p-summing norms.
//!
//! `π_p(T)` is the best constant in `(Σ‖Tx_i‖^p)^{1/p} ≤ C·‖(x_i)‖_p^w`. The
//! search side maximizes the ratio over finite tuples; feasibility of every
//! tuple is measured with the exact weak norm when one is available and with
//! an upper bound otherwise, so the reported value never overshoots.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{Budget, NormEstimate};
use crate::exponent::Exponent;
use crate::operators::{exact_or_upper, search_norm, OperatorMat};
use crate::par;
use crate::rng::{gaussian_vec, substream};
use crate::sequence::VecSeq;
use crate::space::{lp_norm, lp_sum};

/// A `π_p` lower bound together with the tuple attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummingEstimate {
    pub estimate: NormEstimate,
    /// Witness vectors in the domain of the operator.
    pub witness: Vec<Vec<f64>>,
    /// Weak-p norm used to normalize the witness.
    pub weak_norm: f64,
    pub weak_norm_exact: bool,
}

impl SummingEstimate {
    pub fn value(&self) -> f64 {
        self.estimate.value
    }
}

pub fn default_m(d_in: usize) -> usize {
    d_in.clamp(1, 6)
}

/// Weak-p norm of a tuple in `ℓ_a^d`, i.e. `‖E_X : ℓ_{p'} → ℓ_a‖`. The flag
/// is true when the value is exact rather than an upper bound.
pub fn tuple_weak_norm(tuple: &[Vec<f64>], a: Exponent, p: Exponent) -> (f64, bool) {
    let live: Vec<&Vec<f64>> = tuple.iter().filter(|v| v.iter().any(|x| *x != 0.0)).collect();
    if live.is_empty() {
        return (0.0, true);
    }
    let (d, k) = (live[0].len(), live.len());
    let mut entries = vec![0.0; d * k];
    for (j, v) in live.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            entries[i * k + j] = *x;
        }
    }
    let ex = OperatorMat { rows: d, cols: k, entries, domain: p.dual(), codomain: a };
    exact_or_upper(&ex)
}

/// `(Σ‖Tx_i‖_b^p)^{1/p}`.
pub fn tuple_image_norm(t: &OperatorMat, p: Exponent, tuple: &[Vec<f64>]) -> f64 {
    let norms: Vec<f64> = tuple.iter().map(|x| lp_norm(&t.mul(x), t.codomain)).collect();
    lp_norm(&norms, p)
}

/// Ratio of the image strong norm to the weak norm of the tuple.
pub fn tuple_value(t: &OperatorMat, p: Exponent, tuple: &[Vec<f64>]) -> f64 {
    let (w, _) = tuple_weak_norm(tuple, t.domain, p);
    if w == 0.0 {
        0.0
    } else {
        tuple_image_norm(t, p, tuple) / w
    }
}

fn normalize_tuple(t: &OperatorMat, p: Exponent, tuple: &mut [Vec<f64>]) -> f64 {
    let (w, _) = tuple_weak_norm(tuple, t.domain, p);
    if w > 0.0 {
        tuple.iter_mut().flatten().for_each(|x| *x /= w);
    }
    w
}

fn pad(tuple: &[Vec<f64>], k: usize, d: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = tuple.iter().take(k).cloned().collect();
    out.resize(k, vec![0.0; d]);
    out
}

/// Perturbation ascent on one tuple: one vector at a time receives a
/// Gaussian kick, the tuple is renormalized, and the move is kept only if the
/// ratio improves. The step size grows on success and shrinks on failure.
fn tuple_ascent(
    t: &OperatorMat,
    p: Exponent,
    mut tuple: Vec<Vec<f64>>,
    iterations: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> (f64, Vec<Vec<f64>>) {
    let k = tuple.len();
    let d = t.cols;
    normalize_tuple(t, p, &mut tuple);
    let mut best = tuple_value(t, p, &tuple);
    let mut sigma = 0.3;
    for it in 0..iterations {
        let j = it % k;
        let kick = gaussian_vec(rng, d);
        let mut cand = tuple.clone();
        for (c, g) in cand[j].iter_mut().zip(&kick) {
            *c += sigma * g;
        }
        let v = tuple_value(t, p, &cand);
        if v > best {
            normalize_tuple(t, p, &mut cand);
            tuple = cand;
            best = v;
            sigma = (sigma * 1.5).min(2.0);
        } else {
            sigma = (sigma * 0.9).max(1e-6);
        }
    }
    (best, tuple)
}

/// Lower bound on `π_p(T)` over tuples of up to `m` vectors.
pub fn pi_p_lower(t: &OperatorMat, p: Exponent, m: usize, budget: Budget, seed: u64) -> Result<SummingEstimate> {
    pi_p_lower_warm(t, p, m, budget, seed, &[])
}

/// As `pi_p_lower`, with extra starting tuples tried alongside the defaults.
///
/// Tuple sizes `k = 1..=m` are searched in turn, each seeded with the best
/// `(k−1)`-tuple padded by a zero vector, so the result is nondecreasing in
/// `m`.
pub fn pi_p_lower_warm(
    t: &OperatorMat,
    p: Exponent,
    m: usize,
    budget: Budget,
    seed: u64,
    warm: &[Vec<Vec<f64>>],
) -> Result<SummingEstimate> {
    p.finite()?;
    if m == 0 {
        return Err(Error::InvalidArgument("tuple size m must be at least 1".into()));
    }
    let d = t.cols;
    let method = "search:tuple-ascent";
    if t.is_zero() || d == 0 {
        return Ok(SummingEstimate {
            estimate: NormEstimate::lower(0.0, method, seed, Some(budget)),
            witness: vec![vec![0.0; d]],
            weak_norm: 0.0,
            weak_norm_exact: true,
        });
    }
    let starts = budget.starts.max(1);
    let mut best: (f64, Vec<Vec<f64>>) = (0.0, vec![vec![0.0; d]]);
    for k in 1..=m {
        let carried = pad(&best.1, k, d);
        let results = par::map_indexed(starts + warm.len(), |i| {
            let mut rng = substream(seed, ((k as u64) << 32) | i as u64);
            let start = if i >= starts {
                pad(&warm[i - starts], k, d)
            } else {
                match i {
                    0 => (0..k).map(|j| {
                        let mut e = vec![0.0; d];
                        if j < d {
                            e[j] = 1.0;
                        }
                        e
                    }).collect(),
                    1 if k == 1 => vec![search_norm(t, Budget::new(4, 100), seed).1],
                    1 => carried.clone(),
                    _ => (0..k).map(|_| gaussian_vec(&mut rng, d)).collect(),
                }
            };
            let start = if start.iter().flatten().all(|x| *x == 0.0) {
                (0..k).map(|_| gaussian_vec(&mut rng, d)).collect()
            } else {
                start
            };
            tuple_ascent(t, p, start, budget.iterations, &mut rng)
        });
        let (i, v) = par::argmax(results.iter().map(|r| r.0)).unwrap();
        if v > best.0 {
            best = results[i].clone();
        }
    }
    let (w, exact) = tuple_weak_norm(&best.1, t.domain, p);
    Ok(SummingEstimate {
        estimate: NormEstimate::lower(best.0, method, seed, Some(budget)),
        witness: best.1,
        weak_norm: w,
        weak_norm_exact: exact,
    })
}

/// `π_p^d(T) = π_p(Tᵀ)`.
pub fn pi_p_dual(t: &OperatorMat, p: Exponent, m: usize, budget: Budget, seed: u64) -> Result<SummingEstimate> {
    pi_p_lower(&t.adjoint(), p, m, budget, seed)
}

/// On Hilbert spaces `π_2` is the Hilbert–Schmidt norm.
pub fn pi_2_hilbert_exact(t: &OperatorMat) -> Result<NormEstimate> {
    if !(t.domain.is_two() && t.codomain.is_two()) {
        return Err(Error::NotHilbert { domain: t.domain.to_string(), codomain: t.codomain.to_string() });
    }
    Ok(NormEstimate::exact(t.frobenius(), "exact:hilbert-schmidt"))
}

/// `π_1(E_α : c_0 → ℓ_1) = Σ_n ‖α_n‖_1`.
pub fn pi_1_ealpha_exact(alpha: &VecSeq) -> Result<NormEstimate> {
    if !alpha.space.exponent.is_one() {
        return Err(Error::SpaceMismatch(format!("ambient must be l_1, got l_{}", alpha.space.exponent)));
    }
    if alpha.has_tail() {
        return Err(Error::TailedSequence);
    }
    let total: f64 = alpha.head.iter().map(|v| lp_sum(v, 1.0)).sum();
    Ok(NormEstimate::exact(total, "exact:l1-strong-norm"))
}

/// Closed forms for `π_p(T)` where known: Hilbert–Schmidt for `p = 2` on
/// Euclidean spaces, and the entrywise sum for `π_1 : ℓ_∞ → ℓ_1`.
pub fn pi_p_exact(t: &OperatorMat, p: Exponent) -> Option<NormEstimate> {
    if p.is_two() && t.domain.is_two() && t.codomain.is_two() {
        return pi_2_hilbert_exact(t).ok();
    }
    if p.is_one() && t.domain.is_infinite() && t.codomain.is_one() {
        return Some(NormEstimate::exact(lp_sum(&t.entries, 1.0), "exact:l1-strong-norm"));
    }
    None
}
