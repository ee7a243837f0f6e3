//! Truncated vector sequences `x = ⟨x_n⟩` and their strong `p`-norms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{NormBracket, NormEstimate};
use crate::exponent::Exponent;
use crate::space::{lp_norm, Space, Vector};
use crate::tail::{tail_sum_bounds, TailModel, TailSum};

/// A sequence of vectors in one ambient space: `N` explicit head vectors
/// followed by an optional analytic tail `coef(n) · e_n`, `n > N`.
///
/// The tail's basis vectors live beyond the head coordinates, so head and
/// tail never interact under pairings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VecSeq {
    pub space: Space,
    pub head: Vec<Vec<f64>>,
    #[serde(default)]
    pub tail: TailModel,
}

impl VecSeq {
    pub fn new(space: Space, head: Vec<Vec<f64>>) -> Result<Self> {
        for v in &head {
            if v.len() != space.dim {
                return Err(Error::DimensionMismatch { expected: space.dim, got: v.len() });
            }
        }
        Ok(VecSeq { space, head, tail: TailModel::None })
    }

    pub fn from_vectors(vs: &[Vector]) -> Result<Self> {
        let space = vs.first().map(|v| v.space).ok_or_else(|| Error::InvalidArgument("empty vector list".into()))?;
        if let Some(v) = vs.iter().find(|v| v.space != space) {
            return Err(Error::SpaceMismatch(format!("{:?} vs {:?}", v.space, space)));
        }
        Ok(VecSeq { space, head: vs.iter().map(|v| v.coords.clone()).collect(), tail: TailModel::None })
    }

    pub fn with_tail(mut self, tail: TailModel) -> Self {
        self.tail = tail;
        self
    }

    /// `(e_1, …, e_n)` in `ℓ_q^n`.
    pub fn basis(n: usize, q: Exponent) -> Self {
        let head = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        VecSeq { space: Space::new(n, q), head, tail: TailModel::None }
    }

    /// `(a_1 e_1, …, a_n e_n)` in `ℓ_q^n`.
    pub fn scaled_basis(a: &[f64], q: Exponent) -> Self {
        let n = a.len();
        let head = (0..n).map(|i| (0..n).map(|j| if i == j { a[i] } else { 0.0 }).collect()).collect();
        VecSeq { space: Space::new(n, q), head, tail: TailModel::None }
    }

    pub fn zeros(n: usize, space: Space) -> Self {
        VecSeq { space, head: vec![vec![0.0; space.dim]; n], tail: TailModel::None }
    }

    pub fn len(&self) -> usize {
        self.head.len()
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_empty()
    }

    pub fn has_tail(&self) -> bool {
        !self.tail.is_none()
    }

    pub fn vector(&self, n: usize) -> Vector {
        Vector { coords: self.head[n].clone(), space: self.space }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let head = self.head.iter().map(|v| v.iter().map(|x| lambda * x).collect()).collect();
        let tail = match self.tail {
            TailModel::PowerLog { c, gamma, kappa } => TailModel::PowerLog { c: c * lambda.abs(), gamma, kappa },
            TailModel::None => TailModel::None,
        };
        VecSeq { space: self.space, head, tail }
    }

    pub fn prefix(&self, n: usize) -> Self {
        VecSeq { space: self.space, head: self.head[..n.min(self.len())].to_vec(), tail: TailModel::None }
    }

    /// Drops the analytic tail, keeping the explicit head.
    pub fn truncated(&self) -> Self {
        self.prefix(self.len())
    }
}

/// Result of a strong-norm computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum StrongNorm {
    Exact(NormEstimate),
    Bracketed(NormBracket),
    Diverges,
}

impl StrongNorm {
    pub fn lower(&self) -> Option<f64> {
        match self {
            StrongNorm::Exact(e) => Some(e.value),
            StrongNorm::Bracketed(b) => Some(b.lower.value),
            StrongNorm::Diverges => None,
        }
    }

    pub fn upper(&self) -> Option<f64> {
        match self {
            StrongNorm::Exact(e) => Some(e.value),
            StrongNorm::Bracketed(b) => Some(b.upper.value),
            StrongNorm::Diverges => None,
        }
    }

    pub fn exact_value(&self) -> Option<f64> {
        match self {
            StrongNorm::Exact(e) => Some(e.value),
            _ => None,
        }
    }
}

/// `‖x‖_p^s = (Σ_n ‖x_n‖^p)^(1/p)`, exact on a finite head and bracketed by
/// the tail integral bounds otherwise.
pub fn strong_norm(x: &VecSeq, p: Exponent) -> Result<StrongNorm> {
    let pv = p.finite()?;
    let norms: Vec<f64> = x.head.iter().map(|v| lp_norm(v, x.space.exponent)).collect();
    let head_value = lp_norm(&norms, p);
    if !x.has_tail() {
        return Ok(StrongNorm::Exact(NormEstimate::exact(head_value, "strong:head")));
    }
    // tail vectors are coef(n)·e_n, so ‖x_n‖ = |coef(n)| whatever the ambient
    match tail_sum_bounds(&x.tail, p, x.len() as u64)? {
        TailSum::Diverges => Ok(StrongNorm::Diverges),
        TailSum::Bounds { lower, upper } => {
            let head_sum = head_value.powf(pv);
            Ok(StrongNorm::Bracketed(NormBracket {
                lower: NormEstimate::lower((head_sum + lower).powf(1.0 / pv), "strong:head+tail-integral", 0, None),
                upper: NormEstimate::upper((head_sum + upper).powf(1.0 / pv), "strong:head+tail-integral"),
            }))
        }
    }
}
