//! Finite-dimensional `ℓ_q^d` spaces and their vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;

/// `ℓ_p` norm of a coordinate slice.
///
/// Scaled by the largest magnitude first so large exponents neither
/// overflow nor underflow.
pub fn lp_norm(xs: &[f64], p: Exponent) -> f64 {
    let m = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if m == 0.0 || p.is_infinite() {
        return m;
    }
    if p.is_one() {
        return xs.iter().map(|x| x.abs()).sum();
    }
    if p.is_two() {
        return m * xs.iter().map(|x| (x / m) * (x / m)).sum::<f64>().sqrt();
    }
    let pv = p.value();
    m * xs.iter().map(|x| (x.abs() / m).powf(pv)).sum::<f64>().powf(1.0 / pv)
}

/// `Σ |x_i|^p` for finite `p`.
pub fn lp_sum(xs: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        xs.iter().map(|x| x.abs()).sum()
    } else if p == 2.0 {
        xs.iter().map(|x| x * x).sum()
    } else {
        xs.iter().map(|x| x.abs().powf(p)).sum()
    }
}

/// The element of the unit sphere of `ℓ_p` that norms `v`, i.e. the `w` with
/// `‖w‖_p = 1` and `⟨v, w⟩ = ‖v‖_{p'}`. Returns zeros for `v = 0`.
pub fn norming_vector(v: &[f64], p: Exponent) -> Vec<f64> {
    let q = p.dual();
    let nv = lp_norm(v, q);
    if nv == 0.0 {
        return vec![0.0; v.len()];
    }
    if p.is_infinite() {
        return v.iter().map(|x| if *x == 0.0 { 0.0 } else { x.signum() }).collect();
    }
    if p.is_one() {
        // all mass on one coordinate of largest magnitude
        let (i, _) = crate::par::argmax(v.iter().map(|x| x.abs())).unwrap();
        let mut w = vec![0.0; v.len()];
        w[i] = v[i].signum();
        return w;
    }
    let e = q.value() - 1.0;
    let w: Vec<f64> = v.iter().map(|x| x.signum() * (x.abs() / nv).powf(e)).collect();
    let n = lp_norm(&w, p);
    w.into_iter().map(|x| x / n).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `ℓ_q^d`: a dimension and an exponent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Space {
    pub dim: usize,
    pub exponent: Exponent,
}

impl Space {
    pub fn new(dim: usize, exponent: Exponent) -> Self {
        Space { dim, exponent }
    }

    /// The dual space `ℓ_{q'}^d`.
    pub fn dual(self) -> Self {
        Space { dim: self.dim, exponent: self.exponent.dual() }
    }
}

/// A vector in a finite `ℓ_q^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vector {
    pub coords: Vec<f64>,
    pub space: Space,
}

impl Vector {
    pub fn new(coords: Vec<f64>, exponent: Exponent) -> Self {
        let space = Space::new(coords.len(), exponent);
        Vector { coords, space }
    }

    pub fn in_space(coords: Vec<f64>, space: Space) -> Result<Self> {
        if coords.len() != space.dim {
            return Err(Error::DimensionMismatch { expected: space.dim, got: coords.len() });
        }
        Ok(Vector { coords, space })
    }

    pub fn basis(space: Space, i: usize) -> Self {
        let mut coords = vec![0.0; space.dim];
        coords[i] = 1.0;
        Vector { coords, space }
    }

    pub fn norm(&self) -> f64 {
        lp_norm(&self.coords, self.space.exponent)
    }
}

/// `‖v‖_q` in the vector's ambient space.
pub fn vec_norm(v: &Vector) -> f64 {
    v.norm()
}
