//! Analytic tails `c · n^(-γ) · (1 + ln n)^(-κ)` and certified bounds on
//! their `p`-th power sums.
//!
//! For `x ≥ 1` the summand `g(x) = x^(-a) (1 + ln x)^(-b)` (with `a = pγ`,
//! `b = pκ`) is decreasing, so `∫_{M+1}^∞ g ≤ Σ_{n>M} g(n) ≤ ∫_M^∞ g`. After
//! the substitution `u = 1 + ln x` the integrand becomes
//! `h(u) = e^(-(a-1)(u-1)) u^(-b)`, a product of positive decreasing convex
//! functions, hence itself convex: the midpoint rule bounds its integral
//! from below and the trapezoid rule from above.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TailModel {
    #[default]
    None,
    PowerLog { c: f64, gamma: f64, kappa: f64 },
}

/// Outcome of summing a tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TailSum {
    Bounds { lower: f64, upper: f64 },
    Diverges,
}

impl TailSum {
    pub fn converges(&self) -> bool {
        matches!(self, TailSum::Bounds { .. })
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            TailSum::Bounds { lower, upper } => Some((lower, upper)),
            TailSum::Diverges => None,
        }
    }
}

/// Terms summed explicitly before switching to the integral comparison.
const EXPLICIT_TERMS: u64 = 1024;
/// Exponent pairs within this distance of the critical line count as on it.
const CRITICAL_TOL: f64 = 1e-12;

impl TailModel {
    pub fn power_log(c: f64, gamma: f64, kappa: f64) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite()) || !(gamma > 0.0 && gamma.is_finite()) || !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "power-log tail needs c >= 0, gamma > 0, kappa >= 0 (got {c}, {gamma}, {kappa})"
            )));
        }
        Ok(TailModel::PowerLog { c, gamma, kappa })
    }

    /// Coefficient of the `n`-th term (1-based).
    pub fn coef(&self, n: u64) -> f64 {
        match *self {
            TailModel::None => 0.0,
            TailModel::PowerLog { c, gamma, kappa } => {
                let x = n as f64;
                let l = 1.0 + x.ln();
                c * x.powf(-gamma) * if kappa == 0.0 { 1.0 } else { l.powf(-kappa) }
            }
        }
    }

    /// Pointwise product of two tails; stays in the power-log family.
    pub fn product(&self, other: &TailModel) -> TailModel {
        match (*self, *other) {
            (
                TailModel::PowerLog { c: c1, gamma: g1, kappa: k1 },
                TailModel::PowerLog { c: c2, gamma: g2, kappa: k2 },
            ) => TailModel::PowerLog { c: c1 * c2, gamma: g1 + g2, kappa: k1 + k2 },
            _ => TailModel::None,
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, TailModel::None) || matches!(self, TailModel::PowerLog { c, .. } if *c == 0.0)
    }

    /// Whether `Σ coef(n)^p` diverges: exactly when `pγ < 1`, or `pγ = 1`
    /// and `pκ ≤ 1`.
    pub fn diverges(&self, p: f64) -> bool {
        match *self {
            TailModel::None => false,
            TailModel::PowerLog { c: 0.0, .. } => false,
            TailModel::PowerLog { gamma, kappa, .. } => {
                let a = p * gamma;
                let b = p * kappa;
                if (a - 1.0).abs() <= CRITICAL_TOL {
                    b <= 1.0 + CRITICAL_TOL
                } else {
                    a < 1.0
                }
            }
        }
    }
}

/// Bounds on `Σ_{n>N} coef(n)^p`, or `Diverges`.
pub fn tail_sum_bounds(t: &TailModel, p: Exponent, n: u64) -> Result<TailSum> {
    let p = p.finite()?;
    Ok(tail_sum_bounds_f(t, p, n))
}

pub(crate) fn tail_sum_bounds_f(t: &TailModel, p: f64, n: u64) -> TailSum {
    let (c, gamma, kappa) = match *t {
        TailModel::None => return TailSum::Bounds { lower: 0.0, upper: 0.0 },
        TailModel::PowerLog { c: 0.0, .. } => return TailSum::Bounds { lower: 0.0, upper: 0.0 },
        TailModel::PowerLog { c, gamma, kappa } => (c, gamma, kappa),
    };
    if t.diverges(p) {
        return TailSum::Diverges;
    }
    let a = p * gamma;
    let b = p * kappa;
    let g = |x: f64| x.powf(-a) * if b == 0.0 { 1.0 } else { (1.0 + x.ln()).powf(-b) };
    let m = n + EXPLICIT_TERMS;
    let explicit: f64 = (n + 1..=m).map(|k| g(k as f64)).sum();
    let (lo, _) = integral_bracket(a, b, 1.0 + ((m + 1) as f64).ln());
    let (_, hi) = integral_bracket(a, b, 1.0 + (m as f64).ln());
    let scale = c.powf(p);
    TailSum::Bounds { lower: scale * (explicit + lo), upper: scale * (explicit + hi) }
}

/// Bracket of `∫_U^∞ e^(-(a-1)(u-1)) u^(-b) du` for a convergent pair.
fn integral_bracket(a: f64, b: f64, u0: f64) -> (f64, f64) {
    if (a - 1.0).abs() <= CRITICAL_TOL {
        let v = u0.powf(1.0 - b) / (b - 1.0);
        return (v, v);
    }
    let lambda = a - 1.0;
    let h = |u: f64| (-lambda * (u - 1.0)).exp() * u.powf(-b);
    const RHO: f64 = 0.01;
    const MAX_STEPS: usize = 5_000_000;
    let mut u = u0;
    let mut hu = h(u);
    let (mut lower, mut upper) = (0.0f64, 0.0f64);
    for _ in 0..MAX_STEPS {
        let rest = hu / lambda;
        if rest <= 1e-18 * lower || hu < 1e-300 {
            break;
        }
        let step = RHO * (1.0 / lambda).min(u / b.max(1.0));
        let next = u + step;
        let hn = h(next);
        debug_assert!(hn <= hu, "integrand must decrease");
        lower += step * h(u + 0.5 * step);
        upper += 0.5 * step * (hu + hn);
        u = next;
        hu = hn;
    }
    (lower, upper + hu / lambda)
}

/// A scalar sequence: an explicit head followed by an analytic tail.
/// Element `n` (1-based) is `head[n-1]` for `n ≤ head.len()`, else `tail.coef(n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarSeq {
    pub head: Vec<f64>,
    pub tail: TailModel,
}

impl ScalarSeq {
    pub fn model(tail: TailModel) -> Self {
        ScalarSeq { head: Vec::new(), tail }
    }

    pub fn finite(head: Vec<f64>) -> Self {
        ScalarSeq { head, tail: TailModel::None }
    }

    pub fn get(&self, n: u64) -> f64 {
        debug_assert!(n >= 1);
        match self.head.get(n as usize - 1) {
            Some(x) => *x,
            None => self.tail.coef(n),
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<f64> {
        (1..=n as u64).map(|k| self.get(k)).collect()
    }

    /// Bounds on `Σ_n |a_n|^p` over the whole sequence.
    pub fn power_sum(&self, p: f64) -> TailSum {
        let head: f64 = self.head.iter().map(|x| x.abs().powf(p)).sum();
        match tail_sum_bounds_f(&self.tail, p, self.head.len() as u64) {
            TailSum::Bounds { lower, upper } => TailSum::Bounds { lower: head + lower, upper: head + upper },
            TailSum::Diverges => TailSum::Diverges,
        }
    }

    /// Bounds on `‖a‖_p`; `None` when it diverges. `p = ∞` uses the head
    /// and the first tail term (the power-log tail is decreasing).
    pub fn norm_bounds(&self, p: Exponent) -> Option<(f64, f64)> {
        if p.is_infinite() {
            let first_tail = self.tail.coef(self.head.len() as u64 + 1).abs();
            let m = self.head.iter().fold(first_tail, |m, x| m.max(x.abs()));
            return Some((m, m));
        }
        let pv = p.value();
        self.power_sum(pv).bounds().map(|(l, u)| (l.powf(1.0 / pv), u.powf(1.0 / pv)))
    }
}
