//! Explicit failure constructions for summability implications, measured
//! as growth of partial aggregates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::operators::diagonal_norm;
use crate::par;
use crate::tail::{tail_sum_bounds, ScalarSeq, TailModel, TailSum};
use crate::trend::{doubling_levels, TrendSeries, Verdict};

/// Doubling truncations merged with the powers of ten up to `n_max`.
pub fn trend_levels(n_max: u64) -> Vec<u64> {
    let mut v = doubling_levels(n_max);
    let mut t = 10;
    while t <= n_max {
        v.push(t);
        t *= 10;
    }
    v.sort_unstable();
    v.dedup();
    v
}

fn exponent_from_recip(x: f64) -> Result<Exponent> {
    if x <= 0.0 {
        return Ok(Exponent::INF);
    }
    Exponent::from_f64(1.0 / x)
}

/// Weak-r norm of a weighted basis family `(a_n e_n)_{n≤N}` in `ℓ_q`, which
/// is the norm of `diag(a) : ℓ_{r'} → ℓ_q`.
pub fn weighted_basis_weak_norm(a: &[f64], q: Exponent, r: Exponent) -> f64 {
    diagonal_norm(a, r.dual(), q).0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakNormCheck {
    pub n: u64,
    pub weak_x: f64,
    pub weak_f: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case1Report {
    pub p: Exponent,
    pub r: Exponent,
    pub series: TrendSeries,
    /// Weak-r norms of the basis of `ℓ_p` and of its dual basis.
    pub weak_norms: Vec<WeakNormCheck>,
    pub bounded_half: bool,
}

/// `ℓ_r` aggregates of the `N × N` Kronecker array at doubling `N`, summed
/// row by row.
pub fn kronecker_series(r: Exponent, n_max: u64) -> Result<TrendSeries> {
    let rf = r.finite()?;
    let levels = doubling_levels(n_max);
    let delta = |n: u64, k: u64| if n == k { 1.0f64 } else { 0.0 };
    let values: Vec<f64> = levels
        .iter()
        .map(|&big_n| {
            let rows = par::map_indexed(big_n as usize, |n| {
                (0..big_n).map(|k| delta(n as u64, k)).filter(|v| *v != 0.0).map(|v| v.abs().powf(rf)).sum::<f64>()
            });
            rows.iter().sum::<f64>().powf(1.0 / rf)
        })
        .collect();
    Ok(TrendSeries::new(levels, values, None))
}

/// Kronecker pairing of the basis of `ℓ_p` with its dual basis.
///
/// For `r ≥ max(p, p')` both families are weakly r-summable with norm one,
/// while the `N × N` pairing array has `ℓ_r` aggregate `N^{1/r}`.
pub fn case1_kronecker(p: Exponent, r: Exponent, n_max: u64) -> Result<Case1Report> {
    r.finite()?;
    p.finite()?;
    if r.value() < p.value().max(p.dual().value()) {
        return Err(Error::Hypothesis(format!("need r >= max(p, p') but r={r}, p={p}, p'={}", p.dual())));
    }
    if n_max < 4 {
        return Err(Error::InvalidArgument(format!("need N_max >= 4, got {n_max}")));
    }
    let series = kronecker_series(r, n_max)?;
    let levels = series.truncations.clone();
    let weak_norms: Vec<WeakNormCheck> = levels
        .iter()
        .map(|&n| {
            let ones = vec![1.0; n as usize];
            WeakNormCheck {
                n,
                weak_x: weighted_basis_weak_norm(&ones, p, r),
                weak_f: weighted_basis_weak_norm(&ones, p.dual(), r),
            }
        })
        .collect();
    let bounded_half = weak_norms.iter().all(|w| w.weak_x == 1.0 && w.weak_f == 1.0);
    Ok(Case1Report { p, r, series, weak_norms, bounded_half })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderRow {
    pub n: u64,
    pub weak_s: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderReport {
    pub s: Exponent,
    pub p: Exponent,
    pub t: Exponent,
    /// Bracket on `‖α‖_t` over the full sequence.
    pub alpha_t_norm: (f64, f64),
    pub rows: Vec<HolderRow>,
    pub violations: usize,
}

/// Checks `‖(α_n e_n)_{n≤N}‖_s^w ≤ ‖α‖_t` in `ℓ_p` with `1/t = 1/s − 1/p'`.
pub fn holder_embedding_check(alpha: &ScalarSeq, s: Exponent, p: Exponent, truncations: &[u64]) -> Result<HolderReport> {
    s.finite()?;
    p.finite()?;
    if s.value() > p.dual().value() {
        return Err(Error::Hypothesis(format!("need 1 <= s <= p' but s={s}, p'={}", p.dual())));
    }
    let t = exponent_from_recip(s.recip() - p.dual().recip())?;
    let alpha_t_norm = alpha
        .norm_bounds(t)
        .ok_or_else(|| Error::Hypothesis(format!("the coefficient sequence is not in l_{t}")))?;
    let max_n = truncations.iter().copied().max().unwrap_or(0);
    let coefs = alpha.prefix(max_n as usize);
    let rows: Vec<HolderRow> = truncations
        .iter()
        .map(|&n| {
            let weak_s = weighted_basis_weak_norm(&coefs[..n as usize], p, s);
            HolderRow { n, weak_s, pass: weak_s <= alpha_t_norm.1 * (1.0 + 1e-12) }
        })
        .collect();
    let violations = rows.iter().filter(|r| !r.pass).count();
    Ok(HolderReport { s, p, t, alpha_t_norm, rows, violations })
}

/// `Σ_{n≤N} term(n)` at every truncation, with a certified verdict.
fn partial_sum_series<F>(term: F, levels: Vec<u64>, certified: Verdict) -> TrendSeries
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    let values = par::partial_sums(term, &levels);
    TrendSeries::new(levels, values, Some(certified))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case2Report {
    pub p: Exponent,
    pub r: Exponent,
    pub t1: Exponent,
    pub t2: Exponent,
    pub alpha: TailModel,
    pub beta: TailModel,
    /// `Σ α_n^{t1}` and `Σ β_n^{t2}`.
    pub alpha_in_lt1: TailSum,
    pub beta_in_lt2: TailSum,
    /// Whether `Σ (α_n β_n)^r` diverges by the integral test.
    pub product_diverges: bool,
    /// Partial sums of `(α_n β_n)^r`.
    pub series: TrendSeries,
}

/// Power-log coefficients `n^{-1/t}(1 + ln n)^{-2/t}`: in `l_t`, and in no
/// `l_u` with `u < t`.
pub fn critical_model(t: Exponent) -> Result<TailModel> {
    let g = t.recip();
    TailModel::power_log(1.0, g, 2.0 * g)
}

/// `α ∈ l_{t1}`, `β ∈ l_{t2}` with `1/t1 = 1/r − 1/p'`, `1/t2 = 1/r − 1/p`,
/// whose product is not in `l_r`.
pub fn case2_construct(p: Exponent, r: Exponent, n_max: u64) -> Result<Case2Report> {
    let rf = r.finite()?;
    p.finite()?;
    let bound = p.value().min(p.dual().value());
    if !(rf > 1.0 && rf < bound) {
        return Err(Error::Hypothesis(format!("need 1 < r < min(p, p') = {bound}, got r={r}")));
    }
    let t1 = exponent_from_recip(r.recip() - p.dual().recip())?;
    let t2 = exponent_from_recip(r.recip() - p.recip())?;
    let alpha = critical_model(t1)?;
    let beta = critical_model(t2)?;
    let alpha_in_lt1 = tail_sum_bounds(&alpha, t1, 0)?;
    let beta_in_lt2 = tail_sum_bounds(&beta, t2, 0)?;
    let prod = alpha.product(&beta);
    let product_diverges = prod.diverges(rf);
    let verdict = if product_diverges { Verdict::Diverging } else { Verdict::Bounded };
    let series = partial_sum_series(move |n| prod.coef(n).powf(rf), trend_levels(n_max), verdict);
    Ok(Case2Report { p, r, t1, t2, alpha, beta, alpha_in_lt1, beta_in_lt2, product_diverges, series })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case3Report {
    /// Exponent actually used, after replacing `p` by `p'` when `p > 2`.
    pub p: Exponent,
    pub swapped: bool,
    pub r: Exponent,
    pub t: Exponent,
    pub alpha: TailModel,
    pub alpha_in_lt: TailSum,
    pub alpha_r_diverges: bool,
    /// Partial sums of `α_n^r`, the r-th power of the pairing aggregate of
    /// `(α_n e_n)` against the dual basis.
    pub series: TrendSeries,
}

/// `α ∈ l_t \ l_r` with `1/t = 1/r − 1/p'` for `p < r < p'`.
///
/// When `p' < r < p` the roles of `p` and `p'` are exchanged first; the
/// property is symmetric under duality.
pub fn case3_construct(p: Exponent, r: Exponent, n_max: u64) -> Result<Case3Report> {
    let rf = r.finite()?;
    p.finite()?;
    let (mut pe, mut swapped) = (p, false);
    if pe.value() > pe.dual().value() {
        pe = pe.dual();
        swapped = true;
    }
    if !(pe.value() < rf && rf < pe.dual().value()) {
        return Err(Error::Hypothesis(format!("need r strictly between p and p', got p={p}, r={r}")));
    }
    let t = exponent_from_recip(r.recip() - pe.dual().recip())?;
    let alpha = critical_model(t)?;
    let alpha_in_lt = tail_sum_bounds(&alpha, t, 0)?;
    let alpha_r_diverges = alpha.diverges(rf);
    let verdict = if alpha_r_diverges { Verdict::Diverging } else { Verdict::Bounded };
    let series = partial_sum_series(move |n| alpha.coef(n).powf(rf), trend_levels(n_max), verdict);
    Ok(Case3Report { p: pe, swapped, r, t, alpha, alpha_in_lt, alpha_r_diverges, series })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cor312Report {
    pub p: Exponent,
    pub r: Exponent,
    pub s: Exponent,
    /// `α_n = n^{-γ} e_n` in `ℓ_p`.
    pub gamma: f64,
    /// `β = Σ n^{-δ} e_n` in `ℓ_{p'}`.
    pub delta: f64,
    pub epsilon: f64,
    /// `1/t_s` and `1/t_r`: the weak-s (weak-r) norm of `α` is the
    /// `l_{t_s}` (`l_{t_r}`) norm of its coefficients.
    pub inv_t_s: f64,
    pub inv_t_r: f64,
    pub weakly_s_summable: bool,
    pub weakly_r_summable: bool,
    pub beta_in_lp_dual: bool,
    pub zero_beta: bool,
    /// Partial sums of `|⟨β, α_n⟩|^r`.
    pub series: TrendSeries,
}

/// A sequence in `l_s^w(ℓ_p) \ l_r^w(ℓ_p)` and a functional `β ∈ ℓ_{p'}`
/// with `Σ |⟨β, α_n⟩|^r = ∞`, for `1 < r < s < ∞`.
///
/// `α_n = n^{-γ} e_n` is weakly u-summable exactly when `n^{-γ} ∈ l_{t_u}`,
/// `1/t_u = max(0, 1/u − 1/p')`. Taking `γ = 1/t_r − ε` with
/// `ε = (1/r − 1/s)/2` (or `γ = 1/(2 t_r)` when that is not positive)
/// lands strictly between the two thresholds. Then `δ` is the midpoint of
/// `(1/p', 1/r − γ]`, which keeps `β` in `ℓ_{p'}` while `r(γ + δ) < 1`.
pub fn cor312_construct(p: Exponent, r: Exponent, s: Exponent, n_max: u64, zero_beta: bool) -> Result<Cor312Report> {
    let (rf, sf) = (r.finite()?, s.finite()?);
    p.finite()?;
    if !(1.0 < rf && rf < sf) {
        return Err(Error::Hypothesis(format!("need 1 < r < s < inf, got r={r}, s={s}")));
    }
    let pd = p.dual().recip();
    let inv_t_r = r.recip() - pd;
    if inv_t_r <= 0.0 {
        return Err(Error::Hypothesis(format!(
            "every bounded diagonal family is weakly {r}-summable in l_{p} when r >= p' = {}",
            p.dual()
        )));
    }
    let inv_t_s = (s.recip() - pd).max(0.0);
    let epsilon = (r.recip() - s.recip()) / 2.0;
    let mut gamma = inv_t_r - epsilon;
    if gamma <= inv_t_s || gamma <= 0.0 {
        gamma = (inv_t_r + inv_t_s) / 2.0;
    }
    let delta = (pd + (r.recip() - gamma)) / 2.0;
    let a = TailModel::power_log(1.0, gamma, 0.0)?;
    let weakly_s_summable = inv_t_s == 0.0 || !a.diverges(1.0 / inv_t_s);
    let weakly_r_summable = !a.diverges(1.0 / inv_t_r);
    let b = TailModel::power_log(1.0, delta, 0.0)?;
    let beta_in_lp_dual = p.dual().is_infinite() || !b.diverges(p.dual().value());
    let prod = a.product(&b);
    let (certified, c) = if zero_beta { (Verdict::Bounded, 0.0) } else if prod.diverges(rf) { (Verdict::Diverging, 1.0) } else { (Verdict::Bounded, 1.0) };
    let series = partial_sum_series(move |n| c * prod.coef(n).powf(rf), trend_levels(n_max), certified);
    Ok(Cor312Report {
        p,
        r,
        s,
        gamma,
        delta,
        epsilon,
        inv_t_s,
        inv_t_r,
        weakly_s_summable,
        weakly_r_summable,
        beta_in_lp_dual,
        zero_beta,
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    #[test]
    fn case1_examples() {
        let c = case1_kronecker(e("2"), e("2"), 16).unwrap();
        assert_eq!(*c.series.values.last().unwrap(), 4.0);
        assert!((c.series.fitted_slope - 0.5).abs() < 1e-12);
        assert!(c.bounded_half);
        let c = case1_kronecker(e("3"), e("3"), 1 << 8).unwrap();
        assert!((c.series.fitted_slope - 1.0 / 3.0).abs() < 0.01);
        assert!(matches!(case1_kronecker(e("2"), e("6/5"), 16), Err(Error::Hypothesis(_))));
        assert!(case1_kronecker(e("2"), e("2"), 2).is_err());
    }

    #[test]
    fn holder_examples() {
        let a = ScalarSeq::model(TailModel::power_log(1.0, 1.0, 2.0).unwrap());
        let r = holder_embedding_check(&a, e("3/2"), e("2"), &[10, 100, 1000]).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.t, e("6"));
        let one = ScalarSeq::finite(vec![0.0, 2.5, 0.0]);
        let r = holder_embedding_check(&one, e("1"), e("3"), &[3]).unwrap();
        assert_eq!(r.rows[0].weak_s, 2.5);
        assert_eq!(r.alpha_t_norm, (2.5, 2.5));
        let zero = ScalarSeq::finite(vec![0.0; 4]);
        let r = holder_embedding_check(&zero, e("1"), e("2"), &[4]).unwrap();
        assert_eq!((r.rows[0].weak_s, r.alpha_t_norm.1), (0.0, 0.0));
        assert!(holder_embedding_check(&zero, e("3"), e("2"), &[4]).is_err());
    }

    #[test]
    fn case2_example() {
        let c = case2_construct(e("2"), e("3/2"), 1 << 16).unwrap();
        assert_eq!((c.t1, c.t2), (e("6"), e("6")));
        assert!(c.alpha_in_lt1.converges() && c.beta_in_lt2.converges());
        assert!(c.product_diverges);
        assert_eq!(c.series.verdict, Verdict::Diverging);
        assert!(c.series.is_nondecreasing());
        assert!(case2_construct(e("2"), e("2"), 100).is_err());
        assert!(case2_construct(e("2"), e("1"), 100).is_err());
    }

    #[test]
    fn case3_examples() {
        let c = case3_construct(e("3/2"), e("2"), 1 << 16).unwrap();
        assert_eq!(c.t, e("6"));
        assert!(c.alpha_in_lt.converges() && c.alpha_r_diverges);
        assert_eq!(c.series.verdict, Verdict::Diverging);
        let swapped = case3_construct(e("3"), e("2"), 1 << 10).unwrap();
        assert!(swapped.swapped);
        assert_eq!(swapped.p, e("3/2"));
        assert_eq!(swapped.series, case3_construct(e("3/2"), e("2"), 1 << 10).unwrap().series);
        assert!(case3_construct(e("2"), e("2"), 10).is_err());
    }

    #[test]
    fn cor312_examples() {
        let c = cor312_construct(e("2"), e("3/2"), e("3"), 1 << 16, false).unwrap();
        assert!(c.weakly_s_summable && !c.weakly_r_summable && c.beta_in_lp_dual);
        assert_eq!(c.series.verdict, Verdict::Diverging);
        let z = cor312_construct(e("2"), e("3/2"), e("3"), 1 << 10, true).unwrap();
        assert_eq!(z.series.verdict, Verdict::Bounded);
        assert!(z.series.values.iter().all(|v| *v == 0.0));
        assert!(cor312_construct(e("2"), e("3/2"), e("3/2"), 100, false).is_err());
        assert!(cor312_construct(e("3/2"), e("4"), e("5"), 100, false).is_err());
    }
}
