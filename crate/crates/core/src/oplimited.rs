//! Operator p-summability, p-limited certificates and the `lt_p` norm.
//!
//! A functional family `f` is paired with a sequence `x` through the double
//! array `⟨f_n, x_k⟩`. Its row `ℓ_p` norms are the dominating sequence of the
//! set `E_x(Ball ℓ_{p'})`: for `z = Σ β_k x_k` with `‖β‖_{p'} ≤ 1`, Hölder
//! gives `|f_n(z)| ≤ (Σ_k |f_n(x_k)|^p)^{1/p}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{Budget, NormBracket, NormEstimate};
use crate::exponent::Exponent;
use crate::operators::{exact_or_upper, make_ef_star, make_ex, op_norm, search_norm, OperatorMat};
use crate::par;
use crate::rng::{gaussian_vec, substream};
use crate::sequence::{strong_norm, StrongNorm, VecSeq};
use crate::space::{dot, lp_norm, norming_vector, Space};
use crate::summing::{default_m, pi_p_exact, pi_p_lower_warm};
use crate::tail::{tail_sum_bounds, TailSum};
use crate::trend::{doubling_levels, loglog_slope, DIVERGENCE_SLOPE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummabilityVerdict {
    SummableAtTruncation,
    DivergingTrend,
}

/// Trend fits need at least this many doubling levels.
pub const MIN_TREND_LEVELS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummabilityReport {
    /// `double_array[n][k] = ⟨f_n, x_k⟩`.
    pub double_array: Vec<Vec<f64>>,
    pub row_p_norms: Vec<f64>,
    pub aggregate: f64,
    /// `Σ_{n>N} |a_n b_n|^p` when both families carry tails.
    pub tail: Option<TailSum>,
    pub levels: Vec<u64>,
    pub level_aggregates: Vec<f64>,
    pub trend: f64,
    pub verdict: SummabilityVerdict,
}

fn check_pairing(x: &VecSeq, f: &VecSeq) -> Result<()> {
    if x.space.dim != f.space.dim {
        return Err(Error::DimensionMismatch { expected: x.space.dim, got: f.space.dim });
    }
    if f.space.exponent != x.space.exponent.dual() {
        return Err(Error::SpaceMismatch(format!(
            "functionals live in l_{} but the dual of l_{} is l_{}",
            f.space.exponent,
            x.space.exponent,
            x.space.exponent.dual()
        )));
    }
    if x.has_tail() && f.has_tail() && x.len() != f.len() {
        return Err(Error::InvalidArgument("tailed families must share the truncation length".into()));
    }
    Ok(())
}

/// Pairs `f` with `x`, aggregates the rows in `ℓ_p`, and calls a trend over
/// square truncations `1, 2, 4, …, N`.
///
/// Tails pair only with each other, diagonally, so a tailed pair contributes
/// `Σ_{n>N} (a_n b_n)^p`; a certified divergent tail forces the diverging
/// verdict.
pub fn opsum_check(x: &VecSeq, f: &VecSeq, p: Exponent) -> Result<SummabilityReport> {
    check_pairing(x, f)?;
    let pf = p.finite()?;
    let double_array: Vec<Vec<f64>> = par::map_slice(&f.head, |fn_| x.head.iter().map(|xk| dot(fn_, xk)).collect());
    let row_p_norms: Vec<f64> = double_array.iter().map(|r| lp_norm(r, p)).collect();
    let aggregate = lp_norm(&row_p_norms, p);
    let tail = if x.has_tail() && f.has_tail() {
        Some(tail_sum_bounds(&x.tail.product(&f.tail), p, x.len() as u64)?)
    } else {
        None
    };
    let n = x.len().max(f.len()) as u64;
    let levels = doubling_levels(n);
    let level_aggregates: Vec<f64> = levels
        .iter()
        .map(|&l| {
            let l = l as usize;
            let s: f64 = double_array.iter().take(l).flat_map(|r| r.iter().take(l)).map(|v| v.abs().powf(pf)).sum();
            s.powf(1.0 / pf)
        })
        .collect();
    let trend = loglog_slope(&levels, &level_aggregates);
    let diverging_tail = matches!(tail, Some(TailSum::Diverges));
    let verdict = if diverging_tail || (levels.len() >= MIN_TREND_LEVELS && trend > DIVERGENCE_SLOPE) {
        SummabilityVerdict::DivergingTrend
    } else {
        SummabilityVerdict::SummableAtTruncation
    };
    Ok(SummabilityReport { double_array, row_p_norms, aggregate, tail, levels, level_aggregates, trend, verdict })
}

/// `π_p^d(E_x)`: exact where a closed form applies to `E_xᵀ`, otherwise a
/// search lower bound.
pub fn opsum_norm(x: &VecSeq, p: Exponent, budget: Budget, seed: u64) -> Result<NormEstimate> {
    let adj = make_ex(x, p)?.adjoint();
    if let Some(e) = pi_p_exact(&adj, p) {
        return Ok(e);
    }
    let m = default_m(adj.cols);
    Ok(pi_p_lower_warm(&adj, p, m, budget, seed, &[])?.estimate)
}

/// A dominating `ℓ_p` sequence for the pairings of a functional family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub alphas: Vec<f64>,
    /// Upper bound on `(Σ_{n>N} α_n^p)^{1/p}`.
    pub tail_bound: f64,
    pub p: Exponent,
}

impl Certificate {
    pub fn zeros(n: usize, p: Exponent) -> Self {
        Certificate { alphas: vec![0.0; n], tail_bound: 0.0, p }
    }

    /// Upper bound on the `ℓ_p` norm of the whole certificate.
    pub fn norm_upper(&self) -> f64 {
        let head = lp_norm(&self.alphas, self.p);
        match self.p.finite() {
            Ok(p) => (head.powf(p) + self.tail_bound.powf(p)).powf(1.0 / p),
            Err(_) => head.max(self.tail_bound),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum LimitedVerdict {
    Certified(Certificate),
    NoCertificate { reason: String, trend: f64 },
}

impl LimitedVerdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            LimitedVerdict::Certified(c) => Some(c),
            LimitedVerdict::NoCertificate { .. } => None,
        }
    }
}

/// Row norms of the double array as a certificate for `E_x(Ball ℓ_{p'})`.
pub fn limited_certificate(x: &VecSeq, f: &VecSeq, p: Exponent) -> Result<LimitedVerdict> {
    let report = opsum_check(x, f, p)?;
    let pf = p.finite()?;
    if report.verdict == SummabilityVerdict::DivergingTrend {
        let reason = match report.tail {
            Some(TailSum::Diverges) => "tail pairing sum diverges",
            _ => "row norms grow along doubling truncations",
        };
        return Ok(LimitedVerdict::NoCertificate { reason: reason.into(), trend: report.trend });
    }
    let tail_bound = match report.tail {
        Some(TailSum::Bounds { upper, .. }) => upper.powf(1.0 / pf),
        _ => 0.0,
    };
    Ok(LimitedVerdict::Certified(Certificate { alphas: report.row_p_norms, tail_bound, p }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CombineMode {
    Union,
    Sum,
    SubsetCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Combined {
    Certificate(Certificate),
    Subset(bool),
}

fn padded(a: &Certificate, n: usize) -> Vec<f64> {
    let mut v = a.alphas.clone();
    v.resize(n, 0.0);
    v
}

/// Certificates for `A ∪ B` (pointwise max), `A + B` (pointwise sum), or the
/// check that `a` is dominated by `b`. Shorter certificates are padded with
/// zeros.
pub fn certificate_combine(a: &Certificate, b: &Certificate, mode: CombineMode) -> Result<Combined> {
    if a.p != b.p {
        return Err(Error::InvalidArgument(format!("certificates for p={} and p={}", a.p, b.p)));
    }
    let n = a.alphas.len().max(b.alphas.len());
    let (x, y) = (padded(a, n), padded(b, n));
    let pf = a.p.finite().unwrap_or(f64::INFINITY);
    Ok(match mode {
        CombineMode::Union => {
            // max(s, t)^p ≤ s^p + t^p
            let tail = if pf.is_finite() {
                (a.tail_bound.powf(pf) + b.tail_bound.powf(pf)).powf(1.0 / pf)
            } else {
                a.tail_bound.max(b.tail_bound)
            };
            Combined::Certificate(Certificate {
                alphas: x.iter().zip(&y).map(|(s, t)| s.max(*t)).collect(),
                tail_bound: tail,
                p: a.p,
            })
        }
        CombineMode::Sum => Combined::Certificate(Certificate {
            alphas: x.iter().zip(&y).map(|(s, t)| s + t).collect(),
            tail_bound: a.tail_bound + b.tail_bound,
            p: a.p,
        }),
        CombineMode::SubsetCheck => {
            let heads = x.iter().zip(&y).all(|(s, t)| s <= t);
            Combined::Subset(heads && (a.tail_bound == 0.0 || a.tail_bound <= b.tail_bound))
        }
    })
}

/// Certificate for `T(E_x(Ball))` against functionals `g` on the codomain,
/// obtained by pulling each `g_n` back to `Tᵀ g_n`.
pub fn certificate_pushforward(x: &VecSeq, g: &VecSeq, t: &OperatorMat, p: Exponent) -> Result<LimitedVerdict> {
    if t.cols != x.space.dim {
        return Err(Error::DimensionMismatch { expected: t.cols, got: x.space.dim });
    }
    if g.space.dim != t.rows {
        return Err(Error::DimensionMismatch { expected: t.rows, got: g.space.dim });
    }
    let pulled = VecSeq::new(Space::new(t.cols, x.space.exponent.dual()), g.head.iter().map(|gn| t.mul_t(gn)).collect())?;
    limited_certificate(&x.truncated(), &pulled, p)
}

/// Scaled dual basis with weak*-p norm one, plus `random` Gaussian families
/// of the same length normalized by their weak*-p norm (exact or an upper
/// bound, so never above one).
pub fn default_probes(space: Space, p: Exponent, random: usize, seed: u64) -> Vec<VecSeq> {
    let d = space.dim;
    let q = space.exponent;
    // ‖I : ℓ_q^d → ℓ_p^d‖ = d^{max(0, 1/p − 1/q)}
    let scale = (d as f64).powf((p.recip() - q.recip()).max(0.0));
    let mut out = vec![VecSeq::basis(d, q.dual()).scaled(1.0 / scale)];
    for i in 0..random {
        let mut rng = substream(seed, 0x9_0000 + i as u64);
        let head: Vec<Vec<f64>> = (0..d).map(|_| gaussian_vec(&mut rng, d)).collect();
        let fam = VecSeq { space: space.dual(), head, tail: Default::default() };
        let (w, _) = exact_or_upper(&make_ef_star(&fam, p).expect("finite family"));
        out.push(if w > 0.0 { fam.scaled(1.0 / w) } else { fam });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeqLimitedReport {
    /// The probe family with the largest aggregate.
    pub worst: SummabilityReport,
    pub worst_probe: usize,
    pub probes: usize,
    pub verdict: SummabilityVerdict,
    /// `π_p^d(E_{Tx})`.
    pub opsum: NormEstimate,
}

/// Tests whether `⟨Tx_n⟩` is operator p-summable against a probe family of
/// weak*-p-normalized functionals on the codomain.
pub fn seq_limited_check(
    t: &OperatorMat,
    x: &VecSeq,
    p: Exponent,
    probes: &[VecSeq],
    budget: Budget,
    seed: u64,
) -> Result<SeqLimitedReport> {
    if x.space.dim != t.cols {
        return Err(Error::DimensionMismatch { expected: t.cols, got: x.space.dim });
    }
    let tx = VecSeq::new(t.codomain_space(), x.head.iter().map(|v| t.mul(v)).collect())?;
    let owned;
    let probes = if probes.is_empty() {
        owned = default_probes(t.codomain_space(), p, 4, seed);
        &owned[..]
    } else {
        probes
    };
    let reports = probes.iter().map(|f| opsum_check(&tx, f, p)).collect::<Result<Vec<_>>>()?;
    let (i, _) = par::argmax(reports.iter().map(|r| r.aggregate)).unwrap_or((0, 0.0));
    let verdict = if reports.iter().any(|r| r.verdict == SummabilityVerdict::DivergingTrend) {
        SummabilityVerdict::DivergingTrend
    } else {
        SummabilityVerdict::SummableAtTruncation
    };
    let opsum = if tx.is_empty() {
        NormEstimate::exact(0.0, "exact:empty")
    } else {
        opsum_norm(&tx, p, budget, seed)?
    };
    Ok(SeqLimitedReport { worst: reports[i].clone(), worst_probe: i, probes: probes.len(), verdict, opsum })
}

/// Search effort for `lt_p`: outer moves over `S`, inner `π_p` search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtOptions {
    pub outer: Budget,
    pub inner: Budget,
    pub m: usize,
}

impl Default for LtOptions {
    fn default() -> Self {
        LtOptions { outer: Budget::new(8, 30), inner: Budget::new(4, 60), m: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LtEstimate {
    pub estimate: NormEstimate,
    /// The best `S`, normalized so that `‖S‖ ≤ 1`.
    pub s: OperatorMat,
}

fn normalize_s(s: OperatorMat) -> OperatorMat {
    let (n, _) = exact_or_upper(&s);
    if n > 0.0 {
        s.scaled(1.0 / n)
    } else {
        s
    }
}

fn inner_pi(st: &OperatorMat, p: Exponent, m: usize, inner: Budget, seed: u64, warm: &[Vec<Vec<f64>>]) -> f64 {
    if let Some(e) = pi_p_exact(st, p) {
        return e.value;
    }
    pi_p_lower_warm(st, p, m, inner, seed, warm).map(|r| r.value()).unwrap_or(0.0)
}

/// Lower bound on `lt_p(T) = sup{π_p(ST) : S : Y → ℓ_p, ‖S‖ ≤ 1}`.
///
/// Start 0 is the rank-one `S = e_1 ⊗ g` where `g` norms `Tα*` for the best
/// `α*` found for `‖T‖`; with `α*` as a warm witness this already reaches
/// the `‖T‖` lower bound. Start 1 is the normalized identity and the rest
/// are Gaussian. Each start then takes accept-if-better random steps on `S`.
pub fn lt_p_lower(t: &OperatorMat, p: Exponent, opts: LtOptions, seed: u64) -> Result<LtEstimate> {
    p.finite()?;
    let dp = t.rows;
    let m = if opts.m == 0 { default_m(t.cols) } else { opts.m };
    let method = "search:lt-outer";
    if t.is_zero() || dp == 0 || t.cols == 0 {
        return Ok(LtEstimate {
            estimate: NormEstimate::lower(0.0, method, seed, Some(opts.outer)),
            s: OperatorMat::zeros(dp, t.rows, t.codomain, p),
        });
    }
    let (_, alpha_star) = search_norm(t, opts.inner, seed);
    let warm = vec![vec![alpha_star.clone()]];
    let starts = opts.outer.starts.max(1);
    let results = par::map_indexed(starts, |i| {
        let mut rng = substream(seed, 0x17_0000 + i as u64);
        let s0 = match i {
            0 => {
                let g = norming_vector(&t.mul(&alpha_star), t.codomain.dual());
                let mut entries = vec![0.0; dp * t.rows];
                entries[..t.rows].copy_from_slice(&g);
                OperatorMat { rows: dp, cols: t.rows, entries, domain: t.codomain, codomain: p }
            }
            1 => OperatorMat::identity(dp, t.codomain, p),
            _ => OperatorMat { rows: dp, cols: t.rows, entries: gaussian_vec(&mut rng, dp * t.rows), domain: t.codomain, codomain: p },
        };
        let mut s = normalize_s(s0);
        let value = |s: &OperatorMat| {
            let st = s.compose(t).expect("shapes agree");
            inner_pi(&st, p, m, opts.inner, seed, &warm)
        };
        let mut best = value(&s);
        let mut sigma = 0.3;
        for _ in 0..opts.outer.iterations {
            let kick = gaussian_vec(&mut rng, s.entries.len());
            let mut cand = s.clone();
            cand.entries.iter_mut().zip(&kick).for_each(|(e, k)| *e += sigma * k);
            let cand = normalize_s(cand);
            let v = value(&cand);
            if v > best {
                s = cand;
                best = v;
                sigma = (sigma * 1.5).min(2.0);
            } else {
                sigma = (sigma * 0.8).max(1e-4);
            }
        }
        (best, s)
    });
    let (i, v) = par::argmax(results.iter().map(|r| r.0)).unwrap();
    Ok(LtEstimate { estimate: NormEstimate::lower(v, method, seed, Some(opts.outer)), s: results[i].1.clone() })
}

/// One named pass/fail outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub weak: NormBracket,
    pub strong: StrongNorm,
    pub lt: NormEstimate,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Evaluates `‖x‖_p^w ≤ lt_p(E_x) ≤ ‖x‖_p^s` for a finite sequence.
pub fn chain_check(x: &VecSeq, p: Exponent, opts: LtOptions, tol: f64, seed: u64) -> Result<ChainReport> {
    let x = x.truncated();
    let ex = make_ex(&x, p)?;
    let weak = if x.is_empty() {
        NormBracket::exact(0.0, "exact:empty")
    } else {
        op_norm(&ex, opts.inner, seed).bracket
    };
    let strong = strong_norm(&x, p)?;
    let s = strong.exact_value().unwrap_or(f64::INFINITY);
    let lt = if x.is_empty() {
        NormEstimate::exact(0.0, "exact:empty")
    } else {
        lt_p_lower(&ex, p, opts, seed)?.estimate
    };
    let checks = vec![
        Check::new(
            "weak<=strong",
            weak.lower.value <= s * (1.0 + 1e-12) + 1e-12,
            format!("weak={} strong={}", weak.lower.value, s),
        ),
        Check::new("lt<=strong", lt.value <= s + tol, format!("lt={} strong={} tol={tol}", lt.value, s)),
        Check::new("lt>=weak", lt.value >= weak.lower.value - tol, format!("lt={} weak={} tol={tol}", lt.value, weak.lower.value)),
    ];
    let passed = checks.iter().all(|c| c.pass);
    Ok(ChainReport { weak, strong, lt, checks, passed })
}
