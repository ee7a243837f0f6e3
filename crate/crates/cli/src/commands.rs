use std::path::Path;

use anyhow::{bail, Context};
use serde_json::{json, Value};
use summing_lab::corpus::{instance_rng, random_matrix, random_seq};
use summing_lab::counterexamples::trend_levels;
use summing_lab::oplimited::Check;
use summing_lab::oracle::{brute_pi_p, signvec_pi1, GridSpec};
use summing_lab::summing::{default_m, pi_p_exact};
use summing_lab::tail::{ScalarSeq, TailModel};
use summing_lab::{
    case1_kronecker, case2_construct, case3_construct, cor312_construct, holder_embedding_check, lt_p_lower,
    make_ef_star, make_ex, op_norm, pi_p_dual, pi_p_lower, strong_norm, Exponent, LtOptions, OperatorMat, Space,
    VecSeq, Verdict,
};

use crate::{Case, CounterexampleArgs, MatGen, NormArgs, SeqGen, SummingArgs};

pub type Outcome = (Value, Vec<Check>, Option<String>);

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn norm(a: &NormArgs) -> anyhow::Result<Outcome> {
    let q = a.q.unwrap_or(a.p);
    let x: VecSeq = match &a.file {
        Some(path) => read_json(path)?,
        None => {
            let n = a.n.unwrap_or(a.d);
            match a.seq {
                SeqGen::Basis => {
                    if n > a.d {
                        bail!("a basis sequence has at most d = {} vectors, asked for {n}", a.d);
                    }
                    VecSeq::basis(a.d, q).prefix(n)
                }
                SeqGen::Random => random_seq(&mut instance_rng(a.common.seed, 0), n, Space::new(a.d, q)),
            }
        }
    };
    let strong = strong_norm(&x, a.p)?;
    let finite = x.truncated();
    let (weak, weak_star) = if finite.is_empty() {
        (None, None)
    } else {
        let b = a.common.budget;
        let seed = a.common.seed;
        (
            Some(op_norm(&make_ex(&finite, a.p)?, b, seed).bracket),
            Some(op_norm(&make_ef_star(&finite, a.p)?, b, seed).bracket),
        )
    };
    let tol = a.common.tol.unwrap_or(1e-12);
    let mut checks = Vec::new();
    for name in &a.asserts {
        let check = match name.as_str() {
            "weak<=strong" => {
                let w = weak.as_ref().map_or(0.0, |w| w.lower.value);
                let s = strong.upper().unwrap_or(f64::INFINITY);
                Check::new(name, w <= s * (1.0 + tol) + tol, format!("weak={w} strong={s}"))
            }
            "weak-exact" => {
                let exact = weak.as_ref().is_none_or(|w| w.is_exact());
                Check::new(name, exact, "weak norm computed by a closed form")
            }
            "strong-finite" => Check::new(name, strong.upper().is_some(), format!("{strong:?}")),
            other => bail!("unknown assertion `{other}` (known: weak<=strong, weak-exact, strong-finite)"),
        };
        checks.push(check);
    }
    let results = json!({
        "sequence": { "dim": x.space.dim, "len": x.len(), "ambient": x.space.exponent, "tail": x.tail },
        "p": a.p,
        "strong": strong,
        "weak": weak,
        "weak_star": weak_star,
    });
    Ok((results, checks, None))
}

fn fixed_alpha() -> VecSeq {
    VecSeq::new(Space::new(2, Exponent::ONE), vec![vec![1.0, 0.5], vec![0.25, 0.0]]).expect("fixed shape")
}

fn build_matrix(a: &SummingArgs) -> anyhow::Result<OperatorMat> {
    if let Some(path) = &a.matrix {
        return read_json(path);
    }
    let n = a.n.unwrap_or(a.d);
    Ok(match a.gen {
        MatGen::Identity => {
            if n != a.d {
                bail!("the identity needs a square shape, got {}x{n}", a.d);
            }
            OperatorMat::identity(a.d, a.domain, a.codomain)
        }
        MatGen::Random => random_matrix(&mut instance_rng(a.common.seed, 0), a.d, n, a.domain, a.codomain),
        MatGen::EalphaFixed => make_ex(&fixed_alpha(), Exponent::ONE)?,
        MatGen::Ealpha => {
            let alpha = random_seq(&mut instance_rng(a.common.seed, 0), n, Space::new(a.d, Exponent::ONE));
            make_ex(&alpha, Exponent::ONE)?
        }
    })
}

pub fn summing(a: &SummingArgs) -> anyhow::Result<Outcome> {
    let t = build_matrix(a)?;
    let (budget, seed, p) = (a.common.budget, a.common.seed, a.p);
    let tol = a.common.tol.unwrap_or(1e-6);
    let m = a.m.unwrap_or(default_m(t.cols));
    let norm = op_norm(&t, budget, seed);
    let pi = pi_p_lower(&t, p, m, budget, seed)?;
    let pi_dual = pi_p_dual(&t, p, default_m(t.rows), budget, seed)?;
    let exact = pi_p_exact(&t, p);
    let oracle = if t.domain.is_infinite() && p.is_one() && t.cols <= 8 {
        let mo = t.cols.min(4);
        Some(signvec_pi1(&t, mo, 10_000_000)?)
    } else if t.cols <= 2 && t.rows <= 3 {
        Some(brute_pi_p(&t, p, m.min(2), GridSpec::with_resolution(16))?)
    } else {
        None
    };
    let lt = if a.skip_lt {
        None
    } else {
        let opts = LtOptions { m, ..LtOptions::default() };
        Some(lt_p_lower(&t, p, opts, seed)?.estimate)
    };

    let mut checks = vec![Check::new(
        "pi_p>=norm",
        pi.value() >= norm.value() - tol,
        format!("pi_p={} norm={}", pi.value(), norm.value()),
    )];
    if let Some(e) = &exact {
        checks.push(Check::new("pi_p<=exact", pi.value() <= e.value + tol, format!("pi_p={} exact={}", pi.value(), e.value)));
    }
    if let Some(o) = &oracle {
        checks.push(Check::new("oracle<=pi_p+", o.value <= exact.as_ref().map_or(f64::INFINITY, |e| e.value) + tol, format!("oracle={}", o.value)));
        if let Some(e) = &exact {
            checks.push(Check::new("oracle>=0.95*exact", o.value >= 0.95 * e.value, format!("oracle={} exact={}", o.value, e.value)));
        }
    }
    if let Some(l) = &lt {
        checks.push(Check::new("lt>=norm", l.value >= norm.value() - 1e-3, format!("lt={} norm={}", l.value, norm.value())));
        if let Some(e) = &exact {
            checks.push(Check::new("lt<=exact", l.value <= e.value + tol, format!("lt={} exact={}", l.value, e.value)));
        }
    }
    let results = json!({
        "operator": t,
        "p": p,
        "m": m,
        "norm": norm,
        "pi_p": pi,
        "pi_p_dual": pi_dual,
        "pi_p_exact": exact,
        "oracle": oracle,
        "lt_p": lt,
    });
    Ok((results, checks, None))
}

fn require(x: Option<Exponent>, name: &str) -> anyhow::Result<Exponent> {
    x.with_context(|| format!("--{name} is required for this case"))
}

pub fn counterexample(a: &CounterexampleArgs) -> anyhow::Result<Outcome> {
    let tol = a.common.tol.unwrap_or(1e-3);
    let mut checks = Vec::new();
    let (results, csv) = match a.case {
        Case::Case1 => {
            let r = require(a.r, "r")?;
            let c = case1_kronecker(a.p, r, a.nmax.unwrap_or(1 << 14))?;
            let target = 1.0 / r.value();
            checks.push(Check::new("slope", (c.series.fitted_slope - target).abs() <= tol, format!("slope={} target={target}", c.series.fitted_slope)));
            checks.push(Check::new("bounded-half", c.bounded_half, "weak-r norms of both bases equal 1"));
            checks.push(Check::new("nondecreasing", c.series.is_nondecreasing(), ""));
            let csv = c.series.to_csv();
            (serde_json::to_value(&c)?, csv)
        }
        Case::Case2 => {
            let r = require(a.r, "r")?;
            let c = case2_construct(a.p, r, a.nmax.unwrap_or(1_000_000))?;
            checks.push(Check::new("alpha-in-l_t1", c.alpha_in_lt1.converges(), format!("t1={}", c.t1)));
            checks.push(Check::new("beta-in-l_t2", c.beta_in_lt2.converges(), format!("t2={}", c.t2)));
            checks.push(Check::new("product-not-in-l_r", c.product_diverges, "integral test"));
            checks.push(Check::new("series-diverging", c.series.verdict == Verdict::Diverging, format!("slope={}", c.series.fitted_slope)));
            let csv = c.series.to_csv();
            (serde_json::to_value(&c)?, csv)
        }
        Case::Case3 => {
            let r = require(a.r, "r")?;
            let c = case3_construct(a.p, r, a.nmax.unwrap_or(1_000_000))?;
            checks.push(Check::new("alpha-in-l_t", c.alpha_in_lt.converges(), format!("t={}", c.t)));
            checks.push(Check::new("alpha-not-in-l_r", c.alpha_r_diverges, "integral test"));
            checks.push(Check::new("series-diverging", c.series.verdict == Verdict::Diverging, format!("slope={}", c.series.fitted_slope)));
            let csv = c.series.to_csv();
            (serde_json::to_value(&c)?, csv)
        }
        Case::Cor312 => {
            let (r, s) = (require(a.r, "r")?, require(a.s, "s")?);
            let c = cor312_construct(a.p, r, s, a.nmax.unwrap_or(1_000_000), a.zero_beta)?;
            checks.push(Check::new("weakly-s-summable", c.weakly_s_summable, format!("1/t_s={}", c.inv_t_s)));
            checks.push(Check::new("not-weakly-r-summable", !c.weakly_r_summable, format!("1/t_r={}", c.inv_t_r)));
            checks.push(Check::new("beta-in-l_p'", c.beta_in_lp_dual, format!("delta={}", c.delta)));
            let expected = if a.zero_beta { Verdict::Bounded } else { Verdict::Diverging };
            checks.push(Check::new("series-verdict", c.series.verdict == expected, format!("{:?}", c.series.verdict)));
            let csv = c.series.to_csv();
            (serde_json::to_value(&c)?, csv)
        }
        Case::Holder => {
            let s = require(a.s, "s")?;
            let alpha = ScalarSeq::model(TailModel::power_log(1.0, a.gamma, a.kappa)?);
            let ns: Vec<u64> = trend_levels(a.nmax.unwrap_or(10_000)).into_iter().filter(|n| *n >= 10).collect();
            let h = holder_embedding_check(&alpha, s, a.p, &ns)?;
            checks.push(Check::new("no-violations", h.violations == 0, format!("{} truncations", h.rows.len())));
            let mut csv = String::from("N,weak_s,bound\n");
            for row in &h.rows {
                csv.push_str(&format!("{},{:e},{:e}\n", row.n, row.weak_s, h.alpha_t_norm.1));
            }
            (serde_json::to_value(&h)?, csv)
        }
    };
    Ok((results, checks, Some(csv)))
}
