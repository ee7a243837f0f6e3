use anyhow::bail;
use serde_json::{json, Value};
use summing_lab::corpus::{instance_rng, pick, random_dim, random_matrix, random_seq, EXPONENTS};
use summing_lab::oplimited::Check;
use summing_lab::oracle::signvec_pi1;
use summing_lab::rng::gaussian_vec;
use summing_lab::space::{dot, lp_norm};
use summing_lab::{
    chain_check, limited_certificate, make_ef_star, make_ex, op_norm, opsum_check, pi_1_ealpha_exact,
    pi_2_hilbert_exact, pi_p_lower, strong_norm, Budget, Exponent, LtOptions, Space, SummabilityVerdict,
};

use crate::commands::Outcome;
use crate::{CheckArgs, Suite};

/// Runs one instance; `Ok(None)` is a pass, `Ok(Some(msg))` a violation.
type Instance<'a> = Box<dyn Fn(usize) -> anyhow::Result<Option<String>> + 'a>;

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Pairing => "pairing",
        Suite::Chain => "chain",
        Suite::Domination => "domination",
        Suite::Certificate => "certificate",
        Suite::Ealpha => "ealpha",
        Suite::Hilbert => "hilbert",
    }
}

pub fn run(a: &CheckArgs) -> anyhow::Result<Outcome> {
    if a.count == 0 {
        bail!("--count must be at least 1");
    }
    if a.d == 0 {
        bail!("--d must be at least 1");
    }
    let seed = a.common.seed;
    let d = a.d;
    let budget = a.common.budget;
    let tol = a.common.tol.unwrap_or(1e-3);
    let fixed_p = a.p;
    let instance: Instance = match a.suite {
        Suite::Pairing => Box::new(move |k| {
            let mut rng = instance_rng(seed, k);
            // spaces where the weak* norm has a closed form
            let (q, p) = if k % 2 == 0 {
                (Exponent::TWO, Exponent::TWO)
            } else {
                (Exponent::ONE, fixed_p.unwrap_or_else(|| pick(&mut rng, &EXPONENTS[..4])))
            };
            let dim = random_dim(&mut rng, 1, d);
            let (nx, nf) = (random_dim(&mut rng, 1, 6), random_dim(&mut rng, 1, 6));
            let x = random_seq(&mut rng, nx, Space::new(dim, q));
            let f = random_seq(&mut rng, nf, Space::new(dim, q.dual()));
            let pf = p.finite()?;
            let lhs: f64 = f.head.iter().flat_map(|g| x.head.iter().map(move |xk| dot(g, xk).abs().powf(pf))).sum();
            let w = op_norm(&make_ef_star(&f, p)?, budget, seed).bracket.upper_value();
            let s = strong_norm(&x, p)?.upper().unwrap_or(f64::INFINITY);
            let rhs = (w * s).powf(pf);
            Ok((lhs > rhs * (1.0 + 1e-9) + 1e-12).then(|| format!("instance {k}: sum={lhs} bound={rhs}")))
        }),
        Suite::Chain => Box::new(move |k| {
            let mut rng = instance_rng(seed, k);
            let p = fixed_p.unwrap_or(Exponent::TWO);
            let dim = random_dim(&mut rng, 1, d);
            let n = random_dim(&mut rng, 1, 5);
            let x = random_seq(&mut rng, n, Space::new(dim, p));
            let r = chain_check(&x, p, LtOptions::default(), tol, k as u64)?;
            Ok((!r.passed).then(|| format!("instance {k}: {:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>())))
        }),
        Suite::Domination => Box::new(move |k| {
            let mut rng = instance_rng(seed, k);
            let q = pick(&mut rng, &EXPONENTS);
            let p = fixed_p.unwrap_or_else(|| pick(&mut rng, &EXPONENTS[..4]));
            let dim = random_dim(&mut rng, 1, d);
            let n = random_dim(&mut rng, 1, 4);
            let x = random_seq(&mut rng, n, Space::new(dim, q));
            let f = random_seq(&mut rng, 3, Space::new(dim, q.dual()));
            let cert = limited_certificate(&x, &f, p)?;
            let Some(c) = cert.certificate() else {
                return Ok(Some(format!("instance {k}: finite family without certificate")));
            };
            let beta = gaussian_vec(&mut rng, n);
            let nb = lp_norm(&beta, p.dual());
            let z: Vec<f64> = (0..dim).map(|i| x.head.iter().zip(&beta).map(|(xk, b)| xk[i] * b / nb).sum()).collect();
            let bad = f.head.iter().zip(&c.alphas).position(|(g, a)| dot(g, &z).abs() > a * (1.0 + 1e-12) + 1e-12);
            Ok(bad.map(|n| format!("instance {k}: functional {n} exceeds its certificate")))
        }),
        Suite::Certificate => Box::new(move |k| {
            let mut rng = instance_rng(seed, k);
            let q = pick(&mut rng, &EXPONENTS);
            let p = fixed_p.unwrap_or_else(|| pick(&mut rng, &EXPONENTS[..4]));
            let dim = random_dim(&mut rng, 1, d);
            let n = random_dim(&mut rng, 1, 6);
            let (x, f) = if k % 3 == 0 {
                let n = 16 + k % 32;
                (summing_lab::VecSeq::basis(n, q), summing_lab::VecSeq::basis(n, q.dual()))
            } else {
                (random_seq(&mut rng, n, Space::new(dim, q)), random_seq(&mut rng, n, Space::new(dim, q.dual())))
            };
            let summable = opsum_check(&x, &f, p)?.verdict == SummabilityVerdict::SummableAtTruncation;
            let certified = limited_certificate(&x, &f, p)?.certificate().is_some();
            Ok((summable != certified).then(|| format!("instance {k}: summable={summable} certified={certified}")))
        }),
        Suite::Ealpha => Box::new(move |k| {
            let mut rng = instance_rng(seed, k);
            let n = random_dim(&mut rng, 1, 4);
            let dim = random_dim(&mut rng, 1, d);
            let alpha = random_seq(&mut rng, n, Space::new(dim, Exponent::ONE));
            let exact = pi_1_ealpha_exact(&alpha)?.value;
            let ea = make_ex(&alpha, Exponent::ONE)?;
            let v = signvec_pi1(&ea, n, 10_000_000)?.value;
            let ok = v >= 0.95 * exact && v <= exact + 1e-6;
            Ok((!ok).then(|| format!("instance {k}: sign-vector value {v}, exact {exact}")))
        }),
        Suite::Hilbert => Box::new(move |k| {
            let mut rng = instance_rng(seed, k);
            let dim = random_dim(&mut rng, 1, d);
            let t = random_matrix(&mut rng, dim, dim, Exponent::TWO, Exponent::TWO);
            let f = pi_2_hilbert_exact(&t)?.value;
            let r = pi_p_lower(&t, Exponent::TWO, dim, Budget::new(8, 200), k as u64)?.value();
            let ok = r >= 0.999 * f && r <= f + 1e-6;
            Ok((!ok).then(|| format!("instance {k}: search {r}, Hilbert-Schmidt {f}")))
        }),
    };

    let mut failures: Vec<String> = Vec::new();
    let mut violations = 0usize;
    for k in 0..a.count {
        if let Some(msg) = instance(k)? {
            violations += 1;
            if failures.len() < 10 {
                failures.push(msg);
            }
        }
    }
    let results: Value = json!({
        "suite": suite_name(a.suite),
        "count": a.count,
        "violations": violations,
        "failures": failures,
    });
    let check = Check::new("zero-violations", violations == 0, format!("{violations} of {} instances", a.count));
    Ok((results, vec![check], None))
}
