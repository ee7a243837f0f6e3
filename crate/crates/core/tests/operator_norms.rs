use summing_lab::corpus::{instance_rng, random_matrix, random_seq, EXPONENTS};
use summing_lab::operators::{exact_norm, make_ex, norm_upper_bound, op_norm, OperatorMat, SIGN_EXHAUSTION_CAP};
use summing_lab::oracle::{grid_op_norm, GridSpec};
use summing_lab::rng::gaussian_vec;
use summing_lab::{lp_norm, strong_norm, Budget, Exponent, Space};

fn close(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    (a - b).abs() <= (rel * a.abs().max(b.abs())).max(abs)
}

#[test]
fn exact_dispatch_agrees_with_grid() {
    let mut checked = 0;
    for (i, &a) in EXPONENTS.iter().enumerate() {
        for (j, &b) in EXPONENTS.iter().enumerate() {
            for d in [2, 3] {
                let mut rng = instance_rng(11, i * 100 + j * 10 + d);
                let t = random_matrix(&mut rng, d, d, a, b);
                let Some((v, x, method)) = exact_norm(&t) else { continue };
                let g = grid_op_norm(&t, GridSpec::default()).unwrap();
                assert!(close(v, g.value(), 1e-3, 1e-3), "{method} a={a} b={b}: exact {v} grid {}", g.value());
                assert!(g.value() <= v * (1.0 + 1e-9), "grid {} above exact {v}", g.value());
                let y = t.mul(&x);
                assert!((lp_norm(&y, b) / lp_norm(&x, a) - v).abs() < 1e-9 * v.max(1.0));
                checked += 1;
            }
        }
    }
    assert!(checked >= 20, "only {checked} exact instances");
}

#[test]
fn search_agrees_with_grid_and_is_bracketed() {
    let mut n = 0;
    for (i, &a) in EXPONENTS.iter().enumerate() {
        for (j, &b) in EXPONENTS.iter().enumerate() {
            for rep in 0..4 {
                let mut rng = instance_rng(12, i * 100 + j * 10 + rep);
                let (rows, cols) = (1 + rep % 3, 1 + (rep + 1) % 3);
                let t = random_matrix(&mut rng, rows, cols, a, b);
                let r = op_norm(&t, Budget::default(), rep as u64);
                let g = grid_op_norm(&t, GridSpec::default()).unwrap();
                assert!(r.bracket.lower.value <= r.bracket.upper.value * (1.0 + 1e-12));
                assert!(close(r.value(), g.value(), 1e-2, 1e-3), "a={a} b={b}: search {} grid {}", r.value(), g.value());
                assert!(r.value() <= g.upper_value() * (1.0 + 1e-9));
                assert!(g.value() <= r.bracket.upper_value() * (1.0 + 1e-9));
                n += 1;
            }
        }
    }
    assert!(n >= 100);
}

#[test]
fn exact_norm_bounds_every_image() {
    let mut rng = instance_rng(13, 0);
    for k in 0..1000 {
        let a = EXPONENTS[k % 5];
        let b = EXPONENTS[(k / 5) % 5];
        let t = random_matrix(&mut rng, 3, 3, a, b);
        let Some((v, _, _)) = exact_norm(&t) else { continue };
        let x = gaussian_vec(&mut rng, 3);
        assert!(lp_norm(&t.mul(&x), b) <= v * lp_norm(&x, a) * (1.0 + 1e-12) + 1e-12);
    }
}

#[test]
fn cheap_upper_bound_dominates_exact() {
    for k in 0..200 {
        let mut rng = instance_rng(14, k);
        let t = random_matrix(&mut rng, 3, 4, EXPONENTS[k % 5], EXPONENTS[(k / 5) % 5]);
        if let Some((v, _, _)) = exact_norm(&t) {
            assert!(norm_upper_bound(&t, SIGN_EXHAUSTION_CAP) >= v * (1.0 - 1e-12));
        }
    }
}

#[test]
fn single_vector_weak_norm_is_strong_norm() {
    for (k, &q) in EXPONENTS.iter().enumerate() {
        for &p in &EXPONENTS[..4] {
            let mut rng = instance_rng(15, k);
            let x = random_seq(&mut rng, 1, Space::new(3, q));
            let weak = op_norm(&make_ex(&x, p).unwrap(), Budget::default(), 0);
            let strong = strong_norm(&x, p).unwrap().exact_value().unwrap();
            assert!(weak.is_exact());
            assert!((weak.value() - strong).abs() <= 1e-12 * strong);
        }
    }
}

#[test]
fn hilbert_adjoint_symmetry() {
    let two = Exponent::TWO;
    for k in 0..20 {
        let mut rng = instance_rng(16, k);
        let t = random_matrix(&mut rng, 2 + k % 3, 3, two, two);
        let a = op_norm(&t, Budget::default(), 0).value();
        let b = op_norm(&t.adjoint(), Budget::default(), 0).value();
        assert!((a - b).abs() < 1e-10 * a);
    }
}

#[test]
fn search_is_deterministic_across_thread_counts() {
    let t = random_matrix(&mut instance_rng(17, 0), 4, 5, "3/2".parse().unwrap(), "3".parse().unwrap());
    let budget = Budget::new(12, 200);
    let base = op_norm(&t, budget, 5);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| op_norm(&t, budget, 5));
    assert_eq!(base, serial);
    assert_eq!(base, op_norm(&t, budget, 5));
}

#[test]
fn identity_between_nested_spaces() {
    // ‖α‖_p ≤ ‖α‖_{r'} once r' ≤ p
    for (p, r) in [("2", "2"), ("3/2", "3"), ("3", "3"), ("3/2", "4")] {
        let p: Exponent = p.parse().unwrap();
        let r: Exponent = r.parse().unwrap();
        let t = OperatorMat::identity(3, r.dual(), p);
        let g = grid_op_norm(&t, GridSpec::default()).unwrap();
        assert!((g.value() - 1.0).abs() < 1e-3);
        assert_eq!(op_norm(&t, Budget::default(), 0).value(), 1.0);
    }
}
