//! Seeded random instances for property suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exponent::Exponent;
use crate::operators::OperatorMat;
use crate::rng::{gaussian_vec, substream};
use crate::sequence::VecSeq;
use crate::space::Space;

/// Exponents used throughout the property suites.
pub const EXPONENTS: [Exponent; 5] = [
    Exponent::ONE,
    Exponent::Rational { num: 3, den: 2 },
    Exponent::TWO,
    Exponent::Rational { num: 3, den: 1 },
    Exponent::INF,
];

/// Generator for instance `i` of a corpus seeded with `seed`.
pub fn instance_rng(seed: u64, i: usize) -> ChaCha8Rng {
    substream(seed, 0xC0_0000 + i as u64)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, a: Exponent, b: Exponent) -> OperatorMat {
    OperatorMat { rows, cols, entries: gaussian_vec(rng, rows * cols), domain: a, codomain: b }
}

pub fn random_seq(rng: &mut ChaCha8Rng, n: usize, space: Space) -> VecSeq {
    let head = (0..n).map(|_| gaussian_vec(rng, space.dim)).collect();
    VecSeq::new(space, head).expect("generated with matching dimension")
}

/// Nonnegative entries, as for sequences in the positive cone of `ℓ_1`.
pub fn random_abs_seq(rng: &mut ChaCha8Rng, n: usize, space: Space) -> VecSeq {
    let mut s = random_seq(rng, n, space);
    s.head.iter_mut().flatten().for_each(|x| *x = x.abs());
    s
}

pub fn pick<T: Copy>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items[rng.random_range(0..items.len())]
}

pub fn random_dim(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi)
}
