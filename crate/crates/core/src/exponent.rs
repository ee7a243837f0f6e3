//! Exponents `p ∈ [1, ∞]` and their harmonic conjugates.
//!
//! Exponents given as integers, decimals or fractions are kept as exact
//! rationals, so `dual(dual(p)) == p` holds without rounding drift.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exponent `p` in `[1, ∞]`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Exponent {
    /// `num / den`, always reduced, `num >= den >= 1`.
    Rational { num: u64, den: u64 },
    /// A value with no short rational form.
    Real(f64),
    Infinity,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Rational { num: 1, den: 1 };
    pub const TWO: Exponent = Exponent::Rational { num: 2, den: 1 };
    pub const INF: Exponent = Exponent::Infinity;

    pub fn ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num < den {
            return Err(Error::InvalidExponent(format!("{num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Exponent::Rational { num: num / g, den: den / g })
    }

    pub fn integer(n: u64) -> Result<Self> {
        Self::ratio(n, 1)
    }

    /// Converts a float, recovering short rationals (denominator up to 64)
    /// when the value matches one to machine precision.
    pub fn from_f64(x: f64) -> Result<Self> {
        if x.is_nan() || x < 1.0 {
            return Err(Error::InvalidExponent(x.to_string()));
        }
        if x.is_infinite() {
            return Ok(Exponent::Infinity);
        }
        for den in 1..=64u64 {
            let num = (x * den as f64).round();
            if num < 1e15 && (num / den as f64 - x).abs() <= 4.0 * f64::EPSILON * x {
                return Self::ratio(num as u64, den);
            }
        }
        Ok(Exponent::Real(x))
    }

    /// The numeric value; `f64::INFINITY` for `∞`.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Rational { num, den } => num as f64 / den as f64,
            Exponent::Real(x) => x,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Rational { num, den } => den as f64 / num as f64,
            Exponent::Real(x) => 1.0 / x,
            Exponent::Infinity => 0.0,
        }
    }

    /// The harmonic conjugate `p'` with `1/p + 1/p' = 1`.
    pub fn dual(self) -> Self {
        match self {
            Exponent::Infinity => Exponent::ONE,
            Exponent::Rational { num, den } if num == den => Exponent::Infinity,
            Exponent::Rational { num, den } => Exponent::Rational { num, den: num - den },
            Exponent::Real(1.0) => Exponent::Infinity,
            Exponent::Real(x) => {
                let d = x / (x - 1.0);
                if d.is_finite() {
                    Exponent::Real(d)
                } else {
                    Exponent::Infinity
                }
            }
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn is_one(self) -> bool {
        self == Exponent::ONE
    }

    pub fn is_two(self) -> bool {
        self == Exponent::TWO
    }

    /// Errors unless the exponent is finite.
    pub fn finite(self) -> Result<f64> {
        if self.is_infinite() {
            Err(Error::InfiniteExponent)
        } else {
            Ok(self.value())
        }
    }
}

/// Dual exponent as a free function.
pub fn dual_exponent(p: Exponent) -> Exponent {
    p.dual()
}

impl PartialEq for Exponent {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Exponent::Infinity, Exponent::Infinity) => true,
            (Exponent::Infinity, _) | (_, Exponent::Infinity) => false,
            (
                Exponent::Rational { num: a, den: b },
                Exponent::Rational { num: c, den: d },
            ) => a == c && b == d,
            _ => self.value() == other.value(),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Rational { num, den: 1 } => write!(f, "{num}"),
            Exponent::Rational { num, den } => write!(f, "{num}/{den}"),
            Exponent::Real(x) => write!(f, "{x}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidExponent(s.to_string());
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => return Ok(Exponent::Infinity),
            _ => {}
        }
        if let Some((n, d)) = t.split_once('/') {
            let num: u64 = n.trim().parse().map_err(|_| bad())?;
            let den: u64 = d.trim().parse().map_err(|_| bad())?;
            return Self::ratio(num, den).map_err(|_| bad());
        }
        // plain decimals are read exactly: "1.25" -> 5/4
        if let Some((int, frac)) = t.split_once('.') {
            if !int.is_empty()
                && int.bytes().all(|b| b.is_ascii_digit())
                && frac.bytes().all(|b| b.is_ascii_digit())
                && frac.len() <= 12
            {
                let den = 10u64.pow(frac.len() as u32);
                let num = int.parse::<u64>().map_err(|_| bad())? * den
                    + if frac.is_empty() { 0 } else { frac.parse::<u64>().map_err(|_| bad())? };
                return Self::ratio(num, den).map_err(|_| bad());
            }
        }
        if let Ok(n) = t.parse::<u64>() {
            return Self::integer(n).map_err(|_| bad());
        }
        let x: f64 = t.parse().map_err(|_| bad())?;
        Self::from_f64(x).map_err(|_| bad())
    }
}

impl From<Exponent> for String {
    fn from(p: Exponent) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Exponent {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
