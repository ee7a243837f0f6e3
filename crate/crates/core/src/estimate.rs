use serde::{Deserialize, Serialize};

/// How a number relates to the quantity it estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimateKind {
    Exact,
    Lower,
    Upper,
}

/// Search effort: number of independent starts and iterations per start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub starts: usize,
    pub iterations: usize,
}

impl Budget {
    pub const fn new(starts: usize, iterations: usize) -> Self {
        Budget { starts, iterations }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { starts: 32, iterations: 500 }
    }
}

pub const EXACT_TOL: f64 = 1e-12;
pub const SEARCH_TOL: f64 = 1e-4;

/// A nonnegative number tagged with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub kind: EstimateKind,
    pub method: String,
    pub seed: u64,
    pub tolerance: f64,
    pub budget: Option<Budget>,
}

impl NormEstimate {
    pub fn exact(value: f64, method: impl Into<String>) -> Self {
        NormEstimate {
            value,
            kind: EstimateKind::Exact,
            method: method.into(),
            seed: 0,
            tolerance: EXACT_TOL,
            budget: None,
        }
    }

    pub fn lower(value: f64, method: impl Into<String>, seed: u64, budget: Option<Budget>) -> Self {
        NormEstimate {
            value,
            kind: EstimateKind::Lower,
            method: method.into(),
            seed,
            tolerance: SEARCH_TOL,
            budget,
        }
    }

    pub fn upper(value: f64, method: impl Into<String>) -> Self {
        NormEstimate {
            value,
            kind: EstimateKind::Upper,
            method: method.into(),
            seed: 0,
            tolerance: SEARCH_TOL,
            budget: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == EstimateKind::Exact
    }
}

/// Lower and upper bounds on one quantity. Exact results carry the same
/// estimate on both sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormBracket {
    pub lower: NormEstimate,
    pub upper: NormEstimate,
}

impl NormBracket {
    pub fn exact(value: f64, method: impl Into<String>) -> Self {
        let e = NormEstimate::exact(value, method);
        NormBracket { lower: e.clone(), upper: e }
    }

    pub fn is_exact(&self) -> bool {
        self.lower.is_exact()
    }

    /// Best point value: the exact value or the certified lower bound.
    pub fn value(&self) -> f64 {
        self.lower.value
    }

    pub fn upper_value(&self) -> f64 {
        self.upper.value
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lower.value - tol && x <= self.upper.value + tol
    }
}
