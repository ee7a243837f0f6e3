//! Growth-exponent fits on log-log data.

use serde::{Deserialize, Serialize};

/// Fitted slopes above this count as growth.
pub const DIVERGENCE_SLOPE: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Diverging,
}

/// Least-squares slope of `log value` against `log N`, using the later half
/// of the points with positive values. `NaN` when fewer than two remain.
pub fn loglog_slope(ns: &[u64], values: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .zip(values)
        .filter(|(n, v)| **n > 0 && **v > 0.0 && v.is_finite())
        .map(|(n, v)| ((*n as f64).ln(), v.ln()))
        .collect();
    let tail = &pts[pts.len() / 2..];
    if tail.len() < 2 {
        return f64::NAN;
    }
    let k = tail.len() as f64;
    let mx = tail.iter().map(|p| p.0).sum::<f64>() / k;
    let my = tail.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = tail.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = tail.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        f64::NAN
    } else {
        sxy / sxx
    }
}

/// Partial aggregates at increasing truncations with their fitted growth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendSeries {
    pub truncations: Vec<u64>,
    pub values: Vec<f64>,
    pub fitted_slope: f64,
    pub verdict: Verdict,
}

impl TrendSeries {
    /// Fits the slope and calls divergence when it exceeds
    /// [`DIVERGENCE_SLOPE`]. `certified` overrides the empirical call when an
    /// analytic verdict is available.
    pub fn new(truncations: Vec<u64>, values: Vec<f64>, certified: Option<Verdict>) -> Self {
        let fitted_slope = loglog_slope(&truncations, &values);
        let empirical = if fitted_slope > DIVERGENCE_SLOPE { Verdict::Diverging } else { Verdict::Bounded };
        let verdict = match certified {
            Some(Verdict::Diverging) if empirical == Verdict::Diverging => Verdict::Diverging,
            Some(Verdict::Diverging) | Some(Verdict::Bounded) => Verdict::Bounded,
            None => empirical,
        };
        TrendSeries { truncations, values, fitted_slope, verdict }
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0])
    }

    /// CSV with columns `N,value,log N,log value`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("N,value,log N,log value\n");
        for (n, v) in self.truncations.iter().zip(&self.values) {
            s.push_str(&format!("{},{:e},{:e},{:e}\n", n, v, (*n as f64).ln(), v.ln()));
        }
        s
    }
}

/// `1, 2, 4, …` up to and including `n_max`.
pub fn doubling_levels(n_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = 1;
    while n < n_max {
        out.push(n);
        n *= 2;
    }
    if n_max > 0 {
        out.push(n_max);
    }
    out
}
