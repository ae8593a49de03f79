//! Basic memory performance `P(d)`: the probability that a random cue at
//! distortion `d = m/N` makes the network reproduce its trace.
//!
//! Three routes are provided and cross-check each other: closed-form sums
//! for intact nets ([`p_analytic`]), exhaustive enumeration of all
//! `2^m C(N,m)` cues through the actual forward pass ([`p_exact_enumerate`]),
//! and seeded Monte Carlo ([`p_montecarlo`]). `P(1)` doubles as the false-alarm
//! rate `α`, which is what the Bayes, ROC and mirror-effect helpers build on.

mod analytic;
mod bayes;
mod enumerate;
mod montecarlo;
mod roc;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use analytic::{analytic_curve, binomial, p_analytic, stirling_tail, StirlingTail};
pub use bayes::{bayes, BayesResult};
pub use enumerate::{enumeration_size, exact_curve, p_exact_enumerate, ENUMERATION_LIMIT};
pub use montecarlo::{montecarlo_curve, p_montecarlo};
pub use roc::{mirror_check, roc_family, MirrorReport, MirrorViolation, RocPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Analytic,
    #[serde(rename = "mc")]
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Analytic => "analytic",
            Method::MonteCarlo => "mc",
        })
    }
}

/// One `(m, d, q, P)` sample of a performance curve.
#[derive(Clone, Debug, PartialEq)]
pub struct PerformancePoint {
    pub n: usize,
    pub m: usize,
    pub p_exact: BigRational,
    /// `n(d)`, inputs that retrieved the trace.
    pub n_success: BigUint,
    /// `n₀(d)`, inputs examined.
    pub n_total: BigUint,
    pub method: Method,
    pub threshold: f64,
    pub eta: f64,
    pub damage_id: String,
}

impl PerformancePoint {
    pub fn from_counts(
        n: usize,
        m: usize,
        n_success: BigUint,
        n_total: BigUint,
        method: Method,
    ) -> Self {
        let p_exact = BigRational::new(BigInt::from(n_success.clone()), BigInt::from(n_total.clone()));
        PerformancePoint {
            n,
            m,
            p_exact,
            n_success,
            n_total,
            method,
            threshold: 0.0,
            eta: 1.0,
            damage_id: "intact".to_string(),
        }
    }

    pub fn d(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    pub fn q(&self) -> f64 {
        (self.n - self.m) as f64 / self.n as f64
    }

    pub fn p_float(&self) -> f64 {
        self.p_exact.to_f64().unwrap_or(f64::NAN)
    }

    /// Binomial standard error of the estimate; zero for exhaustive methods.
    pub fn std_error(&self) -> f64 {
        match self.method {
            Method::MonteCarlo => {
                let p = self.p_float();
                let trials = self.n_total.to_f64().unwrap_or(f64::INFINITY);
                (p * (1.0 - p) / trials).sqrt()
            }
            _ => 0.0,
        }
    }

    pub fn with_labels(mut self, threshold: f64, eta: f64, damage_id: impl Into<String>) -> Self {
        self.threshold = threshold;
        self.eta = eta;
        self.damage_id = damage_id.into();
        self
    }
}

/// Points over an m-grid for a single `N`, in grid order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PerformanceCurve {
    pub points: Vec<PerformancePoint>,
}

impl PerformanceCurve {
    pub fn new(points: Vec<PerformancePoint>) -> Self {
        PerformanceCurve { points }
    }

    pub fn n(&self) -> Option<usize> {
        self.points.first().map(|p| p.n)
    }

    pub fn get(&self, m: usize) -> Option<&PerformancePoint> {
        self.points.iter().find(|p| p.m == m)
    }

    /// Point whose `d` equals the given distortion on the `1/N` grid.
    pub fn at_distortion(&self, d: f64) -> Option<&PerformancePoint> {
        self.points.iter().find(|p| (p.d() - d).abs() < 1e-9)
    }

    pub fn ms(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.m).collect()
    }

    /// Grid points (sorted by `m`) where `P` rises with more noise.
    pub fn monotonicity_violations(&self) -> Vec<usize> {
        let mut pts: Vec<&PerformancePoint> = self.points.iter().collect();
        pts.sort_by_key(|p| p.m);
        pts.windows(2)
            .filter(|w| w[1].p_exact > w[0].p_exact)
            .map(|w| w[1].m)
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PerformancePoint> {
        self.points.iter()
    }
}

/// Parses an inclusive m-grid: `a..b`, a comma list, or a single value.
pub fn parse_grid(s: &str) -> crate::Result<Vec<usize>> {
    let bad = |_| crate::Error::Parse(format!("invalid m-grid {s:?}"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(bad)?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(bad)?;
        if a > b {
            return Err(crate::Error::Parse(format!("empty m-grid {s:?}")));
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(bad)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("0..9").unwrap(), (0..=9).collect::<Vec<_>>());
        assert_eq!(parse_grid("3").unwrap(), vec![3]);
        assert_eq!(parse_grid("1,4, 7").unwrap(), vec![1, 4, 7]);
        assert!(parse_grid("5..2").is_err());
        assert!(parse_grid("x").is_err());
    }

    #[test]
    fn point_views() {
        let p = PerformancePoint::from_counts(9, 9, 256u32.into(), 512u32.into(), Method::Exact);
        assert_eq!(p.p_float(), 0.5);
        assert_eq!(p.d(), 1.0);
        assert_eq!(p.q(), 0.0);
        assert_eq!(p.std_error(), 0.0);
        assert_eq!(p.p_exact, BigRational::new(1.into(), 2.into()));
    }
}
