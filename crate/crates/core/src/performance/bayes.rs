use serde::Serialize;

use crate::error::{Error, Result};

/// Unconditional misclassification / correct-classification probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BayesResult {
    /// Prior ratio `κ = P(H₁)/P(H₀)`.
    pub kappa: f64,
    pub p_mc: f64,
    pub p_cc: f64,
}

/// `P_MC = 1/(1 + κ P(d)/P(1))` and `P_CC = 1/(1 + κ⁻¹ P(1)/P(d))`.
///
/// Both are evaluated over the shared denominator `P(1) + κ P(d)`, which is
/// the same pair of fractions and keeps their sum within rounding of 1.
/// Any `κ > 0` is accepted; the bound sometimes quoted alongside these
/// formulas (`0 < κ ≤ 1`) only governs whether `P_MC ≤ 1/2`.
pub fn bayes(p_d: f64, p_1: f64, kappa: f64) -> Result<BayesResult> {
    for (name, v) in [("P(d)", p_d), ("P(1)", p_1), ("kappa", kappa)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
        }
    }
    if p_d > 1.0 || p_1 > 1.0 {
        return Err(Error::Domain("probabilities must not exceed 1".into()));
    }
    let signal = kappa * p_d;
    let denom = p_1 + signal;
    Ok(BayesResult {
        kappa,
        p_mc: p_1 / denom,
        p_cc: signal / denom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_case() {
        let r = bayes(0.3, 0.3, 1.0).unwrap();
        assert_eq!(r.p_mc, 0.5);
        assert_eq!(r.p_cc, 0.5);
    }

    #[test]
    fn substitution() {
        let r = bayes(1.0, 0.5, 1.0).unwrap();
        assert!((r.p_mc - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.p_cc - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn matches_textbook_form() {
        for &(pd, p1, k) in &[(0.9, 0.5, 0.3), (0.2, 0.7, 4.0), (1.0, 1e-3, 1.0)] {
            let r = bayes(pd, p1, k).unwrap();
            assert!((r.p_mc - 1.0 / (1.0 + k * pd / p1)).abs() < 1e-14);
            assert!((r.p_cc - 1.0 / (1.0 + p1 / (k * pd))).abs() < 1e-14);
        }
    }

    #[test]
    fn domain() {
        assert!(bayes(0.0, 0.5, 1.0).is_err());
        assert!(bayes(0.5, 0.0, 1.0).is_err());
        assert!(bayes(0.5, 0.5, 0.0).is_err());
        assert!(bayes(0.5, 0.5, -1.0).is_err());
        assert!(bayes(1.5, 0.5, 1.0).is_err());
    }
}
