//! One-trial delta-rule learning in continuous mode.
//!
//! Each iteration applies `w_ij += η v_j h_i` with the trace clamped on both
//! layers (`h_i = x₀ⁱ`, `v_j = x₀ʲ`). Starting from noise, one step adds
//! `η x₀ x₀ᵀ`, and for large `η` the saturating activation of the continuous
//! forward pass is then `±1` to within the floating-point resolution.

use rand::Rng;

use super::{check_eta, SynapticMatrix};
use crate::coding::SpinVector;
use crate::error::{check_len, Result};

/// Odd sigmoid with unit slope at the origin.
#[inline]
pub fn saturating(h: f64) -> f64 {
    h.tanh()
}

/// Matrix with weights iid uniform on `[-1, 1]`.
pub fn uniform_init<R: Rng + ?Sized>(n: usize, eta: f64, rng: &mut R) -> Result<SynapticMatrix> {
    let weights = (0..n * n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    SynapticMatrix::from_weights(n, weights, eta)
}

#[derive(Clone, Debug)]
pub struct LearningOutcome {
    pub matrix: SynapticMatrix,
    /// `Σ_i |x_outⁱ - x₀ⁱ|` after each iteration.
    pub residuals: Vec<f64>,
}

impl LearningOutcome {
    pub fn final_residual(&self) -> f64 {
        self.residuals.last().copied().unwrap_or(f64::NAN)
    }
}

impl SynapticMatrix {
    /// Continuous forward pass, `x_out_j = saturating(Σ_i w_ij x_inⁱ)`.
    pub fn forward_continuous(&self, x_in: &[f64]) -> Result<Vec<f64>> {
        Ok(self.fields(x_in, 0.0)?.into_iter().map(saturating).collect())
    }
}

pub fn learn_one_trial(
    initial: &SynapticMatrix,
    etalon: &SpinVector,
    eta: f64,
    iterations: usize,
) -> Result<LearningOutcome> {
    check_eta(eta)?;
    let n = initial.n();
    check_len(n, etalon.len())?;
    let x = etalon.as_f64();
    let mut matrix = initial.clone();
    let dead: Vec<bool> = (0..n).map(|i| matrix.dead_inputs().contains(&i)).collect();
    let severed: Vec<bool> = (0..n * n).map(|k| matrix.is_severed(k / n, k % n)).collect();
    let mut residuals = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let w = matrix.weights_mut();
        for i in 0..n {
            if dead[i] {
                continue;
            }
            for j in 0..n {
                if !severed[i * n + j] {
                    w[i * n + j] += eta * x[j] * x[i];
                }
            }
        }
        let out = matrix.forward_continuous(&x)?;
        residuals.push(out.iter().zip(&x).map(|(o, t)| (o - t).abs()).sum());
    }
    Ok(LearningOutcome { matrix, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::seeded_rng;

    fn setup(seed: u64) -> (SpinVector, SynapticMatrix) {
        let mut rng = seeded_rng(seed);
        let x0 = SpinVector::random(40, &mut rng).unwrap();
        let init = uniform_init(40, 1.0, &mut rng).unwrap();
        (x0, init)
    }

    #[test]
    fn one_iteration_at_large_eta_is_exact() {
        let (x0, init) = setup(3);
        let out = learn_one_trial(&init, &x0, 400.0, 1).unwrap();
        assert!(out.final_residual() < 1e-30);
    }

    #[test]
    fn second_iteration_adds_nothing_at_large_eta() {
        for eta in [100.0, 400.0] {
            let (x0, init) = setup(8);
            let out = learn_one_trial(&init, &x0, eta, 2).unwrap();
            assert!((out.residuals[0] - out.residuals[1]).abs() < 1e-30);
        }
    }

    #[test]
    fn small_eta_falls_short() {
        let (x0, init) = setup(3);
        let big = learn_one_trial(&init, &x0, 400.0, 1).unwrap().final_residual();
        let small = learn_one_trial(&init, &x0, 0.1, 1).unwrap().final_residual();
        assert!(small > big);
        assert!(small > 1e-6);
    }

    #[test]
    fn residual_shrinks_over_iterations_at_small_eta() {
        let (x0, init) = setup(1);
        let out = learn_one_trial(&init, &x0, 0.05, 6).unwrap();
        assert!(out.residuals.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn rejects_bad_eta_and_length() {
        let (x0, init) = setup(0);
        assert!(matches!(learn_one_trial(&init, &x0, 0.0, 1), Err(Error::Param(_))));
        let short = SpinVector::filled(3, 1).unwrap();
        assert!(learn_one_trial(&init, &short, 1.0, 1).is_err());
    }

    #[test]
    fn saturating_shape() {
        assert_eq!(saturating(0.0), 0.0);
        assert_eq!(saturating(-2.0), -saturating(2.0));
        let slope = (saturating(1e-6) - saturating(-1e-6)) / 2e-6;
        assert!((slope - 1.0).abs() < 1e-9);
    }
}
