//! The single-trace two-layer autoassociative network.
//!
//! Input neuron `i` connects to output neuron `j` through `w_ij`. Training on
//! one trace gives the rank-1 matrix `w_ij = η x₀ⁱ x₀ʲ`, so the field on
//! output `j` is `h_j = η x₀ʲ Q` and the network reproduces `x₀` exactly when
//! the convolution `Q` clears the threshold. Damage (severed links, dead
//! neurons, perturbed weights) breaks that rank-1 structure; the forward pass
//! below is what the performance module enumerates for damaged nets.

mod damage;
mod learning;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coding::{convolution, SpinVector};
use crate::error::{check_len, Error, Result};

pub use damage::{DamageSpec, Stochastization};
pub use learning::{learn_one_trial, saturating, uniform_init, LearningOutcome};

/// How an output resolves `h_j == l`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieRule {
    /// `h_j <= l` fires `-1`. Used everywhere unless explicitly overridden.
    #[default]
    Negative,
    /// Variant: `h_j >= l` fires `+1`.
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeuronConfig {
    /// Firing threshold `l`.
    pub threshold: f64,
    /// Bias `s_j`, shared by every output.
    pub bias: f64,
    pub tie: TieRule,
}

impl Default for NeuronConfig {
    fn default() -> Self {
        NeuronConfig {
            threshold: 0.0,
            bias: 0.0,
            tie: TieRule::Negative,
        }
    }
}

impl NeuronConfig {
    pub fn with_threshold(threshold: f64) -> Self {
        NeuronConfig {
            threshold,
            ..Default::default()
        }
    }

    #[inline]
    pub fn fires(&self, h: f64) -> bool {
        match self.tie {
            TieRule::Negative => h > self.threshold,
            TieRule::Positive => h >= self.threshold,
        }
    }
}

/// `N × N` weights stored row-major: row `i` is input neuron `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SynapticMatrix {
    n: usize,
    eta: f64,
    weights: Vec<f64>,
    severed: Vec<bool>,
    dead_inputs: BTreeSet<usize>,
    dead_outputs: BTreeSet<usize>,
}

impl SynapticMatrix {
    /// Ideal one-trace training, `w_ij = η x₀ⁱ x₀ʲ`.
    pub fn train_ideal(etalon: &SpinVector, eta: f64) -> Result<Self> {
        check_eta(eta)?;
        let x = etalon.components();
        let n = x.len();
        let weights = x
            .iter()
            .flat_map(|&xi| x.iter().map(move |&xj| eta * f64::from(xi * xj)))
            .collect();
        Ok(SynapticMatrix {
            n,
            eta,
            weights,
            severed: vec![false; n * n],
            dead_inputs: BTreeSet::new(),
            dead_outputs: BTreeSet::new(),
        })
    }

    /// Wraps arbitrary row-major weights.
    pub fn from_weights(n: usize, weights: Vec<f64>, eta: f64) -> Result<Self> {
        check_eta(eta)?;
        if n == 0 {
            return Err(Error::Param("matrix size must be >= 1".into()));
        }
        check_len(n * n, weights.len())?;
        Ok(SynapticMatrix {
            n,
            eta,
            weights,
            severed: vec![false; n * n],
            dead_inputs: BTreeSet::new(),
            dead_outputs: BTreeSet::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_severed(&self, i: usize, j: usize) -> bool {
        self.severed[i * self.n + j]
    }

    /// `N_d`, number of severed links.
    pub fn severed_count(&self) -> usize {
        self.severed.iter().filter(|&&s| s).count()
    }

    pub fn dead_inputs(&self) -> &BTreeSet<usize> {
        &self.dead_inputs
    }

    pub fn dead_outputs(&self) -> &BTreeSet<usize> {
        &self.dead_outputs
    }

    pub fn is_intact(&self) -> bool {
        self.dead_inputs.is_empty() && self.dead_outputs.is_empty() && !self.severed.iter().any(|&s| s)
    }

    /// Output fields `h_j = Σ_i w_ij vᵢ + s_j` for a real-valued input.
    pub fn fields(&self, input: &[f64], bias: f64) -> Result<Vec<f64>> {
        check_len(self.n, input.len())?;
        let mut h = vec![bias; self.n];
        for (i, &vi) in input.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            let row = &self.weights[i * self.n..(i + 1) * self.n];
            for (hj, &w) in h.iter_mut().zip(row) {
                *hj += w * vi;
            }
        }
        Ok(h)
    }

    /// Retrieval-mode forward pass with the threshold quantizer.
    pub fn forward(&self, x_in: &SpinVector, cfg: &NeuronConfig) -> Result<SpinVector> {
        if !self.dead_outputs.is_empty() {
            return Err(Error::DeadOutput(self.dead_outputs.iter().copied().collect()));
        }
        let h = self.fields(&x_in.as_f64(), cfg.bias)?;
        SpinVector::from_bools(h.into_iter().map(|hj| cfg.fires(hj)))
    }

    /// `forward(x_in) == target` without allocating the output vector.
    pub fn reproduces(&self, x_in: &[i8], target: &[i8], cfg: &NeuronConfig) -> Result<bool> {
        if !self.dead_outputs.is_empty() {
            return Err(Error::DeadOutput(self.dead_outputs.iter().copied().collect()));
        }
        check_len(self.n, x_in.len())?;
        check_len(self.n, target.len())?;
        for (j, &tj) in target.iter().enumerate() {
            let mut h = cfg.bias;
            for (i, &xi) in x_in.iter().enumerate() {
                h += self.weights[i * self.n + j] * f64::from(xi);
            }
            if cfg.fires(h) != (tj > 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn weights_mut(&mut self) -> &mut [f64] {
        &mut self.weights
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::Param(format!("learning parameter eta must be > 0, got {eta}")));
    }
    Ok(())
}

/// Convolution decoder: accept iff `Q > l/η`.
///
/// Matches the ideal network for `l >= 0` when the etalon has at least one
/// `+1`. An all-`-1` etalon is reproduced iff `Q >= -l/η`.
pub fn decode_convolution(etalon: &SpinVector, x_in: &SpinVector, threshold: f64, eta: f64) -> Result<bool> {
    check_eta(eta)?;
    let q = convolution(etalon, x_in)?;
    Ok(q as f64 > threshold / eta)
}

/// Hamming classifier at `l = 0`: accept iff `D < N/2`.
pub fn decode_hamming(etalon: &SpinVector, x_in: &SpinVector) -> Result<bool> {
    let d = crate::coding::hamming(etalon, x_in)?;
    Ok(2 * d < etalon.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::hamming;

    fn v(s: &str) -> SpinVector {
        s.parse().unwrap()
    }

    #[test]
    fn two_component_example() {
        let m = SynapticMatrix::train_ideal(&v("+-"), 1.0).unwrap();
        assert_eq!(m.weights(), &[1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn nine_component_weights_are_unit_signs() {
        let x0 = v("+-++--+-+");
        let m = SynapticMatrix::train_ideal(&x0, 1.0).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                let w = m.weight(i, j);
                assert!(w == 1.0 || w == -1.0);
                assert_eq!(w, f64::from(x0.get(i) * x0.get(j)));
            }
        }
    }

    #[test]
    fn rank_one_structure() {
        let x0 = v("+--+-++");
        let m = SynapticMatrix::train_ideal(&x0, 2.5).unwrap();
        let n = m.n();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        assert_eq!(m.weight(i, j) * m.weight(k, l), m.weight(i, l) * m.weight(k, j));
                    }
                }
            }
        }
    }

    #[test]
    fn bad_eta() {
        assert!(matches!(SynapticMatrix::train_ideal(&v("+-"), 0.0), Err(Error::Param(_))));
        assert!(matches!(SynapticMatrix::train_ideal(&v("+-"), -1.0), Err(Error::Param(_))));
        assert!(decode_convolution(&v("+-"), &v("+-"), 0.0, 0.0).is_err());
    }

    #[test]
    fn recognition_for_any_eta() {
        let x0 = v("+-++--+-+");
        for eta in [1e-3, 0.5, 1.0, 400.0] {
            let m = SynapticMatrix::train_ideal(&x0, eta).unwrap();
            assert_eq!(m.forward(&x0, &NeuronConfig::default()).unwrap(), x0);
        }
    }

    #[test]
    fn antipodal_input() {
        // h_j = -ηN x₀ʲ: +1 exactly where x₀ʲ = -1
        let x0 = v("+-++--+-+");
        let m = SynapticMatrix::train_ideal(&x0, 1.0).unwrap();
        let out = m.forward(&x0.negated(), &NeuronConfig::default()).unwrap();
        assert_eq!(out, x0.negated());
    }

    #[test]
    fn decode_examples() {
        let x0 = v("+-++--+-+");
        assert!(decode_convolution(&x0, &x0, 0.0, 1.0).unwrap());
        assert!(!decode_convolution(&x0, &x0.negated(), 0.0, 1.0).unwrap());
        let m = SynapticMatrix::train_ideal(&x0, 1.0).unwrap();
        let d4 = x0.with_flipped(&[0, 2, 4, 6]).unwrap();
        let d5 = x0.with_flipped(&[0, 2, 4, 6, 8]).unwrap();
        assert!(decode_convolution(&x0, &d4, 0.0, 1.0).unwrap());
        assert!(!decode_convolution(&x0, &d5, 0.0, 1.0).unwrap());
        assert_eq!(m.forward(&d4, &NeuronConfig::default()).unwrap(), x0);
        assert_ne!(m.forward(&d5, &NeuronConfig::default()).unwrap(), x0);
    }

    #[test]
    fn forward_accepts_iff_q_clears_scaled_threshold() {
        let x0 = v("+-++--+-");
        for eta in [0.5, 1.0, 3.0] {
            let m = SynapticMatrix::train_ideal(&x0, eta).unwrap();
            for l in [0.0, 1.0, 2.0, 4.5, 6.0] {
                let cfg = NeuronConfig::with_threshold(l);
                for bits in 0..256u64 {
                    let x = SpinVector::from_bits(8, bits).unwrap();
                    let net = m.forward(&x, &cfg).unwrap() == x0;
                    assert_eq!(net, decode_convolution(&x0, &x, l, eta).unwrap(), "eta {eta} l {l} x {x}");
                }
            }
        }
    }

    #[test]
    fn tie_goes_negative_by_default() {
        // even N, D = N/2 gives Q = 0 and h_j = 0 everywhere
        let x0 = v("++--");
        let m = SynapticMatrix::train_ideal(&x0, 1.0).unwrap();
        let x = x0.with_flipped(&[0, 2]).unwrap();
        assert_eq!(hamming(&x0, &x).unwrap(), 2);
        let out = m.forward(&x, &NeuronConfig::default()).unwrap();
        assert_eq!(out.to_string(), "----");
        let pos = NeuronConfig {
            tie: TieRule::Positive,
            ..Default::default()
        };
        assert_eq!(m.forward(&x, &pos).unwrap().to_string(), "++++");
        assert!(!decode_hamming(&x0, &x).unwrap());
    }

    #[test]
    fn reproduces_matches_forward() {
        let x0 = v("+-++--+");
        let m = SynapticMatrix::train_ideal(&x0, 1.0).unwrap();
        let cfg = NeuronConfig::default();
        for bits in 0..128u64 {
            let x = SpinVector::from_bits(7, bits).unwrap();
            assert_eq!(
                m.reproduces(x.components(), x0.components(), &cfg).unwrap(),
                m.forward(&x, &cfg).unwrap() == x0
            );
        }
    }
}
