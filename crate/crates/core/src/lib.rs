//! Neural-network assembly memory model.
//!
//! A single memory trace `x₀` is held twice: actively, as a ±1 spin vector,
//! and passively, as the rank-1 Hebbian matrix `w_ij = η x₀ⁱ x₀ʲ` of a
//! two-layer autoassociative network. Retrieval feeds that network with
//! partially random cues `x(d)` and checks the output bit-for-bit against a
//! reference copy of `x₀`. For an intact network this is exactly the
//! maximum-likelihood convolution (Hamming) decoder, so the probability of
//! retrieval `P(d)` is computable in closed form, by exhaustive enumeration
//! and by Monte Carlo.
//!
//! Modules:
//!
//! - [`coding`]: spin vectors, cues, sparse ternary vectors, similarity metrics
//! - [`network`]: Hebbian matrix, forward pass, damage, one-trial learning
//! - [`performance`]: `P(d)` curves, Bayes error rates, ROC families, mirror effect
//! - [`memory_unit`]: time gate and the two nested retrieval loops
//! - [`spectra`]: binarization and sliding-window peak detection
//! - [`io`]: CSV / JSON-lines emission shared by the CLI and examples
//!
//! Runnable walkthroughs live under `examples/`; the `nnamm` binary is a thin
//! command-line wrapper around [`cli`].

pub mod cli;
pub mod coding;
pub mod error;
pub mod io;
pub mod memory_unit;
pub mod network;
pub mod performance;
pub mod spectra;

pub use coding::{CueSpec, SpinVector, TernaryVector};
pub use error::{Error, Result};
pub use network::{DamageSpec, NeuronConfig, SynapticMatrix};
pub use performance::{PerformanceCurve, PerformancePoint};

/// Seedable random source used throughout the crate.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Builds the crate's random source from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}
