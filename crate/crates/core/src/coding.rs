//! Spin (±1) coding of memory traces, noisy cues and similarity measures.
//!
//! A trace is a dense vector of `+1`/`-1` components. A cue `x(d)` is the
//! trace with exactly `m` components overwritten by equiprobable random
//! signs, `d = m/N`. Noise has priority over signal: an overwritten
//! component may still agree with the trace by chance, so on average a cue
//! differs from its trace in `m/2` places.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

/// Dense vector with every component exactly `+1` or `-1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SpinVector(Vec<i8>);

impl SpinVector {
    pub fn new(components: Vec<i8>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("spin vector must have length >= 1".into()));
        }
        if let Some(pos) = components.iter().position(|&c| c != 1 && c != -1) {
            return Err(Error::Domain(format!(
                "component {pos} is {}, expected +1 or -1",
                components[pos]
            )));
        }
        Ok(SpinVector(components))
    }

    /// Builds a vector from booleans, `true` mapping to `+1`.
    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        Self::new(bits.into_iter().map(|b| if b { 1 } else { -1 }).collect())
    }

    /// Vector of length `n` whose component `i` is `+1` iff bit `i` of `bits` is set.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > 64 {
            return Err(Error::Domain(format!("from_bits supports n <= 64, got {n}")));
        }
        Self::from_bools((0..n).map(|i| bits >> i & 1 == 1))
    }

    pub fn filled(n: usize, sign: i8) -> Result<Self> {
        Self::new(vec![sign; n])
    }

    /// Uniformly random vector (pure noise `x_r`).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        Self::from_bools((0..n).map(|_| rng.gen::<bool>()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn negated(&self) -> Self {
        SpinVector(self.0.iter().map(|&c| -c).collect())
    }

    /// Flips the listed positions. Indices must be in range.
    pub fn with_flipped(&self, positions: &[usize]) -> Result<Self> {
        let mut out = self.0.clone();
        for &p in positions {
            if p >= out.len() {
                return Err(Error::Index {
                    index: p,
                    size: out.len(),
                });
            }
            out[p] = -out[p];
        }
        Ok(SpinVector(out))
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&c| f64::from(c)).collect()
    }
}

impl fmt::Display for SpinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            f.write_str(if c > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpinVector({self})")
    }
}

impl FromStr for SpinVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let comps = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Parse(format!("unexpected character {other:?} in spin vector"))),
            })
            .collect::<Result<Vec<i8>>>()?;
        SpinVector::new(comps)
    }
}

impl TryFrom<String> for SpinVector {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SpinVector> for String {
    fn from(v: SpinVector) -> String {
        v.to_string()
    }
}

/// Length and noise count of a cue; `d = m/n`, `q = 1 - d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CueSpec {
    n: usize,
    m: usize,
}

impl CueSpec {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("cue length must be >= 1".into()));
        }
        if m > n {
            return Err(Error::Domain(format!("noise count m={m} exceeds n={n}")));
        }
        Ok(CueSpec { n, m })
    }

    /// Converts a distortion `d` to the nearest grid point `k/n`, rejecting
    /// values that are not on the grid.
    pub fn from_distortion(n: usize, d: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&d) {
            return Err(Error::Domain(format!("distortion {d} outside [0, 1]")));
        }
        let k = (d * n as f64).round();
        if (k - d * n as f64).abs() > 1e-9 {
            return Err(Error::Domain(format!("distortion {d} is not a multiple of 1/{n}")));
        }
        Self::new(n, k as usize)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    /// Computed as `(n - m)/n` so that `d + q == 1` holds exactly on the grid.
    pub fn q(&self) -> f64 {
        (self.n - self.m) as f64 / self.n as f64
    }
}

/// Draws a cue `x(d)`: `m` positions, chosen uniformly without replacement,
/// are overwritten with independent equiprobable signs.
pub fn make_cue<R: Rng + ?Sized>(etalon: &SpinVector, spec: CueSpec, rng: &mut R) -> Result<SpinVector> {
    check_len(spec.n, etalon.len())?;
    let mut out = etalon.0.clone();
    if spec.m == 0 {
        return Ok(SpinVector(out));
    }
    for pos in index::sample(rng, spec.n, spec.m) {
        out[pos] = if rng.gen::<bool>() { 1 } else { -1 };
    }
    Ok(SpinVector(out))
}

/// Convolution `Q = Σ aᵢbᵢ`.
pub fn convolution(a: &SpinVector, b: &SpinVector) -> Result<i64> {
    check_len(a.len(), b.len())?;
    Ok(a.0.iter().zip(&b.0).map(|(&x, &y)| i64::from(x * y)).sum())
}

/// Number of positions where the signs differ.
pub fn hamming(a: &SpinVector, b: &SpinVector) -> Result<usize> {
    check_len(a.len(), b.len())?;
    Ok(a.0.iter().zip(&b.0).filter(|(x, y)| x != y).count())
}

/// Likelihood ratio `L(d) = 2^{qn}` that a vector is the trace distorted at
/// level `d` rather than pure noise. Kept in log₂ form; `q·n` is an integer
/// on the grid so the exponent is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LikelihoodRatio {
    exponent: u32,
}

impl LikelihoodRatio {
    pub fn log2(&self) -> f64 {
        f64::from(self.exponent)
    }

    /// `q·n`, the exact integer exponent.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Linear value; `None` once it no longer fits in 63 bits.
    pub fn value(&self) -> Option<u64> {
        (self.exponent <= 62).then(|| 1u64 << self.exponent)
    }

    pub fn value_f64(&self) -> f64 {
        2f64.powi(self.exponent as i32)
    }
}

pub fn likelihood_ratio(n: usize, d: f64) -> Result<LikelihoodRatio> {
    let spec = CueSpec::from_distortion(n, d)?;
    Ok(LikelihoodRatio {
        exponent: (spec.n - spec.m) as u32,
    })
}

/// Log₂ likelihood ratio attributed to an observed input.
///
/// A cue with `m` noisy components sits at expected distance `m/2` from the
/// trace, so the observed distance `D` corresponds to `d̂ = 2D/N` and
/// `log₂L = (1 - d̂)N = N - 2D = Q`. May be negative for inputs farther
/// than pure noise.
pub fn log2_likelihood_of_input(etalon: &SpinVector, x: &SpinVector) -> Result<i64> {
    convolution(etalon, x)
}

/// Sparse `(-1, 0, +1)` vector of dimension `N_sps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryVector {
    dimension: usize,
    /// Sorted by index.
    nonzeros: Vec<(usize, i8)>,
}

impl TernaryVector {
    pub fn new(dimension: usize, nonzeros: impl IntoIterator<Item = (usize, i8)>) -> Result<Self> {
        let mut nz: Vec<(usize, i8)> = nonzeros.into_iter().collect();
        nz.sort_unstable_by_key(|&(i, _)| i);
        for w in nz.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateChannel(w[0].0));
            }
        }
        for &(i, s) in &nz {
            if i >= dimension {
                return Err(Error::Index {
                    index: i,
                    size: dimension,
                });
            }
            if s != 1 && s != -1 {
                return Err(Error::Domain(format!("sign at index {i} is {s}, expected +1 or -1")));
            }
        }
        Ok(TernaryVector { dimension, nonzeros: nz })
    }

    /// Dense components `(−1, 0, +1)`.
    pub fn from_dense(values: &[i8]) -> Result<Self> {
        Self::new(
            values.len(),
            values.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)),
        )
    }

    /// `N_sps`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `N_dns`.
    pub fn nonzero_count(&self) -> usize {
        self.nonzeros.len()
    }

    pub fn nonzeros(&self) -> &[(usize, i8)] {
        &self.nonzeros
    }

    pub fn to_dense(&self) -> Vec<i8> {
        let mut out = vec![0; self.dimension];
        for &(i, s) in &self.nonzeros {
            out[i] = s;
        }
        out
    }
}

/// Drops zero components, keeping nonzero signs in ascending index order.
/// Returns the dense spin vector and, for each dense position, its original index.
pub fn densify(t: &TernaryVector) -> Result<(SpinVector, Vec<usize>)> {
    if t.nonzeros.is_empty() {
        return Err(Error::EmptyGate);
    }
    let (map, signs): (Vec<usize>, Vec<i8>) = t.nonzeros.iter().copied().unzip();
    Ok((SpinVector(signs), map))
}

/// Inverse of [`densify`].
pub fn embed(dense: &SpinVector, index_map: &[usize], dimension: usize) -> Result<TernaryVector> {
    check_len(index_map.len(), dense.len())?;
    TernaryVector::new(dimension, index_map.iter().copied().zip(dense.0.iter().copied()))
}
