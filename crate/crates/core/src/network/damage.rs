use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::SynapticMatrix;
use crate::error::{Error, Result};
use crate::seeded_rng;

/// Distribution of the weight perturbation applied by stochastization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stochastization {
    /// Additive iid uniform on `[-σ, σ]`.
    #[default]
    UniformAdditive,
}

/// Damage layout. Explicit lists take precedence over the matching counts;
/// counts are placed uniformly without replacement from `seed`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DamageSpec {
    /// `[input, output]` pairs.
    pub severed: Vec<[usize; 2]>,
    pub n_severed: usize,
    pub dead_inputs: Vec<usize>,
    pub n_dead_inputs: usize,
    pub dead_outputs: Vec<usize>,
    pub sigma: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "is_default_model")]
    pub stochastization: Stochastization,
}

fn is_default_model(s: &Stochastization) -> bool {
    *s == Stochastization::default()
}

impl DamageSpec {
    pub fn severed_links(n_severed: usize, seed: u64) -> Self {
        DamageSpec {
            n_severed,
            seed,
            ..Default::default()
        }
    }

    pub fn dead_inputs(n_dead_inputs: usize, seed: u64) -> Self {
        DamageSpec {
            n_dead_inputs,
            seed,
            ..Default::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.severed.is_empty()
            && self.n_severed == 0
            && self.dead_inputs.is_empty()
            && self.n_dead_inputs == 0
            && self.dead_outputs.is_empty()
            && self.sigma == 0.0
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Compact label used in the `damage_id` CSV column.
    pub fn id(&self) -> String {
        if self.is_empty() {
            return "intact".to_string();
        }
        let mut parts = Vec::new();
        if !self.severed.is_empty() {
            parts.push(format!("severed={}", self.severed.len()));
        } else if self.n_severed > 0 {
            parts.push(format!("Nd={}", self.n_severed));
        }
        if !self.dead_inputs.is_empty() {
            let mut s = String::from("dead_in=");
            for (k, i) in self.dead_inputs.iter().enumerate() {
                if k > 0 {
                    s.push('|');
                }
                let _ = write!(s, "{i}");
            }
            parts.push(s);
        } else if self.n_dead_inputs > 0 {
            parts.push(format!("Nk={}", self.n_dead_inputs));
        }
        if !self.dead_outputs.is_empty() {
            parts.push(format!("dead_out={}", self.dead_outputs.len()));
        }
        if self.sigma != 0.0 {
            parts.push(format!("sigma={}", self.sigma));
        }
        parts.push(format!("seed={}", self.seed));
        parts.join(";")
    }
}

impl SynapticMatrix {
    /// Returns a damaged copy. Severed links and every link of a dead input
    /// neuron are forced to zero; dead outputs are recorded and make the
    /// matrix unusable for retrieval.
    pub fn apply_damage(&self, spec: &DamageSpec) -> Result<SynapticMatrix> {
        let n = self.n;
        let in_range = |i: usize, size: usize| {
            if i < size {
                Ok(())
            } else {
                Err(Error::Index { index: i, size })
            }
        };
        if !(spec.sigma >= 0.0) || !spec.sigma.is_finite() {
            return Err(Error::Param(format!("sigma must be finite and >= 0, got {}", spec.sigma)));
        }
        let mut rng = seeded_rng(spec.seed);
        let mut out = self.clone();

        let links: Vec<(usize, usize)> = if !spec.severed.is_empty() {
            for &[i, j] in &spec.severed {
                in_range(i, n)?;
                in_range(j, n)?;
            }
            spec.severed.iter().map(|&[i, j]| (i, j)).collect()
        } else if spec.n_severed > 0 {
            if spec.n_severed > n * n {
                return Err(Error::Index {
                    index: spec.n_severed,
                    size: n * n,
                });
            }
            index::sample(&mut rng, n * n, spec.n_severed)
                .into_iter()
                .map(|k| (k / n, k % n))
                .collect()
        } else {
            Vec::new()
        };

        let dead_in: BTreeSet<usize> = if !spec.dead_inputs.is_empty() {
            for &i in &spec.dead_inputs {
                in_range(i, n)?;
            }
            spec.dead_inputs.iter().copied().collect()
        } else if spec.n_dead_inputs > 0 {
            if spec.n_dead_inputs > n {
                return Err(Error::Index {
                    index: spec.n_dead_inputs,
                    size: n,
                });
            }
            index::sample(&mut rng, n, spec.n_dead_inputs).into_iter().collect()
        } else {
            BTreeSet::new()
        };

        for &j in &spec.dead_outputs {
            in_range(j, n)?;
        }

        for (i, j) in links {
            out.severed[i * n + j] = true;
            out.weights[i * n + j] = 0.0;
        }
        for &i in &dead_in {
            for j in 0..n {
                out.weights[i * n + j] = 0.0;
            }
        }
        out.dead_inputs.extend(dead_in);
        out.dead_outputs.extend(spec.dead_outputs.iter().copied());

        if spec.sigma > 0.0 {
            let Stochastization::UniformAdditive = spec.stochastization;
            for i in 0..n {
                if out.dead_inputs.contains(&i) {
                    continue;
                }
                for j in 0..n {
                    if !out.severed[i * n + j] {
                        out.weights[i * n + j] += rng.gen_range(-spec.sigma..=spec.sigma);
                    }
                }
            }
        }
        Ok(out)
    }
}
