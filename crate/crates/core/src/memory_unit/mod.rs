//! The assembly memory unit.
//!
//! Blocks, in retrieval order:
//!
//! 1. time gate: picks `N` coincident events out of the sparse input stream
//! 2. the network, turning the gated cue into an output vector
//! 3. bit-exact comparison with the reference copy of the trace
//! 4. inner loop timer: at most `⌊f·t₀⌋` cues per attempt
//! 5. external continue/stop decision once the timer expires
//! 6. timer reset, starting a new inner loop
//!
//! Time is discrete: one cue per cycle at frequency `f`, so latency in
//! seconds is `steps / f`.

mod gate;
mod latency;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coding::{make_cue, CueSpec, SpinVector};
use crate::error::{check_len, Error, Result};
use crate::network::{NeuronConfig, SynapticMatrix};
use crate::{seeded_rng, Rng as SeededRng};

pub use gate::{gate, gate_with_channels, TernaryEvent, Window};
pub use latency::{latency_band, latency_stats, word_frequency_delta, LatencyStats, WordFrequencyDelta};

/// Immutable reference copy of the trace, compared bit-for-bit with each output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceMemory {
    etalon: SpinVector,
}

impl ReferenceMemory {
    pub fn new(etalon: SpinVector) -> Self {
        ReferenceMemory { etalon }
    }

    pub fn etalon(&self) -> &SpinVector {
        &self.etalon
    }

    pub fn n(&self) -> usize {
        self.etalon.len()
    }

    pub fn matches(&self, output: &SpinVector) -> bool {
        *output == self.etalon
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemoryUnitConfig {
    pub n: usize,
    /// Cycle frequency in Hz.
    pub f: f64,
    /// Inner-loop deadline in seconds.
    pub t0: f64,
    /// Restart budget for the outer loop.
    pub max_restarts: usize,
    /// Gate window width in seconds.
    pub delta_t: f64,
    /// Cue distortion, a multiple of `1/n`.
    pub d: f64,
}

impl Default for MemoryUnitConfig {
    fn default() -> Self {
        MemoryUnitConfig {
            n: 100,
            f: 40.0,
            t0: 1.0,
            max_restarts: 0,
            delta_t: 0.002,
            d: 0.5,
        }
    }
}

impl MemoryUnitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be >= 1".into()));
        }
        if !(self.f > 0.0 && self.f.is_finite()) {
            return Err(Error::Config(format!("f must be > 0, got {}", self.f)));
        }
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return Err(Error::Config(format!("t0 must be > 0, got {}", self.t0)));
        }
        if !(self.delta_t > 0.0) {
            return Err(Error::Config(format!("delta_t must be > 0, got {}", self.delta_t)));
        }
        if self.delta_t >= 1.0 / self.f {
            return Err(Error::Config("gate window must be shorter than one cycle".into()));
        }
        if self.inner_deadline() < 1 {
            return Err(Error::Config(format!(
                "f*t0 = {} allows no inner step",
                self.f * self.t0
            )));
        }
        self.cue_spec()?;
        Ok(())
    }

    /// `⌊f·t₀⌋`, the number of cues one inner loop may use.
    pub fn inner_deadline(&self) -> usize {
        // tolerate products like 40 * 0.025 landing just below an integer
        (self.f * self.t0 + 1e-9).floor() as usize
    }

    pub fn cue_spec(&self) -> Result<CueSpec> {
        CueSpec::from_distortion(self.n, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Success,
    /// The inner loop ran out of time (reported by [`MemoryUnit::run_inner`]).
    InnerTimeout,
    /// The continue policy stopped retrieval, or the restart budget was spent.
    Abandoned,
    UnitFailure,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub outcome: Outcome,
    /// Cues used by the last inner loop.
    pub inner_steps: usize,
    pub restarts: usize,
    /// Cues used in total.
    pub latency_steps: usize,
    pub latency_seconds: f64,
    pub seed: Option<u64>,
}

/// Supplies one cue per cycle to the network.
pub trait CueSource {
    fn next_cue(&mut self) -> Result<SpinVector>;
}

/// Fresh independent cue `x(d)` at every step.
pub struct NoisyCues<R> {
    etalon: SpinVector,
    spec: CueSpec,
    rng: R,
}

impl<R: Rng> NoisyCues<R> {
    pub fn new(etalon: SpinVector, spec: CueSpec, rng: R) -> Result<Self> {
        check_len(spec.n(), etalon.len())?;
        Ok(NoisyCues { etalon, spec, rng })
    }
}

impl<R: Rng> CueSource for NoisyCues<R> {
    fn next_cue(&mut self) -> Result<SpinVector> {
        make_cue(&self.etalon, self.spec, &mut self.rng)
    }
}

/// Emits each cue as a burst of spikes on a fixed subset of sparse channels,
/// with stray spikes outside the burst, and recovers it through the time gate.
/// The gate is re-applied on every step.
pub struct GatedCues<R> {
    noisy: NoisyCues<R>,
    channels: Vec<usize>,
    period: f64,
    delta_t: f64,
    step: u64,
}

impl<R: Rng> GatedCues<R> {
    /// `channels[k]` carries dense component `k`; it must be strictly increasing.
    pub fn new(noisy: NoisyCues<R>, channels: Vec<usize>, f: f64, delta_t: f64) -> Result<Self> {
        check_len(noisy.spec.n(), channels.len())?;
        if channels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("channels must be strictly increasing".into()));
        }
        if !(delta_t > 0.0 && delta_t < 1.0 / f) {
            return Err(Error::Config("gate window must be positive and shorter than one cycle".into()));
        }
        Ok(GatedCues {
            noisy,
            channels,
            period: 1.0 / f,
            delta_t,
            step: 0,
        })
    }

    /// Spike stream for one cycle: the burst inside the gate window plus one
    /// stray spike per channel-group well outside it.
    pub fn events_for(&mut self, cue: &SpinVector) -> (Vec<TernaryEvent>, Window) {
        let t = self.step as f64 * self.period;
        let window = Window::new(t, self.delta_t);
        let rng = &mut self.noisy.rng;
        let mut ev: Vec<TernaryEvent> = self
            .channels
            .iter()
            .zip(cue.components())
            .map(|(&ch, &s)| TernaryEvent::new(t + rng.gen::<f64>() * self.delta_t, ch, s))
            .collect();
        let stray_at = t + self.delta_t + 0.5 * (self.period - self.delta_t);
        let stray_channel = self.channels.last().copied().unwrap_or(0) + 1;
        ev.push(TernaryEvent::new(stray_at, stray_channel, if rng.gen() { 1 } else { -1 }));
        ev.sort_by(|a, b| a.time.total_cmp(&b.time));
        (ev, window)
    }
}

impl<R: Rng> CueSource for GatedCues<R> {
    fn next_cue(&mut self) -> Result<SpinVector> {
        let cue = self.noisy.next_cue()?;
        let (events, window) = self.events_for(&cue);
        self.step += 1;
        gate(&events, window, self.channels.len())
    }
}

/// Decides whether to restart after an inner-loop timeout.
pub trait ContinuePolicy {
    /// Called when an inner loop times out; `restarts` loops have already
    /// been restarted.
    fn should_continue(&mut self, restarts: usize) -> bool;
}

/// Keep going until the configured restart budget is spent.
#[derive(Clone, Copy, Debug, Default)]
pub struct RestartBudget;

impl ContinuePolicy for RestartBudget {
    fn should_continue(&mut self, _restarts: usize) -> bool {
        true
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AlwaysStop;

impl ContinuePolicy for AlwaysStop {
    fn should_continue(&mut self, _restarts: usize) -> bool {
        false
    }
}

/// Continue with fixed probability `p` at every timeout.
pub struct ContinueWithProbability<R> {
    p: f64,
    rng: R,
}

impl<R: Rng> ContinueWithProbability<R> {
    pub fn new(p: f64, rng: R) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("continue probability {p} outside [0, 1]")));
        }
        Ok(ContinueWithProbability { p, rng })
    }
}

impl<R: Rng> ContinuePolicy for ContinueWithProbability<R> {
    fn should_continue(&mut self, _restarts: usize) -> bool {
        self.rng.gen_bool(self.p)
    }
}

/// A configured unit: network, reference memory and timing.
#[derive(Clone, Debug)]
pub struct MemoryUnit {
    net: SynapticMatrix,
    reference: ReferenceMemory,
    cfg: MemoryUnitConfig,
    neuron: NeuronConfig,
}

impl MemoryUnit {
    pub fn new(net: SynapticMatrix, reference: ReferenceMemory, cfg: MemoryUnitConfig) -> Result<Self> {
        cfg.validate()?;
        if net.n() != cfg.n || reference.n() != cfg.n {
            return Err(Error::Config(format!(
                "sizes disagree: net {}, reference {}, config {}",
                net.n(),
                reference.n(),
                cfg.n
            )));
        }
        Ok(MemoryUnit {
            net,
            reference,
            cfg,
            neuron: NeuronConfig::default(),
        })
    }

    pub fn with_neuron_config(mut self, neuron: NeuronConfig) -> Self {
        self.neuron = neuron;
        self
    }

    pub fn config(&self) -> &MemoryUnitConfig {
        &self.cfg
    }

    pub fn reference(&self) -> &ReferenceMemory {
        &self.reference
    }

    fn record(&self, outcome: Outcome, inner_steps: usize, restarts: usize, latency_steps: usize) -> TrialRecord {
        TrialRecord {
            outcome,
            inner_steps,
            restarts,
            latency_steps,
            latency_seconds: latency_steps as f64 / self.cfg.f,
            seed: None,
        }
    }

    /// One inner loop (cue, network, compare, timer): up to `⌊f·t₀⌋` cues. Returns
    /// `Success`, `InnerTimeout` or `UnitFailure`.
    pub fn run_inner(&self, cues: &mut dyn CueSource) -> Result<TrialRecord> {
        if !self.net.dead_outputs().is_empty() {
            return Ok(self.record(Outcome::UnitFailure, 0, 0, 0));
        }
        let deadline = self.cfg.inner_deadline();
        for step in 1..=deadline {
            let cue = cues.next_cue()?;
            check_len(self.cfg.n, cue.len())?;
            let out = self.net.forward(&cue, &self.neuron)?;
            if self.reference.matches(&out) {
                return Ok(self.record(Outcome::Success, step, 0, step));
            }
        }
        Ok(self.record(Outcome::InnerTimeout, deadline, 0, deadline))
    }

    /// Full retrieval: inner loops plus the restart decision.
    pub fn run_trial(&self, cues: &mut dyn CueSource, policy: &mut dyn ContinuePolicy) -> Result<TrialRecord> {
        let mut restarts = 0;
        let mut total = 0;
        loop {
            let inner = self.run_inner(cues)?;
            total += inner.latency_steps;
            match inner.outcome {
                Outcome::Success => return Ok(self.record(Outcome::Success, inner.inner_steps, restarts, total)),
                Outcome::UnitFailure => return Ok(self.record(Outcome::UnitFailure, 0, restarts, total)),
                _ => {}
            }
            if restarts < self.cfg.max_restarts && policy.should_continue(restarts) {
                restarts += 1;
                continue;
            }
            return Ok(self.record(Outcome::Abandoned, inner.inner_steps, restarts, total));
        }
    }

    /// Independent seeded trials with fresh `x(d)` cues and the
    /// restart-budget policy. Trial `i` uses seed [`trial_seed`]`(seed, i)`,
    /// recorded in its record, so results do not depend on thread count.
    pub fn simulate(&self, trials: usize, seed: u64) -> Result<Vec<TrialRecord>> {
        let spec = self.cfg.cue_spec()?;
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let s = trial_seed(seed, i as u64);
                let mut cues = NoisyCues::new(self.reference.etalon().clone(), spec, seeded_rng(s))?;
                let mut rec = self.run_trial(&mut cues, &mut RestartBudget)?;
                rec.seed = Some(s);
                Ok(rec)
            })
            .collect()
    }
}

/// Per-trial seed derived from a batch seed (splitmix64 of `seed + index`).
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Free-function form of [`MemoryUnit::run_trial`].
pub fn run_trial(
    net: &SynapticMatrix,
    reference: &ReferenceMemory,
    cfg: &MemoryUnitConfig,
    cues: &mut dyn CueSource,
    policy: &mut dyn ContinuePolicy,
) -> Result<TrialRecord> {
    MemoryUnit::new(net.clone(), reference.clone(), cfg.clone())?.run_trial(cues, policy)
}

/// Convenience: a [`NoisyCues`] source seeded from `seed`.
pub fn noisy_cues(etalon: &SpinVector, cfg: &MemoryUnitConfig, seed: u64) -> Result<NoisyCues<SeededRng>> {
    NoisyCues::new(etalon.clone(), cfg.cue_spec()?, seeded_rng(seed))
}
