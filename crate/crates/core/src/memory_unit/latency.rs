use num_traits::ToPrimitive;
use serde::Serialize;

use super::{Outcome, TrialRecord};
use crate::error::{Error, Result};
use crate::performance::PerformanceCurve;

/// Descriptive statistics over a batch of trials. Latency figures are taken
/// over successful retrievals only; they are `None` when nothing succeeded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatencyStats {
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean_steps: Option<f64>,
    pub median_steps: Option<f64>,
    /// Nearest-rank 10th and 90th percentiles.
    pub p10_steps: Option<usize>,
    pub p90_steps: Option<usize>,
    pub mean_seconds: Option<f64>,
    pub median_seconds: Option<f64>,
}

fn nearest_rank(sorted: &[usize], q: f64) -> usize {
    let rank = (q * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

fn median<T: Copy + Into<f64>>(sorted: &[T]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2].into()
    } else {
        (sorted[k / 2 - 1].into() + sorted[k / 2].into()) / 2.0
    }
}

pub fn latency_stats(records: &[TrialRecord]) -> Result<LatencyStats> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ok: Vec<&TrialRecord> = records.iter().filter(|r| r.outcome == Outcome::Success).collect();
    let mut steps: Vec<usize> = ok.iter().map(|r| r.latency_steps).collect();
    steps.sort_unstable();
    let mut secs: Vec<f64> = ok.iter().map(|r| r.latency_seconds).collect();
    secs.sort_by(f64::total_cmp);
    let have = !steps.is_empty();
    let steps_f: Vec<f64> = steps.iter().map(|&s| s as f64).collect();
    Ok(LatencyStats {
        trials: records.len(),
        successes: ok.len(),
        success_rate: ok.len() as f64 / records.len() as f64,
        mean_steps: have.then(|| steps_f.iter().sum::<f64>() / steps_f.len() as f64),
        median_steps: have.then(|| median(&steps_f)),
        p10_steps: have.then(|| nearest_rank(&steps, 0.1)),
        p90_steps: have.then(|| nearest_rank(&steps, 0.9)),
        mean_seconds: have.then(|| secs.iter().sum::<f64>() / secs.len() as f64),
        median_seconds: have.then(|| median(&secs)),
    })
}

/// Expected extra cues (and time) needed to retrieve a rarely used trace
/// compared with a frequently used one, under the geometric retrieval law:
/// `Δn = 1/P_if(d) − 1/P_fr(d)`, `Δt = Δn/f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WordFrequencyDelta {
    pub delta_n: f64,
    pub delta_t: f64,
    /// Whether `Δn` falls in the open band `(0, 10)` spanned by `f·T` for
    /// gamma-band `f` and measured latency gaps `T`.
    pub in_band: bool,
}

/// Reference band `f·T` for a cycle frequency and a latency gap.
pub fn latency_band(f: f64, gap_seconds: f64) -> f64 {
    f * gap_seconds
}

pub fn word_frequency_delta(
    frequent: &PerformanceCurve,
    infrequent: &PerformanceCurve,
    d: f64,
    f: f64,
) -> Result<WordFrequencyDelta> {
    if !(f > 0.0) {
        return Err(Error::Domain(format!("f must be > 0, got {f}")));
    }
    let lookup = |c: &PerformanceCurve, name: &str| {
        c.at_distortion(d)
            .map(|p| p.p_exact.to_f64().unwrap_or(f64::NAN))
            .ok_or_else(|| Error::Domain(format!("{name} curve has no point at d = {d}")))
    };
    let p_fr = lookup(frequent, "frequent")?;
    let p_if = lookup(infrequent, "infrequent")?;
    if !(p_if > 0.0) || !(p_fr > 0.0) {
        return Err(Error::Domain("retrieval probability is zero".into()));
    }
    if p_fr < p_if {
        return Err(Error::Ordering(format!("P_fr(d) = {p_fr} < P_if(d) = {p_if}")));
    }
    let delta_n = 1.0 / p_if - 1.0 / p_fr;
    Ok(WordFrequencyDelta {
        delta_n,
        delta_t: delta_n / f,
        in_band: delta_n > 0.0 && delta_n < 10.0,
    })
}
