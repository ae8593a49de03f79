//! Peak detection in 1-D signals with the single-trace network as a local
//! feature detector.
//!
//! The signal is binarized to ±1 against a rolling-median baseline, then a
//! template (a short run of `+1` on a `-1` background) is slid over it. Each
//! window is accepted by the convolution rule; every contiguous run of
//! accepted windows is reported once, at its highest-`Q` offset.

use serde::Serialize;

use crate::coding::{convolution, SpinVector};
use crate::error::{Error, Result};
use crate::network::decode_convolution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinarizedSignal {
    values: SpinVector,
}

impl BinarizedSignal {
    pub fn new(values: SpinVector) -> Self {
        BinarizedSignal { values }
    }

    pub fn values(&self) -> &SpinVector {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn median_of(buf: &mut [f64]) -> f64 {
    buf.sort_by(f64::total_cmp);
    let k = buf.len();
    if k % 2 == 1 {
        buf[k / 2]
    } else {
        // midpoint form commutes with positive affine maps
        buf[k / 2 - 1] + (buf[k / 2] - buf[k / 2 - 1]) / 2.0
    }
}

/// `+1` where a sample exceeds the median of `[i - r, i + r]` (truncated at
/// the edges), `-1` otherwise, ties included.
pub fn binarize(signal: &[f64], baseline_radius: usize) -> Result<BinarizedSignal> {
    if signal.len() <= 2 * baseline_radius {
        return Err(Error::Signal(format!(
            "signal of length {} is too short for baseline radius {baseline_radius}",
            signal.len()
        )));
    }
    if let Some(i) = signal.iter().position(|v| !v.is_finite()) {
        return Err(Error::Signal(format!("sample {i} is not finite")));
    }
    let mut buf = Vec::with_capacity(2 * baseline_radius + 1);
    let bits = (0..signal.len()).map(|i| {
        let lo = i.saturating_sub(baseline_radius);
        let hi = (i + baseline_radius + 1).min(signal.len());
        buf.clear();
        buf.extend_from_slice(&signal[lo..hi]);
        signal[i] > median_of(&mut buf)
    });
    let bits: Vec<bool> = bits.collect();
    Ok(BinarizedSignal::new(SpinVector::from_bools(bits)?))
}

/// Template of length `n`: a centered run of `width` `+1`s on `-1`s.
pub fn white_segment(n: usize, width: usize) -> Result<SpinVector> {
    if width == 0 || width > n {
        return Err(Error::Param(format!("segment width {width} must be in [1, {n}]")));
    }
    let start = (n - width) / 2;
    SpinVector::from_bools((0..n).map(|i| i >= start && i < start + width))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindowScore {
    pub offset: usize,
    pub q: i64,
    pub accepted: bool,
}

/// Per-offset decisions, stride 1.
pub fn scan(bin: &BinarizedSignal, template: &SpinVector, threshold: f64, eta: f64) -> Result<Vec<WindowScore>> {
    let n = template.len();
    if n > bin.len() {
        return Err(Error::Signal(format!(
            "template of length {n} is longer than the signal ({})",
            bin.len()
        )));
    }
    let values = bin.values.components();
    (0..=values.len() - n)
        .map(|offset| {
            let window = SpinVector::new(values[offset..offset + n].to_vec())?;
            Ok(WindowScore {
                offset,
                q: convolution(template, &window)?,
                accepted: decode_convolution(template, &window, threshold, eta)?,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Detection {
    /// Window start offset in the signal.
    pub position: usize,
    #[serde(rename = "Q")]
    pub q: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FeatureMap {
    pub detections: Vec<Detection>,
}

impl FeatureMap {
    pub fn positions(&self) -> Vec<usize> {
        self.detections.iter().map(|d| d.position).collect()
    }
}

/// Collapses each contiguous run of accepted windows to its maximum-`Q`
/// offset, the leftmost on ties.
pub fn collapse_runs(scores: &[WindowScore]) -> FeatureMap {
    let mut detections = Vec::new();
    let mut best: Option<WindowScore> = None;
    for s in scores {
        if s.accepted {
            best = match best {
                Some(b) if b.q >= s.q => Some(b),
                _ => Some(*s),
            };
        } else if let Some(b) = best.take() {
            detections.push(Detection { position: b.offset, q: b.q });
        }
    }
    if let Some(b) = best {
        detections.push(Detection { position: b.offset, q: b.q });
    }
    FeatureMap { detections }
}

pub fn detect_peaks(bin: &BinarizedSignal, template: &SpinVector, threshold: f64, eta: f64) -> Result<FeatureMap> {
    Ok(collapse_runs(&scan(bin, template, threshold, eta)?))
}
