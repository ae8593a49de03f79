use serde::{Deserialize, Serialize};

use crate::coding::{densify, SpinVector, TernaryVector};
use crate::error::{Error, Result};

/// A spike on one of the sparse input channels; `sign` is `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TernaryEvent {
    pub time: f64,
    pub channel: usize,
    pub sign: i8,
}

impl TernaryEvent {
    pub fn new(time: f64, channel: usize, sign: i8) -> Self {
        TernaryEvent { time, channel, sign }
    }
}

/// Closed time window `[start, start + width]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub start: f64,
    pub width: f64,
}

impl Window {
    pub fn new(start: f64, width: f64) -> Self {
        Window { start, width }
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.start + self.width
    }
}

/// Time gate: collects the events that fall in `window`, densifies their signs
/// in ascending channel order and returns them with the channel of each
/// dense position. Exactly `expected_n` events must be caught, otherwise the
/// result could not be compared against the reference trace.
pub fn gate_with_channels(
    events: &[TernaryEvent],
    window: Window,
    expected_n: usize,
) -> Result<(SpinVector, Vec<usize>)> {
    if events.windows(2).any(|w| w[1].time < w[0].time) {
        return Err(Error::Param("event stream must be sorted by time".into()));
    }
    let lo = events.partition_point(|e| e.time < window.start);
    let hi = events.partition_point(|e| e.time <= window.start + window.width);
    let caught = &events[lo..hi.max(lo)];
    if caught.len() != expected_n {
        return Err(Error::GateCountMismatch {
            expected: expected_n,
            found: caught.len(),
        });
    }
    let dimension = caught.iter().map(|e| e.channel + 1).max().unwrap_or(0);
    let t = TernaryVector::new(dimension, caught.iter().map(|e| (e.channel, e.sign)))?;
    densify(&t)
}

pub fn gate(events: &[TernaryEvent], window: Window, expected_n: usize) -> Result<SpinVector> {
    gate_with_channels(events, window, expected_n).map(|(v, _)| v)
}
