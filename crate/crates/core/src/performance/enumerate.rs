use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;

use super::analytic::binomial;
use super::{Method, PerformanceCurve, PerformancePoint};
use crate::coding::SpinVector;
use crate::error::{check_len, Error, Result};
use crate::network::{NeuronConfig, SynapticMatrix};

/// Largest number of cues [`p_exact_enumerate`] will examine.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

/// `2^m C(N,m)`, saturating at `u128::MAX`.
pub fn enumeration_size(n: usize, m: usize) -> u128 {
    let c: u128 = match u128::try_from(binomial(n, m)) {
        Ok(c) => c,
        Err(_) => return u128::MAX,
    };
    if m >= 128 {
        return u128::MAX;
    }
    c.checked_mul(1u128 << m).unwrap_or(u128::MAX)
}

/// Counts, over every cue with exactly `m` noisy positions, how many make the
/// network output the trace.
///
/// Position sets are visited in lexicographic order and noise patterns as a
/// binary counter (bit `k` set means the `k`-th chosen position is `+1`).
/// Position sets are split across threads; the integer counts are summed, so
/// the result does not depend on scheduling.
pub fn p_exact_enumerate(
    net: &SynapticMatrix,
    etalon: &SpinVector,
    m: usize,
    cfg: &NeuronConfig,
) -> Result<PerformancePoint> {
    let n = net.n();
    check_len(n, etalon.len())?;
    if m > n {
        return Err(Error::Domain(format!("m={m} outside [0, {n}]")));
    }
    if !net.dead_outputs().is_empty() {
        return Err(Error::DeadOutput(net.dead_outputs().iter().copied().collect()));
    }
    let trials = enumeration_size(n, m);
    if trials > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            trials,
            limit: ENUMERATION_LIMIT,
        });
    }
    let target = etalon.components();
    let subsets: Vec<Vec<usize>> = (0..n).combinations(m).collect();
    let success = subsets
        .par_iter()
        .map(|positions| -> Result<u64> {
            let mut x = target.to_vec();
            let mut hits = 0u64;
            for pattern in 0u64..1 << m {
                for (k, &p) in positions.iter().enumerate() {
                    x[p] = if pattern >> k & 1 == 1 { 1 } else { -1 };
                }
                hits += u64::from(net.reproduces(&x, target, cfg)?);
            }
            Ok(hits)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let point = PerformancePoint::from_counts(n, m, BigUint::from(success), BigUint::from(trials), Method::Exact);
    Ok(point.with_labels(cfg.threshold, net.eta(), if net.is_intact() { "intact" } else { "damaged" }))
}

pub fn exact_curve(
    net: &SynapticMatrix,
    etalon: &SpinVector,
    ms: &[usize],
    cfg: &NeuronConfig,
) -> Result<PerformanceCurve> {
    ms.iter()
        .map(|&m| p_exact_enumerate(net, etalon, m, cfg))
        .collect::<Result<Vec<_>>>()
        .map(PerformanceCurve::new)
}
