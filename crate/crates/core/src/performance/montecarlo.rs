use num_bigint::BigUint;
use rand::Rng;

use super::{Method, PerformanceCurve, PerformancePoint};
use crate::coding::{make_cue, CueSpec, SpinVector};
use crate::error::{check_len, Error, Result};
use crate::network::{NeuronConfig, SynapticMatrix};

/// Estimates `P(d)` from `trials` independent cues drawn with [`make_cue`].
pub fn p_montecarlo<R: Rng + ?Sized>(
    net: &SynapticMatrix,
    etalon: &SpinVector,
    m: usize,
    trials: u64,
    rng: &mut R,
    cfg: &NeuronConfig,
) -> Result<PerformancePoint> {
    if trials == 0 {
        return Err(Error::Param("trials must be >= 1".into()));
    }
    let n = net.n();
    check_len(n, etalon.len())?;
    let spec = CueSpec::new(n, m)?;
    let target = etalon.components();
    let mut hits = 0u64;
    for _ in 0..trials {
        let cue = make_cue(etalon, spec, rng)?;
        hits += u64::from(net.reproduces(cue.components(), target, cfg)?);
    }
    let point = PerformancePoint::from_counts(n, m, BigUint::from(hits), BigUint::from(trials), Method::MonteCarlo);
    Ok(point.with_labels(cfg.threshold, net.eta(), if net.is_intact() { "intact" } else { "damaged" }))
}

pub fn montecarlo_curve<R: Rng + ?Sized>(
    net: &SynapticMatrix,
    etalon: &SpinVector,
    ms: &[usize],
    trials: u64,
    rng: &mut R,
    cfg: &NeuronConfig,
) -> Result<PerformanceCurve> {
    ms.iter()
        .map(|&m| p_montecarlo(net, etalon, m, trials, rng, cfg))
        .collect::<Result<Vec<_>>>()
        .map(PerformanceCurve::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::DamageSpec;
    use crate::performance::p_exact_enumerate;
    use crate::seeded_rng;

    fn x0() -> SpinVector {
        "+-++--+-+".parse().unwrap()
    }

    #[test]
    fn no_noise_is_certain() {
        let net = SynapticMatrix::train_ideal(&x0(), 1.0).unwrap();
        let p = p_montecarlo(&net, &x0(), 0, 1000, &mut seeded_rng(1), &NeuronConfig::default()).unwrap();
        assert_eq!(p.p_float(), 1.0);
        assert_eq!(p.std_error(), 0.0);
    }

    #[test]
    fn seed_reproducible() {
        let net = SynapticMatrix::train_ideal(&x0(), 1.0).unwrap();
        let cfg = NeuronConfig::default();
        let a = p_montecarlo(&net, &x0(), 7, 5000, &mut seeded_rng(42), &cfg).unwrap();
        let b = p_montecarlo(&net, &x0(), 7, 5000, &mut seeded_rng(42), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn damaged_estimate_tracks_enumeration() {
        let net = SynapticMatrix::train_ideal(&x0(), 1.0)
            .unwrap()
            .apply_damage(&DamageSpec::severed_links(10, 7))
            .unwrap();
        let cfg = NeuronConfig::default();
        let mut rng = seeded_rng(3);
        for m in [5, 7, 9] {
            let exact = p_exact_enumerate(&net, &x0(), m, &cfg).unwrap().p_float();
            let est = p_montecarlo(&net, &x0(), m, 50_000, &mut rng, &cfg).unwrap();
            let sigma = (exact * (1.0 - exact) / 50_000.0).sqrt();
            assert!((est.p_float() - exact).abs() < 4.0 * sigma.max(1e-9), "m={m}");
        }
    }

    #[test]
    fn zero_trials() {
        let net = SynapticMatrix::train_ideal(&x0(), 1.0).unwrap();
        assert!(p_montecarlo(&net, &x0(), 1, 0, &mut seeded_rng(0), &NeuronConfig::default()).is_err());
    }
}
