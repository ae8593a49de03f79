use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{p_exact_enumerate, PerformanceCurve};
use crate::coding::SpinVector;
use crate::error::{Error, Result};
use crate::network::{NeuronConfig, SynapticMatrix};

/// One point of an ROC family: hit rate `P(d)` against false-alarm rate
/// `P(1)` for a given threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct RocPoint {
    pub threshold: f64,
    pub m: usize,
    pub n: usize,
    pub p_1: BigRational,
    pub p_d: BigRational,
}

impl RocPoint {
    pub fn d(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    pub fn p_1_f64(&self) -> f64 {
        self.p_1.to_f64().unwrap_or(f64::NAN)
    }

    pub fn p_d_f64(&self) -> f64 {
        self.p_d.to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact `P(d)` over `ms` for each threshold `l`, paired with that
/// threshold's `P(1)`. Output is ordered by threshold, then by `m`.
///
/// Each threshold is enumerated through the forward pass, so the same call
/// covers damaged nets.
pub fn roc_family(
    net: &SynapticMatrix,
    etalon: &SpinVector,
    thresholds: &[f64],
    ms: &[usize],
) -> Result<Vec<RocPoint>> {
    let n = net.n();
    let mut out = Vec::with_capacity(thresholds.len() * ms.len());
    for &l in thresholds {
        let cfg = NeuronConfig::with_threshold(l);
        let p_1 = p_exact_enumerate(net, etalon, n, &cfg)?.p_exact;
        for &m in ms {
            let p_d = if m == n {
                p_1.clone()
            } else {
                p_exact_enumerate(net, etalon, m, &cfg)?.p_exact
            };
            out.push(RocPoint {
                threshold: l,
                m,
                n,
                p_1: p_1.clone(),
                p_d,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MirrorViolation {
    pub m: usize,
    pub p_a: BigRational,
    pub p_b: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MirrorReport {
    pub holds: bool,
    /// Grid points with `m < N` where `P_A > P_B`.
    pub strict_points: Vec<usize>,
    pub violations: Vec<MirrorViolation>,
}

/// Mirror-effect comparison of curve `a` (better remembered) against `b`:
/// `P_A(m) ≥ P_B(m)` for every `m < N`, strictly for at least one, and
/// `P_A(N) ≥ P_B(N)`. The grid must include `m = N`.
pub fn mirror_check(a: &PerformanceCurve, b: &PerformanceCurve) -> Result<MirrorReport> {
    let (Some(n), Some(nb)) = (a.n(), b.n()) else {
        return Err(Error::Grid("empty curve".into()));
    };
    if n != nb {
        return Err(Error::Grid(format!("N differs: {n} vs {nb}")));
    }
    if a.ms() != b.ms() {
        return Err(Error::Grid(format!("m-grids differ: {:?} vs {:?}", a.ms(), b.ms())));
    }
    if a.get(n).is_none() {
        return Err(Error::Grid(format!("grid lacks m = N = {n}")));
    }
    let mut strict_points = Vec::new();
    let mut violations = Vec::new();
    for (pa, pb) in a.iter().zip(b.iter()) {
        if pa.p_exact < pb.p_exact {
            violations.push(MirrorViolation {
                m: pa.m,
                p_a: pa.p_exact.clone(),
                p_b: pb.p_exact.clone(),
            });
        } else if pa.p_exact > pb.p_exact && pa.m < n {
            strict_points.push(pa.m);
        }
    }
    Ok(MirrorReport {
        holds: violations.is_empty() && !strict_points.is_empty(),
        strict_points,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::DamageSpec;
    use crate::performance::exact_curve;

    fn x0() -> SpinVector {
        "+-++--+-+".parse().unwrap()
    }

    fn all_m() -> Vec<usize> {
        (0..=9).collect()
    }

    #[test]
    fn diagonal_anchor() {
        let net = SynapticMatrix::train_ideal(&x0(), 1.0).unwrap();
        let pts = roc_family(&net, &x0(), &[0.0], &[9]).unwrap();
        assert_eq!(pts[0].p_1_f64(), 0.5);
        assert_eq!(pts[0].p_d_f64(), 0.5);
    }

    #[test]
    fn shifted_threshold_tail() {
        let net = SynapticMatrix::train_ideal(&x0(), 1.0).unwrap();
        let pts = roc_family(&net, &x0(), &[2.0], &[9]).unwrap();
        assert_eq!(pts[0].p_1, BigRational::new(130.into(), 512.into()));
    }

    #[test]
    fn nested_acceptance() {
        let net = SynapticMatrix::train_ideal(&x0(), 1.0).unwrap();
        let ls = [0.0, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0];
        let pts = roc_family(&net, &x0(), &ls, &all_m()).unwrap();
        for m in 0..=9 {
            let col: Vec<&RocPoint> = pts.iter().filter(|p| p.m == m).collect();
            assert!(col.windows(2).all(|w| w[1].p_d <= w[0].p_d && w[1].p_1 <= w[0].p_1));
        }
        for p in pts.iter().filter(|p| p.threshold == 0.0) {
            assert!(p.p_1_f64() <= 0.5);
            assert!(p.p_d >= p.p_1);
        }
    }

    #[test]
    fn self_comparison_is_not_a_mirror() {
        let net = SynapticMatrix::train_ideal(&x0(), 1.0).unwrap();
        let c = exact_curve(&net, &x0(), &all_m(), &NeuronConfig::default()).unwrap();
        let r = mirror_check(&c, &c).unwrap();
        assert!(!r.holds);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn grid_errors() {
        let net = SynapticMatrix::train_ideal(&x0(), 1.0).unwrap();
        let cfg = NeuronConfig::default();
        let a = exact_curve(&net, &x0(), &all_m(), &cfg).unwrap();
        let b = exact_curve(&net, &x0(), &[0, 1, 2], &cfg).unwrap();
        assert!(matches!(mirror_check(&a, &b), Err(Error::Grid(_))));
        assert!(matches!(mirror_check(&b, &b), Err(Error::Grid(_))));
        let e8: SpinVector = "+-++--+-".parse().unwrap();
        let net8 = SynapticMatrix::train_ideal(&e8, 1.0).unwrap();
        let c8 = exact_curve(&net8, &e8, &(0..=8).collect::<Vec<_>>(), &cfg).unwrap();
        assert!(matches!(mirror_check(&a, &c8), Err(Error::Grid(_))));
    }

    #[test]
    fn crossing_curves_report_violations() {
        // look for two damaged layouts whose curves cross
        let base = SynapticMatrix::train_ideal(&x0(), 1.0).unwrap();
        let cfg = NeuronConfig::default();
        let curves: Vec<PerformanceCurve> = (0..20)
            .map(|s| {
                let spec = if s % 2 == 0 {
                    DamageSpec::severed_links(20, s)
                } else {
                    DamageSpec::dead_inputs(2, s)
                };
                exact_curve(&base.apply_damage(&spec).unwrap(), &x0(), &all_m(), &cfg).unwrap()
            })
            .collect();
        let found = curves.iter().enumerate().any(|(i, a)| {
            curves[i + 1..].iter().any(|b| {
                let r = mirror_check(a, b).unwrap();
                let r2 = mirror_check(b, a).unwrap();
                !r.holds && !r.violations.is_empty() && !r2.holds && !r2.violations.is_empty()
            })
        });
        assert!(found);
    }
}
