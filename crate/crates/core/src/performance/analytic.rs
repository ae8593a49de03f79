use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{Method, PerformanceCurve, PerformancePoint};
use crate::error::{Error, Result};

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Closed-form `P(m, N)` for an intact, ideally trained net at `l = 0`.
///
/// The output equals the trace iff fewer than `N/2` of the `m` noisy signs
/// land against it, each with probability 1/2, so
/// `P = Σ_{i=0}^{k} C(m,i) / 2^m` with `k = (N-1)/2` for odd `N` and
/// `k = N/2 - 1` for even `N`. The sum is 1 whenever `m ≤ k`; at `m = N` it
/// is `1/2` for odd `N` and `1/2 - C(N,N/2)/2^{N+1}` for even `N`.
pub fn p_analytic(n: usize, m: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("N must be >= 1".into()));
    }
    if m > n {
        return Err(Error::Domain(format!("m={m} outside [0, {n}]")));
    }
    let k = if n % 2 == 1 { (n - 1) / 2 } else { n / 2 - 1 };
    if m <= k {
        return Ok(BigRational::one());
    }
    let num: BigUint = (0..=k).map(|i| binomial(m, i)).sum();
    Ok(BigRational::new(BigInt::from(num), BigInt::from(pow2(m))))
}

pub fn analytic_curve(n: usize, ms: &[usize]) -> Result<PerformanceCurve> {
    let points = ms
        .iter()
        .map(|&m| {
            let p = p_analytic(n, m)?;
            // n₀ = 2^m C(N,m) and n(d) = P·n₀, both integers
            let total = pow2(m) * binomial(n, m);
            let success = (BigRational::from_integer(BigInt::from(total.clone())) * &p)
                .to_integer()
                .to_biguint()
                .expect("non-negative");
            let mut pt = PerformancePoint::from_counts(n, m, success, total, Method::Analytic);
            pt.p_exact = p;
            Ok(pt)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PerformanceCurve::new(points))
}

/// `C(N,N/2)/2^{N+1}`, the probability that a pure-noise cue has `Q = 0`,
/// next to its large-`N` approximation `0.4/√N`.
#[derive(Clone, Debug, PartialEq)]
pub struct StirlingTail {
    pub n: usize,
    pub exact: BigRational,
    pub approx: f64,
}

impl StirlingTail {
    pub fn exact_f64(&self) -> f64 {
        self.exact.to_f64().unwrap_or(f64::NAN)
    }

    pub fn relative_error(&self) -> f64 {
        (self.exact_f64() - self.approx).abs() / self.exact_f64()
    }
}

pub fn stirling_tail(n_even: usize) -> Result<StirlingTail> {
    if n_even < 2 || n_even % 2 == 1 {
        return Err(Error::Domain(format!("N must be even and >= 2, got {n_even}")));
    }
    let exact = BigRational::new(
        BigInt::from(binomial(n_even, n_even / 2)),
        BigInt::from(pow2(n_even + 1)),
    );
    Ok(StirlingTail {
        n: n_even,
        exact,
        approx: 0.4 / (n_even as f64).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    /// Independent oracle: probability that at most `k` of `m` fair coins
    /// come up against the trace, summed directly over all 2^m outcomes.
    fn coin_oracle(m: usize, k: usize) -> BigRational {
        let hits = (0u64..1 << m).filter(|b| b.count_ones() as usize <= k).count();
        r(hits as i64, 1 << m)
    }

    #[test]
    fn nine_component_curve() {
        let expected = [
            r(1, 1),
            r(1, 1),
            r(1, 1),
            r(1, 1),
            r(1, 1),
            r(31, 32),
            r(57, 64),
            r(99, 128),
            r(163, 256),
            r(1, 2),
        ];
        for (m, e) in expected.iter().enumerate() {
            assert_eq!(&coin_oracle(m, 4), e, "oracle m={m}");
            assert_eq!(&p_analytic(9, m).unwrap(), e, "m={m}");
        }
    }

    #[test]
    fn even_anchors() {
        assert_eq!(p_analytic(8, 8).unwrap(), r(93, 256));
        assert_eq!(p_analytic(8, 8).unwrap().to_f64().unwrap(), 0.36328125);
        assert_eq!(p_analytic(2, 2).unwrap(), r(1, 4));
        for n in (2..=20).step_by(2) {
            let tail = stirling_tail(n).unwrap().exact;
            assert_eq!(p_analytic(n, n).unwrap(), r(1, 2) - tail);
        }
    }

    #[test]
    fn recognition_row() {
        for n in 1..30 {
            assert_eq!(p_analytic(n, 0).unwrap(), r(1, 1));
        }
        for n in (1..30).step_by(2) {
            assert_eq!(p_analytic(n, n).unwrap(), r(1, 2));
        }
    }

    #[test]
    fn domain_errors() {
        assert!(p_analytic(9, 10).is_err());
        assert!(p_analytic(0, 0).is_err());
        assert!(stirling_tail(7).is_err());
        assert!(stirling_tail(0).is_err());
    }

    #[test]
    fn curve_counts_are_consistent() {
        let c = analytic_curve(9, &(0..=9).collect::<Vec<_>>()).unwrap();
        for p in c.iter() {
            assert_eq!(p.n_total, pow2(p.m) * binomial(9, p.m));
            let ratio = BigRational::new(BigInt::from(p.n_success.clone()), BigInt::from(p.n_total.clone()));
            assert_eq!(ratio, p.p_exact);
        }
        assert!(c.monotonicity_violations().is_empty());
    }

    #[test]
    fn stirling_values() {
        let s16 = stirling_tail(16).unwrap();
        assert_eq!(s16.exact, r(12870, 131072));
        assert!((s16.exact_f64() - 0.098190).abs() < 1e-6);
        assert_eq!(s16.approx, 0.1);
        assert!(s16.relative_error() < 0.02);
        assert_eq!(stirling_tail(2).unwrap().exact, r(1, 4));
        let ratios: Vec<f64> = (4..=64)
            .step_by(2)
            .map(|n| {
                let s = stirling_tail(n).unwrap();
                s.exact_f64() / s.approx
            })
            .collect();
        assert!(ratios.windows(2).all(|w| w[1] > w[0]));
        assert!((ratios.last().unwrap() - 1.0).abs() < 0.01);
    }
}
