//! Closed-form decode probabilities in exact rational arithmetic.
//!
//! One retrieval step succeeds when the convolution `Q = n - 2k` clears
//! the threshold, where `k` counts the noise positions whose random sign
//! disagrees with the stored trace. Conditioned on `m` noise positions,
//! `k` is Binomial(m, 1/2), so the success probability is the binomial
//! tail
//!
//! ```text
//! P(m, n, theta) = sum_{k=0}^{min(m, k_max0)} C(m, k) / 2^m
//! ```
//!
//! with `k_max0` the largest accepted Hamming distance at this threshold.
//! Everything is evaluated with arbitrary-precision integers; no floating
//! point enters until a value is rendered.

use std::fmt;

use num::bigint::BigInt;
use num::{BigRational, BigUint, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::network::SignumVariant;

/// Exact probability: a rational in [0, 1] kept in lowest terms.
///
/// Conditional decode probabilities are dyadic (their reduced denominator
/// divides `2^m`); posteriors and interpolated values may have arbitrary
/// denominators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProb(BigRational);

impl ExactProb {
    pub fn from_ratio(ratio: BigRational) -> Result<Self> {
        if ratio.is_negative() || ratio > BigRational::one() {
            return Err(Error::ProbabilityOutOfRange {
                value: format!("{}/{}", ratio.numer(), ratio.denom()),
            });
        }
        Ok(Self(ratio))
    }

    pub fn from_u64(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::ProbabilityOutOfRange {
                value: format!("{numer}/0"),
            });
        }
        Self::from_ratio(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Nearest double. Exact for dyadic values with short mantissas.
    pub fn to_f64(&self) -> f64 {
        // numer/denom <= 1, so (numer << 64) / denom fits comfortably in a
        // double's exponent range; the shift keeps 64 bits of precision.
        let shifted: BigInt = self.0.numer() << 64u32;
        let quotient = shifted / self.0.denom();
        let approx = quotient.to_string().parse::<f64>().unwrap_or(0.0);
        approx / 2f64.powi(64)
    }

    /// Lowest-terms fraction string, such as `99/128` or `1/1`.
    pub fn fraction_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    /// Decimal string with `digits` fractional digits, rounded to nearest
    /// with ties to even.
    pub fn decimal_string(&self, digits: usize) -> String {
        let scale = BigInt::from(10u8).pow(digits as u32);
        let scaled = self.0.numer() * &scale;
        let (mut quotient, remainder) = scaled.div_rem(self.0.denom());
        let doubled: BigInt = &remainder * 2;
        match doubled.cmp(self.0.denom()) {
            std::cmp::Ordering::Greater => quotient += 1,
            std::cmp::Ordering::Equal => {
                if quotient.is_odd() {
                    quotient += 1;
                }
            }
            std::cmp::Ordering::Less => {}
        }
        if digits == 0 {
            return quotient.to_string();
        }
        let (integral, fractional) = quotient.div_rem(&scale);
        format!(
            "{}.{:0>width$}",
            integral,
            fractional.to_string(),
            width = digits
        )
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fraction_string())
    }
}

/// Inclusive threshold interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaRange {
    pub min: i64,
    pub max: i64,
}

impl ThetaRange {
    pub fn contains(&self, theta: i64) -> bool {
        self.min <= theta && theta <= self.max
    }
}

/// Binomial coefficient `C(n, k)` as an arbitrary-precision integer.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 0..k {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// Largest Hamming distance from the stored trace that still decodes
/// successfully at this threshold. Negative when nothing is accepted.
///
/// For the minus tie rule this is `floor((n - theta - 1)/2)`, which
/// reproduces both parity branches of the accepted-distance cutoff; the
/// plus tie rule shifts the cutoff to `floor((n - theta)/2)`. Callers
/// clamp the result to `min(m, k_max0)`.
pub fn k_max0(n: u32, theta: i64, variant: SignumVariant) -> i64 {
    let spread = match variant {
        SignumVariant::MinusAtThreshold => i128::from(n) - i128::from(theta) - 1,
        SignumVariant::PlusAtThreshold => i128::from(n) - i128::from(theta),
    };
    spread
        .div_euclid(2)
        .clamp(i128::from(i64::MIN), i128::from(i64::MAX)) as i64
}

/// Threshold interval over which the minus-rule probabilities sweep all
/// `n + 1` operating points: `[-(n+1), n-1]` for odd `n` and
/// `[-(n+2), n-2]` for even `n`.
pub fn valid_theta_range(n: u32) -> ThetaRange {
    assert!(n >= 1, "dimension must be at least 1");
    let n = i64::from(n);
    if n % 2 == 1 {
        ThetaRange {
            min: -(n + 1),
            max: n - 1,
        }
    } else {
        ThetaRange {
            min: -(n + 2),
            max: n - 2,
        }
    }
}

/// Thresholds accepted by the probability formulas for a given tie rule.
///
/// The minus rule accepts exactly [`valid_theta_range`]. Under the plus
/// rule ties land on the success side, so the false alarm stays positive
/// up to `theta = n`; the upper end extends accordingly (one step past
/// the minus range), keeping the zero-distance operating point reachable
/// on even dimensions.
pub fn theta_domain(n: u32, variant: SignumVariant) -> ThetaRange {
    let base = valid_theta_range(n);
    match variant {
        SignumVariant::MinusAtThreshold => base,
        SignumVariant::PlusAtThreshold => ThetaRange {
            min: base.min,
            max: i64::from(n),
        },
    }
}

/// Probability that a cue with `m` noise positions decodes back to the
/// stored trace of dimension `n` at threshold `theta`.
///
/// Exact binomial tail `sum_{k <= min(m, k_max0)} C(m, k) / 2^m`.
pub fn recall_probability(
    m: u32,
    n: u32,
    theta: i64,
    variant: SignumVariant,
) -> Result<ExactProb> {
    if n == 0 {
        return Err(Error::EmptyPattern);
    }
    if m > n {
        return Err(Error::NoiseCountExceedsDimension { m, n });
    }
    let domain = theta_domain(n, variant);
    if !domain.contains(theta) {
        return Err(Error::ThetaOutOfRange {
            theta,
            n,
            min: domain.min,
            max: domain.max,
        });
    }
    let cutoff = k_max0(n, theta, variant);
    debug_assert!(cutoff >= 0, "in-range thresholds accept distance zero");
    let k_top = (i64::from(m)).min(cutoff) as u32;

    // Running coefficient: C(m, k+1) = C(m, k) * (m - k) / (k + 1).
    let mut coefficient = BigUint::one();
    let mut accepted = BigUint::zero();
    for k in 0..=k_top {
        accepted += &coefficient;
        if k < k_top {
            coefficient = coefficient * BigUint::from(m - k) / BigUint::from(k + 1);
        }
    }
    let total = BigUint::one() << m as usize;
    ExactProb::from_ratio(BigRational::new(accepted.into(), total.into()))
}

/// Half-gap between the even-dimension free-recall probability and 1/2:
/// `C(n, n/2) / 2^(n+1)`, which behaves like `0.4 / sqrt(n)` for large
/// `n`. The minus tie rule gives free recall `1/2 - delta_p(n)`, the plus
/// rule `1/2 + delta_p(n)`.
pub fn delta_p(n: u32) -> Result<ExactProb> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::EvenDimensionRequired { n });
    }
    let numer = binomial(n, n / 2);
    let denom = BigUint::one() << (n as usize + 1);
    ExactProb::from_ratio(BigRational::new(numer.into(), denom.into()))
}
