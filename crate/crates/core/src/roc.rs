//! Operating-point sweeps, ROC curves, posterior recall probabilities,
//! modified ROC curves, and the overall probabilities averaged over a
//! sweep.
//!
//! An operating point pairs the false alarm `F = P(n, n, theta)` with the
//! conditional hit probability `P(m, n, theta)`. Sweeping the threshold
//! yields exactly `n + 1` distinct points per curve, one for each
//! accepted-distance cutoff from 0 to `n`. The modified curve replaces
//! the conditional hit probability by the posterior probability of
//! correct recall under the prior ratio `kappa = (n - m)/m`.

use num::bigint::BigInt;
use num::{BigRational, One, Zero};

use crate::analytic::{recall_probability, ExactProb};
use crate::error::{Error, Result};
use crate::network::SignumVariant;

/// One threshold's worth of curve data: the false alarm and the
/// conditional hit probability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatingPoint {
    pub theta: i64,
    pub false_alarm: ExactProb,
    pub hit: ExactProb,
}

/// ROC curve for fixed dimension, noise count, and tie rule. Points are
/// ordered by ascending false alarm and end at (1, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RocCurve {
    pub n: u32,
    pub m: u32,
    pub variant: SignumVariant,
    pub points: Vec<OperatingPoint>,
}

/// Posterior probabilities of false and correct recall at one operating
/// point. They sum to one exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosteriorPair {
    pub p_fr: ExactProb,
    pub p_cr: ExactProb,
}

/// Prior ratio of the damaged-trace hypothesis to the pure-noise
/// hypothesis. The edges `m = 0` and `m = n` have no finite ratio and are
/// carried as explicit markers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PriorRatio {
    /// `m = 0`: the cue is the undamaged trace; the ratio diverges.
    PureTrace,
    /// `m = n`: the cue is pure noise; the inverse ratio diverges.
    PureNoise,
    /// `0 < m < n`: the exact positive ratio `(n - m)/m`.
    Finite(BigRational),
}

/// One point of a modified ROC curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MRocPoint {
    pub theta: i64,
    pub false_alarm: ExactProb,
    pub hit: ExactProb,
    pub posterior: PosteriorPair,
}

/// Modified ROC curve: posterior correct-recall probability against false
/// alarm. `pure_trace` flags the degenerate `m = 0` curve, which is
/// constant one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MRocCurve {
    pub n: u32,
    pub m: u32,
    pub variant: SignumVariant,
    pub pure_trace: bool,
    pub points: Vec<MRocPoint>,
}

/// Sweep-averaged posteriors. `p_fr + p_cr = 1` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverallProbs {
    pub p_fr: ExactProb,
    pub p_cr: ExactProb,
}

/// False-alarm probability: the chance that pure noise decodes as the
/// stored trace, `F = P(n, n, theta)`. Strictly positive on the accepted
/// threshold domain.
pub fn false_alarm(n: u32, theta: i64, variant: SignumVariant) -> Result<ExactProb> {
    recall_probability(n, n, theta, variant)
}

/// The `n + 1` thresholds that produce the distinct operating points, in
/// descending threshold order (ascending false alarm). Consecutive
/// thresholds step by two; intermediate integers would duplicate a point
/// because the convolution shares the parity of `n`.
pub fn theta_sweep(n: u32, variant: SignumVariant) -> Vec<i64> {
    assert!(n >= 1, "dimension must be at least 1");
    let top = match (n % 2 == 1, variant) {
        (true, _) => i64::from(n) - 1,
        (false, SignumVariant::MinusAtThreshold) => i64::from(n) - 2,
        (false, SignumVariant::PlusAtThreshold) => i64::from(n),
    };
    (0..=i64::from(n)).map(|j| top - 2 * j).collect()
}

/// ROC curve of the given noise count: the points
/// `(theta, F(n, theta), P(m, n, theta))` over the threshold sweep.
pub fn roc_curve(n: u32, m: u32, variant: SignumVariant) -> Result<RocCurve> {
    if m > n {
        return Err(Error::NoiseCountExceedsDimension { m, n });
    }
    let mut points = Vec::with_capacity(n as usize + 1);
    for theta in theta_sweep(n, variant) {
        points.push(OperatingPoint {
            theta,
            false_alarm: false_alarm(n, theta, variant)?,
            hit: recall_probability(m, n, theta, variant)?,
        });
    }
    debug_assert!(points.windows(2).all(|w| w[0].false_alarm < w[1].false_alarm));
    Ok(RocCurve {
        n,
        m,
        variant,
        points,
    })
}

/// Prior ratio `kappa = (n - m)/m` with explicit edge markers for `m = 0`
/// and `m = n`.
pub fn kappa(m: u32, n: u32) -> PriorRatio {
    assert!(m <= n, "noise count m = {m} exceeds dimension n = {n}");
    if m == 0 {
        PriorRatio::PureTrace
    } else if m == n {
        PriorRatio::PureNoise
    } else {
        PriorRatio::Finite(BigRational::new(BigInt::from(n - m), BigInt::from(m)))
    }
}

/// Posterior probabilities of correct and false recall given the
/// conditional hit probability, the false alarm, and the prior ratio.
///
/// Evaluated in the cleared-denominator form `p_cr = kP/(kP + F)` and
/// `p_fr = F/(kP + F)`, so the pair sums to one exactly. The edges bypass
/// the ratio entirely: a pure trace posts (0, 1), pure noise posts (1, 0).
pub fn posterior(
    hit: &ExactProb,
    false_alarm: &ExactProb,
    prior: &PriorRatio,
) -> Result<PosteriorPair> {
    match prior {
        PriorRatio::PureTrace => Ok(PosteriorPair {
            p_fr: ExactProb::zero(),
            p_cr: ExactProb::one(),
        }),
        PriorRatio::PureNoise => Ok(PosteriorPair {
            p_fr: ExactProb::one(),
            p_cr: ExactProb::zero(),
        }),
        PriorRatio::Finite(ratio) => {
            if false_alarm.is_zero() {
                return Err(Error::ZeroFalseAlarm);
            }
            let weighted = ratio * hit.as_ratio();
            let total = &weighted + false_alarm.as_ratio();
            let p_cr = ExactProb::from_ratio(&weighted / &total)?;
            let p_fr = ExactProb::from_ratio(false_alarm.as_ratio() / &total)?;
            debug_assert!((p_fr.as_ratio() + p_cr.as_ratio()).is_one());
            Ok(PosteriorPair { p_fr, p_cr })
        }
    }
}

/// Modified ROC curve: the posterior pair at every operating point of the
/// ROC curve under the prior ratio for this noise count.
pub fn mroc_curve(n: u32, m: u32, variant: SignumVariant) -> Result<MRocCurve> {
    let base = roc_curve(n, m, variant)?;
    let prior = kappa(m, n);
    let mut points = Vec::with_capacity(base.points.len());
    for point in base.points {
        let pair = posterior(&point.hit, &point.false_alarm, &prior)?;
        points.push(MRocPoint {
            theta: point.theta,
            false_alarm: point.false_alarm,
            hit: point.hit,
            posterior: pair,
        });
    }
    Ok(MRocCurve {
        n,
        m,
        variant,
        pure_trace: m == 0,
        points,
    })
}

/// Sweep-averaged posterior probabilities: the exact mean of `p_fr` and
/// of `p_cr` over the `n + 1` operating points, weighted uniformly.
pub fn overall_probabilities(n: u32, m: u32, variant: SignumVariant) -> Result<OverallProbs> {
    let curve = mroc_curve(n, m, variant)?;
    let count = BigRational::new(BigInt::from(curve.points.len()), BigInt::one());
    let mut fr_sum = BigRational::zero();
    let mut cr_sum = BigRational::zero();
    for point in &curve.points {
        fr_sum += point.posterior.p_fr.as_ratio();
        cr_sum += point.posterior.p_cr.as_ratio();
    }
    let p_fr = ExactProb::from_ratio(fr_sum / &count)?;
    let p_cr = ExactProb::from_ratio(cr_sum / &count)?;
    debug_assert!((p_fr.as_ratio() + p_cr.as_ratio()).is_one());
    Ok(OverallProbs { p_fr, p_cr })
}
