//! Independent validation oracles: exhaustive enumeration over every
//! damage configuration, and seeded stochastic simulation.
//!
//! The enumeration walks all `C(n, m)` damage-position subsets in
//! lexicographic order and, for each subset, all `2^m` noise sign
//! patterns as an m-bit counter. Every candidate vector is pushed through
//! the real decoder, so the resulting exact fraction shares no code path
//! with the closed-form probabilities it validates.
//!
//! Simulation trials run on per-trial random streams, so trial `i` can be
//! reconstructed (or farmed out) independently: success counts from
//! disjoint index ranges merge by addition.

use num::bigint::BigInt;
use num::{BigRational, BigUint};

use crate::analytic::ExactProb;
use crate::coding::{apply_damage, convolution, PatternVector, RandomSource};
use crate::error::{Error, Result};
use crate::network::{conv_decode, hamming_decode, nn_decode, SignumVariant, Threshold};
use crate::roc::theta_sweep;

/// Which decode criterion the enumeration oracle exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecoderKind {
    Network,
    Convolution,
    Hamming,
}

/// Ceiling on `2^m * C(n, m)` for [`exhaustive_probability`].
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Stream namespaces for per-trial random sources. Signal trials and
/// false-alarm trials of one seed never overlap.
const SIGNAL_STREAM: u64 = 0;
const NOISE_STREAM: u64 = 1;

fn trial_source(seed: u64, namespace: u64, trial: u64) -> RandomSource {
    debug_assert!(trial < 1 << 56);
    RandomSource::with_stream(seed, (namespace << 56) | trial)
}

/// Estimated probability with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimEstimate {
    pub p_hat: f64,
    pub trials: u64,
    pub stderr: f64,
    pub seed: u64,
}

impl SimEstimate {
    fn from_successes(successes: u64, trials: u64, seed: u64) -> Self {
        let p_hat = successes as f64 / trials as f64;
        Self {
            p_hat,
            trials,
            stderr: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
            seed,
        }
    }
}

/// One threshold's estimated operating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RocEstimate {
    pub theta: i64,
    pub f_hat: f64,
    pub p_hat: f64,
}

fn decode_with(
    decoder: DecoderKind,
    x0: &PatternVector,
    candidate: &PatternVector,
    theta: Threshold,
    variant: SignumVariant,
) -> Result<bool> {
    match decoder {
        DecoderKind::Network => nn_decode(x0, candidate, theta, variant),
        DecoderKind::Convolution => conv_decode(x0, candidate, theta, variant),
        DecoderKind::Hamming => hamming_decode(x0, candidate, theta, variant),
    }
}

/// Exact success fraction over every damage-position subset and noise
/// sign pattern, for the canonical all-+1 trace. The result does not
/// depend on the trace; `exhaustive_probability_for` lets tests verify
/// exactly that.
pub fn exhaustive_probability(
    n: u32,
    m: u32,
    theta: i64,
    variant: SignumVariant,
    decoder: DecoderKind,
) -> Result<ExactProb> {
    exhaustive_probability_with_budget(n, m, theta, variant, decoder, DEFAULT_ENUMERATION_BUDGET)
}

pub fn exhaustive_probability_with_budget(
    n: u32,
    m: u32,
    theta: i64,
    variant: SignumVariant,
    decoder: DecoderKind,
    budget: u64,
) -> Result<ExactProb> {
    let x0 = PatternVector::all_plus(n)?;
    exhaustive_probability_for(&x0, m, theta, variant, decoder, budget)
}

/// Exhaustive enumeration around an arbitrary reference trace.
pub fn exhaustive_probability_for(
    x0: &PatternVector,
    m: u32,
    theta: i64,
    variant: SignumVariant,
    decoder: DecoderKind,
    budget: u64,
) -> Result<ExactProb> {
    let n = x0.len() as u32;
    if m > n {
        return Err(Error::NoiseCountExceedsDimension { m, n });
    }
    if decoder == DecoderKind::Network && theta < 0 {
        return Err(Error::NegativeThetaForNetworkDecoder { theta });
    }
    let subsets = crate::analytic::binomial(n, m);
    let states: BigUint = &subsets << m as usize;
    if states > BigUint::from(budget) {
        return Err(Error::EnumerationTooLarge {
            states: states.to_string(),
            budget,
        });
    }

    let mut successes: u64 = 0;
    let mut positions: Vec<usize> = (0..m as usize).collect();
    loop {
        // All 2^m sign assignments for the current subset.
        for pattern in 0..1u64 << m {
            let mut signs = x0.signs().to_vec();
            for (bit, &position) in positions.iter().enumerate() {
                signs[position] = if pattern >> bit & 1 == 1 { -1 } else { 1 };
            }
            let candidate = PatternVector::from_signs_unchecked(signs);
            if decode_with(decoder, x0, &candidate, Threshold(theta), variant)? {
                successes += 1;
            }
        }
        if !advance_combination(&mut positions, n as usize) {
            break;
        }
    }

    let total = BigInt::from(subsets) << m as usize;
    ExactProb::from_ratio(BigRational::new(BigInt::from(successes), total))
}

/// Advances `positions` to the next m-subset of `0..n` in lexicographic
/// order; returns false after the last one.
fn advance_combination(positions: &mut [usize], n: usize) -> bool {
    let m = positions.len();
    if m == 0 {
        return false;
    }
    let mut i = m;
    while i > 0 {
        i -= 1;
        if positions[i] < n - m + i {
            positions[i] += 1;
            for j in i + 1..m {
                positions[j] = positions[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Seeded estimate of the decode probability: the fraction of trials in
/// which a freshly damaged trace decodes successfully under the
/// convolution criterion.
pub fn estimate_probability(
    n: u32,
    m: u32,
    theta: i64,
    variant: SignumVariant,
    trials: u64,
    seed: u64,
) -> Result<SimEstimate> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let x0 = PatternVector::all_plus(n)?;
    if m > n {
        return Err(Error::NoiseCountExceedsDimension { m, n });
    }
    let mut successes = 0u64;
    for trial in 0..trials {
        let mut rng = trial_source(seed, SIGNAL_STREAM, trial);
        let candidate = apply_damage(&x0, m, &mut rng)?;
        if conv_decode(&x0, &candidate, Threshold(theta), variant)? {
            successes += 1;
        }
    }
    Ok(SimEstimate::from_successes(successes, trials, seed))
}

/// Estimated ROC curve over the threshold sweep.
///
/// Each trial's convolution is computed once and compared against every
/// threshold, so all operating points share common random numbers. The
/// false-alarm estimates reuse the signal trials when `m = n` (they are
/// then the same experiment) and an independent stream otherwise.
pub fn estimate_roc(
    n: u32,
    m: u32,
    variant: SignumVariant,
    trials: u64,
    seed: u64,
) -> Result<Vec<RocEstimate>> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let x0 = PatternVector::all_plus(n)?;
    if m > n {
        return Err(Error::NoiseCountExceedsDimension { m, n });
    }
    let sweep = theta_sweep(n, variant);

    let count_hits = |noise_count: u32, namespace: u64| -> Result<Vec<u64>> {
        let mut counts = vec![0u64; sweep.len()];
        for trial in 0..trials {
            let mut rng = trial_source(seed, namespace, trial);
            let candidate = apply_damage(&x0, noise_count, &mut rng)?;
            let q = convolution(&x0, &candidate)?;
            for (slot, &theta) in counts.iter_mut().zip(&sweep) {
                let success = match variant {
                    SignumVariant::MinusAtThreshold => q > theta,
                    SignumVariant::PlusAtThreshold => q >= theta,
                };
                if success {
                    *slot += 1;
                }
            }
        }
        Ok(counts)
    };

    let signal_counts = count_hits(m, SIGNAL_STREAM)?;
    let noise_counts = if m == n {
        signal_counts.clone()
    } else {
        count_hits(n, NOISE_STREAM)?
    };

    Ok(sweep
        .iter()
        .zip(signal_counts.iter().zip(&noise_counts))
        .map(|(&theta, (&hits, &alarms))| RocEstimate {
            theta,
            f_hat: alarms as f64 / trials as f64,
            p_hat: hits as f64 / trials as f64,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::recall_probability;
    use crate::coding::make_random_vector;

    const MINUS: SignumVariant = SignumVariant::MinusAtThreshold;
    const PLUS: SignumVariant = SignumVariant::PlusAtThreshold;

    fn prob(numer: u64, denom: u64) -> ExactProb {
        ExactProb::from_u64(numer, denom).unwrap()
    }

    #[test]
    fn enumeration_reproduces_reference_values() {
        assert_eq!(
            exhaustive_probability(9, 7, 0, MINUS, DecoderKind::Convolution).unwrap(),
            prob(99, 128)
        );
        assert_eq!(
            exhaustive_probability(8, 8, 0, MINUS, DecoderKind::Convolution).unwrap(),
            prob(93, 256)
        );
        assert_eq!(
            exhaustive_probability(8, 8, 0, PLUS, DecoderKind::Convolution).unwrap(),
            prob(163, 256)
        );
    }

    #[test]
    fn enumeration_with_zero_noise_is_certain() {
        for theta in [-10i64, 0, 8] {
            assert!(exhaustive_probability(9, 0, theta, MINUS, DecoderKind::Convolution)
                .unwrap()
                .is_one());
        }
    }

    #[test]
    fn enumeration_decoders_agree() {
        for n in [4u32, 5, 6] {
            for m in 0..=n {
                for variant in [MINUS, PLUS] {
                    for theta in -(i64::from(n) + 2)..=i64::from(n) {
                        let conv =
                            exhaustive_probability(n, m, theta, variant, DecoderKind::Convolution)
                                .unwrap();
                        let ham =
                            exhaustive_probability(n, m, theta, variant, DecoderKind::Hamming)
                                .unwrap();
                        assert_eq!(conv, ham, "n={n} m={m} theta={theta} {variant:?}");
                        if theta >= 0 {
                            let net =
                                exhaustive_probability(n, m, theta, variant, DecoderKind::Network)
                                    .unwrap();
                            assert_eq!(conv, net, "n={n} m={m} theta={theta} {variant:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_closed_form_on_small_grid() {
        for n in 1..=6u32 {
            for variant in [MINUS, PLUS] {
                let domain = crate::analytic::theta_domain(n, variant);
                for theta in domain.min..=domain.max {
                    for m in 0..=n {
                        let exact = recall_probability(m, n, theta, variant).unwrap();
                        let enumerated =
                            exhaustive_probability(n, m, theta, variant, DecoderKind::Convolution)
                                .unwrap();
                        assert_eq!(exact, enumerated, "n={n} m={m} theta={theta} {variant:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_is_trace_independent() {
        let mut rng = RandomSource::new(33);
        for n in [4u32, 6, 8] {
            for m in [0, n / 2, n] {
                for theta in [0i64, 2] {
                    for variant in [MINUS, PLUS] {
                        let reference = exhaustive_probability(
                            n,
                            m,
                            theta,
                            variant,
                            DecoderKind::Convolution,
                        )
                        .unwrap();
                        for _ in 0..10 {
                            let x0 = make_random_vector(n, &mut rng).unwrap();
                            let other = exhaustive_probability_for(
                                &x0,
                                m,
                                theta,
                                variant,
                                DecoderKind::Convolution,
                                DEFAULT_ENUMERATION_BUDGET,
                            )
                            .unwrap();
                            assert_eq!(reference, other, "n={n} m={m} theta={theta}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_budget_and_network_preconditions() {
        assert!(matches!(
            exhaustive_probability(40, 30, 0, MINUS, DecoderKind::Convolution),
            Err(Error::EnumerationTooLarge { .. })
        ));
        assert!(matches!(
            exhaustive_probability(6, 3, -1, MINUS, DecoderKind::Network),
            Err(Error::NegativeThetaForNetworkDecoder { theta: -1 })
        ));
    }

    #[test]
    fn estimates_are_deterministic_and_plateau_exact() {
        let a = estimate_probability(9, 4, 0, MINUS, 5_000, 7).unwrap();
        let b = estimate_probability(9, 4, 0, MINUS, 5_000, 7).unwrap();
        assert_eq!(a, b);
        // Within the certain-recall plateau every trial must succeed.
        assert_eq!(a.p_hat, 1.0);
        assert_eq!(a.stderr, 0.0);
    }

    #[test]
    fn free_recall_estimate_matches_one_half() {
        let est = estimate_probability(9, 9, 0, MINUS, 200_000, 3).unwrap();
        assert!(
            (est.p_hat - 0.5).abs() <= 4.0 * est.stderr,
            "p_hat {} stderr {}",
            est.p_hat,
            est.stderr
        );
    }

    #[test]
    fn estimate_matches_enumeration_within_band() {
        let exact = prob(93, 256).to_f64();
        let est = estimate_probability(8, 8, 0, MINUS, 200_000, 5).unwrap();
        assert!(
            (est.p_hat - exact).abs() <= 4.0 * est.stderr,
            "p_hat {} exact {exact}",
            est.p_hat
        );
    }

    #[test]
    fn roc_estimate_reuses_trials_for_pure_noise() {
        let estimates = estimate_roc(9, 9, MINUS, 2_000, 11).unwrap();
        for est in estimates {
            assert_eq!(est.f_hat, est.p_hat);
        }
    }

    #[test]
    fn roc_estimate_with_single_trial_is_binary() {
        let estimates = estimate_roc(8, 3, MINUS, 1, 2).unwrap();
        for est in estimates {
            assert!(est.p_hat == 0.0 || est.p_hat == 1.0);
            assert!(est.f_hat == 0.0 || est.f_hat == 1.0);
        }
    }

    #[test]
    fn roc_estimate_agrees_with_pointwise_estimates() {
        // Same seed and stream layout: the sweep estimate at each theta
        // must equal the standalone estimate.
        let estimates = estimate_roc(9, 6, MINUS, 3_000, 19).unwrap();
        for est in estimates {
            let single = estimate_probability(9, 6, est.theta, MINUS, 3_000, 19).unwrap();
            assert_eq!(est.p_hat, single.p_hat, "theta {}", est.theta);
        }
    }

    #[test]
    fn zero_trials_are_rejected() {
        assert_eq!(
            estimate_probability(9, 4, 0, MINUS, 0, 1),
            Err(Error::ZeroTrials)
        );
        assert!(matches!(estimate_roc(9, 4, MINUS, 0, 1), Err(Error::ZeroTrials)));
    }

    #[test]
    fn combination_walker_visits_every_subset_once() {
        let mut positions = vec![0usize, 1, 2];
        let mut seen = vec![positions.clone()];
        while advance_combination(&mut positions, 6) {
            seen.push(positions.clone());
        }
        assert_eq!(seen.len(), 20); // C(6, 3)
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 20);
    }
}
