//! Exact operating-characteristic analysis for a binary associative
//! memory that stores a single ±1 trace.
//!
//! A one-trace Hopfield unit decodes an input vector back to its stored
//! trace exactly when the convolution of the two clears the neuron
//! threshold. Because the noise in a damaged cue is binomial, every
//! recall, recognition, and false-alarm probability of the unit has a
//! closed dyadic-rational form, and this crate evaluates all of them
//! exactly:
//!
//! - [`coding`]: ±1 pattern vectors, seeded randomness, and the damage
//!   procedure that turns a trace into a noisy cue.
//! - [`network`]: one-trace learning, single-step signum retrieval, and
//!   the three equivalent decode criteria.
//! - [`analytic`]: closed-form decode probabilities in exact arithmetic.
//! - [`roc`]: threshold sweeps, ROC curves, Bayesian posteriors with the
//!   explicit prior ratio `(n - m)/m`, modified ROC curves, and overall
//!   recall probabilities.
//! - [`estimation`]: bracketing empirical operating points between the
//!   model's cue-index grid curves.
//! - [`montecarlo`]: exhaustive-enumeration and simulation oracles that
//!   validate the closed forms independently.
//!
//! ```
//! use rocmem_core::{recall_probability, SignumVariant};
//!
//! let p = recall_probability(7, 9, 0, SignumVariant::MinusAtThreshold).unwrap();
//! assert_eq!(p.fraction_string(), "99/128");
//! ```

pub mod analytic;
pub mod coding;
pub mod error;
pub mod estimation;
pub mod montecarlo;
pub mod network;
pub mod roc;

pub use analytic::{
    binomial, delta_p, k_max0, recall_probability, theta_domain, valid_theta_range, ExactProb,
    ThetaRange,
};
pub use coding::{
    apply_damage, convolution, hamming_distance, make_random_vector, DamageSpec, PatternVector,
    RandomSource,
};
pub use error::{Error, Result};
pub use estimation::{
    bracket_point, fit_curve, interpolate_curve, Consensus, CurveKind, EmpiricalPoint, FitReport,
    QBracket, DEFAULT_ON_CURVE_TOLERANCE,
};
pub use montecarlo::{
    estimate_probability, estimate_roc, exhaustive_probability,
    exhaustive_probability_with_budget, DecoderKind, RocEstimate, SimEstimate,
    DEFAULT_ENUMERATION_BUDGET,
};
pub use network::{
    conv_decode, hamming_decode, learn, nn_decode, propagate, signum_step, SignumVariant,
    SynapseMatrix, Threshold,
};
pub use roc::{
    false_alarm, kappa, mroc_curve, overall_probabilities, posterior, roc_curve, theta_sweep,
    MRocCurve, MRocPoint, OperatingPoint, OverallProbs, PosteriorPair, PriorRatio, RocCurve,
};
