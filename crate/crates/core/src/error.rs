//! Crate-wide error type.

use std::fmt;

/// Errors produced by pattern construction, probability evaluation, curve
/// queries, and the validation oracles.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A pattern vector must have at least one component.
    EmptyPattern,
    /// A pattern component was neither -1 nor +1.
    NonBinaryComponent { index: usize, value: i8 },
    /// Two vectors (or a vector and a matrix) disagree in dimension.
    LengthMismatch { left: usize, right: usize },
    /// The requested number of noise positions exceeds the dimension.
    NoiseCountExceedsDimension { m: u32, n: u32 },
    /// The threshold lies outside the range that yields valid operating
    /// points for this dimension and tie rule.
    ThetaOutOfRange {
        theta: i64,
        n: u32,
        min: i64,
        max: i64,
    },
    /// The operation is defined for even dimensions only.
    EvenDimensionRequired { n: u32 },
    /// A value that must be a probability fell outside [0, 1].
    ProbabilityOutOfRange { value: String },
    /// A posterior with a finite prior ratio needs a positive false-alarm
    /// probability.
    ZeroFalseAlarm,
    /// The exhaustive enumeration would visit more states than allowed.
    EnumerationTooLarge { states: String, budget: u64 },
    /// The single-step network criterion matches the convolution criterion
    /// only for non-negative thresholds; the enumeration oracle refuses the
    /// rest.
    NegativeThetaForNetworkDecoder { theta: i64 },
    /// A simulation needs at least one trial.
    ZeroTrials,
    /// A curve query must have a false-alarm coordinate in (0, 1].
    QueryOutOfRange { query: String },
    /// At false alarm 1 every curve passes through the same point, so no
    /// cue bracket can be determined there.
    UndeterminedAtUnitFalseAlarm,
    /// A fit needs at least one empirical point.
    NoPoints,
    /// A point inside a fit could not be bracketed.
    PointRejected { index: usize, reason: String },
    /// An empirical coordinate was outside its allowed interval.
    InvalidCoordinate { axis: &'static str, value: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPattern => write!(f, "pattern length must be at least 1"),
            Error::NonBinaryComponent { index, value } => {
                write!(f, "component {index} is {value}; components must be -1 or +1")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::NoiseCountExceedsDimension { m, n } => {
                write!(f, "noise count m = {m} exceeds dimension n = {n}")
            }
            Error::ThetaOutOfRange { theta, n, min, max } => {
                write!(f, "theta = {theta} outside [{min}, {max}] for n = {n}")
            }
            Error::EvenDimensionRequired { n } => {
                write!(f, "n = {n} must be even")
            }
            Error::ProbabilityOutOfRange { value } => {
                write!(f, "{value} is not a probability in [0, 1]")
            }
            Error::ZeroFalseAlarm => {
                write!(f, "false alarm must be positive for a finite prior ratio")
            }
            Error::EnumerationTooLarge { states, budget } => {
                write!(f, "enumeration of {states} states exceeds budget {budget}")
            }
            Error::NegativeThetaForNetworkDecoder { theta } => {
                write!(f, "network decoder requires theta >= 0, got {theta}")
            }
            Error::ZeroTrials => write!(f, "at least one trial is required"),
            Error::QueryOutOfRange { query } => {
                write!(f, "false-alarm query {query} outside (0, 1]")
            }
            Error::UndeterminedAtUnitFalseAlarm => {
                write!(f, "cue bracket is undetermined at false alarm 1")
            }
            Error::NoPoints => write!(f, "at least one empirical point is required"),
            Error::PointRejected { index, reason } => {
                write!(f, "point {index}: {reason}")
            }
            Error::InvalidCoordinate { axis, value } => {
                write!(f, "coordinate {axis} = {value} outside its allowed range")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
