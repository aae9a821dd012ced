//! One-trace Hopfield learning and single-step signum retrieval, plus the
//! three equivalent decode criteria: network output, convolution
//! threshold, and Hamming-distance threshold.
//!
//! The synapse matrix stores exactly one trace, `w_ij = x0_i * x0_j`, so
//! the input signal of every exit neuron collapses to `h_j = x0_j * Q`
//! with `Q` the convolution of the stored trace and the input. A single
//! retrieval step therefore succeeds, in the sense of reproducing `x0`,
//! exactly when `Q` clears the triggering threshold.

use crate::analytic::k_max0;
use crate::coding::{convolution, hamming_distance, PatternVector};
use crate::error::{Error, Result};

/// Tie rule of the signum response at `h = theta`.
///
/// The default assigns -1 at the threshold; the alternative assigns +1,
/// which turns the success criterion from `Q > theta` into `Q >= theta`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SignumVariant {
    #[default]
    MinusAtThreshold,
    PlusAtThreshold,
}

impl SignumVariant {
    pub fn name(self) -> &'static str {
        match self {
            SignumVariant::MinusAtThreshold => "minus",
            SignumVariant::PlusAtThreshold => "plus",
        }
    }
}

/// Triggering threshold of the model neurons (and of the convolution
/// criterion, since the learning parameter is fixed to one).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Threshold(pub i64);

impl From<i64> for Threshold {
    fn from(value: i64) -> Self {
        Threshold(value)
    }
}

/// Synapse matrix of a perfectly learned one-trace network: the rank-one
/// sign matrix `w_ij = x0_i * x0_j` with unit diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SynapseMatrix {
    n: usize,
    weights: Vec<i8>,
}

impl SynapseMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, row: usize, col: usize) -> i8 {
        self.weights[row * self.n + col]
    }
}

/// Stores a single trace. The result is symmetric, has +1 on the
/// diagonal, and is unchanged by a global sign flip of `x0`.
pub fn learn(x0: &PatternVector) -> SynapseMatrix {
    let n = x0.len();
    let signs = x0.signs();
    let mut weights = Vec::with_capacity(n * n);
    for &row in signs {
        for &col in signs {
            weights.push(row * col);
        }
    }
    SynapseMatrix { n, weights }
}

/// Input signals of the exit layer, `h_j = sum_i w_ij v_i` with zero bias.
pub fn propagate(w: &SynapseMatrix, x_in: &PatternVector) -> Result<Vec<i64>> {
    if w.n() != x_in.len() {
        return Err(Error::LengthMismatch {
            left: w.n(),
            right: x_in.len(),
        });
    }
    let n = w.n();
    let mut field = vec![0i64; n];
    for (j, slot) in field.iter_mut().enumerate() {
        let mut acc = 0i64;
        for (i, &v) in x_in.signs().iter().enumerate() {
            acc += i64::from(w.weight(i, j)) * i64::from(v);
        }
        *slot = acc;
    }
    Ok(field)
}

/// Component-wise signum response with the chosen tie rule.
pub fn signum_step(field: &[i64], theta: Threshold, variant: SignumVariant) -> PatternVector {
    let signs = field
        .iter()
        .map(|&h| {
            let fires = match variant {
                SignumVariant::MinusAtThreshold => h > theta.0,
                SignumVariant::PlusAtThreshold => h >= theta.0,
            };
            if fires {
                1
            } else {
                -1
            }
        })
        .collect();
    PatternVector::from_signs_unchecked(signs)
}

/// Success of one full retrieval step: learn `x0`, propagate `x_in`, apply
/// the signum, and compare the output with `x0`.
pub fn nn_decode(
    x0: &PatternVector,
    x_in: &PatternVector,
    theta: Threshold,
    variant: SignumVariant,
) -> Result<bool> {
    let w = learn(x0);
    let field = propagate(&w, x_in)?;
    Ok(signum_step(&field, theta, variant) == *x0)
}

/// Success of the convolution criterion: `Q > theta` (minus tie rule) or
/// `Q >= theta` (plus tie rule).
///
/// This is the definitional criterion behind all probability formulas in
/// this crate. For theta < 0 the per-component network condition is
/// stricter than `Q > theta` on mixed-sign traces, so [`nn_decode`] and
/// this function agree only for theta >= 0.
pub fn conv_decode(
    x0: &PatternVector,
    x_in: &PatternVector,
    theta: Threshold,
    variant: SignumVariant,
) -> Result<bool> {
    let q = convolution(x0, x_in)?;
    Ok(match variant {
        SignumVariant::MinusAtThreshold => q > theta.0,
        SignumVariant::PlusAtThreshold => q >= theta.0,
    })
}

/// Success of the Hamming criterion: the distance between `x0` and `x_in`
/// is at most the largest accepted distance for this threshold.
pub fn hamming_decode(
    x0: &PatternVector,
    x_in: &PatternVector,
    theta: Threshold,
    variant: SignumVariant,
) -> Result<bool> {
    let d = hamming_distance(x0, x_in)?;
    Ok(i64::from(d) <= k_max0(x0.len() as u32, theta.0, variant))
}
