//! Binary ±1 pattern vectors, seeded randomness, and the damage procedure
//! that turns a stored trace into a noisy retrieval cue.
//!
//! A cue is built from a reference vector by picking `m` of its `n`
//! positions uniformly without replacement and overwriting each picked
//! position with an independent random sign. A replaced position may
//! coincide with the original by chance, so the damage degree `d = m/n`
//! counts overwritten positions, not flipped ones.

use std::fmt;

use num::{BigInt, BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Dense feature vector whose components are exactly -1 or +1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternVector {
    signs: Vec<i8>,
}

impl PatternVector {
    /// Builds a vector from raw signs, rejecting empty input and any
    /// component other than -1 or +1.
    pub fn from_signs(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::EmptyPattern);
        }
        for (index, &value) in signs.iter().enumerate() {
            if value != 1 && value != -1 {
                return Err(Error::NonBinaryComponent { index, value });
            }
        }
        Ok(Self { signs })
    }

    /// Constructor for internal callers that already guarantee ±1 signs.
    pub(crate) fn from_signs_unchecked(signs: Vec<i8>) -> Self {
        debug_assert!(!signs.is_empty());
        debug_assert!(signs.iter().all(|&s| s == 1 || s == -1));
        Self { signs }
    }

    /// The all-+1 vector, used as the canonical reference trace by the
    /// enumeration and simulation oracles.
    pub fn all_plus(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPattern);
        }
        Ok(Self {
            signs: vec![1; n as usize],
        })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// The component-wise sign flip of `self`.
    pub fn negated(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

impl fmt::Debug for PatternVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternVector(\"")?;
        for &s in &self.signs {
            write!(f, "{}", if s > 0 { '+' } else { '-' })?;
        }
        write!(f, "\")")
    }
}

/// Bookkeeping for a damage configuration: `m` of `n` positions carry
/// noise, giving damage degree `d = m/n` and cue index `q = 1 - m/n`.
/// The two always sum to one exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DamageSpec {
    n: u32,
    m: u32,
}

impl DamageSpec {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPattern);
        }
        if m > n {
            return Err(Error::NoiseCountExceedsDimension { m, n });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Fraction of noise positions, `d = m/n`.
    pub fn damage_degree(&self) -> BigRational {
        BigRational::new(BigInt::from(self.m), BigInt::from(self.n))
    }

    /// Fraction of untouched positions, `q = 1 - m/n`.
    pub fn cue_index(&self) -> BigRational {
        BigRational::one() - self.damage_degree()
    }
}

/// Seeded random stream. The same seed always reproduces the same
/// sequence. Distinct streams under one seed never overlap, which lets a
/// simulation reconstruct any single trial independently of the others.
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A source positioned on an independent stream of the same seed.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A uniform random sign, -1 or +1.
    pub fn random_sign(&mut self) -> i8 {
        if self.rng.gen::<bool>() {
            1
        } else {
            -1
        }
    }

    /// `m` distinct positions drawn uniformly from `0..n`.
    pub(crate) fn choose_positions(&mut self, n: usize, m: usize) -> Vec<usize> {
        rand::seq::index::sample(&mut self.rng, n, m).into_vec()
    }
}

impl fmt::Debug for RandomSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RandomSource").field("seed", &self.seed).finish()
    }
}

/// A vector of `n` independent uniform random signs.
pub fn make_random_vector(n: u32, rng: &mut RandomSource) -> Result<PatternVector> {
    if n == 0 {
        return Err(Error::EmptyPattern);
    }
    let signs = (0..n).map(|_| rng.random_sign()).collect();
    Ok(PatternVector::from_signs_unchecked(signs))
}

/// Overwrites `m` uniformly chosen positions of `x0` with independent
/// random signs. `m = 0` returns `x0` unchanged; `m = n` is distributed
/// exactly like [`make_random_vector`].
pub fn apply_damage(x0: &PatternVector, m: u32, rng: &mut RandomSource) -> Result<PatternVector> {
    let n = x0.len();
    if m as usize > n {
        return Err(Error::NoiseCountExceedsDimension { m, n: n as u32 });
    }
    let mut signs = x0.signs().to_vec();
    for position in rng.choose_positions(n, m as usize) {
        signs[position] = rng.random_sign();
    }
    Ok(PatternVector::from_signs_unchecked(signs))
}

/// The inner product `Q = sum_i a_i b_i`. Q lies in {-n, -n+2, ..., n}
/// and has the parity of n.
pub fn convolution(a: &PatternVector, b: &PatternVector) -> Result<i64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.signs()
        .iter()
        .zip(b.signs())
        .map(|(&x, &y)| i64::from(x) * i64::from(y))
        .sum())
}

/// Number of positions where the two vectors disagree. Satisfies
/// `Q = n - 2 D` for the same pair.
pub fn hamming_distance(a: &PatternVector, b: &PatternVector) -> Result<u32> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.signs()
        .iter()
        .zip(b.signs())
        .filter(|(&x, &y)| x != y)
        .count() as u32)
}
