//! The Stirling inverse pair on finite integer sequences:
//!
//! ```text
//! a_n = Σ_k [n,k] (-1)^(n-k) b_k   <=>   b_n = Σ_k {n,k} a_k
//! ```
//!
//! Both relations are lower-triangular, so a prefix of length `L` maps to a
//! prefix of length `L` with no truncation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::numbers::{sign_pow, Family, SignedValue, Triangle};

/// Nonempty prefix `x_0, ..., x_n` of an integer sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence(Vec<SignedValue>);

impl Sequence {
    pub fn new(terms: Vec<SignedValue>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Sequence(terms))
    }

    pub fn from_i64s(terms: &[i64]) -> Result<Self> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn terms(&self) -> &[SignedValue] {
        &self.0
    }

    pub fn into_terms(self) -> Vec<SignedValue> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl FromStr for Sequence {
    type Err = String;

    /// Whitespace- or comma-separated decimal integers.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let terms = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| format!("`{t}` is not a decimal integer"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Sequence::new(terms).map_err(|e| e.to_string())
    }
}

fn table_for(family: Family, len: usize) -> Triangle {
    Triangle::build_with_cap(family, len - 1, usize::MAX).expect("uncapped build")
}

/// `a_n = Σ_k [n,k] (-1)^(n-k) b_k`.
pub fn stirling_first_signed_transform(b: &Sequence) -> Sequence {
    let first = table_for(Family::StirlingFirstUnsigned, b.len());
    first_signed_with(&first, b, Execution::default())
}

/// `b_n = Σ_k {n,k} a_k`.
pub fn stirling_second_transform(a: &Sequence) -> Sequence {
    let second = table_for(Family::StirlingSecond, a.len());
    second_with(&second, a, Execution::default())
}

/// First-kind transform against a caller-supplied table reaching row
/// `b.len() - 1`.
pub fn first_signed_with(first: &Triangle, b: &Sequence, exec: Execution) -> Sequence {
    let terms = exec.map_indices(b.len(), |n| {
        (0..=n).fold(SignedValue::zero(), |acc, k| {
            acc + sign_pow(n - k) * BigInt::from(first.get(n, k).clone()) * &b.0[k]
        })
    });
    Sequence(terms)
}

/// Second-kind transform against a caller-supplied table reaching row
/// `a.len() - 1`.
pub fn second_with(second: &Triangle, a: &Sequence, exec: Execution) -> Sequence {
    let terms = exec.map_indices(a.len(), |n| {
        (0..=n).fold(SignedValue::zero(), |acc, k| {
            acc + BigInt::from(second.get(n, k).clone()) * &a.0[k]
        })
    });
    Sequence(terms)
}

/// True iff both compositions of the pair return `s` unchanged.
pub fn verify_inversion_roundtrip(s: &Sequence) -> bool {
    let first = table_for(Family::StirlingFirstUnsigned, s.len());
    let second = table_for(Family::StirlingSecond, s.len());
    roundtrip_with(&first, &second, s, Execution::default())
}

pub fn roundtrip_with(first: &Triangle, second: &Triangle, s: &Sequence, exec: Execution) -> bool {
    let there = second_with(second, &first_signed_with(first, s, exec), exec);
    let back = first_signed_with(first, &second_with(second, s, exec), exec);
    &there == s && &back == s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    /// First index where computed and expected terms differ.
    pub first_mismatch: Option<usize>,
}

impl StepOutcome {
    fn compare(computed: &Sequence, expected: &Sequence) -> Self {
        StepOutcome {
            first_mismatch: computed
                .0
                .iter()
                .zip(&expected.0)
                .position(|(c, e)| c != e),
        }
    }

    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Result of replaying the derivation of identity (2) from the first-kind
/// addition formula through the inverse pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofReplay {
    pub p: usize,
    pub n_max: usize,
    /// `a_n = (-1)^n [n+1,p+1]`
    pub a: Sequence,
    /// `b_k = (-1)^k C(k,p)`
    pub b: Sequence,
    /// First-kind transform of `b`; should equal `a`.
    pub step1_values: Sequence,
    /// Second-kind transform of `a`; should equal `b`.
    pub step2_values: Sequence,
    pub step1: StepOutcome,
    pub step2: StepOutcome,
}

impl ProofReplay {
    pub fn passed(&self) -> bool {
        self.step1.passed() && self.step2.passed()
    }
}

/// Builds `a` and `b` for the given `p` on `0..=n_max` and checks both
/// directions of the inverse pair:
///
/// 1. first-kind transform of `b` equals `a` (the first-kind addition formula
///    with signs attached);
/// 2. second-kind transform of `a` equals `b` (identity (2)).
pub fn replay_proof_identity_2(p: usize, n_max: usize) -> Result<ProofReplay> {
    replay_proof_identity_2_with(p, n_max, Execution::default())
}

pub fn replay_proof_identity_2_with(p: usize, n_max: usize, exec: Execution) -> Result<ProofReplay> {
    if p > n_max {
        return Err(Error::Precondition(format!("p = {p} exceeds n_max = {n_max}")));
    }
    let first = Triangle::build(Family::StirlingFirstUnsigned, n_max + 1)?;
    let second = Triangle::build(Family::StirlingSecond, n_max)?;
    let binomial = Triangle::build(Family::Binomial, n_max)?;

    let a = Sequence(
        (0..=n_max)
            .map(|n| sign_pow(n) * BigInt::from(first.get(n + 1, p + 1).clone()))
            .collect(),
    );
    let b = Sequence(
        (0..=n_max)
            .map(|k| sign_pow(k) * BigInt::from(binomial.get(k, p).clone()))
            .collect(),
    );
    let step1_values = first_signed_with(&first, &b, exec);
    let step2_values = second_with(&second, &a, exec);
    Ok(ProofReplay {
        p,
        n_max,
        step1: StepOutcome::compare(&step1_values, &a),
        step2: StepOutcome::compare(&step2_values, &b),
        a,
        b,
        step1_values,
        step2_values,
    })
}
