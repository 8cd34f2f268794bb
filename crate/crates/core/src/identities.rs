//! Exact evaluation of both sides of the Stirling/binomial identities, and
//! exhaustive sweeps looking for counterexamples.
//!
//! | tag       | left side                                       | right side                  |
//! |-----------|-------------------------------------------------|-----------------------------|
//! | `I1`      | `Σ_k [k,p] {n+1,k+1} (-1)^k`                    | `C(n,p) (-1)^p`             |
//! | `I2`      | `Σ_k [k+1,p+1] {n,k} (-1)^k`                    | `C(n,p) (-1)^n`             |
//! | `I3`      | `Σ_{j<=k} [n,k] {k,j} C(n,j) (-1)^k`            | `(-1)^n`                    |
//! | `I4`      | `Σ_{j<=k} {n,k} [k,j] C(n,j) (-1)^k`            | `(-1)^n`                    |
//! | `I5`      | `Σ_{j<=k} C(n,k) {k,j} [j+1,p] (-1)^j`          | `(-1)^n` if `p = n+1`, else 0 |
//! | `I6`      | `Σ_{j<=k} [n,k] C(k,j) {j+1,p} (-1)^j`          | `(-1)^n` if `p = n+1`, else 0 |
//! | `ORTHO7`  | `Σ_k [n,k] {k,p} (-1)^(n-k)` and the swapped sum | `δ(n,p)`                    |
//! | `ORTHO7P` | `Σ_k [n,k] {k,p} (-1)^k` and the swapped sum    | `(-1)^n δ(n,p)`             |
//! | `ADD9`    | `{n+1,p+1}`                                     | `Σ_k C(n,k) {k,p}`          |
//! | `ADD10`   | `[n+1,p+1]`                                     | `Σ_k [n,k] C(k,p)`          |
//!
//! `[n,k]` is the unsigned Stirling number of the first kind, `{n,k}` the
//! Stirling number of the second kind. All sums run over `0 <= j <= k <= n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::exec::Execution;
use crate::numbers::{sign_pow, Count, Family, SignedValue, Triangle, DEFAULT_ROW_CAP};
use crate::report::serialize_decimal;

/// Largest `n_max` accepted by [`sweep`]. Sweeps read rows up to `n_max + 1`.
pub const SWEEP_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    Ortho7,
    Ortho7Prime,
    Add9,
    Add10,
}

impl Identity {
    /// Fixed order used whenever "all" identities are requested.
    pub const ALL: [Identity; 10] = [
        Identity::I1,
        Identity::I2,
        Identity::I3,
        Identity::I4,
        Identity::I5,
        Identity::I6,
        Identity::Ortho7,
        Identity::Ortho7Prime,
        Identity::Add9,
        Identity::Add10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::I1 => "I1",
            Identity::I2 => "I2",
            Identity::I3 => "I3",
            Identity::I4 => "I4",
            Identity::I5 => "I5",
            Identity::I6 => "I6",
            Identity::Ortho7 => "ORTHO7",
            Identity::Ortho7Prime => "ORTHO7P",
            Identity::Add9 => "ADD9",
            Identity::Add10 => "ADD10",
        }
    }

    /// Every admissible `(n, p)` with `n <= n_max`, in lexicographic order.
    /// `I3`/`I4` do not take `p`; their cases carry `p = 0`.
    pub fn cases(self, n_max: usize) -> Vec<(usize, usize)> {
        let mut cases = Vec::new();
        for n in 0..=n_max {
            let p_max = match self {
                Identity::I3 | Identity::I4 => 0,
                Identity::I5 | Identity::I6 => n + 1,
                _ => n,
            };
            cases.extend((0..=p_max).map(|p| (n, p)));
        }
        cases
    }

    fn variants(self) -> &'static [OrthoVariant] {
        match self {
            Identity::Ortho7 => &[OrthoVariant::Eq7First, OrthoVariant::Eq7Second],
            Identity::Ortho7Prime => &[OrthoVariant::Eq7PrimeFirst, OrthoVariant::Eq7PrimeSecond],
            _ => &[],
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let wanted = s.trim();
        Identity::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| format!("unknown identity `{s}`"))
    }
}

impl Serialize for Identity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// The four readings of the orthogonality relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrthoVariant {
    /// `Σ_k [n,k] {k,p} (-1)^(n-k) = δ(n,p)`
    Eq7First,
    /// `Σ_k {n,k} [k,p] (-1)^(n-k) = δ(n,p)`
    Eq7Second,
    /// `Σ_k [n,k] {k,p} (-1)^k = (-1)^n δ(n,p)`
    Eq7PrimeFirst,
    /// `Σ_k {n,k} [k,p] (-1)^k = (-1)^n δ(n,p)`
    Eq7PrimeSecond,
}

impl OrthoVariant {
    pub const ALL: [OrthoVariant; 4] = [
        OrthoVariant::Eq7First,
        OrthoVariant::Eq7Second,
        OrthoVariant::Eq7PrimeFirst,
        OrthoVariant::Eq7PrimeSecond,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideValues {
    #[serde(serialize_with = "serialize_decimal")]
    pub lhs: SignedValue,
    #[serde(serialize_with = "serialize_decimal")]
    pub rhs: SignedValue,
}

impl SideValues {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// How far the summation indices run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    /// Every index over `0..=n` (double sums over the full square), leaning
    /// on zero-extension for vanishing terms.
    #[default]
    Full,
    /// Only the index ranges where terms can be nonzero.
    Trimmed,
}

/// Accumulates signed terms as two unsigned partial sums.
#[derive(Default)]
struct SignedSum {
    plus: Count,
    minus: Count,
}

impl SignedSum {
    fn add(&mut self, negative: bool, term: Count) {
        if term.is_zero() {
            return;
        }
        if negative {
            self.minus += term;
        } else {
            self.plus += term;
        }
    }

    fn finish(self) -> SignedValue {
        BigInt::from_biguint(Sign::Plus, self.plus) - BigInt::from_biguint(Sign::Plus, self.minus)
    }
}

fn kronecker(a: usize, b: usize) -> SignedValue {
    if a == b {
        SignedValue::one()
    } else {
        SignedValue::zero()
    }
}

/// The three triangles an identity evaluation reads from.
#[derive(Debug, Clone)]
pub struct Tables {
    binomial: Triangle,
    first: Triangle,
    second: Triangle,
}

impl Tables {
    /// Builds all three triangles through row `n_max`.
    pub fn build(n_max: usize) -> Result<Self> {
        check_cap("n_max", n_max, DEFAULT_ROW_CAP)?;
        Ok(Tables {
            binomial: Triangle::build(Family::Binomial, n_max)?,
            first: Triangle::build(Family::StirlingFirstUnsigned, n_max)?,
            second: Triangle::build(Family::StirlingSecond, n_max)?,
        })
    }

    /// Assembles tables from one triangle per family (any order).
    pub fn from_triangles(triangles: [Triangle; 3]) -> Result<Self> {
        let mut slots: [Option<Triangle>; 3] = [None, None, None];
        for t in triangles {
            let slot = match t.family() {
                Family::Binomial => 0,
                Family::StirlingFirstUnsigned => 1,
                Family::StirlingSecond => 2,
            };
            if slots[slot].replace(t).is_some() {
                return Err(Error::Precondition("duplicate triangle family".into()));
            }
        }
        let [Some(binomial), Some(first), Some(second)] = slots else {
            return Err(Error::Precondition("one triangle per family required".into()));
        };
        Ok(Tables {
            binomial,
            first,
            second,
        })
    }

    /// Replaces the table of `triangle`'s family.
    pub fn with_triangle(mut self, triangle: Triangle) -> Self {
        match triangle.family() {
            Family::Binomial => self.binomial = triangle,
            Family::StirlingFirstUnsigned => self.first = triangle,
            Family::StirlingSecond => self.second = triangle,
        }
        self
    }

    pub fn triangle(&self, family: Family) -> &Triangle {
        match family {
            Family::Binomial => &self.binomial,
            Family::StirlingFirstUnsigned => &self.first,
            Family::StirlingSecond => &self.second,
        }
    }

    /// Highest row available in every table.
    pub fn n_max(&self) -> usize {
        self.binomial
            .n_max()
            .min(self.first.n_max())
            .min(self.second.n_max())
    }

    fn c(&self, n: usize, k: usize) -> &Count {
        self.binomial.get(n, k)
    }

    fn s1(&self, n: usize, k: usize) -> &Count {
        self.first.get(n, k)
    }

    fn s2(&self, n: usize, k: usize) -> &Count {
        self.second.get(n, k)
    }

    fn need_rows(&self, row: usize) -> Result<()> {
        if row > self.n_max() {
            return Err(Error::Precondition(format!(
                "evaluation needs row {row} but the tables stop at {}",
                self.n_max()
            )));
        }
        Ok(())
    }

    fn need_p_le(p: usize, bound: usize, what: &str) -> Result<()> {
        if p > bound {
            return Err(Error::Precondition(format!("{what}: p = {p} exceeds {bound}")));
        }
        Ok(())
    }

    /// Identity (1). Requires `p <= n`.
    pub fn identity_1(&self, n: usize, p: usize) -> Result<SideValues> {
        self.identity_1_with(n, p, Summation::Full)
    }

    pub fn identity_1_with(&self, n: usize, p: usize, range: Summation) -> Result<SideValues> {
        Self::need_p_le(p, n, "identity 1")?;
        self.need_rows(n + 1)?;
        let start = if range == Summation::Trimmed { p } else { 0 };
        let mut sum = SignedSum::default();
        for k in start..=n {
            sum.add(k % 2 == 1, self.s1(k, p) * self.s2(n + 1, k + 1));
        }
        Ok(SideValues {
            lhs: sum.finish(),
            rhs: sign_pow(p) * BigInt::from(self.c(n, p).clone()),
        })
    }

    /// Identity (2). Requires `p <= n`.
    pub fn identity_2(&self, n: usize, p: usize) -> Result<SideValues> {
        self.identity_2_with(n, p, Summation::Full)
    }

    pub fn identity_2_with(&self, n: usize, p: usize, range: Summation) -> Result<SideValues> {
        Self::need_p_le(p, n, "identity 2")?;
        self.need_rows(n + 1)?;
        let start = if range == Summation::Trimmed { p } else { 0 };
        let mut sum = SignedSum::default();
        for k in start..=n {
            sum.add(k % 2 == 1, self.s1(k + 1, p + 1) * self.s2(n, k));
        }
        Ok(SideValues {
            lhs: sum.finish(),
            rhs: sign_pow(n) * BigInt::from(self.c(n, p).clone()),
        })
    }

    /// Identity (3).
    pub fn identity_3(&self, n: usize) -> Result<SideValues> {
        self.identity_3_with(n, Summation::Full)
    }

    pub fn identity_3_with(&self, n: usize, range: Summation) -> Result<SideValues> {
        self.need_rows(n)?;
        let mut sum = SignedSum::default();
        for (j, k) in double_range(n, range) {
            sum.add(k % 2 == 1, self.s1(n, k) * self.s2(k, j) * self.c(n, j));
        }
        Ok(SideValues {
            lhs: sum.finish(),
            rhs: sign_pow(n),
        })
    }

    /// Identity (4).
    pub fn identity_4(&self, n: usize) -> Result<SideValues> {
        self.identity_4_with(n, Summation::Full)
    }

    pub fn identity_4_with(&self, n: usize, range: Summation) -> Result<SideValues> {
        self.need_rows(n)?;
        let mut sum = SignedSum::default();
        for (j, k) in double_range(n, range) {
            sum.add(k % 2 == 1, self.s2(n, k) * self.s1(k, j) * self.c(n, j));
        }
        Ok(SideValues {
            lhs: sum.finish(),
            rhs: sign_pow(n),
        })
    }

    /// Identity (5). Requires `p <= n + 1`; the right side is only defined
    /// for `n + 1 > p` and `n + 1 = p`.
    pub fn identity_5(&self, n: usize, p: usize) -> Result<SideValues> {
        self.identity_5_with(n, p, Summation::Full)
    }

    pub fn identity_5_with(&self, n: usize, p: usize, range: Summation) -> Result<SideValues> {
        Self::need_p_le(p, n + 1, "identity 5")?;
        self.need_rows(n + 1)?;
        let mut sum = SignedSum::default();
        for (j, k) in double_range(n, range) {
            if range == Summation::Trimmed && j + 1 < p {
                continue;
            }
            sum.add(j % 2 == 1, self.c(n, k) * self.s2(k, j) * self.s1(j + 1, p));
        }
        Ok(SideValues {
            lhs: sum.finish(),
            rhs: sign_pow(n) * kronecker(n + 1, p),
        })
    }

    /// Left side of identity (5) after collapsing the `k` sum with the
    /// addition formula for `{n+1,j+1}`: `Σ_j {n+1,j+1} [j+1,p] (-1)^j`.
    pub fn identity_5_collapsed(&self, n: usize, p: usize) -> Result<SignedValue> {
        Self::need_p_le(p, n + 1, "identity 5")?;
        self.need_rows(n + 1)?;
        let mut sum = SignedSum::default();
        for j in 0..=n {
            sum.add(j % 2 == 1, self.s2(n + 1, j + 1) * self.s1(j + 1, p));
        }
        Ok(sum.finish())
    }

    /// Identity (6). Requires `p <= n + 1`.
    pub fn identity_6(&self, n: usize, p: usize) -> Result<SideValues> {
        self.identity_6_with(n, p, Summation::Full)
    }

    pub fn identity_6_with(&self, n: usize, p: usize, range: Summation) -> Result<SideValues> {
        Self::need_p_le(p, n + 1, "identity 6")?;
        self.need_rows(n + 1)?;
        let mut sum = SignedSum::default();
        for (j, k) in double_range(n, range) {
            if range == Summation::Trimmed && j + 1 < p {
                continue;
            }
            sum.add(j % 2 == 1, self.s1(n, k) * self.c(k, j) * self.s2(j + 1, p));
        }
        Ok(SideValues {
            lhs: sum.finish(),
            rhs: sign_pow(n) * kronecker(n + 1, p),
        })
    }

    /// One reading of the orthogonality relation. Requires `p <= n`.
    pub fn orthogonality(&self, n: usize, p: usize, variant: OrthoVariant) -> Result<SideValues> {
        self.orthogonality_with(n, p, variant, Summation::Full)
    }

    pub fn orthogonality_with(
        &self,
        n: usize,
        p: usize,
        variant: OrthoVariant,
        range: Summation,
    ) -> Result<SideValues> {
        Self::need_p_le(p, n, "orthogonality")?;
        self.need_rows(n)?;
        let start = if range == Summation::Trimmed { p } else { 0 };
        let mut sum = SignedSum::default();
        for k in start..=n {
            let term = match variant {
                OrthoVariant::Eq7First | OrthoVariant::Eq7PrimeFirst => {
                    self.s1(n, k) * self.s2(k, p)
                }
                OrthoVariant::Eq7Second | OrthoVariant::Eq7PrimeSecond => {
                    self.s2(n, k) * self.s1(k, p)
                }
            };
            let negative = match variant {
                OrthoVariant::Eq7First | OrthoVariant::Eq7Second => (n - k) % 2 == 1,
                OrthoVariant::Eq7PrimeFirst | OrthoVariant::Eq7PrimeSecond => k % 2 == 1,
            };
            sum.add(negative, term);
        }
        let rhs = match variant {
            OrthoVariant::Eq7First | OrthoVariant::Eq7Second => kronecker(n, p),
            OrthoVariant::Eq7PrimeFirst | OrthoVariant::Eq7PrimeSecond => {
                sign_pow(n) * kronecker(n, p)
            }
        };
        Ok(SideValues {
            lhs: sum.finish(),
            rhs,
        })
    }

    /// Addition formula for the second kind. Requires `p <= n`.
    pub fn addition_9(&self, n: usize, p: usize) -> Result<SideValues> {
        self.addition_9_with(n, p, Summation::Full)
    }

    pub fn addition_9_with(&self, n: usize, p: usize, range: Summation) -> Result<SideValues> {
        Self::need_p_le(p, n, "addition 9")?;
        self.need_rows(n + 1)?;
        let start = if range == Summation::Trimmed { p } else { 0 };
        let mut sum = SignedSum::default();
        for k in start..=n {
            sum.add(false, self.c(n, k) * self.s2(k, p));
        }
        Ok(SideValues {
            lhs: BigInt::from(self.s2(n + 1, p + 1).clone()),
            rhs: sum.finish(),
        })
    }

    /// Addition formula for the first kind. Requires `p <= n`.
    pub fn addition_10(&self, n: usize, p: usize) -> Result<SideValues> {
        self.addition_10_with(n, p, Summation::Full)
    }

    pub fn addition_10_with(&self, n: usize, p: usize, range: Summation) -> Result<SideValues> {
        Self::need_p_le(p, n, "addition 10")?;
        self.need_rows(n + 1)?;
        let start = if range == Summation::Trimmed { p } else { 0 };
        let mut sum = SignedSum::default();
        for k in start..=n {
            sum.add(false, self.s1(n, k) * self.c(k, p));
        }
        Ok(SideValues {
            lhs: BigInt::from(self.s1(n + 1, p + 1).clone()),
            rhs: sum.finish(),
        })
    }

    /// Evaluates `id` at `(n, p)`. Orthogonality tags yield one entry per
    /// variant; every other tag yields exactly one.
    pub fn evaluate(
        &self,
        id: Identity,
        n: usize,
        p: usize,
        range: Summation,
    ) -> Result<Vec<(Option<OrthoVariant>, SideValues)>> {
        let single = |sides: SideValues| Ok(vec![(None, sides)]);
        match id {
            Identity::I1 => single(self.identity_1_with(n, p, range)?),
            Identity::I2 => single(self.identity_2_with(n, p, range)?),
            Identity::I3 => single(self.identity_3_with(n, range)?),
            Identity::I4 => single(self.identity_4_with(n, range)?),
            Identity::I5 => single(self.identity_5_with(n, p, range)?),
            Identity::I6 => single(self.identity_6_with(n, p, range)?),
            Identity::Add9 => single(self.addition_9_with(n, p, range)?),
            Identity::Add10 => single(self.addition_10_with(n, p, range)?),
            Identity::Ortho7 | Identity::Ortho7Prime => id
                .variants()
                .iter()
                .map(|&v| Ok((Some(v), self.orthogonality_with(n, p, v, range)?)))
                .collect(),
        }
    }
}

/// `(j, k)` pairs of a double sum over `0 <= j <= k <= n`.
fn double_range(n: usize, range: Summation) -> Box<dyn Iterator<Item = (usize, usize)>> {
    match range {
        Summation::Full => Box::new((0..=n).flat_map(move |k| (0..=n).map(move |j| (j, k)))),
        Summation::Trimmed => Box::new((0..=n).flat_map(|k| (0..=k).map(move |j| (j, k)))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub p: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<OrthoVariant>,
    #[serde(flatten)]
    pub sides: SideValues,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub identity: Identity,
    #[serde(rename = "n_max")]
    pub range_n_max: usize,
    pub status: Status,
    pub cases_checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Sweeps `id` over every admissible case with `n <= n_max`.
pub fn sweep(id: Identity, n_max: usize) -> Result<CheckReport> {
    check_cap("n_max", n_max, SWEEP_CAP)?;
    let tables = Tables::build(n_max + 1)?;
    sweep_with(&tables, id, n_max, Execution::default())
}

/// Sweeps `id` against caller-supplied tables, which must reach row
/// `n_max + 1`.
///
/// On failure the counterexample is the first in `(n, p)` order whatever
/// the execution strategy, and `cases_checked` counts the cases up to and
/// including it.
pub fn sweep_with(
    tables: &Tables,
    id: Identity,
    n_max: usize,
    exec: Execution,
) -> Result<CheckReport> {
    tables.need_rows(n_max + 1)?;
    let cases = id.cases(n_max);
    let failure = exec.find_first(&cases, |&(n, p)| {
        match tables.evaluate(id, n, p, Summation::Full) {
            Ok(results) => results
                .into_iter()
                .find(|(_, sides)| !sides.holds())
                .map(|(variant, sides)| Ok(Counterexample { n, p, variant, sides })),
            Err(e) => Some(Err(e)),
        }
    });
    Ok(match failure {
        None => CheckReport {
            identity: id,
            range_n_max: n_max,
            status: Status::Pass,
            cases_checked: cases.len(),
            counterexample: None,
        },
        Some((index, found)) => CheckReport {
            identity: id,
            range_n_max: n_max,
            status: Status::Fail,
            cases_checked: index + 1,
            counterexample: Some(found?),
        },
    })
}

/// Sweeps every identity in the fixed order of [`Identity::ALL`], sharing
/// one set of tables.
pub fn sweep_all(n_max: usize, exec: Execution) -> Result<Vec<CheckReport>> {
    check_cap("n_max", n_max, SWEEP_CAP)?;
    let tables = Tables::build(n_max + 1)?;
    Identity::ALL
        .iter()
        .map(|&id| sweep_with(&tables, id, n_max, exec))
        .collect()
}
