//! Exact binomial coefficients and Stirling numbers of both kinds.
//!
//! Values live in dense lower-triangular tables built row by row from the
//! standard recurrences:
//!
//! * Pascal: `C(n,k) = C(n-1,k-1) + C(n-1,k)`
//! * second kind: `{n,k} = k{n-1,k} + {n-1,k-1}`
//! * unsigned first kind: `[n,k] = (n-1)[n-1,k] + [n-1,k-1]`
//!
//! Every family is zero-extended: entries with `k < 0` or `k > n` read as 0.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_cap, Error, Result};

/// Nonnegative exact count.
pub type Count = BigUint;
/// Signed exact value.
pub type SignedValue = BigInt;

/// Largest `n_max` accepted by [`Triangle::build`].
pub const DEFAULT_ROW_CAP: usize = 500;

static ZERO: Count = BigUint::ZERO;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Binomial,
    StirlingFirstUnsigned,
    StirlingSecond,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::Binomial,
        Family::StirlingFirstUnsigned,
        Family::StirlingSecond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Binomial => "binomial",
            Family::StirlingFirstUnsigned => "stirling_first_unsigned",
            Family::StirlingSecond => "stirling_second",
        }
    }

    /// Row 0 of every family is `[1]`.
    fn first_row() -> Vec<Count> {
        vec![Count::one()]
    }

    /// Row `n` (n >= 1) from row `n - 1`.
    fn next_row(self, prev: &[Count]) -> Vec<Count> {
        let n = prev.len();
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let diag = if k == 0 { &ZERO } else { &prev[k - 1] };
            let above = prev.get(k).unwrap_or(&ZERO);
            let value = match self {
                Family::Binomial => {
                    // C(n,0) = 1 is not produced by the k-1 term
                    if k == 0 {
                        Count::one()
                    } else {
                        diag + above
                    }
                }
                Family::StirlingSecond => above * k + diag,
                Family::StirlingFirstUnsigned => above * (n - 1) + diag,
            };
            row.push(value);
        }
        row
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let normalized = s.trim().to_ascii_lowercase().replace('-', "_");
        match normalized.as_str() {
            "binomial" => Ok(Family::Binomial),
            "stirling_first_unsigned" | "stirling_first" => Ok(Family::StirlingFirstUnsigned),
            "stirling_second" => Ok(Family::StirlingSecond),
            _ => Err(format!(
                "unknown family `{s}` (expected binomial, stirling_first_unsigned or stirling_second)"
            )),
        }
    }
}

/// Immutable lower-triangular table of one family, rows `0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    family: Family,
    rows: Vec<Vec<Count>>,
}

impl Triangle {
    /// Builds rows `0..=n_max`, rejecting `n_max > DEFAULT_ROW_CAP`.
    pub fn build(family: Family, n_max: usize) -> Result<Self> {
        Self::build_with_cap(family, n_max, DEFAULT_ROW_CAP)
    }

    pub fn build_with_cap(family: Family, n_max: usize, cap: usize) -> Result<Self> {
        check_cap("n_max", n_max, cap)?;
        let mut table = Triangle {
            family,
            rows: vec![Family::first_row()],
        };
        table.extend_to(n_max);
        Ok(table)
    }

    /// Wraps externally supplied rows. Only the shape is validated (row `n`
    /// must have `n + 1` entries), so deliberately corrupted tables can be
    /// fed to the identity checkers.
    pub fn from_rows(family: Family, rows: Vec<Vec<Count>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::MalformedTriangle("no rows".into()));
        }
        if let Some((n, row)) = rows.iter().enumerate().find(|(n, r)| r.len() != n + 1) {
            return Err(Error::MalformedTriangle(format!(
                "row {n} has {} entries, expected {}",
                row.len(),
                n + 1
            )));
        }
        Ok(Triangle { family, rows })
    }

    fn extend_to(&mut self, n_max: usize) {
        while self.rows.len() <= n_max {
            let next = self.family.next_row(self.rows.last().expect("row 0 exists"));
            self.rows.push(next);
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<Count>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Option<&[Count]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// Entry `(n, k)`; zero when `k > n`.
    ///
    /// Panics if `n > n_max`.
    pub fn get(&self, n: usize, k: usize) -> &Count {
        if k > n {
            return &ZERO;
        }
        &self.rows[n][k]
    }

    /// Entry `(n, k)` for arbitrary signed indices, zero outside `0 <= k <= n`.
    ///
    /// Panics if `n > n_max`.
    pub fn at(&self, n: i64, k: i64) -> &Count {
        if n < 0 || k < 0 || k > n {
            return &ZERO;
        }
        self.get(n as usize, k as usize)
    }

    /// Copy of this table with entry `(n, k)` replaced.
    pub fn with_entry(&self, n: usize, k: usize, value: Count) -> Result<Self> {
        if n > self.n_max() || k > n {
            return Err(Error::Precondition(format!(
                "({n}, {k}) is not a stored entry of a table with n_max = {}",
                self.n_max()
            )));
        }
        let mut copy = self.clone();
        copy.rows[n][k] = value;
        Ok(copy)
    }
}

type Cache = RwLock<HashMap<Family, Arc<Triangle>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared table for `family` covering at least row `n`, or `None` past the cap.
fn shared_table(family: Family, n: usize) -> Option<Arc<Triangle>> {
    if n > DEFAULT_ROW_CAP {
        return None;
    }
    if let Some(table) = cache().read().ok()?.get(&family) {
        if table.n_max() >= n {
            return Some(Arc::clone(table));
        }
    }
    let mut guard = cache().write().ok()?;
    let current = guard.get(&family).map_or(0, |t| t.n_max());
    if current >= n {
        return guard.get(&family).cloned();
    }
    // grow geometrically so a scan over increasing n rebuilds O(log n) times
    let target = n.max(2 * current).clamp(16, DEFAULT_ROW_CAP);
    let mut table = guard
        .get(&family)
        .map(|t| (**t).clone())
        .unwrap_or_else(|| Triangle {
            family,
            rows: vec![Family::first_row()],
        });
    table.extend_to(target);
    let table = Arc::new(table);
    guard.insert(family, Arc::clone(&table));
    Some(table)
}

/// Row `n` of `family`, computed without the cache.
fn standalone_row(family: Family, n: usize) -> Vec<Count> {
    let mut row = Family::first_row();
    for _ in 0..n {
        row = family.next_row(&row);
    }
    row
}

fn scalar(family: Family, n: usize, k: i64) -> Count {
    if k < 0 || k as u64 > n as u64 {
        return Count::zero();
    }
    let k = k as usize;
    match shared_table(family, n) {
        Some(table) => table.get(n, k).clone(),
        None => standalone_row(family, n).swap_remove(k),
    }
}

/// Number of `k`-subsets of an `n`-set.
pub fn binomial(n: usize, k: i64) -> Count {
    scalar(Family::Binomial, n, k)
}

/// `{n,k}`: partitions of an `n`-set into `k` nonempty blocks.
pub fn stirling_second(n: usize, k: i64) -> Count {
    scalar(Family::StirlingSecond, n, k)
}

/// `[n,k]`: permutations of `n` elements with exactly `k` cycles.
pub fn stirling_first_unsigned(n: usize, k: i64) -> Count {
    scalar(Family::StirlingFirstUnsigned, n, k)
}

/// `s(n,k) = (-1)^(n-k) [n,k]`.
pub fn stirling_first_signed(n: usize, k: i64) -> SignedValue {
    let magnitude = stirling_first_unsigned(n, k);
    // parity of n - k equals parity of n + k, which avoids the subtraction
    let sign = if (n as i64).wrapping_add(k) % 2 == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    };
    SignedValue::from_biguint(sign, magnitude)
}

pub fn build_triangle(family: Family, n_max: usize) -> Result<Triangle> {
    Triangle::build(family, n_max)
}

pub fn factorial(n: usize) -> Count {
    (1..=n).fold(Count::one(), |acc, i| acc * i)
}

/// Bell number via the Bell triangle: each row starts with the last entry of
/// the previous row, and every further entry adds its upper-left neighbour.
/// `B(n)` is the first entry of row `n`.
pub fn bell_number(n: usize) -> Count {
    let mut row = vec![Count::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("nonempty").clone());
        for upper_left in &row {
            let value = next.last().expect("nonempty") + upper_left;
            next.push(value);
        }
        row = next;
    }
    row.swap_remove(0)
}

/// `(-1)^e` as a signed value.
pub(crate) fn sign_pow(e: usize) -> SignedValue {
    if e.is_multiple_of(2) {
        SignedValue::one()
    } else {
        -SignedValue::one()
    }
}
