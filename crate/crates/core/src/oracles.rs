//! Definition-level enumeration oracles.
//!
//! These are intentionally naive: they walk every object being counted and
//! tally it. They share no code with the recurrences in [`crate::numbers`],
//! which makes them usable as independent witnesses.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{check_cap, Result};
use crate::exec::Execution;
use crate::numbers::{Count, Family, Triangle};

pub const PARTITION_CAP: usize = 12;
pub const CYCLE_CAP: usize = 9;
pub const SUBSET_CAP: usize = 20;

/// Tallies set partitions of `{0..n}` by block count (index = blocks).
///
/// Walks restricted-growth strings `a` with `a[0] = 0` and
/// `a[i] <= 1 + max(a[..i])`; each string is one partition.
pub fn set_partitions_by_blocks(n: usize) -> Result<Vec<u64>> {
    check_cap("set size for partition enumeration", n, PARTITION_CAP)?;
    let mut tally = vec![0u64; n + 1];
    if n == 0 {
        tally[0] = 1;
        return Ok(tally);
    }
    let mut labels = vec![0usize; n];
    // prefix_max[i] = max(labels[..=i])
    let mut prefix_max = vec![0usize; n];
    loop {
        tally[prefix_max[n - 1] + 1] += 1;
        let Some(i) = (1..n).rev().find(|&i| labels[i] <= prefix_max[i - 1]) else {
            break;
        };
        labels[i] += 1;
        prefix_max[i] = prefix_max[i - 1].max(labels[i]);
        for j in i + 1..n {
            labels[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    Ok(tally)
}

/// Tallies permutations of `n` elements by number of cycles.
pub fn permutations_by_cycles(n: usize) -> Result<Vec<u64>> {
    check_cap("permutation length for cycle enumeration", n, CYCLE_CAP)?;
    let mut tally = vec![0u64; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        tally[cycle_count(&perm)] += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(tally)
}

/// Tallies subsets of an `n`-set by size.
pub fn subsets_by_size(n: usize) -> Result<Vec<u64>> {
    check_cap("set size for subset enumeration", n, SUBSET_CAP)?;
    let mut tally = vec![0u64; n + 1];
    for mask in 0u32..(1u32 << n) {
        tally[mask.count_ones() as usize] += 1;
    }
    Ok(tally)
}

fn pick(tally: Vec<u64>, k: usize) -> Count {
    tally.get(k).map_or_else(Count::zero, |&c| Count::from(c))
}

pub fn count_set_partitions(n: usize, k: usize) -> Result<Count> {
    Ok(pick(set_partitions_by_blocks(n)?, k))
}

pub fn count_permutations_by_cycles(n: usize, k: usize) -> Result<Count> {
    Ok(pick(permutations_by_cycles(n)?, k))
}

pub fn count_subsets(n: usize, k: usize) -> Result<Count> {
    Ok(pick(subsets_by_size(n)?, k))
}

fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

/// Lexicographic successor; false once `perm` is the last permutation.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
        return false;
    };
    let pivot = i - 1;
    let j = (i..perm.len())
        .rev()
        .find(|&j| perm[j] > perm[pivot])
        .expect("a larger element exists right of the pivot");
    perm.swap(pivot, j);
    perm[i..].reverse();
    true
}

/// First entry where a recurrence table and its oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::report::serialize_decimal")]
    pub recurrence: Count,
    #[serde(serialize_with = "crate::report::serialize_decimal")]
    pub oracle: Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub entries_compared: usize,
    pub mismatch: Option<Mismatch>,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn oracle_row(family: Family, n: usize) -> Result<Vec<u64>> {
    match family {
        Family::Binomial => subsets_by_size(n),
        Family::StirlingFirstUnsigned => permutations_by_cycles(n),
        Family::StirlingSecond => set_partitions_by_blocks(n),
    }
}

/// Compares every triangle entry against its enumeration oracle on
/// `0 <= k <= n <= limit`, where the limits are for partitions (second
/// kind), cycles (unsigned first kind) and subsets (binomial).
///
/// The reported mismatch is the first in family order binomial, first kind,
/// second kind, then by `n`, then by `k`.
pub fn compare_with_triangles(
    partitions_n: usize,
    cycles_n: usize,
    subsets_n: usize,
    exec: Execution,
) -> Result<OracleComparison> {
    let tables = [
        Triangle::build(Family::Binomial, subsets_n)?,
        Triangle::build(Family::StirlingFirstUnsigned, cycles_n)?,
        Triangle::build(Family::StirlingSecond, partitions_n)?,
    ];
    compare_tables(&tables, partitions_n, cycles_n, subsets_n, exec)
}

/// As [`compare_with_triangles`] but against caller-supplied tables, one per
/// family in any order.
pub fn compare_tables(
    tables: &[Triangle],
    partitions_n: usize,
    cycles_n: usize,
    subsets_n: usize,
    exec: Execution,
) -> Result<OracleComparison> {
    check_cap("partition limit", partitions_n, PARTITION_CAP)?;
    check_cap("cycle limit", cycles_n, CYCLE_CAP)?;
    check_cap("subset limit", subsets_n, SUBSET_CAP)?;

    let mut jobs = Vec::new();
    for (family, limit) in [
        (Family::Binomial, subsets_n),
        (Family::StirlingFirstUnsigned, cycles_n),
        (Family::StirlingSecond, partitions_n),
    ] {
        let table = tables
            .iter()
            .find(|t| t.family() == family)
            .ok_or_else(|| {
                crate::Error::Precondition(format!("no {family} table supplied"))
            })?;
        if table.n_max() < limit {
            return Err(crate::Error::Precondition(format!(
                "{family} table has n_max = {} but {limit} rows are compared",
                table.n_max()
            )));
        }
        jobs.extend((0..=limit).map(|n| (table, n)));
    }

    let rows = exec.map(&jobs, |&(table, n)| -> Result<Option<Mismatch>> {
        let oracle = oracle_row(table.family(), n)?;
        Ok(oracle.iter().enumerate().find_map(|(k, &count)| {
            let oracle = Count::from(count);
            let recurrence = table.get(n, k);
            (recurrence != &oracle).then(|| Mismatch {
                family: table.family(),
                n,
                k,
                recurrence: recurrence.clone(),
                oracle,
            })
        }))
    });
    let mut mismatch = None;
    for row in rows {
        if let Some(m) = row? {
            mismatch = Some(m);
            break;
        }
    }
    let entries_compared = jobs.iter().map(|&(_, n)| n + 1).sum();
    Ok(OracleComparison {
        entries_compared,
        mismatch,
    })
}
