//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stirling::identities::{sweep_with, Identity, Tables};
use stirling::numbers::{bell_number, factorial, Count, Family, Triangle};
use stirling::transforms::{replay_proof_identity_2, verify_inversion_roundtrip, Sequence};
use stirling::Execution;

/// Seed for the random roundtrip trials.
const ROUNDTRIP_SEED: u64 = 0x5712_1206;
const ROUNDTRIP_TRIALS: usize = 1000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn run_cli(args: &[&str]) -> (Option<i32>, String, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_stirling"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        start.elapsed(),
    )
}

fn identity_sweep() -> Outcome {
    let (code, stdout, elapsed) = run_cli(&["check", "--identity", "all", "--nmax", "40"]);
    let lines: Vec<&str> = stdout.lines().collect();
    if code != Some(0) {
        return Err(format!("exit {code:?}: {stdout}"));
    }
    if lines.len() != 10 || !lines.iter().all(|l| l.split(' ').nth(1) == Some("PASS")) {
        return Err(format!("unexpected report: {stdout}"));
    }
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}, limit 10s"));
    }
    Ok(format!("10 identities, n <= 40, {elapsed:.2?}"))
}

fn oracle_equivalence() -> Outcome {
    let (code, stdout, elapsed) = run_cli(&[
        "oracle-compare",
        "--partitions",
        "12",
        "--cycles",
        "9",
        "--subsets",
        "20",
    ]);
    if code != Some(0) || !stdout.contains("AGREE") {
        return Err(format!("exit {code:?}: {stdout}"));
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}, limit 60s"));
    }
    Ok(format!("{}, {elapsed:.2?}", stdout.lines().last().unwrap_or_default()))
}

fn row_sums() -> Outcome {
    let first = Triangle::build(Family::StirlingFirstUnsigned, 40).map_err(|e| e.to_string())?;
    let second = Triangle::build(Family::StirlingSecond, 40).map_err(|e| e.to_string())?;
    for n in 0..=40 {
        let s1: Count = first.row(n).unwrap().iter().sum();
        if s1 != factorial(n) {
            return Err(format!("Σ_k [{n},k] = {s1} != {n}!"));
        }
        let s2: Count = second.row(n).unwrap().iter().sum();
        if s2 != bell_number(n) {
            return Err(format!("Σ_k {{{n},k}} = {s2} != Bell({n})"));
        }
    }
    Ok("n <= 40 for n! and Bell(n)".into())
}

fn transform_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ROUNDTRIP_SEED);
    for trial in 0..ROUNDTRIP_TRIALS {
        let len = rng.gen_range(1..=20);
        let terms: Vec<i64> = (0..len).map(|_| rng.gen_range(-100..=100)).collect();
        let s = Sequence::from_i64s(&terms).map_err(|e| e.to_string())?;
        if !verify_inversion_roundtrip(&s) {
            return Err(format!("trial {trial}: {s}"));
        }
    }
    Ok(format!("{ROUNDTRIP_TRIALS} sequences, seed {ROUNDTRIP_SEED:#x}"))
}

fn proof_replay() -> Outcome {
    let tables = Tables::build(31).map_err(|e| e.to_string())?;
    for p in 0..=30 {
        let replay = replay_proof_identity_2(p, 30).map_err(|e| e.to_string())?;
        if !replay.step1.passed() {
            return Err(format!("p = {p}: STEP1 fails at {:?}", replay.step1.first_mismatch));
        }
        if !replay.step2.passed() {
            return Err(format!("p = {p}: STEP2 fails at {:?}", replay.step2.first_mismatch));
        }
        for n in p..=30 {
            let direct = tables.identity_2(n, p).map_err(|e| e.to_string())?.lhs;
            if replay.step2_values.terms()[n] != direct {
                return Err(format!("p = {p}, n = {n}: STEP2 value differs from identity 2"));
            }
        }
    }
    Ok("p <= 30, n_max = 30, both steps".into())
}

fn mutation_sensitivity() -> Outcome {
    let base = Tables::build(13).map_err(|e| e.to_string())?;
    let mut mutants = 0;
    for family in Family::ALL {
        for n in 2..=10 {
            for k in 0..=n {
                let triangle = base.triangle(family);
                let bumped = triangle.get(n, k) + 1u32;
                let mutated = base
                    .clone()
                    .with_triangle(triangle.with_entry(n, k, bumped).map_err(|e| e.to_string())?);
                let caught = Identity::ALL.iter().any(|&id| {
                    sweep_with(&mutated, id, 12, Execution::default())
                        .map(|r| !r.passed())
                        .unwrap_or(false)
                });
                if !caught {
                    return Err(format!("{family} ({n},{k}) + 1 went undetected"));
                }
                mutants += 1;
            }
        }
    }
    Ok(format!("{mutants} single-entry mutants all detected"))
}

fn serialization() -> Outcome {
    let (code, csv, _) = run_cli(&["triangle", "--family", "binomial", "--rows", "4", "--format", "csv"]);
    let expected = "1\n1,1\n1,2,1\n1,3,3,1\n1,4,6,4,1\n";
    if code != Some(0) || csv != expected {
        return Err(format!("csv was {csv:?}"));
    }
    let (code, json, _) = run_cli(&[
        "triangle",
        "--family",
        "stirling_first_unsigned",
        "--rows",
        "60",
        "--format",
        "json",
    ]);
    if code != Some(0) {
        return Err(format!("json export exit {code:?}"));
    }
    let doc: serde_json::Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let table = Triangle::build(Family::StirlingFirstUnsigned, 60).map_err(|e| e.to_string())?;
    let rows = doc["rows"].as_array().ok_or("rows missing")?;
    if rows.len() != 61 {
        return Err(format!("{} rows", rows.len()));
    }
    for (n, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or("row not an array")?;
        if row.len() != n + 1 {
            return Err(format!("row {n} has {} entries", row.len()));
        }
        for (k, entry) in row.iter().enumerate() {
            let text = entry.as_str().ok_or_else(|| format!("({n},{k}) is not a string"))?;
            let parsed: BigUint = text.parse().map_err(|_| format!("({n},{k}) = {text:?}"))?;
            if &parsed != table.get(n, k) {
                return Err(format!("({n},{k}) lost precision"));
            }
        }
    }
    Ok("binomial CSV byte-exact; first kind JSON exact to n = 60".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("identity sweep", identity_sweep),
        ("oracle equivalence", oracle_equivalence),
        ("row-sum cross-checks", row_sums),
        ("transform roundtrip", transform_roundtrip),
        ("proof replay", proof_replay),
        ("mutation sensitivity", mutation_sensitivity),
        ("serialization", serialization),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} [{name}]: FAIL ({detail})", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
