//! Command-line front end. Data goes to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical
//! counterexample or disagreement is found, 2 for usage and resource errors.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::exec::Execution;
use crate::identities::{self, CheckReport, Identity, SWEEP_CAP};
use crate::numbers::{Family, Triangle};
use crate::oracles::{self, CYCLE_CAP, PARTITION_CAP, SUBSET_CAP};
use crate::report::serialize_decimal;
use crate::transforms::{self, Sequence};

pub const EXIT_OK: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    /// a_n = Σ_k [n,k] (-1)^(n-k) b_k
    #[value(name = "to_a", alias = "to-a")]
    ToA,
    /// b_n = Σ_k {n,k} a_k
    #[value(name = "to_b", alias = "to-b")]
    ToB,
    /// Check that both compositions give the input back
    Roundtrip,
}

#[derive(Debug, Parser)]
#[command(
    name = "stirling",
    version,
    about = "Exact Stirling numbers, binomial coefficients and the identities between them"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print rows 0..=ROWS of a triangle.
    Triangle {
        /// binomial, stirling_first_unsigned or stirling_second
        #[arg(long)]
        family: Family,
        #[arg(long)]
        rows: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Sweep identities over every admissible (n, p) with n <= NMAX.
    Check {
        /// Identity tags (I1..I6, ORTHO7, ORTHO7P, ADD9, ADD10) or `all`.
        #[arg(long = "identity", required = true, num_args = 1.., value_delimiter = ',')]
        identities: Vec<String>,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Apply the Stirling inverse pair to a sequence.
    Transform {
        #[arg(long, value_enum)]
        direction: Direction,
        /// Decimal integers, as separate values or one space/comma separated list.
        #[arg(long, required = true, num_args = 1.., allow_negative_numbers = true)]
        terms: Vec<String>,
    },
    /// Compare recurrence triangles with brute-force enumeration.
    OracleCompare {
        /// Largest set size for partition enumeration (second kind).
        #[arg(long, default_value_t = PARTITION_CAP)]
        partitions: usize,
        /// Largest permutation length for cycle enumeration (first kind).
        #[arg(long, default_value_t = CYCLE_CAP)]
        cycles: usize,
        /// Largest set size for subset enumeration (binomial).
        #[arg(long, default_value_t = SUBSET_CAP)]
        subsets: usize,
    },
    /// Rebuild identity (2) from the first-kind addition formula through the inverse pair.
    ReplayProof {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        nmax: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Triangle {
            family,
            rows,
            format,
        } => {
            let table = Triangle::build(family, rows)?;
            out.write_all(render_triangle(&table, format)?.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Check {
            identities,
            nmax,
            format,
        } => {
            let selected = expand_identities(&identities)?;
            if nmax > SWEEP_CAP {
                return Err(Error::ResourceLimit {
                    what: "nmax",
                    requested: nmax,
                    cap: SWEEP_CAP,
                }
                .into());
            }
            let tables = identities::Tables::build(nmax + 1)?;
            let reports = selected
                .iter()
                .map(|&id| identities::sweep_with(&tables, id, nmax, Execution::default()))
                .collect::<Result<Vec<_>, _>>()?;
            out.write_all(render_reports(&reports, format)?.as_bytes())?;
            Ok(if reports.iter().all(CheckReport::passed) {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
        Command::Transform { direction, terms } => {
            let seq: Sequence = terms.join(" ").parse().map_err(CliError::Usage)?;
            match direction {
                Direction::ToA => {
                    writeln!(out, "{}", transforms::stirling_first_signed_transform(&seq))?;
                    Ok(EXIT_OK)
                }
                Direction::ToB => {
                    writeln!(out, "{}", transforms::stirling_second_transform(&seq))?;
                    Ok(EXIT_OK)
                }
                Direction::Roundtrip => {
                    if transforms::verify_inversion_roundtrip(&seq) {
                        writeln!(out, "ROUNDTRIP-OK")?;
                        Ok(EXIT_OK)
                    } else {
                        writeln!(out, "ROUNDTRIP-FAIL")?;
                        Ok(EXIT_COUNTEREXAMPLE)
                    }
                }
            }
        }
        Command::OracleCompare {
            partitions,
            cycles,
            subsets,
        } => {
            let report =
                oracles::compare_with_triangles(partitions, cycles, subsets, Execution::default())?;
            writeln!(
                out,
                "binomial n<={subsets} stirling_first_unsigned n<={cycles} stirling_second n<={partitions}"
            )?;
            match report.mismatch {
                None => {
                    writeln!(out, "AGREE entries={}", report.entries_compared)?;
                    Ok(EXIT_OK)
                }
                Some(m) => {
                    writeln!(
                        out,
                        "MISMATCH family={} n={} k={} recurrence={} oracle={}",
                        m.family, m.n, m.k, m.recurrence, m.oracle
                    )?;
                    Ok(EXIT_COUNTEREXAMPLE)
                }
            }
        }
        Command::ReplayProof { p, nmax } => {
            let replay = transforms::replay_proof_identity_2(p, nmax)?;
            let steps = [
                ("STEP1", &replay.step1, &replay.step1_values, &replay.a),
                ("STEP2", &replay.step2, &replay.step2_values, &replay.b),
            ];
            for (label, outcome, got, expected) in steps {
                match outcome.first_mismatch {
                    None => writeln!(out, "{label} PASS p={p} nmax={nmax}")?,
                    Some(n) => writeln!(
                        out,
                        "{label} FAIL p={p} n={n} expected={} got={}",
                        expected.terms()[n],
                        got.terms()[n]
                    )?,
                }
            }
            Ok(if replay.passed() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
    }
}

fn expand_identities(raw: &[String]) -> Result<Vec<Identity>, CliError> {
    let mut selected = Vec::new();
    for item in raw {
        if item.trim().eq_ignore_ascii_case("all") {
            selected.extend(Identity::ALL);
        } else {
            selected.push(item.parse::<Identity>().map_err(CliError::Usage)?);
        }
    }
    Ok(selected)
}

#[derive(Serialize)]
struct TriangleJson<'a> {
    family: Family,
    n_max: usize,
    rows: Vec<Vec<Decimal<'a>>>,
}

#[derive(Serialize)]
struct Decimal<'a>(#[serde(serialize_with = "serialize_decimal")] &'a crate::numbers::Count);

/// Renders a triangle. CSV and plain put one row per line (comma or space
/// separated); JSON is one object with decimal-string entries.
pub fn render_triangle(table: &Triangle, format: OutputFormat) -> Result<String, serde_json::Error> {
    let join = |sep: &str| {
        let mut s = String::new();
        for row in table.rows() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            s.push_str(&line.join(sep));
            s.push('\n');
        }
        s
    };
    Ok(match format {
        OutputFormat::Plain => join(" "),
        OutputFormat::Csv => join(","),
        OutputFormat::Json => {
            let doc = TriangleJson {
                family: table.family(),
                n_max: table.n_max(),
                rows: table
                    .rows()
                    .iter()
                    .map(|row| row.iter().map(Decimal).collect())
                    .collect(),
            };
            let mut s = serde_json::to_string(&doc)?;
            s.push('\n');
            s
        }
    })
}

pub fn render_reports(
    reports: &[CheckReport],
    format: OutputFormat,
) -> Result<String, serde_json::Error> {
    let mut s = String::new();
    match format {
        OutputFormat::Plain => {
            for r in reports {
                s.push_str(&format!("{} {} cases={}", r.identity, r.status, r.cases_checked));
                if let Some(cx) = &r.counterexample {
                    s.push_str(&format!(" n={} p={}", cx.n, cx.p));
                    if let Some(v) = cx.variant {
                        s.push_str(&format!(" variant={}", variant_name(v)));
                    }
                    s.push_str(&format!(" lhs={} rhs={}", cx.sides.lhs, cx.sides.rhs));
                }
                s.push('\n');
            }
        }
        OutputFormat::Csv => {
            s.push_str("identity,n_max,status,cases_checked,n,p,variant,lhs,rhs\n");
            for r in reports {
                s.push_str(&format!(
                    "{},{},{},{}",
                    r.identity, r.range_n_max, r.status, r.cases_checked
                ));
                match &r.counterexample {
                    None => s.push_str(",,,,,\n"),
                    Some(cx) => s.push_str(&format!(
                        ",{},{},{},{},{}\n",
                        cx.n,
                        cx.p,
                        cx.variant.map(variant_name).unwrap_or(""),
                        cx.sides.lhs,
                        cx.sides.rhs
                    )),
                }
            }
        }
        OutputFormat::Json => {
            s = serde_json::to_string(reports)?;
            s.push('\n');
        }
    }
    Ok(s)
}

fn variant_name(v: identities::OrthoVariant) -> &'static str {
    use identities::OrthoVariant::*;
    match v {
        Eq7First => "eq7_first",
        Eq7Second => "eq7_second",
        Eq7PrimeFirst => "eq7prime_first",
        Eq7PrimeSecond => "eq7prime_second",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["stirling"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn triangle_csv() {
        let (code, out, _) = run_capture(&["triangle", "--family", "binomial", "--rows", "3", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1\n1,1\n1,2,1\n1,3,3,1\n");
        let (_, out, _) =
            run_capture(&["triangle", "--family", "stirling_second", "--rows", "2", "--format", "csv"]);
        assert_eq!(out, "1\n0,1\n0,1,1\n");
    }

    #[test]
    fn triangle_json_and_plain() {
        let (code, out, _) = run_capture(&[
            "triangle",
            "--family",
            "stirling_first_unsigned",
            "--rows",
            "0",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"family\":\"stirling_first_unsigned\",\"n_max\":0,\"rows\":[[\"1\"]]}\n");
        let (_, out, _) = run_capture(&["triangle", "--family", "stirling_second", "--rows", "3"]);
        assert_eq!(out, "1\n0 1\n0 1 1\n0 1 3 1\n");
    }

    #[test]
    fn triangle_usage_errors() {
        assert_eq!(run_capture(&["triangle", "--family", "lah", "--rows", "3"]).0, 2);
        assert_eq!(run_capture(&["triangle", "--family", "binomial", "--rows", "-1"]).0, 2);
        let (code, _, err) = run_capture(&["triangle", "--family", "binomial", "--rows", "501"]);
        assert_eq!(code, 2);
        assert!(err.contains("exceeds"));
        assert_eq!(run_capture(&["triangle", "--family", "binomial", "--rows", "500"]).0, 0);
    }

    #[test]
    fn check_outputs() {
        let (code, out, _) = run_capture(&["check", "--identity", "I1", "--nmax", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out, "I1 PASS cases=1\n");
        let (code, out, _) = run_capture(&["check", "--identity", "all", "--nmax", "25"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 10);
        assert!(lines.iter().all(|l| l.contains(" PASS ")));
        assert!(lines[0].starts_with("I1 ") && lines[9].starts_with("ADD10 "));
        let (code, out, _) = run_capture(&["check", "--identity", "I5", "--nmax", "30", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["cases_checked"], 527);
        assert_eq!(v[0]["status"], "pass");
        let (_, out, _) = run_capture(&["check", "--identity", "I3,ADD9", "--nmax", "2", "--format", "csv"]);
        assert_eq!(
            out,
            "identity,n_max,status,cases_checked,n,p,variant,lhs,rhs\nI3,2,PASS,3,,,,,\nADD9,2,PASS,6,,,,,\n"
        );
    }

    #[test]
    fn check_usage_errors() {
        assert_eq!(run_capture(&["check", "--identity", "I9", "--nmax", "3"]).0, 2);
        assert_eq!(run_capture(&["check", "--nmax", "3"]).0, 2);
        assert_eq!(run_capture(&["check", "--identity", "I1", "--nmax", "201"]).0, 2);
    }

    #[test]
    fn check_failure_rendering() {
        let tables = identities::Tables::build(6).unwrap();
        let broken = tables
            .triangle(Family::Binomial)
            .with_entry(3, 1, 4u32.into())
            .unwrap();
        let tables = tables.with_triangle(broken);
        let report = identities::sweep_with(&tables, Identity::I1, 5, Execution::Sequential).unwrap();
        assert!(!report.passed());
        let plain = render_reports(std::slice::from_ref(&report), OutputFormat::Plain).unwrap();
        assert!(plain.starts_with("I1 FAIL cases="), "{plain}");
        assert!(plain.contains(" n=3 p=1 lhs=-3 rhs=-4"), "{plain}");
        let json = render_reports(&[report], OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[0]["counterexample"]["lhs"], "-3");
        assert_eq!(v[0]["counterexample"]["rhs"], "-4");
    }

    #[test]
    fn transform_commands() {
        assert_eq!(run_capture(&["transform", "--direction", "to_b", "--terms", "1"]).1, "1\n");
        assert_eq!(
            run_capture(&["transform", "--direction", "to_a", "--terms", "1 1 1"]).1,
            "1 1 0\n"
        );
        assert_eq!(
            run_capture(&["transform", "--direction", "to_a", "--terms", "1", "1", "1"]).1,
            "1 1 0\n"
        );
        let (code, out, _) =
            run_capture(&["transform", "--direction", "roundtrip", "--terms", "7", "-3", "0", "2", "5"]);
        assert_eq!((code, out.as_str()), (0, "ROUNDTRIP-OK\n"));
        let (code, out, _) =
            run_capture(&["transform", "--direction", "roundtrip", "--terms", "7 -3 0 2 5"]);
        assert_eq!((code, out.as_str()), (0, "ROUNDTRIP-OK\n"));
        assert_eq!(run_capture(&["transform", "--direction", "to_a", "--terms", "1 x"]).0, 2);
        assert_eq!(run_capture(&["transform", "--direction", "to_a", "--terms", "2.5"]).0, 2);
        assert_eq!(run_capture(&["transform", "--direction", "to_a"]).0, 2);
    }

    #[test]
    fn oracle_compare_commands() {
        let (code, out, _) = run_capture(&[
            "oracle-compare",
            "--partitions",
            "0",
            "--cycles",
            "0",
            "--subsets",
            "0",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("AGREE entries=3"), "{out}");
        let (code, _, _) = run_capture(&["oracle-compare", "--partitions", "9", "--cycles", "8", "--subsets", "12"]);
        assert_eq!(code, 0);
        assert_eq!(run_capture(&["oracle-compare", "--cycles", "10"]).0, 2);
        assert_eq!(run_capture(&["oracle-compare", "--partitions", "13"]).0, 2);
    }

    #[test]
    fn replay_commands() {
        for (p, n) in [("1", "10"), ("0", "0"), ("5", "20")] {
            let (code, out, _) = run_capture(&["replay-proof", "--p", p, "--nmax", n]);
            assert_eq!(code, 0);
            let lines: Vec<&str> = out.lines().collect();
            assert!(lines[0].starts_with("STEP1 PASS"));
            assert!(lines[1].starts_with("STEP2 PASS"));
        }
        assert_eq!(run_capture(&["replay-proof", "--p", "4", "--nmax", "3"]).0, 2);
    }

    #[test]
    fn help_is_not_an_error() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("oracle-compare"));
    }
}
