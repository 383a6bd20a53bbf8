//! The `partlie` command line.
//!
//! Exit codes: 0 success, 1 a verified statement failed, 2 invalid flags or
//! I/O trouble, 3 requested depth above the safety cap.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chain::verify_unrefinable_step;
use crate::chain::{default_depth, idealizer_chain, verify_growth, verify_nth_step, NthStepReport};
use crate::error::Error;
use crate::partitions::{
    bounded_partitions, count_p, count_q, enumerate_partitions, is_unrefinable, MultiplicityBound,
    Partition, RefinementDag,
};
use crate::properties::{property_suite, SuiteConfig};
use crate::report::{write_chain_csv, write_chain_text, ChainReportJson, Verdict};
use crate::rigid::{
    check_bijection, check_bracket_preservation, check_closure, verify_chain_correspondence,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEPTH: i32 = 3;

pub const THREADS_ENV: &str = "PARTLIE_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "partlie",
    version,
    about = "Lie ring of bounded-multiplicity partitions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Multiplicity bound: coefficients live in Z_m.
    #[arg(long = "m", global = true, default_value_t = 2)]
    pub m: usize,

    /// Number of derivations.
    #[arg(long = "n", global = true)]
    pub n: Option<usize>,

    /// Last chain step to compute.
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    /// Largest accepted depth; defaults to the size of the basis.
    #[arg(long, global = true)]
    pub depth_cap: Option<usize>,

    #[arg(long = "max-i", global = true, default_value_t = 16)]
    pub max_i: usize,

    #[arg(long, global = true)]
    pub weight: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// List partitions of --weight, or all of Part_m(n-1) with --n.
    Partitions,
    /// p_{m,i} and q_{m,i} for i = 1..max-i.
    Sequence,
    /// The idealizer chain up to --depth.
    Chain,
    /// Check one family of statements.
    Verify {
        #[arg(value_enum)]
        check: Check,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Growth,
    Unrefinable,
    Nth,
    Bijection,
    Properties,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(format!("write failed: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::usage(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage(format!("json: {e}"))
    }
}

/// Sizes the global rayon pool from `PARTLIE_THREADS` (unset or 0: automatic).
pub fn configure_threads() -> Result<(), String> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"))?,
        Err(_) => 0,
    };
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command, writing to
/// `stdout` unless `--out` is given. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match &cli.out {
        None => execute(&cli, stdout),
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                execute(&cli, &mut w).and_then(|code| {
                    w.flush()?;
                    Ok(code)
                })
            }
            Err(e) => Err(Failure::usage(format!(
                "cannot create {}: {e}",
                path.display()
            ))),
        },
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "partlie: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    if cli.m < 2 {
        return Err(Failure::usage(format!(
            "--m must be at least 2, got {}",
            cli.m
        )));
    }
    match cli.command {
        Command::Partitions => cmd_partitions(cli, out),
        Command::Sequence => cmd_sequence(cli, out),
        Command::Chain => cmd_chain(cli, out),
        Command::Verify { check } => cmd_verify(cli, check, out),
    }
}

fn require_bound(cli: &Cli) -> Result<MultiplicityBound, Failure> {
    let n = cli.n.ok_or_else(|| Failure::usage("--n is required"))?;
    Ok(MultiplicityBound::new(cli.m, n)?)
}

fn basis_size(bound: &MultiplicityBound) -> usize {
    (0..bound.n())
        .map(|e| bound.m().saturating_pow(e as u32))
        .sum()
}

fn checked_depth(cli: &Cli, bound: &MultiplicityBound) -> Result<usize, Failure> {
    let depth = cli.depth.unwrap_or_else(|| default_depth(bound));
    let cap = cli.depth_cap.unwrap_or_else(|| basis_size(bound));
    if depth > cap {
        return Err(Failure {
            code: EXIT_DEPTH,
            message: format!("depth {depth} exceeds the cap {cap}"),
        });
    }
    Ok(depth)
}

#[derive(Serialize)]
struct PartitionRow {
    parts: Partition,
    weight: usize,
    num_parts: usize,
    unrefinable: bool,
    refinability: usize,
}

fn cmd_partitions(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let m = cli.m;
    let list: Vec<Partition> = match (cli.n, cli.weight) {
        (Some(n), w) => {
            let bound = MultiplicityBound::new(m, n)?;
            bounded_partitions(m, bound.n() - 1)
                .into_iter()
                .filter(|p| w.is_none_or(|w| p.weight() == w))
                .collect()
        }
        (None, Some(w)) => enumerate_partitions(w, m, w),
        (None, None) => return Err(Failure::usage("partitions needs --weight or --n")),
    };
    let mut dag = RefinementDag::new(m);
    let rows: Vec<PartitionRow> = list
        .into_iter()
        .map(|p| PartitionRow {
            weight: p.weight(),
            num_parts: p.len(),
            unrefinable: is_unrefinable(&p, m),
            refinability: dag.steps(&p),
            parts: p,
        })
        .collect();
    match cli.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "parts",
                "weight",
                "num_parts",
                "unrefinable",
                "refinability",
            ])?;
            for r in &rows {
                w.write_record([
                    r.parts.to_string(),
                    r.weight.to_string(),
                    r.num_parts.to_string(),
                    r.unrefinable.to_string(),
                    r.refinability.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in &rows {
                writeln!(
                    out,
                    "{:<24} wt={:<3} parts={:<3} steps={}{}",
                    r.parts.to_string(),
                    r.weight,
                    r.num_parts,
                    r.refinability,
                    if r.unrefinable { " unrefinable" } else { "" }
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SequenceRow {
    i: usize,
    p: usize,
    q: usize,
}

#[derive(Serialize)]
struct SequenceJson {
    m: usize,
    rows: Vec<SequenceRow>,
}

fn cmd_sequence(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let m = cli.m;
    let mut q = 0;
    let rows: Vec<SequenceRow> = (1..=cli.max_i)
        .map(|i| {
            let p = count_p(m, i);
            q += p;
            SequenceRow { i, p, q }
        })
        .collect();
    debug_assert!(rows.last().is_none_or(|r| r.q == count_q(m, r.i)));
    match cli.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &SequenceJson { m, rows })?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["i", "p", "q"])?;
            for r in &rows {
                w.write_record([r.i.to_string(), r.p.to_string(), r.q.to_string()])?;
            }
            w.flush()?;
        }
        Format::Text => {
            let line = |label: &str, f: &dyn Fn(&SequenceRow) -> usize| {
                let cells: Vec<String> = rows.iter().map(|r| format!("{:>4}", f(r))).collect();
                format!("{label:<6}{}", cells.join(""))
            };
            writeln!(out, "{}", line("i", &|r| r.i))?;
            writeln!(out, "{}", line(&format!("p{m}"), &|r| r.p))?;
            writeln!(out, "{}", line(&format!("q{m}"), &|r| r.q))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_chain(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let bound = require_bound(cli)?;
    let depth = checked_depth(cli, &bound)?;
    let report = idealizer_chain(&bound, depth);
    match cli.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &ChainReportJson::from(&report))?;
            writeln!(out)?;
        }
        Format::Csv => write_chain_csv(&report, out)?,
        Format::Text => write_chain_text(&report, out)?,
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    check: Check,
    m: usize,
    n: usize,
    passed: bool,
    verdicts: &'a [Verdict],
    #[serde(skip_serializing_if = "Option::is_none")]
    nth: Option<&'a NthStepReport>,
}

fn cmd_verify(cli: &Cli, check: Check, out: &mut dyn Write) -> Result<i32, Failure> {
    let bound = require_bound(cli)?;
    let n = bound.n();
    let mut nth = None;
    let verdicts = match check {
        Check::Growth => {
            let depth = checked_depth(cli, &bound)?;
            vec![verify_growth(&bound, &idealizer_chain(&bound, depth))]
        }
        Check::Unrefinable => vec![verify_unrefinable_step(&bound)?],
        Check::Nth => {
            if bound.m() != 2 {
                return Err(Error::RequiresBinary(bound.m()).into());
            }
            let report = verify_nth_step(n)?;
            let v = report.verdict();
            nth = Some(report);
            vec![v]
        }
        Check::Bijection => {
            if bound.m() != 2 {
                return Err(Error::RequiresBinary(bound.m()).into());
            }
            let depth = checked_depth(cli, &bound)?;
            vec![
                check_bijection(n)?,
                check_closure(n),
                check_bracket_preservation(n)?.verdict(),
                verify_chain_correspondence(n, depth)?,
            ]
        }
        Check::Properties => {
            let mut config = SuiteConfig::default();
            if let Some(w) = cli.weight {
                config.refinement_weight = w;
            }
            property_suite(&bound, &config)
        }
    };
    let passed = verdicts.iter().all(|v| v.passed);
    match cli.format {
        Format::Json => {
            let doc = VerifyJson {
                check,
                m: bound.m(),
                n,
                passed,
                verdicts: &verdicts,
                nth: nth.as_ref(),
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["name", "passed", "checked", "failure"])?;
            for v in &verdicts {
                w.write_record([
                    v.name.clone(),
                    v.passed.to_string(),
                    v.checked.to_string(),
                    v.failure.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for v in &verdicts {
                match &v.failure {
                    None => writeln!(out, "PASS {} ({} checks)", v.name, v.checked)?,
                    Some(f) => writeln!(out, "FAIL {}: {f}", v.name)?,
                }
                for note in &v.notes {
                    writeln!(out, "  {note}")?;
                }
            }
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("partlie").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn sequence_small() {
        let (code, out, _) = call(&["sequence", "--m", "2", "--max-i", "1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "i,p,q\n1,0,0\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            call(&["verify", "nth", "--m", "3", "--n", "6"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["chain", "--m", "1", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["chain", "--m", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["chain", "--n", "3", "--depth", "8"]).0, EXIT_DEPTH);
        assert_eq!(
            call(&["chain", "--n", "3", "--depth", "8", "--depth-cap", "9"]).0,
            EXIT_OK
        );
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }

    #[test]
    fn verify_text_lines() {
        let (code, out, _) = call(&["verify", "growth", "--m", "3", "--n", "4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("PASS growth m=3 n=4"));
    }

    #[test]
    fn partitions_listing() {
        let (code, out, _) = call(&["partitions", "--m", "2", "--weight", "4", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "parts,weight,num_parts,unrefinable,refinability\n4,4,1,false,1\n3+1,4,2,true,0\n"
        );
    }
}
