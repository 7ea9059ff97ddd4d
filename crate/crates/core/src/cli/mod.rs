//! Command-line front end.
//!
//! Exit codes: `0` success, `1` parse, schema or usage error, `2` a failed
//! hypothesis or a failed selftest criterion.

mod doc;
mod render;
mod report;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use doc::{
    parse_bound_doc, parse_index_doc, parse_ring_doc, BoundDoc, CharacterMult, DocError, IndexDoc, Mults, RingDoc,
    SCHEMA_VERSION,
};
pub use render::render;
pub use report::{
    cmd_bound, cmd_degree, cmd_k3, cmd_ring, cmd_selftest, degree_record, ring_record, CharacterValue, DegreeRecord,
    EquationRecord, K3Mode, RingRecord, RunReport, RunResult, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK,
};

use crate::repring::GroupSpec;
use crate::selftest::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "spin-actions", version, about = "Degree and genus bounds for spin actions on 4-manifolds")]
pub struct Cli {
    /// Print the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Input document (`-` for stdin).
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus bound for a surface class.
    Bound,
    /// Solve the trace equations for index data.
    Degree,
    /// Involutions on K3 and the cover construction.
    K3 {
        #[arg(value_enum)]
        mode: K3Arg,
    },
    /// Evaluate a ring expression.
    Ring(RingArgs),
    /// Run the built-in checks.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum K3Arg {
    Even,
    Odd,
    Construction,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    pub expression: Option<String>,
    /// Orders of the cyclic factors of an even-type group, e.g. `2,2`.
    #[arg(long, value_delimiter = ',', conflicts_with = "odd")]
    pub orders: Vec<u64>,
    /// Odd type with `ℤ/2^(p+1)`.
    #[arg(long, value_name = "P")]
    pub odd: Option<u32>,
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn needs_input(cli: &Cli, command: &str) -> Result<String, Box<RunReport>> {
    let fail = |e: String| Box::new(RunReport::failure(command, serde_json::Value::Null, e, EXIT_INPUT));
    let path = cli.input.as_ref().ok_or_else(|| fail(format!("`{command}` needs --input")))?;
    read_input(path).map_err(|e| fail(format!("cannot read {}: {e}", path.display())))
}

fn ring_group(args: &RingArgs) -> Result<GroupSpec, String> {
    match args.odd {
        Some(p) => GroupSpec::odd(p).map_err(|e| e.to_string()),
        None => GroupSpec::even(args.orders.clone()).map_err(|e| e.to_string()),
    }
}

/// Runs the parsed command and returns its report.
pub fn execute(cli: &Cli) -> RunReport {
    let input_failure = |command: &str, e: DocError| RunReport::failure(command, serde_json::Value::Null, e, EXIT_INPUT);
    match &cli.command {
        Command::Bound => match needs_input(cli, "bound") {
            Ok(src) => parse_bound_doc(&src).map_or_else(|e| input_failure("bound", e), |d| cmd_bound(&d)),
            Err(r) => *r,
        },
        Command::Degree => match needs_input(cli, "degree") {
            Ok(src) => parse_index_doc(&src).map_or_else(|e| input_failure("degree", e), |d| cmd_degree(&d)),
            Err(r) => *r,
        },
        Command::K3 { mode } => cmd_k3(match mode {
            K3Arg::Even => K3Mode::Even,
            K3Arg::Odd => K3Mode::Odd,
            K3Arg::Construction => K3Mode::Construction,
        }),
        Command::Ring(args) => {
            let doc = match (&args.expression, &cli.input) {
                (Some(expression), None) => ring_group(args).map(|group| RingDoc {
                    version: SCHEMA_VERSION,
                    group,
                    expression: expression.clone(),
                }),
                (None, Some(_)) => match needs_input(cli, "ring") {
                    Ok(src) => parse_ring_doc(&src).map_err(|e| e.to_string()),
                    Err(r) => return *r,
                },
                _ => Err("`ring` takes either an expression or --input".into()),
            };
            match doc {
                Ok(d) => cmd_ring(&d),
                Err(e) => RunReport::failure("ring", serde_json::Value::Null, e, EXIT_INPUT),
            }
        }
        Command::Selftest { seed } => cmd_selftest(*seed),
    }
}

/// Parses `args`, runs the command, writes the report and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let report = execute(&cli);
    let code = report.exit_code();
    if cli.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if let RunResult::Failure { .. } = report.result {
        let _ = write!(err, "{}", render(&report));
    } else {
        let _ = write!(out, "{}", render(&report));
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ring_examples() {
        for (expr, expect) in [("h1*h1", "h2 + 1 + t1"), ("(1 - t1)^2", "2 - 2*t1"), ("h1*h2", "h3 + h1")] {
            let (code, out, _) = run_str(&["spin-actions", "ring", expr]);
            assert_eq!(code, 0);
            assert!(out.contains(&format!("{expr} = {expect}\n")), "{out}");
        }
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["spin-actions", "bogus"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["spin-actions", "bound"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["spin-actions", "ring"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["spin-actions", "--help"]).0, EXIT_OK);
    }

    #[test]
    fn k3_json_round_trip() {
        for mode in ["even", "odd", "construction"] {
            let (code, out, _) = run_str(&["spin-actions", "--json", "k3", mode]);
            assert_eq!(code, 0);
            let back: RunReport = serde_json::from_str(&out).unwrap();
            assert_eq!(back, cmd_k3(match mode {
                "even" => K3Mode::Even,
                "odd" => K3Mode::Odd,
                _ => K3Mode::Construction,
            }));
        }
    }
}
