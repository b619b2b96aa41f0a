//! `vortex`: analyse a vortex model file and print a report.
//!
//! Exit status: 0 on success, 1 when an analysis fails or the model is
//! inconsistent, 2 when the input cannot be read or parsed.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vortex_moduli::model_file::{parse_model, Analysis, ModelFile};
use vortex_moduli::report::build_report;
use vortex_moduli::scalars::DEFAULT_DIGITS;
use vortex_moduli::selftest::{run_selftest, SelftestOptions};
use vortex_moduli::Error;

#[derive(Parser)]
#[command(name = "vortex", version, about = "Exact analysis of abelian vortex moduli spaces")]
struct Cli {
    /// Print a human-readable report instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Decimal digits in approximate values.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// σ, cone membership, (C1)/(C2), decomposition and coupling threshold.
    Stability { file: PathBuf },
    /// Verdict, kind, dimension, smoothness and cohomology of the moduli space.
    Moduli { file: PathBuf },
    /// Kähler class of the L² metric.
    Kahler { file: PathBuf },
    /// Volume, total scalar curvature and constrained volume.
    Volume { file: PathBuf },
    /// Energy of a vortex.
    Energy { file: PathBuf },
    /// Unstable planes, s-invariant and the open-dense embedding criterion.
    Embedding { file: PathBuf },
    /// Strong-coupling limits 1/e² → 0.
    Limit { file: PathBuf },
    /// Every analysis requested by the file (all of them by default).
    Report { file: PathBuf },
    /// Run the bundled consistency checks.
    Selftest {
        /// Only run suites or checks whose name contains this.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load(path: &PathBuf) -> Result<ModelFile, ExitCode> {
    let text = read_input(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    parse_model(&text).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

fn analyse(cli: &Cli, path: &PathBuf, only: Option<Analysis>) -> ExitCode {
    let file = match load(path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let analyses = match only {
        Some(a) => vec![a],
        None => file.analyses(),
    };
    let report = match build_report(&file, &analyses, cli.digits) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if matches!(e, Error::Parse { .. }) { 2 } else { 1 });
        }
    };
    if cli.pretty {
        print!("{}", report.render_text());
    } else {
        println!("{}", report.to_json());
    }
    if only.is_some() && report.has_failures() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn selftest(cli: &Cli, filter: Option<String>, inject_fault: bool) -> ExitCode {
    let results = run_selftest(&SelftestOptions { filter, inject_fault });
    if results.is_empty() {
        eprintln!("error: no checks match the filter");
        return ExitCode::from(1);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if cli.pretty {
        for r in &results {
            let status = if r.passed { "ok" } else { "FAIL" };
            println!("{status:4} {}::{}", r.suite, r.name);
            if !r.passed {
                println!("     {}", r.detail);
            }
        }
        println!("{} checks, {failed} failed", results.len());
    } else {
        let items: Vec<serde_json::Value> = results
            .iter()
            .map(|r| {
                serde_json::json!({
                    "suite": r.suite,
                    "check": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                })
            })
            .collect();
        let doc = serde_json::json!({ "checks": items, "failed": failed });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Stability { file } => analyse(&cli, file, Some(Analysis::Stability)),
        Command::Moduli { file } => analyse(&cli, file, Some(Analysis::Moduli)),
        Command::Kahler { file } => analyse(&cli, file, Some(Analysis::Kahler)),
        Command::Volume { file } => analyse(&cli, file, Some(Analysis::Volume)),
        Command::Energy { file } => analyse(&cli, file, Some(Analysis::Energy)),
        Command::Embedding { file } => analyse(&cli, file, Some(Analysis::Embedding)),
        Command::Limit { file } => analyse(&cli, file, Some(Analysis::Limit)),
        Command::Report { file } => analyse(&cli, file, None),
        Command::Selftest { filter, inject_fault } => selftest(&cli, filter.clone(), *inject_fault),
    }
}
