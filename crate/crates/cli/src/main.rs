//! `tatehodge`: verification suites and period matrices from the command line.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Command, Params};
use report::{ConfigDoc, Report};

#[derive(Parser, Debug)]
#[command(name = "tatehodge", version, about = "Mixed Tate motives of polylogarithms: exact checks and periods")]
struct Cli {
    #[command(subcommand)]
    command: Top,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Polylog index k (1..=8).
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=8))]
    k: u32,
    /// Point a: `p/q`, an integer, a decimal or a symbol name.
    #[arg(long, global = true, default_value = "1/2")]
    a: String,
    /// Second point for `hodge tensor`.
    #[arg(long, global = true, default_value = "1/2")]
    b: String,
    /// Unit u = 1 − a for `regulator`.
    #[arg(long, global = true, default_value = "1/2")]
    u: String,
    /// Working precision in bits (≥ 64).
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u64).range(64..))]
    prec: u64,
    /// Numeric tolerance.
    #[arg(long, global = true, default_value = "1e-10")]
    tol: String,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random samples per law for `verify hopf`.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Write the machine report (JSON) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run independent checks on separate threads.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Subcommand, Debug)]
enum Top {
    /// Exact symbolic verification suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Numeric polylogarithms.
    #[command(subcommand)]
    Periods(PeriodsCmd),
    /// Period matrices of the Hodge realization.
    #[command(subcommand)]
    Hodge(HodgeCmd),
    /// Regulator at r = 1: log u modulo 2πi·Q.
    Regulator,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    Hopf,
    Flatness,
    Cocycle,
    Faces,
    Comodule,
}

#[derive(Subcommand, Debug)]
enum PeriodsCmd {
    Li,
    Quadcheck,
}

#[derive(Subcommand, Debug)]
enum HodgeCmd {
    Matrix,
    Compare,
    Tensor,
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match &cli.command {
        Top::Verify(VerifyCmd::Hopf) => Command::VerifyHopf,
        Top::Verify(VerifyCmd::Flatness) => Command::VerifyFlatness,
        Top::Verify(VerifyCmd::Cocycle) => Command::VerifyCocycle,
        Top::Verify(VerifyCmd::Faces) => Command::VerifyFaces,
        Top::Verify(VerifyCmd::Comodule) => Command::VerifyComodule,
        Top::Periods(PeriodsCmd::Li) => Command::PeriodsLi,
        Top::Periods(PeriodsCmd::Quadcheck) => Command::PeriodsQuadcheck,
        Top::Hodge(HodgeCmd::Matrix) => Command::HodgeMatrix,
        Top::Hodge(HodgeCmd::Compare) => Command::HodgeCompare,
        Top::Hodge(HodgeCmd::Tensor) => Command::HodgeTensor,
        Top::Regulator => Command::Regulator,
    };
    let o = &cli.opts;
    let params = match Params::parse(command, o.k, &o.a, &o.b, &o.u, o.prec as usize, &o.tol, o.seed, o.samples) {
        Ok(p) => p,
        Err(msg) => return usage_error(&msg),
    };
    let config = ConfigDoc {
        k: o.k,
        a: o.a.clone(),
        a_note: params.a_note.clone(),
        b: o.b.clone(),
        u: o.u.clone(),
        precision_bits: o.prec as usize,
        tolerance: o.tol.clone(),
        seed: o.seed,
        samples: o.samples,
        parallel: o.parallel,
    };

    let (checks, matrix) = commands::run(command, &params, o.parallel);
    let report = Report {
        command: command.name().to_string(),
        config,
        checks,
        matrix: matrix.as_ref().map(Into::into),
    };

    println!("tatehodge {}", report.command);
    if let Some(note) = &report.config.a_note {
        println!("note: {note}");
    }
    for c in &report.checks {
        let tag = if c.passed() { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {} ({})", c.name, c.detail, c.paper_anchor);
    }
    if let Some(m) = &matrix {
        println!("period matrix, rows {:?}, columns {:?}, path {}", m.derham_basis, m.betti_basis, m.path);
        for row in &m.entries {
            let cells: Vec<String> = row.iter().map(|z| format!("{z}")).collect();
            println!("  [{}]", cells.join(", "));
        }
    }
    let passed = report.checks.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} checks passed", report.checks.len());

    if let Some(path) = &o.out {
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
