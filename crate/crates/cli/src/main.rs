//! `frcalc <module> <op> [flags]`: every library operation behind one verb,
//! JSON in and JSON out.

mod config;
mod io;
mod ops;
mod report;
mod verbs;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};

use config::Overrides;
use report::{CliError, CliResult, CommandReport, Outcome};
use verbs::{ab::AbOp, alg::AlgOp, cat::CatOp, frame::FrameOp, fred::FredOp, hom::HomOp, mat::MatOp, Ctx};

#[derive(Debug, Parser)]
#[command(name = "frcalc", version, about = "Frames, *-homomorphisms and their invariants at desk scale")]
struct Cli {
    /// Config file (default: $FRCALC_CONFIG, then ./frcalc.toml)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    abs_eps: Option<f64>,
    #[arg(long, global = true)]
    rank_cutoff: Option<f64>,
    /// Write the result payload here instead of into the report
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    module: Module,
}

#[derive(Debug, Subcommand)]
enum Module {
    /// Dense complex matrices
    #[command(subcommand)]
    Mat(MatOp),
    /// Frames (systems of matrix units)
    #[command(subcommand)]
    Frame(FrameOp),
    /// Unital *-homomorphisms between matrix algebras
    #[command(subcommand)]
    Hom(HomOp),
    /// Subalgebras, centralizers and the maps between them
    #[command(subcommand)]
    Alg(AlgOp),
    /// Morphisms of framed objects, diagrams and nerve faces
    #[command(subcommand)]
    Cat(CatOp),
    /// Finite-window Fredholm operators
    #[command(subcommand)]
    Fred(FredOp),
    /// Finitely presented abelian groups
    #[command(subcommand)]
    Ab(AbOp),
    /// Run the property batteries
    Suite(verbs::suite::SuiteArgs),
    /// Table of verbs and the library functions behind them
    ListOps,
}

fn dispatch(module: &Module, ctx: &Ctx) -> CliResult<Outcome> {
    match module {
        Module::Mat(op) => verbs::mat::run(op, ctx),
        Module::Frame(op) => verbs::frame::run(op, ctx),
        Module::Hom(op) => verbs::hom::run(op, ctx),
        Module::Alg(op) => verbs::alg::run(op, ctx),
        Module::Cat(op) => verbs::cat::run(op, ctx),
        Module::Fred(op) => verbs::fred::run(op, ctx),
        Module::Ab(op) => verbs::ab::run(op, ctx),
        Module::Suite(args) => verbs::suite::run(args, ctx),
        Module::ListOps => Ok(Outcome::new(ops::OPS)),
    }
}

fn run(argv: Vec<OsString>) -> i32 {
    let matches = match Cli::command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    let mut verb = Vec::new();
    let mut m = &matches;
    while let Some((name, sub)) = m.subcommand() {
        verb.push(name.to_string());
        m = sub;
    }
    let verb = verb.join(" ");

    let start = Instant::now();
    let ov = Overrides { abs_eps: cli.abs_eps, rank_cutoff: cli.rank_cutoff, seed: cli.seed };
    let outcome = config::load(cli.config.as_deref(), &ov)
        .and_then(|s| dispatch(&cli.module, &Ctx { tol: s.tol, seed: s.seed }));
    let elapsed_ms = start.elapsed().as_millis() as u64;

    let (mut report, code) = match outcome {
        Ok(o) => {
            let r = CommandReport::from_outcome(verb, o, elapsed_ms);
            let code = if r.pass { 0 } else { 1 };
            (r, code)
        }
        Err(e) => {
            eprintln!("frcalc: {e}");
            let code = e.exit_code();
            (CommandReport::failed(verb, &e, elapsed_ms), code)
        }
    };
    if let Some(path) = &cli.out {
        let result = report.result.take().unwrap_or_default();
        if let Err(e) = io::write_json(path, &result) {
            eprintln!("frcalc: {e}");
            return CliError::exit_code(&e);
        }
        report.artifacts.push(path.display().to_string());
    }
    let text = if cli.pretty {
        serde_json::to_string_pretty(&report)
    } else {
        serde_json::to_string(&report)
    };
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{}", text.expect("report serializes"));
    code
}

fn main() {
    std::process::exit(run(std::env::args_os().collect()));
}
