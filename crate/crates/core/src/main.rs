use std::process::ExitCode;

use clap::Parser;
use gkd::cli::{load_scene, resolve_seed, run, Command, Options, SEED_ENV};
use gkd::hitchin::SolveMode;
use gkd::Error;

/// Exact checks for generalized Kähler structures, Dirac frames and
/// Maurer-Cartan deformation series.
///
/// Exit status: 0 all checks pass, 1 a check failed, 2 usage or scene error,
/// 3 computation error.
#[derive(Parser, Debug)]
#[command(name = "gkd", version)]
struct Args {
    /// check-gk, gauge, solve, deform-gk, verify-mc, hamfam-check or twistor
    command: String,
    /// Fixture name (kahler-c2, hk-r4, r2-poisson) or path to a scene file
    scene: Option<String>,
    /// Truncation order in t
    #[arg(long)]
    order: Option<u32>,
    /// Solver mode: complex or real
    #[arg(long)]
    mode: Option<String>,
    /// RNG seed; overrides GKD_SEED and the scene seed
    #[arg(long)]
    seed: Option<u64>,
    /// Name of the scene form used as the first-order term
    #[arg(long)]
    omega1: Option<String>,
    /// Write the JSON report here
    #[arg(long)]
    json: Option<std::path::PathBuf>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Scene(_) | Error::Parse(_) | Error::Json(_) | Error::Io(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("gkd: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn execute(args: &Args) -> gkd::Result<bool> {
    let cmd: Command = args.command.parse()?;
    let mode = args.mode.as_deref().map(str::parse::<SolveMode>).transpose()?;
    let scene = load_scene(args.scene.as_deref().unwrap_or(cmd.default_scene()))?;
    let env = std::env::var(SEED_ENV).ok();
    let seed = resolve_seed(args.seed, env.as_deref(), scene.seed)?;
    let opts = Options { order: args.order, mode, seed: Some(seed), omega1: args.omega1.clone() };
    let report = run(cmd, &scene, &opts, seed)?;
    for line in &report.lines {
        println!("{line}");
    }
    if let Some(path) = &args.json {
        std::fs::write(path, report.to_json_string())?;
    }
    println!("{}: {}", cmd, if report.passed { "passed" } else { "FAILED" });
    Ok(report.passed)
}
