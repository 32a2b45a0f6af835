#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pertdet::alpha::{kappa_gate_with, GatePurpose, DEFAULT_GATE};
use pertdet::norms::h_minus_one_sq;
use pertdet_cli::config::ScenarioConfig;
use pertdet_cli::report::{write_reports, Summary};
use pertdet_cli::runner::{run_and_write, Mode, Overrides};
use pertdet_cli::suites::{run_suite, Suite, SuiteOptions};
use pertdet_cli::{RunError, EXIT_ASSERTION, EXIT_PASS};

#[derive(Parser, Debug)]
#[command(name = "pertdet", version, about = "Perturbation-determinant laboratory")]
struct Cli {
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory; overrides `[output] dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Random seed; overrides the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Stopping tolerance of the determinant series.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the scenario as configured (flow, or fallacy scan).
    Run,
    /// Evolve the initial data and monitor the determinant and invariants.
    Evolve,
    /// Evaluate the determinant of the initial data.
    Alpha,
    /// Evaluate the configured norms of the initial data.
    Norms,
    /// Run a built-in verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
    /// Print the admissible kappa thresholds of the initial data.
    Gate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Kdv,
    Nls,
    Hirota,
    Mkdv,
    Besov,
    Xy,
    Fallacy,
    Identities,
}

impl SuiteArg {
    fn suite(self) -> Suite {
        Suite::from_name(self.to_possible_value().expect("named").get_name()).expect("suite names agree")
    }
}

fn load(cli: &Cli) -> Result<ScenarioConfig, RunError> {
    let path = cli.config.as_ref().ok_or_else(|| RunError::Config("--config: a scenario file is required".into()))?;
    ScenarioConfig::load(path)
}

fn execute(cli: &Cli) -> Result<i32, RunError> {
    let ov = Overrides { seed: cli.seed, series_tol: cli.tol, out: cli.out.clone() };
    let mode = match &cli.command {
        Command::Run => Mode::Scenario,
        Command::Evolve => Mode::Evolve,
        Command::Alpha => Mode::Alpha,
        Command::Norms => Mode::Norms,
        Command::Verify { suite } => return verify(suite.suite(), &ov),
        Command::Gate => return gate(&load(cli)?, cli.seed),
    };
    let cfg = load(cli)?;
    let (outcome, dir) = run_and_write(&cfg, mode, &ov)?;
    report(&outcome.summary, &dir);
    Ok(if outcome.passed() { EXIT_PASS } else { EXIT_ASSERTION })
}

fn verify(suite: Suite, ov: &Overrides) -> Result<i32, RunError> {
    if let Some(tol) = ov.series_tol {
        if !(tol > 0.0) {
            return Err(RunError::Config(format!("--tol: must be positive, got {tol}")));
        }
    }
    let opts = SuiteOptions { seed: ov.seed.unwrap_or(0), series_tol: ov.series_tol.unwrap_or(pertdet::alpha::DEFAULT_TOL) };
    let result = run_suite(suite, &opts)?;
    let name = format!("verify-{}", suite.name());
    let summary = Summary::new(&name, opts.seed, &result.rows, result.assertions, result.notes);
    let dir = ov.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    write_reports(&dir, &[], &result.rows, &summary)?;
    report(&summary, &dir);
    Ok(if summary.passed { EXIT_PASS } else { EXIT_ASSERTION })
}

fn gate(cfg: &ScenarioConfig, seed: Option<u64>) -> Result<i32, RunError> {
    let q = cfg.initial_field(seed.unwrap_or(cfg.seed))?;
    let akns_gate = cfg.alpha.as_ref().and_then(|a| a.akns_gate).unwrap_or(DEFAULT_GATE);
    println!("h_minus_one_sq {:.16e}", h_minus_one_sq(&q));
    for (name, purpose) in [("kdv_conserve", GatePurpose::KdvConserve), ("kdv_bound", GatePurpose::KdvBound), ("akns", GatePurpose::Akns)] {
        println!("{name} {:.16e}", kappa_gate_with(&q, purpose, akns_gate));
    }
    Ok(EXIT_PASS)
}

fn report(summary: &Summary, dir: &std::path::Path) {
    for a in &summary.assertions {
        println!(
            "[{}] criterion {:>2} {}: {:.6e} (limit {:.6e})",
            if a.passed { "pass" } else { "FAIL" },
            a.criterion,
            a.name,
            a.measured,
            a.threshold
        );
    }
    for n in &summary.notes {
        println!("note: {n}");
    }
    println!("reports written to {}", dir.display());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
