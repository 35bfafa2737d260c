//! Command-line front end for the sweep engine.
//!
//! Thin by design: scenario resolution, overrides, execution and CSV output
//! all live in the library; this file only parses arguments and maps errors
//! onto the exit-code contract (0 success, 1 configuration, 2 numeric).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gravcat::scenario::config::{apply_overrides, load_config};
use gravcat::scenario::csvout::{gnuplot_script, write_csv};
use gravcat::scenario::presets::{list_presets, preset};
use gravcat::scenario::{run_scenario_with_workers, Scenario, ScenarioError};
use gravcat::selfcheck;
use gravcat::CoreError;

#[derive(Parser)]
#[command(
    name = "gravcat",
    version,
    about = "Thermal two-qubit gravitational cat states: dephasing channels, \
             correlation measures, and reproducible parameter sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep and write the result table as CSV.
    Run(RunArgs),
    /// List the built-in presets.
    Presets,
    /// Cross-check every closed form against its brute-force oracle.
    Selfcheck(SelfcheckArgs),
    /// Emit a gnuplot script that renders a sweep's CSV output.
    Gnuplot(GnuplotArgs),
}

/// Where the scenario comes from: exactly one of a preset name or a config
/// file path.
#[derive(Args)]
struct SourceArgs {
    /// Built-in preset name (see `gravcat presets`).
    #[arg(long, value_name = "NAME", conflicts_with = "config")]
    preset: Option<String>,
    /// Sweep description file.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Override a fixed parameter, e.g. --set T=0.4 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output CSV path.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Worker threads: 0 = shared pool, 1 = sequential, n = dedicated pool.
    #[arg(long, value_name = "N", default_value_t = 0)]
    workers: usize,
}

#[derive(Args)]
struct SelfcheckArgs {
    /// Number of random thermal states per equivalence check.
    #[arg(long, value_name = "N", default_value_t = 1000)]
    states: usize,
    /// RNG seed for the state sample.
    #[arg(long, value_name = "SEED", default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct GnuplotArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// CSV file the script should plot (as produced by `gravcat run`).
    #[arg(long, value_name = "PATH")]
    csv: String,
    /// Write the script here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// Writes a finished chunk of report output to stdout. A reader that closes
/// the pipe early (`gravcat presets | head`) is done with us, not broken, so
/// that case exits cleanly instead of panicking in `println!`.
fn emit(text: &str) -> Result<(), ScenarioError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(ScenarioError::Io { path: "<stdout>".into(), source: e }),
    }
}

fn resolve_scenario(source: &SourceArgs) -> Result<Scenario, ScenarioError> {
    match (&source.preset, &source.config) {
        (Some(name), None) => preset(name).ok_or_else(|| {
            ScenarioError::Config(format!(
                "unknown preset '{name}'; run `gravcat presets` for the list"
            ))
        }),
        (None, Some(path)) => Ok(Scenario::Measures(load_config(path)?)),
        _ => Err(ScenarioError::Config(
            "exactly one of --preset or --config is required".into(),
        )),
    }
}

fn cmd_run(args: &RunArgs) -> Result<(), ScenarioError> {
    let mut scenario = resolve_scenario(&args.source)?;
    apply_overrides(&mut scenario, &args.set)?;
    let table = run_scenario_with_workers(&scenario, args.workers)?;
    write_csv(&table, &args.out)?;
    eprintln!(
        "wrote {} rows x {} columns to {}",
        table.rows.len(),
        table.columns.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_presets() -> Result<(), ScenarioError> {
    let mut table = format!("{:<8} {:<8} {}\n", "name", "figure", "summary");
    for info in list_presets() {
        let _ = writeln!(table, "{:<8} {:<8} {}", info.name, info.figure, info.summary);
    }
    emit(&table)
}

fn cmd_selfcheck(args: &SelfcheckArgs) -> Result<(), ScenarioError> {
    let outcomes = selfcheck::run(args.states, args.seed).map_err(|source| {
        ScenarioError::Point { point: "selfcheck".into(), source }
    })?;
    let mut failed: Option<&selfcheck::CheckOutcome> = None;
    let mut report = String::new();
    for o in &outcomes {
        let status = if o.pass { "pass" } else { "FAIL" };
        let _ = writeln!(
            report,
            "{status}  {:<24} worst {:>12.3e}  tolerance {:>8.1e}",
            o.name, o.worst, o.tolerance
        );
        if !o.pass && failed.is_none() {
            failed = Some(o);
        }
    }
    if failed.is_none() {
        let _ = writeln!(report, "all {} checks passed", outcomes.len());
    }
    emit(&report)?;
    match failed {
        None => Ok(()),
        Some(o) => Err(ScenarioError::Point {
            point: "selfcheck".into(),
            source: CoreError::OracleMismatch {
                check: o.name,
                worst: o.worst,
                tolerance: o.tolerance,
            },
        }),
    }
}

fn cmd_gnuplot(args: &GnuplotArgs) -> Result<(), ScenarioError> {
    let scenario = resolve_scenario(&args.source)?;
    let script = gnuplot_script(&scenario, &args.csv);
    match &args.out {
        Some(path) => std::fs::write(path, script)
            .map_err(|source| ScenarioError::Io { path: path.clone(), source }),
        None => emit(&script),
    }
}

fn dispatch(cli: Cli) -> Result<(), ScenarioError> {
    match cli.command {
        Command::Run(args) => cmd_run(&args),
        Command::Presets => cmd_presets(),
        Command::Selfcheck(args) => cmd_selfcheck(&args),
        Command::Gnuplot(args) => cmd_gnuplot(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap exits 2 on usage errors by default; the contract reserves
            // 2 for numeric failures, so usage problems map to 1 here.
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
