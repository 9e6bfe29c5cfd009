use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use quatcs_cli::{emit_report, run_suite, CliError, Config, FileConfig, Format, Suite};

/// Run quatcs verification suites and emit a report.
#[derive(Debug, Parser)]
#[command(name = "quatcs", version)]
struct Args {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Fock-space truncation N (default 16).
    #[arg(long)]
    trunc_dim: Option<usize>,
    /// Gauss-Laguerre nodes; defaults follow the certificate rule for N.
    #[arg(long)]
    radial_order: Option<usize>,
    #[arg(long)]
    theta_nodes: Option<usize>,
    #[arg(long)]
    phi_order: Option<usize>,
    #[arg(long)]
    psi_nodes: Option<usize>,
    /// Replace every per-check tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// TOML file with any of the numeric options; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run(args: Args) -> Result<bool, CliError> {
    let file = match &args.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = FileConfig {
        trunc_dim: args.trunc_dim,
        radial_order: args.radial_order,
        theta_nodes: args.theta_nodes,
        phi_order: args.phi_order,
        psi_nodes: args.psi_nodes,
        tolerance: args.tolerance,
        seed: args.seed,
    };
    let cfg = Config::resolve(file.overlay(flags))?;
    let report = run_suite(args.suite, &cfg)?;
    let bytes = emit_report(&report, args.format);
    match &args.output {
        Some(p) => std::fs::write(p, &bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("quatcs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
