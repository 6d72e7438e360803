//! Command-line analyses of thick closed curves: thickness and ropelength,
//! contact functions, cycles of the contact billiard, attractor diagnostics,
//! symmetry verification and tabular exports.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::input::{CurveKind, Format};

/// Thickness, contact chords and contact billiards of closed curves.
#[derive(Parser)]
#[command(name = "thickknot", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every analysis subcommand.
#[derive(clap::Args, Clone)]
struct CommonOpts {
    /// Input file (point-tangent, Fourier or PKF, depending on --kind).
    #[arg(long)]
    input: Option<std::path::PathBuf>,

    /// Input kind.
    #[arg(long, value_enum, default_value_t = CurveKind::Pt)]
    kind: CurveKind,

    /// Sample count for resampling and tracing.
    #[arg(long)]
    n: Option<usize>,

    /// Valley-tracking window half-width.
    #[arg(long, default_value_t = 0.01)]
    window: f64,

    /// Classification / verification tolerance.
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,

    /// Contact-function branch.
    #[arg(long, value_enum, default_value_t = input::BranchArg::Sigma)]
    branch: input::BranchArg,

    /// Output directory for generated tables (defaults to
    /// $THICKKNOT_OUT_DIR, then the current directory).
    #[arg(long)]
    out_dir: Option<std::path::PathBuf>,

    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Radius for --kind circle.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Thickness, ropelength and the pointwise classification census.
    Thickness(commands::ThicknessCmd),
    /// Trace the contact function and export its table plus the pp surface.
    Contact(commands::ContactCmd),
    /// Fixed points and cycles of the iterated contact map.
    Cycles(commands::CyclesCmd),
    /// Attractor diagnostics of the contact billiard.
    Attractor(commands::AttractorCmd),
    /// Symmetry frame detection and identity verification.
    Symmetry(commands::SymmetryCmd),
    /// Figure-style table exports.
    Export(commands::ExportCmd),
    /// Write synthetic input files.
    Generate(commands::GenerateCmd),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Thickness(cmd) => cmd.run(),
        Command::Contact(cmd) => cmd.run(),
        Command::Cycles(cmd) => cmd.run(),
        Command::Attractor(cmd) => cmd.run(),
        Command::Symmetry(cmd) => cmd.run(),
        Command::Export(cmd) => cmd.run(),
        Command::Generate(cmd) => cmd.run(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            // IO and usage problems exit 2, analysis failures exit 1
            if commands::is_usage_or_io(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
