//! `phkit`: check and construct PH curves and PH-preserving maps from the
//! command line. Every verb prints `key: value` lines; exit status 0 means a
//! verdict was computed, 1 an internal failure, 2 bad input.

mod commands;
mod report;
mod reproduce;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand};

use report::{Failure, Outcome};

#[derive(Parser)]
#[command(name = "phkit", version, about = "Exact checks for Pythagorean-hodograph curves and maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test a curve file for the PH property.
    CheckCurve { file: PathBuf },
    /// Test a map file or Moebius word file for PH preservation.
    CheckMap { file: PathBuf },
    /// Integrate psi(z)^2 and test the resulting planar map.
    FromPsi { expr: String },
    /// Solve for unknown simple-pole coefficients of a Laurent spec.
    SolveResidues { file: PathBuf },
    /// Recompute the golden examples and compare.
    ReproducePaper {
        /// Run only items whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        /// Golden file to compare against instead of the built-in one.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Sample a curve, or a line grid under a map, into an SVG file.
    Plot {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, required = true)]
        range: Vec<String>,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn reproduce(only: Option<&str>, golden: Option<&PathBuf>) -> Result<(String, bool), Failure> {
    let text = match golden {
        Some(p) => commands::read_input(p)?,
        None => reproduce::GOLDEN.to_string(),
    };
    let golden = reproduce::parse_golden(&text).map_err(|m| Failure::input("golden", m))?;
    let run = reproduce::run(&golden, only)
        .ok_or_else(|| Failure::input("unknown-item", format!("no item id starts with `{}`", only.unwrap_or(""))))?;
    Ok((run.text, run.failed == 0))
}

fn dispatch(cmd: &Command) -> Result<(String, u8), Failure> {
    let computed = |o: Outcome| o.map(|r| (r.to_string(), 0));
    match cmd {
        Command::CheckCurve { file } => computed(commands::check_curve(&commands::read_input(file)?)),
        Command::CheckMap { file } => computed(commands::check_map(&commands::read_input(file)?)),
        Command::FromPsi { expr } => computed(commands::from_psi(expr)),
        Command::SolveResidues { file } => computed(commands::solve_residues(&commands::read_input(file)?)),
        Command::ReproducePaper { only, golden } => {
            let (text, ok) = reproduce(only.as_deref(), golden.as_ref())?;
            Ok((text, if ok { 0 } else { 1 }))
        }
        Command::Plot { file, range, samples, out } => {
            let text = commands::read_input(file)?;
            let args = commands::PlotArgs { text: &text, t0: &range[0], t1: &range[1], samples: *samples, out };
            computed(commands::plot(&args))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    std::panic::set_hook(Box::new(|_| {}));
    let result = std::panic::catch_unwind(|| dispatch(&cli.command)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err(Failure::Internal(anyhow!("panicked: {msg}")))
    });
    let (text, code) = match result {
        Ok(out) => out,
        Err(f) => (f.report().to_string(), f.exit_code()),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
