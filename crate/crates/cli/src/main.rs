use angular_uncertainty::family::DEFAULT_GRID;
use angular_uncertainty_cli::{self as cli, CliError};
use clap::{Parser, Subcommand};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Uncertainty relations for the azimuthal angle and L_z (hbar = 1).
#[derive(Parser)]
#[command(name = "philz", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print deviations and every lower bound for a state file
    Report {
        /// JSON state document
        file: PathBuf,
    },
    /// Sweep the two-state family psi(a, phi) and write CSV
    #[command(allow_negative_numbers = true)]
    Sweep {
        #[arg(long, default_value_t = -1.0)]
        min: f64,
        #[arg(long, default_value_t = 1.0)]
        max: f64,
        #[arg(long, default_value_t = 401)]
        n: usize,
        /// Output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find the family parameters where a quantity equals the target
    #[command(allow_negative_numbers = true)]
    Crossings {
        /// `product` (dphi * dLz) or `pi-dlz` (pi * dLz)
        quantity: String,
        target: f64,
        /// Points in the scan over [-1, 1]
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
    },
    /// Compare closed-form moments against quadrature
    OracleCheck {
        file: PathBuf,
        /// Gauss-Legendre nodes on [0, 2pi]
        #[arg(long, default_value_t = 128)]
        nodes: usize,
        /// Shift the closed-form <phi> by this amount (harness self-test)
        #[arg(long, hide = true)]
        corrupt: Option<f64>,
    },
}

fn write_stdout(text: &str) -> Result<(), CliError> {
    io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
}

fn run(args: Args) -> Result<(), CliError> {
    match args.command {
        Command::Report { file } => {
            let state = cli::load_state(&file)?;
            write_stdout(&cli::report_text(&state)?)
        }
        Command::Sweep { min, max, n, out } => match out {
            Some(path) => {
                let f = File::create(&path)
                    .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
                cli::write_sweep(min, max, n, BufWriter::new(f))
            }
            None => cli::write_sweep(min, max, n, io::stdout().lock()),
        },
        Command::Crossings { quantity, target, grid } => {
            let quantity = cli::parse_quantity(&quantity)?;
            write_stdout(&cli::crossings_text(quantity, target, grid)?)
        }
        Command::OracleCheck { file, nodes, corrupt } => {
            let state = cli::load_state(&file)?;
            let check = cli::oracle_check(&state, nodes, corrupt)?;
            write_stdout(&check.summary())?;
            if check.passed() {
                Ok(())
            } else {
                Err(CliError::CheckFailed(format!(
                    "max discrepancy {:e} exceeds {:e}",
                    check.max_discrepancy,
                    cli::ORACLE_CHECK_TOL
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("philz: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
