//! `moment-naming`: batch front end for canonical namings on the moment curve.
//!
//! Exit status: 0 ok, 1 usage or parse error, 2 a point outside the hull,
//! 3 numerical failure (including oracle disagreements).

mod commands;
mod config;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{OracleArgs, Output, SampleArgs, TransformInput};
use config::{GlobalArgs, RunConfig};
use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "moment-naming",
    version,
    about = "Canonical namings of points in the convex hull of the moment curve"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical naming of each point in a point file
    Name {
        /// Point file, or - for stdin
        points: String,
    },
    /// Evaluate a naming file to its point
    Eval { naming: String },
    /// Remove zero atoms and merge repeated parameters
    Canon { naming: String },
    /// Reduce any naming to the canonical one with the same point
    Reduce { naming: String },
    /// Membership verdict for each point
    CheckMember {
        points: String,
        /// Cross-check every point against the grid LP
        #[arg(long)]
        oracle: bool,
        /// Grid points on the curve for the LP
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        /// LP feasibility slack
        #[arg(long, default_value_t = 1e-6)]
        slack: f64,
    },
    /// Determinant of a pseudo-Vandermonde matrix
    PvDet {
        #[arg(long)]
        n: usize,
        /// Number of nodes; checked against --nodes when given
        #[arg(long)]
        q: Option<usize>,
        /// Comma-separated nodes
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        nodes: Vec<f64>,
        /// Also print the exact LU determinant
        #[arg(long)]
        check: bool,
    },
    /// Point stream drawn from seeded random namings
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        t_max: f64,
        #[arg(long)]
        count: usize,
        /// Atoms per generating naming (default n + 2)
        #[arg(long)]
        atoms: Option<usize>,
    },
    /// Namings on a general polynomial curve
    Transform {
        /// Curve file: n rows of n + 1 coefficients
        curve: String,
        #[arg(long, conflicts_with = "points", required_unless_present = "points")]
        naming: Option<String>,
        /// Point file in curve coordinates
        #[arg(long)]
        points: Option<String>,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let cfg = RunConfig::from_args(&cli.global)?;
    let read = commands::read_input;
    match cli.command {
        Command::Name { points } => commands::name(&cfg, &read(&points)?),
        Command::Eval { naming } => commands::eval(&read(&naming)?),
        Command::Canon { naming } => commands::canon(&cfg, &read(&naming)?),
        Command::Reduce { naming } => commands::reduce(&cfg, &read(&naming)?),
        Command::CheckMember { points, oracle, grid, slack } => {
            let oracle = oracle.then_some(OracleArgs { grid, slack });
            commands::check_member(&cfg, &read(&points)?, oracle)
        }
        Command::PvDet { n, q, nodes, check } => commands::pv_det(n, q, nodes, check),
        Command::Sample { n, t_min, t_max, count, atoms } => {
            commands::sample(&cfg, SampleArgs { n, t_min, t_max, count, atoms })
        }
        Command::Transform { curve, naming, points } => {
            let input = match (naming, points) {
                (Some(p), _) => TransformInput::Naming(read(&p)?),
                (None, Some(p)) => TransformInput::Points(read(&p)?),
                (None, None) => return Err(CliError::usage("need --naming or --points")),
            };
            commands::transform(&cfg, &read(&curve)?, input)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(error::EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            match out.error {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
