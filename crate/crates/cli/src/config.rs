use clap::Args;
use moment_naming::{Interval, SolveOptions, Tolerances, DEFAULT_SOLVER_MAX_N, HARD_MAX_N};

use crate::error::CliError;

/// Options shared by every subcommand. Tolerance flags fall back to the
/// environment, and an explicit flag always wins.
#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Same-point threshold, relative to the interval width
    #[arg(long, global = true, env = "MOMENT_EPS_T")]
    pub eps_t: Option<f64>,

    /// Coefficients at or below this count as zero
    #[arg(long, global = true, env = "MOMENT_EPS_C")]
    pub eps_c: Option<f64>,

    /// Membership tolerance on negative weights
    #[arg(long, global = true, env = "MOMENT_EPS_MEM")]
    pub eps_mem: Option<f64>,

    /// Largest n the moment solver accepts
    #[arg(long, global = true, default_value_t = DEFAULT_SOLVER_MAX_N)]
    pub max_n: usize,

    /// Worker threads for batch point streams
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Seed for every random draw
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// Everything a command needs besides its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tol: Tolerances,
    pub max_n: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl RunConfig {
    pub fn from_args(args: &GlobalArgs) -> Result<Self, CliError> {
        let mut tol = Tolerances::default();
        if let Some(v) = args.eps_t {
            tol.t_rel = v;
        }
        if let Some(v) = args.eps_c {
            tol.c_zero = v;
        }
        if let Some(v) = args.eps_mem {
            tol.membership = v;
        }
        if !tol.is_valid() {
            return Err(CliError::usage("tolerances must be positive and finite"));
        }
        if args.jobs == 0 {
            return Err(CliError::usage("--jobs must be at least 1"));
        }
        if args.max_n == 0 || args.max_n > HARD_MAX_N {
            return Err(CliError::usage(format!("--max-n must be between 1 and {HARD_MAX_N}")));
        }
        Ok(Self { tol, max_n: args.max_n, seed: args.seed, jobs: args.jobs })
    }

    pub fn solve_options(&self) -> SolveOptions {
        SolveOptions { tol: self.tol, max_n: self.max_n, ..SolveOptions::default() }
    }
}

pub fn interval(t_min: f64, t_max: f64) -> Result<Interval, CliError> {
    Interval::new(t_min, t_max).map_err(|e| CliError::usage(e.to_string()))
}
