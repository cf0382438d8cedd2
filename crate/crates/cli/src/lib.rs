//! The `fracineq` command-line tool.
//!
//! Exit codes: 0 success, 1 a check failed (identity residual, bound
//! violation, certificate), 2 domain error, 3 numerical non-convergence,
//! 4 certificate gate without `--force`, 64 usage, 74 I/O.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sampling;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use config::{Format, RunConfig, SweepGrid, Tolerances};
pub use error::{exit, CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "fracineq", version, about = "Fractional Ostrowski inequalities for harmonically s-convex functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecKind {
    Gamma,
    Beta,
    #[value(name = "2f1")]
    Hyp2f1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    /// J_{c+}^α h(y), y > c
    Left,
    /// J_{c-}^α h(y), y < c
    Right,
}

/// Options shared by the config-driven subcommands.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// JSON run configuration; flags override its keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Catalog function name.
    #[arg(long)]
    pub function: Option<String>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl RunArgs {
    pub fn resolve(&self) -> CliResult<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(f) = &self.function {
            cfg.function_name = f.clone();
        }
        if let Some(out) = &self.out {
            cfg.output.path = Some(out.clone());
        }
        if let Some(format) = self.format {
            cfg.output.format = format;
        }
        if let Some(rel) = self.rel_tol {
            cfg.tolerances.rel = rel;
        }
        if let Some(abs) = self.abs_tol {
            cfg.tolerances.abs = abs;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub s: f64,
    #[arg(long)]
    pub q: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Γ(x), B(x, y) or ₂F₁(a, b; c; z).
    Specfun {
        #[arg(value_enum)]
        kind: SpecKind,
        #[arg(allow_negative_numbers = true)]
        args: Vec<f64>,
    },
    /// Evaluate a Riemann-Liouville fractional integral of a catalog function.
    Frint {
        #[arg(value_enum)]
        side: Side,
        #[arg(long)]
        function: String,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        abs_tol: Option<f64>,
    },
    /// Check the integral identity for S_f over the configured grid.
    Identity {
        #[command(flatten)]
        run: RunArgs,
        /// Additional seeded random cases.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Report |S_f| and all applicable bounds at one point.
    Bounds {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        point: PointArgs,
        /// Evaluate even if |f'|^q fails certification.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = fracineq::functions::DEFAULT_GRID_DENSITY)]
        grid_density: usize,
    },
    /// Evaluate bounds over a parameter grid.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Additional seeded random points.
        #[arg(long, default_value_t = 0)]
        random_points: usize,
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = fracineq::functions::DEFAULT_GRID_DENSITY)]
        grid_density: usize,
    },
    /// Test harmonic s-convexity of |f'|^q (or of a raw probe function).
    Certify {
        #[arg(long)]
        function: String,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        #[arg(long, default_value_t = fracineq::functions::DEFAULT_GRID_DENSITY)]
        grid_density: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fracineq: {e}");
            e.code()
        }
    }
}
