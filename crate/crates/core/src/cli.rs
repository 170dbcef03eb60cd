//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 numeric failure.

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{analyze, SolveOptions};
use crate::error::{Error, Result};
use crate::leading::QuantumState;
use crate::numeric::{BigFloat, Precision};
use crate::oracle::{auto_grid, oracle_eigenvalue, GridConfig};
use crate::potential::{parse_potential, PotentialExpr};
use crate::record::RunRecord;
use crate::tables::{reproduce_table1, reproduce_table2};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pslet", version, about = "Shifted-ℓ expansion for radial bound states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy series, Padé staircase and diagnostics for one state.
    Solve(SolveArgs),
    /// Rebuild one of the reference tables for −1/(r+10).
    Reproduce(ReproduceArgs),
    /// Strongly truncated case α = 0.1, ℓ = nr = 0, where the series diverges.
    DivergeDemo(DemoArgs),
    /// Direct finite-difference eigenvalue only.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    /// Potential V(r) in r, e.g. "-1/(r+10)".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha")]
    pub potential: Option<String>,
    /// Shorthand for V(r) = -1/(r+alpha).
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Spectroscopic label such as 4s or 3d.
    #[arg(long, conflicts_with_all = ["ell", "nr"])]
    pub state: Option<String>,
    #[arg(long, requires = "nr")]
    pub ell: Option<u32>,
    /// Number of radial nodes.
    #[arg(long, requires = "ell")]
    pub nr: Option<u32>,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// Highest series order M.
    #[arg(long, default_value_t = crate::series::DEFAULT_ORDER)]
    pub order: usize,
    #[arg(long, default_value_t = 192)]
    pub prec_bits: u32,
    /// Significant digits for stabilization.
    #[arg(long, default_value_t = crate::resum::DEFAULT_DIGITS, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=40))]
    pub digits: usize,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub numeric: NumericArgs,
    /// Attach the finite-difference cross-check.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub table: u8,
    #[arg(long, default_value_t = 192)]
    pub prec_bits: u32,
    #[arg(long, default_value_t = crate::resum::DEFAULT_DIGITS)]
    pub digits: usize,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[command(flatten)]
    pub numeric: NumericArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub state: StateArgs,
    /// Domain end; chosen from the leading-order geometry when absent.
    #[arg(long, requires = "points")]
    pub r_max: Option<f64>,
    #[arg(long, requires = "r_max")]
    pub points: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
}

impl PotentialArgs {
    fn resolve(&self) -> Result<PotentialExpr> {
        match (&self.potential, &self.alpha) {
            (Some(text), _) => parse_potential(text),
            (None, Some(alpha)) => {
                // validate alpha as a number before splicing it into the expression
                alpha.parse::<f64>().map_err(|_| Error::Syntax {
                    offset: 0,
                    message: format!("alpha `{alpha}` is not a number"),
                })?;
                PotentialExpr::truncated_coulomb(alpha)
            }
            (None, None) => Err(Error::Syntax {
                offset: 0,
                message: "one of --potential or --alpha is required".into(),
            }),
        }
    }
}

impl StateArgs {
    fn resolve(&self) -> Result<QuantumState> {
        match (&self.state, self.ell, self.nr) {
            (Some(label), _, _) => QuantumState::from_label(label),
            (None, Some(ell), Some(nr)) => Ok(QuantumState::new(ell, nr)),
            _ => Err(Error::InvalidState("give --state or both --ell and --nr".into())),
        }
    }
}

impl NumericArgs {
    fn options(&self, oracle: bool) -> Result<SolveOptions> {
        Ok(SolveOptions {
            order: self.order,
            prec: Precision::new(self.prec_bits)?,
            digits: self.digits,
            oracle,
        })
    }
}

fn render_record(record: &RunRecord, format: Format) -> String {
    match format {
        Format::Md => record.to_markdown(),
        Format::Json => record.to_json() + "\n",
        Format::Csv => record.to_csv().expect("in-memory csv"),
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<RunRecord> {
    let pot = args.potential.resolve()?;
    let state = args.state.resolve()?;
    let opts = args.numeric.options(args.oracle)?;
    let analysis = analyze::<BigFloat>(&pot, &state, &opts)?;
    Ok(RunRecord::from_analysis(&analysis))
}

pub fn cmd_reproduce(args: &ReproduceArgs) -> Result<String> {
    let prec = Precision::new(args.prec_bits)?;
    Ok(match args.table {
        1 => {
            let t = reproduce_table1(prec, args.digits)?;
            match args.format {
                Format::Md => t.to_markdown(),
                Format::Json => serde_json::to_string_pretty(&t).expect("table serializes") + "\n",
                Format::Csv => t.to_csv().expect("in-memory csv"),
            }
        }
        _ => {
            let t = reproduce_table2(prec)?;
            match args.format {
                Format::Md => t.to_markdown(),
                Format::Json => serde_json::to_string_pretty(&t).expect("table serializes") + "\n",
                Format::Csv => t.to_csv().expect("in-memory csv"),
            }
        }
    })
}

pub const DEMO_ALPHA: &str = "0.1";

pub fn cmd_diverge_demo(args: &DemoArgs) -> Result<RunRecord> {
    let pot = PotentialExpr::truncated_coulomb(DEMO_ALPHA)?;
    let opts = args.numeric.options(true)?;
    let analysis = analyze::<BigFloat>(&pot, &QuantumState::new(0, 0), &opts)?;
    Ok(RunRecord::from_analysis(&analysis))
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<crate::oracle::OracleResult> {
    let pot = args.potential.resolve()?;
    let state = args.state.resolve()?;
    let grid = match (args.r_max, args.points) {
        (Some(r_max), Some(points)) => GridConfig::new(r_max, points),
        _ => auto_grid(&pot, &state)?,
    };
    oracle_eigenvalue(&pot, &state, &grid)
}

fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_USAGE
    } else {
        EXIT_NUMERIC
    }
}

/// Runs a parsed command, writing results to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut impl std::io::Write, err: &mut impl std::io::Write) -> i32 {
    let result: Result<String> = match &cli.command {
        Command::Solve(a) => cmd_solve(a).map(|r| render_record(&r, a.numeric.format)),
        Command::Reproduce(a) => cmd_reproduce(a),
        Command::DivergeDemo(a) => cmd_diverge_demo(a).map(|r| render_record(&r, a.numeric.format)),
        Command::Oracle(a) => cmd_oracle(a).map(|o| match a.format {
            Format::Json => serde_json::to_string_pretty(&o).expect("result serializes") + "\n",
            Format::Csv => format!(
                "energy,nodes,richardson_error,r_max,points\n{},{},{},{},{}\n",
                o.energy, o.nodes, o.richardson_error, o.grid.r_max, o.grid.points
            ),
            Format::Md => format!(
                "E = {:.10} ({} nodes, Richardson error {:.1e}, r_max {:.1}, {} points)\n",
                o.energy, o.nodes, o.richardson_error, o.grid.r_max, o.grid.points
            ),
        }),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
