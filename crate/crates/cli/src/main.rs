mod commands;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use payreg_core::Error;

#[derive(Parser, Debug)]
#[command(name = "payreg", version, about = "Payoff regions of finite strategic games")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for sampling, directions and random checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Lattice points per simplex edge in the sampled cloud.
    #[arg(long, global = true, default_value_t = 11)]
    pub grid: usize,
    /// Membership and witness tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Write the report document here.
    #[arg(long, global = true, value_name = "OUT")]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pure payoff set and hull vertices.
    Regions { game: PathBuf },
    /// Extreme-point classification of every pure payoff.
    Extreme {
        game: PathBuf,
        /// Skip the mixability search.
        #[arg(long)]
        no_mixability: bool,
    },
    /// Support values and supporting-hyperplane checks.
    Hyperplanes {
        game: PathBuf,
        #[arg(long, value_name = "C1,C2,...", conflicts_with = "sweep")]
        direction: Option<String>,
        #[arg(long, value_name = "K")]
        sweep: Option<usize>,
    },
    /// Pareto dominance in the noncooperative or cooperative region.
    Pareto {
        game: PathBuf,
        #[arg(long, value_name = "V1,V2,...")]
        point: Option<String>,
        #[arg(long)]
        cooperative: bool,
        /// Check seeded rational profiles for small-denominator dominators.
        #[arg(long, conflicts_with = "point")]
        rational_check: bool,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Weighted welfare maximum.
    Welfare {
        game: PathBuf,
        #[arg(long, value_name = "A1,A2,...")]
        weights: String,
    },
    /// Run the invariant suite.
    Verify { game: PathBuf },
    /// Draw a two-player region as SVG.
    Plot {
        game: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        no_cloud: bool,
        #[arg(long, default_value_t = 640)]
        width: u32,
        #[arg(long, default_value_t = 640)]
        height: u32,
    },
}

const EXIT_INVARIANT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Regions { game } => commands::regions(g, game),
        Command::Extreme { game, no_mixability } => commands::extreme(g, game, !no_mixability),
        Command::Hyperplanes {
            game,
            direction,
            sweep,
        } => commands::hyperplanes(g, game, direction.as_deref(), *sweep),
        Command::Pareto {
            game,
            point,
            cooperative,
            rational_check,
            samples,
        } => commands::pareto(g, game, point.as_deref(), *cooperative, *rational_check, *samples),
        Command::Welfare { game, weights } => commands::welfare(g, game, weights),
        Command::Verify { game } => commands::verify(g, game),
        Command::Plot {
            game,
            out,
            no_cloud,
            width,
            height,
        } => commands::plot(g, game, out, !no_cloud, *width, *height),
    };
    match result.and_then(|outcome| outcome.emit(g)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_INVARIANT),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_)
                | Error::InvalidDirection(_)
                | Error::InvalidWeights(_)
                | Error::InvalidTolerance(_)
                | Error::DimensionMismatch { .. } => EXIT_USAGE,
                _ => EXIT_INPUT,
            })
        }
    }
}
