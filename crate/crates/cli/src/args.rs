//! Command-line surface, declared with clap derive.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "qroulette",
    version,
    about = "Simulator for n-player quantum Russian roulette",
    long_about = "Simulates the n-player quantum Russian roulette protocol: each round every \
                  player in turn applies a conditional rotation to their own alive/dead qubit, \
                  and measurement at the end yields an outcome distribution. Supports exact \
                  phase averaging, Monte Carlo parameter averaging, a classical reference \
                  model, and a self-verification suite."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evolve one game with fixed parameters and print the outcome distribution
    Simulate(SimulateArgs),
    /// Average outcome probabilities over randomized phases (and optionally bullet angles)
    Average(AverageArgs),
    /// Estimate the fully randomized two-round survival probabilities and
    /// compare them to their closed-form targets
    Table1(Table1Args),
    /// Emit per-round probability series for the three reference figures as CSV
    Figures(FiguresArgs),
    /// Evaluate the exact classical reference model
    Classical(ClassicalArgs),
    /// Run the verification suite (exit 1 if any check fails)
    Verify(VerifyArgs),
}

/// Flags shared by every command that builds a quantum game.
#[derive(clap::Args, Debug, Clone)]
pub struct GameFlags {
    /// Number of players (2 to 22)
    #[arg(long)]
    pub players: Option<usize>,
    /// Number of rounds
    #[arg(long)]
    pub rounds: Option<usize>,
    /// Phase angle alpha (radians unless --degrees)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Phase angle beta (radians unless --degrees)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Comma-separated bullet angles, rounds x players values in shot order
    /// (or one value broadcast to every shot)
    #[arg(long, value_name = "LIST", conflicts_with = "bullet_probs")]
    pub gammas: Option<String>,
    /// Comma-separated bullet probabilities per player (or one value for all);
    /// converted to bullet angles
    #[arg(long, value_name = "LIST")]
    pub bullet_probs: Option<String>,
    /// Interpret all input angles as degrees
    #[arg(long)]
    pub degrees: bool,
}

#[derive(clap::Args, Debug, Clone)]
pub struct OutputFlags {
    /// Write data to this file instead of stdout (adds a .manifest.json sidecar)
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
pub struct SimulateArgs {
    /// JSON config file with keys players, rounds, alpha, beta, gammas or
    /// bullet_probs; flags override file values
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub game: GameFlags,
    /// Also emit the distribution after every round, not just the last
    #[arg(long)]
    pub trace: bool,
    /// Also emit expected payoffs under the given scheme
    #[arg(long, value_enum)]
    pub payoff: Option<PayoffKind>,
    #[command(flatten)]
    pub out: OutputFlags,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PayoffKind {
    /// 1 to a lone survivor, split equally among several
    SoleSurvivor,
    /// Two players only: +1/-1 for a lone survivor, 0 otherwise
    ZeroSum,
}

#[derive(clap::Args, Debug)]
pub struct AverageArgs {
    #[command(flatten)]
    pub game: GameFlags,
    /// Outcome bitstring to track, player 1 leftmost (repeatable; default all-alive)
    #[arg(long, value_name = "BITS")]
    pub outcome: Vec<String>,
    /// Averaging engine
    #[arg(long, value_enum, default_value_t = MethodKind::Grid)]
    pub method: MethodKind,
    /// Monte Carlo sample count
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Monte Carlo seed
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Grid nodes per phase axis (default: smallest exact count)
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Also randomize every bullet angle (Monte Carlo only)
    #[arg(long)]
    pub randomize_gammas: bool,
    #[command(flatten)]
    pub out: OutputFlags,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodKind {
    /// Monte Carlo sampling
    Mc,
    /// Exact equispaced phase quadrature
    Grid,
}

#[derive(clap::Args, Debug)]
pub struct Table1Args {
    /// Restrict to one player count (3, 4, or 5; default: all three)
    #[arg(long)]
    pub players: Option<usize>,
    /// Monte Carlo sample count per row
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Monte Carlo seed
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputFlags,
}

#[derive(clap::Args, Debug)]
pub struct FiguresArgs {
    /// Which series to emit: 1 (all-alive, 3 and 4 players), 2 (sole
    /// survivors, 3 players), 3 (sole survivors, 4 players)
    #[arg(long)]
    pub figure: u8,
    /// Number of rounds
    #[arg(long, default_value_t = 25)]
    pub rounds: usize,
    /// Bullet angle used for every shot (radians unless --degrees)
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    pub gamma: f64,
    /// Interpret --gamma as degrees
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub out: OutputFlags,
}

#[derive(clap::Args, Debug)]
pub struct ClassicalArgs {
    /// Number of players
    #[arg(long, default_value_t = 3)]
    pub players: usize,
    /// Number of rounds
    #[arg(long, default_value_t = 1)]
    pub rounds: usize,
    /// Comma-separated bullet probabilities per player (or one value for all)
    #[arg(long, value_name = "LIST", default_value = "0.5")]
    pub bullet_probs: String,
    #[command(flatten)]
    pub out: OutputFlags,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Run only checks whose name contains this substring
    #[arg(long)]
    pub filter: Option<String>,
}
