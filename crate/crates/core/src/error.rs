//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while building or running a game.
#[derive(Debug, Error)]
pub enum Error {
    #[error("player count {0} outside supported range 1..={max}", max = crate::statevec::MAX_PLAYERS)]
    PlayerCount(usize),

    #[error("a game needs at least 2 players, got {0}")]
    TooFewPlayers(usize),

    #[error("round count must be at least 1")]
    NoRounds,

    #[error("player index {player} out of range for {n} players")]
    PlayerIndex { player: usize, n: usize },

    #[error("outcome has {got} bits but the state has {want} players")]
    OutcomeLength { got: usize, want: usize },

    #[error("invalid outcome string {0:?}: expected only '0' and '1' characters")]
    OutcomeParse(String),

    #[error("{got} amplitudes supplied but {n} players need {want}")]
    AmplitudeCount { got: usize, n: usize, want: usize },

    #[error("schedule has {got} entries, expected rounds × players = {want}")]
    ScheduleLength { got: usize, want: usize },

    #[error("angle is not finite")]
    NonFiniteAngle,

    #[error("probability {0} outside [0, 1]")]
    ProbabilityRange(f64),

    #[error("dense operator is limited to 10 players, got {0}")]
    DenseSize(usize),

    #[error("zero-sum payoff is defined for exactly 2 players, got {0}")]
    ZeroSumPlayers(usize),

    #[error("payoff table covers {got} players but the state has {want}")]
    PayoffPlayers { got: usize, want: usize },

    #[error("invalid averaging spec: {0}")]
    AveragingSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
