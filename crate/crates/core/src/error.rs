use thiserror::Error;

/// Errors raised by game construction, verification, search and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("game must have at least one player")]
    NoPlayers,

    #[error("player {player} has zero actions")]
    EmptyActionSet { player: usize },

    #[error("expected {expected} payoff tensors, got {actual}")]
    PlayerCountMismatch { expected: usize, actual: usize },

    #[error("payoff tensor of player {player} has length {actual}, expected {expected}")]
    TensorLength {
        player: usize,
        expected: usize,
        actual: usize,
    },

    #[error("payoff of player {player} at flat index {index} is {value}, outside [0, 1]")]
    PayoffOutOfRange { player: usize, index: usize, value: f64 },

    #[error("profile has {actual} strategies but the game has {expected} players")]
    ProfilePlayers { expected: usize, actual: usize },

    #[error("strategy of player {player} has {actual} entries, expected {expected}")]
    StrategyLength {
        player: usize,
        expected: usize,
        actual: usize,
    },

    #[error("strategy of player {player} is not a probability vector: {reason}")]
    NotADistribution { player: usize, reason: String },

    #[error("player index {player} out of range for a {num_players}-player game")]
    PlayerOutOfRange { player: usize, num_players: usize },

    #[error("action {action} out of range for player {player} with {num_actions} actions")]
    ActionOutOfRange {
        player: usize,
        action: usize,
        num_actions: usize,
    },

    #[error("k must be at least 1")]
    ZeroK,

    #[error("strategy of player {player} has {actual} samples or counts summing to {actual}, expected k = {k}")]
    KMismatch { player: usize, k: usize, actual: usize },

    #[error("epsilon {0} is outside (0, 1]")]
    EpsilonRange(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("entropy {entropy} exceeds the maximum {max} bits")]
    EntropyTooLarge { entropy: f64, max: f64 },

    #[error("game has no known equilibrium")]
    MissingEquilibrium,

    #[error("support enumeration needs a 2-player game, got {0} players")]
    NotTwoPlayer(usize),

    #[error("support enumeration is capped at 8 actions per player, got {0:?}")]
    SolverCap(Vec<usize>),

    #[error("malformed game file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
