use thiserror::Error;

/// Errors produced by the topology-design and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("node {node} has no position")]
    MissingPosition { node: usize },

    #[error("delta_max {given} is below the maximum degree {required}")]
    DeltaMaxTooSmall { given: usize, required: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("selection weight {value} at index {index} lies outside [0, 1]")]
    OutsideBox { index: usize, value: f64 },

    #[error("cardinality k = {k} outside [0, {max}]")]
    InvalidCardinality { k: usize, max: usize },

    #[error("budget {budget} exceeds the {available} available candidate edges")]
    BudgetTooLarge { budget: usize, available: usize },

    #[error("Jacobi eigen-decomposition did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("edge ({i}, {j}) is not a candidate edge of the base graph")]
    UnknownEdge { i: usize, j: usize },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("matrix dimension {n} is too small, need at least {min}")]
    TooSmall { n: usize, min: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable category, used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid_graph",
            Error::MissingPosition { .. } => "missing_position",
            Error::DeltaMaxTooSmall { .. } => "delta_max_too_small",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::OutsideBox { .. } => "outside_box",
            Error::InvalidCardinality { .. } => "invalid_cardinality",
            Error::BudgetTooLarge { .. } => "budget_too_large",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Disconnected => "disconnected",
            Error::UnknownEdge { .. } => "unknown_edge",
            Error::InvalidSchedule(_) => "invalid_schedule",
            Error::TooSmall { .. } => "too_small",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse { .. } => "parse",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
