use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),

    #[error("integration produced a non-finite state at t = {t}")]
    NonFiniteState { t: f64 },

    #[error("need at least {needed} axis crossings, found {found}")]
    InsufficientCrossings { needed: usize, found: usize },

    #[error("no captured dwell on the {0} side of the imaginary axis")]
    NoCapturedDwell(&'static str),

    #[error("trajectory is not a tunneling orbit (classified {0})")]
    ClassificationMismatch(String),

    #[error("ambiguous orbit classification: {0}")]
    AmbiguousClassification(String),

    #[error("trajectory terminated abnormally ({0})")]
    AbnormalTermination(String),

    #[error("bisection bracket failure: inner offset {inner} classified {inner_class}, outer offset {outer} classified {outer_class}")]
    BracketFailure {
        inner: f64,
        inner_class: String,
        outer: f64,
        outer_class: String,
    },

    #[error("degenerate spiral segment: {0}")]
    DegenerateSpiral(String),

    #[error("unsupported QES order M = {0}; closed forms exist for M = 1..=4")]
    UnsupportedOrder(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
