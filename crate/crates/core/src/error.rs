use thiserror::Error;

/// Errors raised by the numeric primitives and the coefficient engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse scalar literal {0:?}")]
    Parse(String),

    #[error("series diverges: {0}")]
    DivergentSeries(String),

    #[error("exact arithmetic unavailable: {0}")]
    ExactModeUnavailable(String),

    #[error("divergence precondition violated: {0}")]
    DivergencePrecondition(String),

    #[error("Gamma pole at {0}")]
    PoleEncountered(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("moment functional diverges: {0}")]
    Divergent(String),

    #[error("no rigorous tail bound for {0}")]
    TailBoundUnavailable(String),

    #[error("degenerate Pearson recurrence at n = {n}: leading coefficient vanishes")]
    DegenerateRecurrence { n: usize },

    #[error("expected {expected} seed moments, got {got}")]
    SeedCountMismatch { expected: usize, got: usize },

    #[error("need {needed} moments, have {available}")]
    InsufficientMoments { needed: usize, available: usize },

    #[error("functional is not quasi-definite (or indeterminate at this precision) at n = {n}")]
    QuasiDefiniteFailure { n: usize },

    #[error("z = {0} is not allowed here (requires z != 0 and z != 1)")]
    InvalidZ(String),

    #[error("Laguerre-Freud run is singular at n = {n}: gamma vanishes or is indeterminate")]
    SingularRun { n: usize },

    #[error("cannot compute seeds: {0}")]
    SeedFailure(String),

    #[error("degenerate parameters: zero denominator at n = {n}")]
    DegenerateParameters { n: usize },
}

impl Error {
    /// Index at which a numerical run broke down, when the error carries one.
    pub fn failing_index(&self) -> Option<usize> {
        match self {
            Error::QuasiDefiniteFailure { n }
            | Error::SingularRun { n }
            | Error::DegenerateRecurrence { n }
            | Error::DegenerateParameters { n } => Some(*n),
            _ => None,
        }
    }

    /// True for breakdowns detected while running (as opposed to bad input).
    pub fn is_numerical_failure(&self) -> bool {
        matches!(self, Error::QuasiDefiniteFailure { .. } | Error::SingularRun { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
