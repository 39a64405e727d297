use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight {value} at index {index} is not strictly positive")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("weight {value} at index {index} is not finite")]
    NonFiniteWeight { index: usize, value: f64 },

    #[error("alphabet needs at least 2 symbols, got {0}")]
    TooSmallAlphabet(usize),

    #[error("duplicate alphabet label {0:?}")]
    DuplicateLabel(String),

    #[error("expected {expected} weights, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("distributions are defined over different alphabets")]
    AlphabetMismatch,

    #[error("normalized weights sum to {0}, not 1")]
    NotNormalized(f64),

    #[error("Renyi entropy is undefined at order 1 (use the Shannon entropy)")]
    OrderIsOne,

    #[error("Renyi order must be finite, got {0}")]
    NonFiniteOrder(f64),

    #[error("base distribution is (numerically) uniform; log-probability spread {0:e}")]
    DegenerateBase(f64),

    #[error("{0} must be unambiguous (unique most and least likely symbols)")]
    Ambiguous(&'static str),

    #[error("{what} = {value} outside the admissible range ({lo}, {hi})")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("root finding for {0} did not converge")]
    NoConvergence(&'static str),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("moment order rho must be > 0, got {0}")]
    NonPositiveRho(f64),

    #[error("{what}: {size} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("rank must be >= 1")]
    BadRank,

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    ///
    /// 2 = configuration/input, 3 = projection hypothesis, 4 = resource guard,
    /// 1 = anything else (numerical failure).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonPositiveWeight { .. }
            | Error::NonFiniteWeight { .. }
            | Error::TooSmallAlphabet(_)
            | Error::DuplicateLabel(_)
            | Error::LengthMismatch { .. }
            | Error::AlphabetMismatch
            | Error::NotNormalized(_)
            | Error::Ambiguous(_)
            | Error::Domain { .. }
            | Error::NonPositiveRho(_)
            | Error::DegenerateBase(_)
            | Error::Config(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::HypothesisViolated(_) => 3,
            Error::TooLarge { .. } => 4,
            _ => 1,
        }
    }
}
