use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chain lengths must be positive (got a={a}, b={b})")]
    EmptyChain { a: usize, b: usize },

    #[error("poset has {0} elements; at most {max} are supported", max = crate::poset::MAX_ELEMENTS)]
    TooManyElements(usize),

    #[error("enumeration guard exceeded: {what} has more than {limit} states")]
    GuardExceeded { what: String, limit: u64 },

    #[error("orbit did not close within {limit} steps")]
    OrbitGuardExceeded { limit: u64 },

    #[error("unknown element {0}")]
    UnknownElement(String),

    #[error("invalid cover relation: {0}")]
    InvalidCover(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("empty word")]
    EmptyWord,

    #[error("state set is not closed under the map: {0}")]
    ClosureViolation(String),

    #[error("map is not invertible on the state set: {0}")]
    NotInvertible(String),

    #[error("empty statistic basis")]
    EmptyBasis,

    #[error("statistic {name} returned dimension {got}, expected {expected}")]
    DimensionMismatch { name: String, expected: usize, got: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("outside the domain of the Lyness map: {0}")]
    LynessDomain(String),

    #[error("invalid sandpile graph: {0}")]
    InvalidGraph(String),

    #[error("sandpile stabilization did not terminate within {0} topplings")]
    StabilizationGuard(u64),

    #[error("partition {0} is not in Y_{1}")]
    NotInStaircase(String, usize),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("singular matrix")]
    Singular,
}

impl Error {
    /// True for the errors that signal a configured size budget was hit.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::GuardExceeded { .. } | Error::OrbitGuardExceeded { .. } | Error::StabilizationGuard(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
