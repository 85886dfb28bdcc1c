use thiserror::Error;

/// Errors produced by validation, parsing and the simulation/tally operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor or operation was handed a parameter outside its domain.
    #[error("invalid {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// A line-oriented input (edge list, ballots CSV, ledger CSV, state file)
    /// could not be parsed. The message names the offending line.
    #[error("{reason} at line {line}")]
    MalformedLine { line: usize, reason: String },

    #[error("agent {agent} out of range (n = {n})")]
    AgentOutOfRange { agent: usize, n: usize },

    /// Neighborhood shares are undefined at weighted degree zero.
    #[error("undefined share for isolated agent {agent}")]
    IsolatedAgent { agent: usize },

    #[error("state vector length {got} does not match agent count {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("wrong ballot kind: expected {expected}, got {got}")]
    WrongBallotKind {
        expected: &'static str,
        got: &'static str,
    },

    #[error("unknown voter '{0}' in weighted tally")]
    UnknownVoter(String),

    #[error("voter '{voter}' exceeds quadratic budget: cost {cost} > {budget}")]
    BudgetExceeded {
        voter: String,
        cost: u64,
        budget: u64,
    },

    #[error("missing rating for principle {0}")]
    MissingPrinciple(String),

    /// Catch-all for domain violations that do not fit the shapes above.
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_parameter(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    pub fn malformed(line: usize, reason: impl Into<String>) -> Self {
        Error::MalformedLine {
            line,
            reason: reason.into(),
        }
    }
}
