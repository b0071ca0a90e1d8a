use thiserror::Error;

/// Which bound of a feasible array was violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibleViolation {
    /// `y[1] != n`
    FirstNotLength,
    /// `y[i] < 0`
    Negative,
    /// `y[i] > n - i + 1`
    TooLarge,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol rank must be at least 1")]
    ZeroSymbol,

    #[error("a letter must contain at least one symbol")]
    EmptyLetter,

    #[error("parse error at token {token} (byte {offset}): {reason}")]
    Parse {
        /// 1-based token index.
        token: usize,
        /// 0-based byte offset of the token in the input.
        offset: usize,
        reason: String,
    },

    #[error("infeasible array at i={index}: y[{index}] = {value} {}", describe(*.violation, *.len, *.index))]
    Infeasible {
        /// 1-based position of the first violation.
        index: usize,
        value: i64,
        len: usize,
        violation: FeasibleViolation,
    },

    #[error("length mismatch: string has {string} positions, array has {array}")]
    LengthMismatch { string: usize, array: usize },

    #[error("array is not regular: negative edge ({u},{v}) lies inside one positive component")]
    NotRegular { u: usize, v: usize },

    #[error(
        "isolated-vertex conditions {by_conditions:?} disagree with degree count {by_degree:?}"
    )]
    IsolatedMismatch {
        by_conditions: Vec<usize>,
        by_degree: Vec<usize>,
    },

    #[error("unknown {kind} `{value}`")]
    UnknownFlag { kind: &'static str, value: String },

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid bench configuration: {0}")]
    BenchConfig(String),

    #[error("inferred string does not reproduce `{0}`")]
    RoundTrip(String),

    #[error("need at least 3 rows with distinct n, got {0}")]
    TooFewRows(usize),

    #[error("csv: {0}")]
    Csv(String),

    #[error("i/o: {0}")]
    Io(String),
}

fn describe(violation: FeasibleViolation, len: usize, index: usize) -> String {
    match violation {
        FeasibleViolation::FirstNotLength => format!("but y[1] must equal n = {len}"),
        FeasibleViolation::Negative => "is negative".to_string(),
        FeasibleViolation::TooLarge => {
            format!("exceeds n-i+1 = {}", len + 1 - index)
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
