use std::fmt;

use thiserror::Error;

use crate::ground::GroundingStats;

/// Location of a token in an input text. Lines and columns start at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: String,
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{span}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(", "))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("no encoding for {0}")]
    NormalizationUnsupported(String),
    #[error("cardinality {n} out of range 1..={cap}")]
    CardinalityOutOfRange { n: u32, cap: u32 },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("statement is not in normalized form: {0}")]
    UnsupportedStatement(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{0}` has the wrong kind here")]
    WrongKind(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GroundError {
    #[error("clause budget {budget} exceeded (k={}, m={}, r={})", .stats.k, .stats.m, .stats.r)]
    CapacityExceeded { budget: u64, stats: GroundingStats },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TableauError {
    #[error("branch budget {0} exceeded")]
    CapacityExceeded(u64),
    #[error("rule precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("branch is not open and complete")]
    BranchNotComplete,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space of {bits} bits exceeds the budget of {budget}")]
    BudgetExceeded { bits: u64, budget: u32 },
}

/// Any failure of the end-to-end pipeline.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Error {
    /// Budget failures, as opposed to malformed input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::Ground(GroundError::CapacityExceeded { .. })
                | Error::Tableau(TableauError::CapacityExceeded(_))
                | Error::Oracle(OracleError::BudgetExceeded { .. })
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
