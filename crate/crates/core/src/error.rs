use thiserror::Error;

use crate::sset::GeneratorId;

/// Errors raised by the kernel. Contract violations carry enough context to
/// locate the offending value; none of the operations panic on bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("operator {0} is not a degeneracy operator")]
    NotDegeneracy(String),

    #[error("operator {0} is not a face operator")]
    NotFace(String),

    #[error("block assignment is not an interval partition: {0}")]
    InvalidPartition(String),

    #[error("generator {0} does not exist in this simplicial set")]
    DanglingGenerator(GeneratorId),

    #[error("invalid simplicial set: {0}")]
    InvalidSet(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("{0} is not non-singular")]
    SingularInput(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("expression error at column {column}: {message}")]
    Expr { column: usize, message: String },

    #[error("bound exceeded: {0}")]
    Bounds(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag used by the CLI's JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidOperator(_) => "invalid_operator",
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::NotDegeneracy(_) => "not_degeneracy",
            Error::NotFace(_) => "not_face",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::DanglingGenerator(_) => "dangling_generator",
            Error::InvalidSet(_) => "invalid_set",
            Error::InvalidMap(_) => "invalid_map",
            Error::SingularInput(_) => "singular_input",
            Error::InvalidPoset(_) => "invalid_poset",
            Error::Parse { .. } => "parse",
            Error::Expr { .. } => "expr",
            Error::Bounds(_) => "bounds",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
