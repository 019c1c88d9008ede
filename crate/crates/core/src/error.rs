use thiserror::Error;

/// Errors produced by the linear-algebra and theorem-checking routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: left is {left:?}, right is {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("entry count {got} does not match shape {rows}x{cols}")]
    InvalidData { rows: usize, cols: usize, got: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("SVD did not converge after {sweeps} Jacobi sweeps")]
    SvdNoConvergence { sweeps: usize },
    #[error("expected a rank-one matrix, numerical rank is {rank}")]
    RankNotOne { rank: usize },
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("cannot find {wanted} independent coordinates for the subspace (found {found})")]
    DegenerateBasis { wanted: usize, found: usize },
    #[error("invalid constraint form: {0}")]
    InvalidConstraint(String),
    #[error("free-coordinate matrix is singular (rank {rank} < {dim})")]
    SingularBasis { rank: usize, dim: usize },
    #[error("requested rank {rank} exceeds dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },
    #[error("characterizations of EP disagree: {0}")]
    CharacterizationDisagreement(String),
    #[error("catalog case `{case}` mismatched on `{field}`: expected {expected}, got {got}")]
    CatalogMismatch {
        case: String,
        field: String,
        expected: bool,
        got: bool,
    },
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("missing operand `{operand}` for rule `{rule}`")]
    MissingOperand { rule: String, operand: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
