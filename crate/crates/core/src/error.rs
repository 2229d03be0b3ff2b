use thiserror::Error;

use crate::gale_frame::ColumnSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("too many columns: {0} (at most {max} supported)", max = crate::gale_frame::MAX_COLUMNS)]
    TooManyColumns(usize),

    #[error("rows are linearly dependent: rank {rank} < {k} rows")]
    RankDeficient { rank: usize, k: usize },

    #[error("matrix is not totally unimodular: minor on rows {rows:?}, columns {columns:?} equals {value}")]
    NotUnimodular {
        rows: Vec<usize>,
        columns: Vec<usize>,
        value: i128,
    },

    #[error("circuit on support {support} has a non-unit entry")]
    NonUnitCircuit { support: ColumnSet },

    #[error("column set {0} is not a flat")]
    NotClosed(ColumnSet),

    #[error("flats {lower} and {upper} are not comparable")]
    NotComparable { lower: ColumnSet, upper: ColumnSet },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("degree mismatch: span has degree {expected}, polynomial has degree {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("invalid ordering: {0}")]
    Ordering(String),

    #[error("central fiber does not vanish in two consecutive degrees up to {d_max}; raise d_max")]
    CentralFiberNotBounded { d_max: usize },

    #[error("Hilbert series mismatch in degree {degree}: module has {module}, h(t)/(1-t)^k gives {expected}")]
    HilbertMismatch {
        degree: usize,
        module: usize,
        expected: usize,
    },

    #[error("restriction {upper} -> {lower} is not well defined in degree {degree}")]
    IllDefinedRestriction {
        lower: ColumnSet,
        upper: ColumnSet,
        degree: usize,
    },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
