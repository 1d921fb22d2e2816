use thiserror::Error;

use crate::report::CheckReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero scalar")]
    DivisionByZero,

    #[error("parse error at byte {position}: expected {expected}")]
    Parse { position: usize, expected: String },

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    #[error("invalid parameter ring: {0}")]
    InvalidRing(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("bad permutation {0:?}")]
    BadPermutation(Vec<usize>),

    /// Elimination reached a pivot that vanishes for some parameter values.
    #[error("rank depends on parameters: pivot candidate `{entry}` at row {row}, column {col}")]
    ParameterDependentRank { row: usize, col: usize, entry: String },

    #[error("precondition failed: {what}")]
    PreconditionFailed {
        what: String,
        report: Box<CheckReport>,
    },

    #[error("not a coalgebra map")]
    NotCoalgebraMap(Box<CheckReport>),

    #[error("a counit is required")]
    MissingCounit,

    #[error("a unit is required")]
    MissingUnit,

    #[error("corpus integrity: {0}")]
    CorpusIntegrity(String),

    #[error("structure file: {0}")]
    Format(String),

    /// A checker or construction was called with the wrong inputs.
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(what: impl Into<String>, report: CheckReport) -> Self {
        Error::PreconditionFailed {
            what: what.into(),
            report: Box::new(report),
        }
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::ShapeMismatch(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
