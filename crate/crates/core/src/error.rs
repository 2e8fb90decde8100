use thiserror::Error;

use crate::arith::QVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cone is not pointed: both {0} and its negative lie in the cone")]
    NotPointed(QVector),

    #[error("cone is not generating: every generator is orthogonal to {0}")]
    NotGenerating(QVector),

    #[error("generator and inequality representations disagree: {0}")]
    InconsistentReps(String),

    #[error("halfspace with zero normal and positive offset is empty")]
    EmptyHalfspace,

    #[error("{0} is not a positive element (the predicate is only defined on the positive cone)")]
    NotPositive(QVector),

    #[error("the zero element is excluded (atoms and discrete elements are nonzero by definition)")]
    ZeroElement,

    #[error("{0} is not a lower bound of the given pair")]
    NotLowerBound(QVector),

    #[error("polyhedron is unbounded along {0}")]
    Unbounded(QVector),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Whether the error reflects a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub(crate) fn check_dim(expected: usize, v: &QVector) -> Result<()> {
    if v.dim() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found: v.dim() })
    }
}
