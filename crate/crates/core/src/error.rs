use thiserror::Error;

use crate::scalar::GaussianRational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series with zero constant term is not a unit")]
    NotAUnit,
    #[error("insufficient precision in {context}: need known order {needed}, have {have}")]
    InsufficientPrecision {
        context: &'static str,
        needed: usize,
        have: usize,
    },
    #[error("generators do not span a full-rank lattice")]
    RankDeficient,
    #[error("lattice is not contained in the given lattice")]
    NotASublattice,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("matrix is not invertible at b = 0")]
    NotInvertible,
    #[error("module does not have a simple pole")]
    NotSimplePole,
    #[error("characteristic polynomial does not split over Q(i)")]
    NonSplitSpectrum,
    #[error("vector is not primitive (lies in b.E)")]
    NotPrimitive,
    #[error("vector is not an eigenvector of b^-1.a for {0}")]
    NotEigen(Box<GaussianRational>),
    #[error("lattice is not stable under a")]
    NotStable,
    #[error("module is not regular: saturation did not stabilize within {0} steps")]
    NotRegular(usize),
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error("exponent {0} is not minimal in its class mod Z")]
    NotMinimalExponent(Box<GaussianRational>),
    #[error("truncated dimensions did not stabilize up to truncation {0}")]
    NotStabilized(usize),
    #[error("jet lift is not unique at order {0}")]
    LiftNotUnique(usize),
    #[error("jet does not lift at order {0}")]
    LiftNotFound(usize),
    #[error("bound is not comparable: {0}")]
    BoundNotInteger(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn precision(context: &'static str, needed: usize, have: usize) -> Self {
        Error::InsufficientPrecision {
            context,
            needed,
            have,
        }
    }
}
