use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violates the invariant of its owning type.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The argument lies outside the region where the function is defined
    /// (or where this crate evaluates it).
    #[error("argument outside domain: {0}")]
    Domain(String),

    /// A series or quadrature did not reach its tolerance within budget.
    #[error("accuracy target not met in {what}: partial value {partial:e} after {terms} terms")]
    Accuracy {
        what: String,
        partial: f64,
        terms: usize,
    },

    /// Residue or contour evaluation is not possible for this parameter layout;
    /// callers fall back to the integral representation.
    #[error("degenerate case: {0}")]
    Degenerate(String),

    /// The requested moment diverges.
    #[error("moment of order {order} is undefined: {reason}")]
    MomentUndefined { order: f64, reason: String },

    /// A quantity that is positive in exact arithmetic came out non-positive.
    #[error("numerical degeneracy: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Parameter(msg()))
    }
}
