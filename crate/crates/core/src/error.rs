use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the routine is defined.
    #[error("domain error in {routine}: {reason}")]
    Domain {
        routine: &'static str,
        reason: String,
    },

    /// A series did not reach the requested relative tolerance within the term cap.
    #[error("{routine}: tolerance {eps_rel:e} not reached after {terms} terms (error bound {bound:e})")]
    ToleranceNotReached {
        routine: &'static str,
        eps_rel: f64,
        terms: u64,
        bound: f64,
    },

    /// A result is not representable (overflow / underflow of the result range).
    #[error("overflow in {routine}: {reason}")]
    Overflow {
        routine: &'static str,
        reason: String,
    },

    /// A work-size guard was hit (table too large, too many tuples).
    #[error("guard exceeded in {routine}: {reason}")]
    Guard {
        routine: &'static str,
        reason: String,
    },

    #[error("extrapolation diverged: successive estimates {estimates:?}")]
    ExtrapolationDiverged { estimates: Vec<f64> },

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e}")]
    Quadrature { estimate: f64, error: f64 },
}

impl Error {
    pub(crate) fn domain(routine: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            routine,
            reason: reason.into(),
        }
    }

    /// True when the error reflects invalid caller input rather than a numerical failure.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
