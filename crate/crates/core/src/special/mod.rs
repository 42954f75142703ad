//! Scalar special functions used throughout the crate.
//!
//! Everything here is evaluated at real arguments only, and only at the points
//! the rest of the crate needs: `K_0` on the positive axis, `zeta` at integers
//! `>= 2`, `Gamma` at integers and half-integers, and Bernoulli polynomials of
//! low order.

mod bernoulli;
mod bessel;
mod gamma;
mod zeta;

pub use bernoulli::{bernoulli_number, bernoulli_periodic};
pub use bessel::bessel_k0;
pub use gamma::{binomial, gamma_half};
pub use zeta::zeta_int;

pub(crate) use gamma::gamma_half_pi_pow;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant, 0.57721566490153286060...
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Truncation policy shared by every series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    /// Target relative tolerance, `0 < eps_rel < 1`.
    pub eps_rel: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: u64,
}

impl Default for Accuracy {
    fn default() -> Self {
        Self {
            eps_rel: 1e-12,
            max_terms: 10_000_000,
        }
    }
}

impl Accuracy {
    pub fn new(eps_rel: f64, max_terms: u64) -> Result<Self> {
        let acc = Self { eps_rel, max_terms };
        acc.validate()?;
        Ok(acc)
    }

    pub fn with_eps(eps_rel: f64) -> Result<Self> {
        Self::new(eps_rel, Self::default().max_terms)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_rel > 0.0 && self.eps_rel < 1.0) {
            return Err(Error::domain(
                "Accuracy",
                format!("eps_rel must lie in (0, 1), got {}", self.eps_rel),
            ));
        }
        if self.max_terms == 0 {
            return Err(Error::domain("Accuracy", "max_terms must be at least 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accuracy_rejects_bad_tolerances() {
        assert!(Accuracy::new(0.0, 10).is_err());
        assert!(Accuracy::new(1.0, 10).is_err());
        assert!(Accuracy::new(f64::NAN, 10).is_err());
        assert!(Accuracy::new(1e-8, 0).is_err());
        assert!(Accuracy::new(1e-8, 1).is_ok());
    }
}
