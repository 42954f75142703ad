//! Closed-form evaluation of the generating function
//! `xi_d(lambda) = sum_{n >= 1} r_d(n) exp(-lambda sqrt(n))`.
//!
//! The lattice sum is split as `xi_d = I_d - 1 + C_d`, where `I_d` is the
//! continuum (volume-integral) term and `C_d` is a finite combination of the
//! convergent series
//!
//! ```text
//! chi_j(lambda) = sum_{m >= 1} (lambda^2 + 4 m^2 pi^2)^(-(j+2)/2).
//! ```
//!
//! `chi_j` can be summed directly or, for `lambda < 2 pi`, through its power
//! series with zeta-function coefficients. The decomposition drops the
//! Euler–Maclaurin remainder of the inner sums, so for `d >= 2` the result
//! differs from the exact lattice sum (see [`crate::lattice`]); for `d = 1`
//! it is exact.

mod bessel_sum;
mod chi;
mod xi;

pub use bessel_sum::{k0_lattice_sum_direct, k0_lattice_sum_series};
pub use chi::{chi_direct, chi_power_series, ChiValue};
pub use xi::{
    c_term, c_term_derivative, i_term, lambda_j, xi_derivative, xi_formula, LambdaJValue,
    XiBreakdown,
};


use crate::error::{Error, Result};
use crate::special::Accuracy;

/// Largest dimension the crate accepts.
pub const MAX_DIMENSION: u32 = 10;

/// Dimension, regulator and truncation policy for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub d: u32,
    pub lambda: f64,
    pub accuracy: Accuracy,
}

impl EvalConfig {
    pub fn new(d: u32, lambda: f64) -> Result<Self> {
        Self::with_accuracy(d, lambda, Accuracy::default())
    }

    pub fn with_accuracy(d: u32, lambda: f64, accuracy: Accuracy) -> Result<Self> {
        let cfg = Self {
            d,
            lambda,
            accuracy,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        check_dimension("EvalConfig", self.d)?;
        check_lambda("EvalConfig", self.lambda)?;
        self.accuracy.validate()
    }
}

pub(crate) fn check_dimension(routine: &'static str, d: u32) -> Result<()> {
    if d == 0 || d > MAX_DIMENSION {
        return Err(Error::domain(
            routine,
            format!("dimension must lie in 1..={MAX_DIMENSION}, got {d}"),
        ));
    }
    Ok(())
}

pub(crate) fn check_lambda(routine: &'static str, lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::domain(
            routine,
            format!("lambda must be a positive finite number, got {lambda}"),
        ));
    }
    Ok(())
}

/// How `chi_j` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChiMode {
    /// Direct summation over `m` with an Euler–Maclaurin tail.
    DirectChi,
    /// Zeta-coefficient power series; requires `lambda < 2 pi`.
    PowerSeries,
}

/// Provenance of a generating-function value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    DirectChi,
    PowerSeries,
    Brute,
}

impl From<ChiMode> for Method {
    fn from(mode: ChiMode) -> Self {
        match mode {
            ChiMode::DirectChi => Method::DirectChi,
            ChiMode::PowerSeries => Method::PowerSeries,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::DirectChi => "direct_chi",
            Method::PowerSeries => "power_series",
            Method::Brute => "brute",
        })
    }
}
