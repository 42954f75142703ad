//! Generating functions of the sum-of-squares function `r_d(n)`.
//!
//! The central object is
//!
//! ```text
//! xi_d(lambda) = sum_{n >= 1} r_d(n) exp(-lambda sqrt(n)),
//! ```
//!
//! evaluated three ways: by exact lattice enumeration ([`lattice`]), by the
//! closed form `I_d - 1 + C_d` ([`analytic`]) with `C_d` summed directly or
//! through a zeta power series. The gap between the closed form and the
//! lattice sum is the neglected Euler–Maclaurin remainder, examined in
//! [`em_validation`]. The correction term `C_d` alone determines the
//! Neumann Casimir energy of a massless scalar in a `d`-cube ([`casimir`]).

pub mod analytic;
pub mod casimir;
pub mod compensated;
pub mod em_validation;
mod error;
pub mod lattice;
pub mod quadrature;
mod series;
pub mod special;

pub use analytic::{
    c_term, chi_direct, chi_power_series, i_term, lambda_j, xi_derivative, xi_formula, ChiMode,
    ChiValue, EvalConfig, LambdaJValue, Method, XiBreakdown,
};
pub use casimir::{
    casimir_closed_form, casimir_via_limit, regularized_with_boundaries,
    regularized_without_boundaries, CasimirBreakdown,
};
pub use error::{Error, Result};
pub use lattice::{compare, xi_brute, BruteSumResult, ComparisonRow, RdTable};
pub use special::{bessel_k0, gamma_half, zeta_int, Accuracy};
