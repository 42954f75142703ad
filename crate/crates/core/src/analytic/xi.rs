use super::chi::{chi_direct_dd, chi_power_series};
use super::{check_dimension, check_lambda, ChiMode, EvalConfig, Method};
use crate::compensated::DoubleDouble;
use crate::error::{Error, Result};
use crate::special::{gamma_half_pi_pow, Accuracy};

/// `xi_d(lambda)` split into its continuum and correction parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiBreakdown {
    pub config: EvalConfig,
    /// `I_d(lambda)`, the volume integral of `exp(-lambda r)`.
    pub i_term: f64,
    /// `C_d(lambda)`, the correction carried by the `chi_j` series.
    pub c_term: f64,
    /// `I_d - 1 + C_d`, rounded once from extended precision.
    pub xi: f64,
    pub method: Method,
}

/// `Lambda_j(lambda)`: the `(j+1)`-fold lattice sum whose outer index skips zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaJValue {
    pub j: u32,
    pub lambda: f64,
    pub value: f64,
}

/// `2^j pi^((j-1)/2) Gamma((j+1)/2) / lambda^j`; `a_0 = 1` and `a_d = I_d`.
fn continuum_coefficient(j: u32, lambda: f64) -> DoubleDouble {
    let lam_pow = DoubleDouble::from_f64(lambda).powi(j);
    gamma_half_pi_pow(j + 1, j as i32 - 1).mul_f64(2f64.powi(j as i32)) / lam_pow
}

/// `2^(j+2) Gamma((j+2)/2) pi^(j/2)`, the weight of `lambda chi_j` in `C_d`.
fn chi_weight(j: u32) -> DoubleDouble {
    gamma_half_pi_pow(j + 2, j as i32).mul_f64(2f64.powi(j as i32 + 2))
}

fn chi_dd(j: u32, lambda: f64, acc: Accuracy, mode: ChiMode) -> Result<DoubleDouble> {
    match mode {
        ChiMode::DirectChi => Ok(chi_direct_dd(j, lambda, acc)?.0),
        ChiMode::PowerSeries => Ok(DoubleDouble::from_f64(chi_power_series(j, lambda, acc)?.value)),
    }
}

pub(crate) fn i_term_dd(d: u32, lambda: f64) -> Result<DoubleDouble> {
    check_dimension("i_term", d)?;
    check_lambda("i_term", lambda)?;
    let v = continuum_coefficient(d, lambda);
    if !v.to_f64().is_finite() {
        return Err(Error::Overflow {
            routine: "i_term",
            reason: format!("I_{d}({lambda}) exceeds the f64 range"),
        });
    }
    Ok(v)
}

/// `I_d(lambda) = 2^d pi^((d-1)/2) Gamma((d+1)/2) / lambda^d`.
pub fn i_term(d: u32, lambda: f64) -> Result<f64> {
    Ok(i_term_dd(d, lambda)?.to_f64())
}

fn c_term_dd(d: u32, lambda: f64, acc: Accuracy, mode: ChiMode) -> Result<DoubleDouble> {
    check_dimension("c_term", d)?;
    check_lambda("c_term", lambda)?;
    let mut sum = DoubleDouble::ZERO;
    for j in 0..d {
        sum += chi_weight(j) * chi_dd(j, lambda, acc, mode)?;
    }
    Ok(sum.mul_f64(lambda))
}

/// `C_d(lambda) = lambda sum_{j<d} 2^(j+2) Gamma((j+2)/2) pi^(j/2) chi_j(lambda)`.
pub fn c_term(d: u32, lambda: f64, acc: Accuracy, mode: ChiMode) -> Result<f64> {
    Ok(c_term_dd(d, lambda, acc, mode)?.to_f64())
}

pub(crate) fn lambda_j_dd(j: u32, lambda: f64, acc: Accuracy) -> Result<DoubleDouble> {
    check_lambda("lambda_j", lambda)?;
    let chi = chi_direct_dd(j, lambda, acc)?.0;
    Ok(continuum_coefficient(j + 1, lambda) - continuum_coefficient(j, lambda)
        + (chi_weight(j) * chi).mul_f64(lambda))
}

/// `Lambda_j(lambda) = -a_j + a_(j+1) + lambda 2^(j+2) Gamma((j+2)/2) pi^(j/2) chi_j(lambda)`
/// with `a_j = 2^j pi^((j-1)/2) Gamma((j+1)/2) / lambda^j`.
pub fn lambda_j(j: u32, lambda: f64, acc: Accuracy) -> Result<LambdaJValue> {
    Ok(LambdaJValue {
        j,
        lambda,
        value: lambda_j_dd(j, lambda, acc)?.to_f64(),
    })
}

/// Closed-form `xi_d(lambda) = I_d - 1 + C_d`.
pub fn xi_formula(config: EvalConfig, mode: ChiMode) -> Result<XiBreakdown> {
    config.validate()?;
    let i = i_term_dd(config.d, config.lambda)?;
    let c = c_term_dd(config.d, config.lambda, config.accuracy, mode)?;
    let xi = i - DoubleDouble::ONE + c;
    Ok(XiBreakdown {
        config,
        i_term: i.to_f64(),
        c_term: c.to_f64(),
        xi: xi.to_f64(),
        method: mode.into(),
    })
}

/// `d/dlambda C_p(lambda) = sum_{j<p} w_j (chi_j - (j+2) lambda^2 chi_(j+2))`,
/// using `d/dlambda (lambda chi_j) = chi_j - (j+2) lambda^2 chi_(j+2)`.
pub fn c_term_derivative(p: u32, lambda: f64, acc: Accuracy) -> Result<f64> {
    Ok(c_term_derivative_dd(p, lambda, acc)?.to_f64())
}

fn c_term_derivative_dd(p: u32, lambda: f64, acc: Accuracy) -> Result<DoubleDouble> {
    check_dimension("c_term_derivative", p)?;
    check_lambda("c_term_derivative", lambda)?;
    let lambda2 = DoubleDouble::from_product(lambda, lambda);
    let mut sum = DoubleDouble::ZERO;
    for j in 0..p {
        let chi = chi_direct_dd(j, lambda, acc)?.0;
        let chi2 = chi_direct_dd(j + 2, lambda, acc)?.0;
        let inner = chi - (lambda2 * chi2).mul_f64(f64::from(j + 2));
        sum += chi_weight(j) * inner;
    }
    Ok(sum)
}

/// `-d/dlambda xi_d(lambda) = d I_d / lambda - d/dlambda C_d`, the
/// `sqrt(n)`-weighted sum `sum_n r_d(n) sqrt(n) exp(-lambda sqrt(n))` up to
/// the same neglected remainder as `xi_d` itself.
pub fn xi_derivative(config: EvalConfig) -> Result<f64> {
    config.validate()?;
    let i = i_term_dd(config.d, config.lambda)?;
    let di = i.mul_f64(f64::from(config.d)) / DoubleDouble::from_f64(config.lambda);
    let dc = c_term_derivative_dd(config.d, config.lambda, config.accuracy)?;
    Ok((di - dc).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn acc() -> Accuracy {
        Accuracy::default()
    }

    fn exact_xi1(lambda: f64) -> f64 {
        2.0 / lambda.exp_m1()
    }

    #[test]
    fn i_term_spot_values() {
        assert_eq!(i_term(1, 1.0).unwrap(), 2.0);
        assert!((i_term(2, 1.0).unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!((i_term(3, 2.0).unwrap() - PI).abs() < 1e-15);
        assert!(matches!(i_term(10, 1e-40), Err(Error::Overflow { .. })));
        assert!(i_term(0, 1.0).is_err());
        assert!(i_term(11, 1.0).is_err());
    }

    #[test]
    fn c_term_one_dimension_closed_form() {
        // C_1 = coth(lambda/2) - 2/lambda
        let v = c_term(1, 1.0, acc(), ChiMode::DirectChi).unwrap();
        assert!((v - 0.163_953_413_738_652_85).abs() < 1e-16);
        for lambda in [0.2, 3.0, 17.0] {
            let v = c_term(1, lambda, acc(), ChiMode::DirectChi).unwrap();
            // the oracle itself cancels down from 2 / lambda
            let exact = 1.0 / (0.5 * lambda).tanh() - 2.0 / lambda;
            assert!((v - exact).abs() < 4.0 * f64::EPSILON * (2.0 / lambda));
        }
    }

    #[test]
    fn one_dimension_is_exact() {
        for lambda in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
            let cfg = EvalConfig::new(1, lambda).unwrap();
            let xi = xi_formula(cfg, ChiMode::DirectChi).unwrap().xi;
            let exact = exact_xi1(lambda);
            // absolute floor: the formula subtracts quantities of order one
            assert!((xi - exact).abs() < 1e-13 * exact + 1e-16, "lambda = {lambda}");
        }
        let cfg = EvalConfig::new(1, 1.0).unwrap();
        let xi = xi_formula(cfg, ChiMode::PowerSeries).unwrap().xi;
        assert!(((xi - 2.0 / (E - 1.0)) / xi).abs() < 1e-12);
    }

    #[test]
    fn lambda_zero_is_geometric_series() {
        let v = lambda_j(0, 1.0, acc()).unwrap().value;
        assert!((v - 2.0 / (E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn telescoping_matches_final_formula() {
        for d in 1..=6 {
            for lambda in [0.1, 1.0, 5.0] {
                let cfg = EvalConfig::new(d, lambda).unwrap();
                let xi = xi_formula(cfg, ChiMode::DirectChi).unwrap().xi;
                let sum: f64 = (0..d).map(|j| lambda_j(j, lambda, acc()).unwrap().value).sum();
                assert!(((sum - xi) / xi).abs() < 1e-11, "d = {d}, lambda = {lambda}");
                assert!(sum + 1.0 > 0.0);
            }
        }
    }

    #[test]
    fn breakdown_is_consistent() {
        for d in 1..=5 {
            for lambda in [0.1, 1.0, 3.0] {
                let cfg = EvalConfig::new(d, lambda).unwrap();
                for mode in [ChiMode::DirectChi, ChiMode::PowerSeries] {
                    let b = xi_formula(cfg, mode).unwrap();
                    let recombined = b.i_term - 1.0 + b.c_term;
                    let scale = b.i_term.max(1.0);
                    assert!((recombined - b.xi).abs() <= 4.0 * f64::EPSILON * scale);
                    assert!(b.xi > 0.0);
                    assert_eq!(b.method, Method::from(mode));
                }
            }
        }
    }

    #[test]
    fn power_series_mode_rejects_large_lambda() {
        let cfg = EvalConfig::new(2, 7.0).unwrap();
        assert!(xi_formula(cfg, ChiMode::PowerSeries).unwrap_err().is_domain());
    }

    #[test]
    fn c_term_limits() {
        for d in 1..=5 {
            assert!(c_term(d, 1e-6, acc(), ChiMode::DirectChi).unwrap() < 1e-5);
            let big = c_term(d, 1000.0, acc(), ChiMode::DirectChi).unwrap();
            assert!((big - 1.0).abs() < 0.02, "d = {d}: {big}");
        }
    }

    #[test]
    fn derivative_one_dimension() {
        let cfg = EvalConfig::new(1, 1.0).unwrap();
        let v = xi_derivative(cfg).unwrap();
        let exact = 2.0 * E / (E - 1.0).powi(2);
        assert!(((v - exact) / exact).abs() < 1e-14);
        assert!((v - 1.841_347_188_415_584_6).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_finite_difference_of_formula() {
        for d in [2, 4] {
            for lambda in [0.4, 2.0] {
                let h = 1e-3;
                let f = |l: f64| xi_formula(EvalConfig::new(d, l).unwrap(), ChiMode::DirectChi).unwrap().xi;
                let fd = -(8.0 * (f(lambda + h) - f(lambda - h)) - (f(lambda + 2.0 * h) - f(lambda - 2.0 * h)))
                    / (12.0 * h);
                let an = xi_derivative(EvalConfig::new(d, lambda).unwrap()).unwrap();
                assert!(((fd - an) / an).abs() < 1e-7, "d = {d}, lambda = {lambda}");
            }
        }
    }

    #[test]
    fn derivative_decays() {
        // exp(-60) is below what the closed form resolves; only the
        // cancellation down to rounding level is checked
        let v = xi_derivative(EvalConfig::new(3, 60.0).unwrap()).unwrap();
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn monotone_in_lambda() {
        for d in 1..=4 {
            let mut prev: Option<XiBreakdown> = None;
            let mut lambda = 0.05;
            while lambda < 30.0 {
                let b = xi_formula(EvalConfig::new(d, lambda).unwrap(), ChiMode::DirectChi).unwrap();
                if let Some(p) = prev {
                    assert!(b.xi < p.xi);
                    assert!(b.i_term < p.i_term);
                    assert!(b.c_term > p.c_term);
                }
                prev = Some(b);
                lambda *= 1.3;
            }
        }
    }
}
