use super::check_lambda;
use crate::compensated::{DoubleDouble, NeumaierSum};
use crate::error::{Error, Result};
use crate::series::{euler_maclaurin_tail, quadratic_power_taylor, EM_TAYLOR_LEN};
use crate::special::{zeta_int, Accuracy};
use std::f64::consts::PI;

/// One evaluation of `chi_j(lambda)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiValue {
    pub j: u32,
    pub lambda: f64,
    pub value: f64,
    /// Explicit terms summed (direct) or series order reached (power series).
    pub terms_used: u64,
    /// Bound on the truncation error of `value`.
    pub tail_bound: f64,
}

/// Shortest explicit head before the tail is closed analytically.
const MIN_HEAD: u64 = 20;

/// `chi_j(lambda) = sum_{m >= 1} (lambda^2 + 4 m^2 pi^2)^(-(j+2)/2)`.
///
/// The first `M - 1` terms are summed in double-double arithmetic; the tail
/// `m >= M` is closed with its integral, expanded binomially in
/// `(lambda / 2 pi M)^2`, plus Euler–Maclaurin corrections. The first omitted
/// correction is reported as `tail_bound`. `M` doubles until the bound drops
/// below `eps_rel * value` or would exceed `max_terms`.
pub fn chi_direct(j: u32, lambda: f64, acc: Accuracy) -> Result<ChiValue> {
    let (value, terms_used, tail_bound) = chi_direct_dd(j, lambda, acc)?;
    Ok(ChiValue {
        j,
        lambda,
        value: value.to_f64(),
        terms_used,
        tail_bound,
    })
}

pub(crate) fn chi_direct_dd(j: u32, lambda: f64, acc: Accuracy) -> Result<(DoubleDouble, u64, f64)> {
    check_lambda("chi_direct", lambda)?;
    acc.validate()?;
    let mut m_split = MIN_HEAD.max((lambda / PI).ceil() as u64);
    loop {
        if m_split > acc.max_terms {
            return Err(Error::ToleranceNotReached {
                routine: "chi_direct",
                eps_rel: acc.eps_rel,
                terms: acc.max_terms,
                bound: f64::NAN,
            });
        }
        let head = chi_head_dd(j, lambda, m_split);
        let (tail, bound) = chi_tail(j, lambda, m_split as f64);
        let value = head + DoubleDouble::from_f64(tail);
        if bound <= acc.eps_rel * value.to_f64() {
            return Ok((value, m_split, bound));
        }
        m_split *= 2;
    }
}

fn chi_head_dd(j: u32, lambda: f64, m_split: u64) -> DoubleDouble {
    let four_pi2 = (DoubleDouble::PI * DoubleDouble::PI).mul_f64(4.0);
    let lambda2 = DoubleDouble::from_product(lambda, lambda);
    let mut acc = DoubleDouble::ZERO;
    for m in 1..m_split {
        let mf = m as f64;
        let h = lambda2 + four_pi2.mul_f64(mf * mf);
        let inv = h.recip();
        let term = if j.is_multiple_of(2) {
            inv.powi(j / 2 + 1)
        } else {
            inv.powi(j.div_ceil(2)) * inv.sqrt()
        };
        acc += term;
    }
    acc
}

/// `sum_{m >= M}` of the chi summand, with an error estimate.
fn chi_tail(j: u32, lambda: f64, m: f64) -> (f64, f64) {
    let s = 0.5 * (f64::from(j) + 2.0);
    let two_pi = 2.0 * PI;

    // int_M^inf (2 pi t)^(-2s) (1 + (lambda / 2 pi t)^2)^(-s) dt
    let rho = (lambda / (two_pi * m)).powi(2);
    let lead = two_pi.powf(-2.0 * s) * m.powf(1.0 - 2.0 * s);
    let mut binom = 1.0;
    let mut rho_n = 1.0;
    let mut integral = NeumaierSum::new();
    let mut last = 0.0;
    for n in 0..400 {
        let nf = n as f64;
        if n > 0 {
            binom *= (-s - nf + 1.0) / nf;
            rho_n *= rho;
        }
        last = lead * binom * rho_n / (2.0 * s + 2.0 * nf - 1.0);
        integral.add(last);
        if last.abs() < 1e-19 * integral.value().abs() {
            break;
        }
    }

    let c0 = lambda * lambda + two_pi * two_pi * m * m;
    let taylor = quadratic_power_taylor([c0, 2.0 * two_pi * two_pi * m, two_pi * two_pi], -s, EM_TAYLOR_LEN);
    let (tail, em_bound) = euler_maclaurin_tail(integral.value(), &taylor);
    (tail, em_bound + last.abs())
}

/// Power-series evaluation of `chi_j(lambda)` for `0 < lambda < 2 pi`:
///
/// ```text
/// chi_j = (2 pi)^-(j+2) sum_n (-1)^n / n! (lambda^2 / 4 pi^2)^n zeta(j + 2 + 2n) prod_{i=1..n} (i + j/2)
/// ```
///
/// Truncated once the terms are shrinking and the next one is below
/// `eps_rel` times the partial sum; that next term bounds the error.
pub fn chi_power_series(j: u32, lambda: f64, acc: Accuracy) -> Result<ChiValue> {
    check_lambda("chi_power_series", lambda)?;
    acc.validate()?;
    let two_pi = 2.0 * PI;
    if lambda >= two_pi {
        return Err(Error::domain(
            "chi_power_series",
            format!("requires lambda < 2 pi, got {lambda}"),
        ));
    }
    let x = (lambda / two_pi).powi(2);
    let half_j = 0.5 * f64::from(j);
    let mut coeff = 1.0; // (-1)^n x^n prod(i + j/2) / n!
    let mut sum = NeumaierSum::new();
    sum.add(zeta_int(j + 2)?);
    let mut n: u64 = 0;
    let mut prev_mag = f64::INFINITY;
    loop {
        n += 1;
        if n > acc.max_terms {
            return Err(Error::ToleranceNotReached {
                routine: "chi_power_series",
                eps_rel: acc.eps_rel,
                terms: acc.max_terms,
                bound: prev_mag,
            });
        }
        let nf = n as f64;
        coeff *= -x * (nf + half_j) / nf;
        let term = coeff * zeta_int(j + 2 + 2 * n as u32)?;
        let mag = term.abs();
        let shrinking = mag < prev_mag;
        prev_mag = mag;
        if shrinking && mag < acc.eps_rel * sum.value().abs() {
            let scale = two_pi.powi(-(j as i32 + 2));
            return Ok(ChiValue {
                j,
                lambda,
                value: scale * sum.value(),
                terms_used: n,
                tail_bound: scale * mag,
            });
        }
        sum.add(term);
    }
}
