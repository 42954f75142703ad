//! Numerical checks of the two auxiliary facts the closed form rests on:
//! the Euler–Maclaurin remainder for `f(x) = exp(-lambda sqrt(x^2 + C))`
//! does not depend on the order `q` at which it is taken, and the volume
//! integral of `exp(-lambda |x|)` over `R^d` is `I_d`.

use crate::analytic::{check_dimension, check_lambda};
use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_semi_infinite};
use crate::series::{exp_taylor, quadratic_power_taylor};
use crate::special::{bernoulli_periodic, gamma_half};
use std::f64::consts::PI;

/// One evaluation of the remainder `R_q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderCheck {
    pub q: u32,
    pub lambda: f64,
    /// The constant `C` under the square root.
    pub c_shift: f64,
    pub value: f64,
    pub quad_error: f64,
}

fn check_shift(routine: &'static str, c_shift: f64) -> Result<()> {
    if !(c_shift > 0.0 && c_shift.is_finite()) {
        return Err(Error::domain(routine, format!("C must be positive, got {c_shift}")));
    }
    Ok(())
}

/// `f(x) = exp(-lambda sqrt(x^2 + C))`.
pub fn test_function(lambda: f64, c_shift: f64, x: f64) -> f64 {
    (-lambda * (x * x + c_shift).sqrt()).exp()
}

/// `f^(r)(x)` for `r <= order`, from the Taylor jet of `f` about `x`.
pub fn test_function_derivatives(lambda: f64, c_shift: f64, x: f64, order: usize) -> Vec<f64> {
    let mut v = quadratic_power_taylor([x * x + c_shift, 2.0 * x, 1.0], 0.5, order);
    for t in v.iter_mut() {
        *t *= -lambda;
    }
    let mut jet = exp_taylor(&v);
    let mut factorial = 1.0;
    for (r, t) in jet.iter_mut().enumerate().skip(1) {
        factorial *= r as f64;
        *t *= factorial;
    }
    jet
}

/// `R_q = -(1/(2q)!) int_0^1 B_2q(x) sum_{nu >= 0} f^(2q)(x + nu) dx`.
///
/// The `nu`-sum stops at `ceil(40 / lambda)`, where `f` has fallen below
/// `e^-40` of its peak. Derivatives come from exact Taylor jets.
pub fn remainder_direct(q: u32, lambda: f64, c_shift: f64) -> Result<RemainderCheck> {
    check_lambda("remainder_direct", lambda)?;
    check_shift("remainder_direct", c_shift)?;
    if !(1..=3).contains(&q) {
        return Err(Error::domain("remainder_direct", format!("q must be 1, 2 or 3, got {q}")));
    }
    let order = 2 * q as usize;
    let nu_max = (40.0 / lambda).ceil() as u64;
    let factorial: f64 = (1..=order).map(|k| k as f64).product();
    let mut failure = None;
    let quad = integrate(
        |x| {
            let mut s = NeumaierSum::new();
            for nu in 0..=nu_max {
                s.add(test_function_derivatives(lambda, c_shift, x + nu as f64, order)[order]);
            }
            match bernoulli_periodic(2 * q, x) {
                Ok(b) => b * s.value(),
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        0.0,
        1.0,
        1e-15,
        1e-12,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(RemainderCheck {
        q,
        lambda,
        c_shift,
        value: -quad.value / factorial,
        quad_error: quad.error / factorial,
    })
}

/// The same remainder from its definition:
/// `sum_{n >= 1} f(n) - int_0^inf f + f(0) / 2`. Returns the value and the
/// quadrature error estimate.
pub fn remainder_by_summation(lambda: f64, c_shift: f64) -> Result<(f64, f64)> {
    check_lambda("remainder_by_summation", lambda)?;
    check_shift("remainder_by_summation", c_shift)?;
    let mut sum = NeumaierSum::new();
    sum.add(0.5 * test_function(lambda, c_shift, 0.0));
    let mut n = 1.0;
    loop {
        let t = test_function(lambda, c_shift, n);
        sum.add(t);
        if t < 1e-18 * sum.value() {
            break;
        }
        n += 1.0;
    }
    let quad = integrate_semi_infinite(
        |x| test_function(lambda, c_shift, x),
        0.0,
        1.0 / lambda,
        1e-15,
        1e-14,
    )?;
    Ok((sum.value() - quad.value, quad.error))
}

/// Fornberg weights for the `order`-th derivative at 0 on the given offsets.
fn fornberg_weights(offsets: &[f64], order: usize) -> Vec<f64> {
    let n = offsets.len();
    let mut c = vec![vec![0.0; order + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] *= c4 / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

const STENCIL_HALF_WIDTH: i32 = 4;

/// `order`-th derivative of `f` at `x` from a 9-point central stencil,
/// refined by one Richardson step between steps `h` and `h / 2`.
///
/// The step is `scale * eps^(1 / (order + accuracy + 2))`, where `accuracy`
/// is the stencil's truncation order and `scale` the length over which `f`
/// varies. Contributions are paired as `w_k (f(x + kh) - f(x - kh))` for odd
/// orders and `w_k (f(x + kh) + f(x - kh))` for even ones.
pub fn central_derivative<F: Fn(f64) -> f64>(f: F, x: f64, order: u32, scale: f64) -> f64 {
    let points = 2 * STENCIL_HALF_WIDTH as u32 + 1;
    let accuracy = (points - order).div_ceil(2) * 2;
    let h = scale * f64::EPSILON.powf(1.0 / f64::from(order + accuracy + 2));
    let offsets: Vec<f64> = (-STENCIL_HALF_WIDTH..=STENCIL_HALF_WIDTH).map(f64::from).collect();
    let w = fornberg_weights(&offsets, order as usize);
    let coarse = stencil(&f, &w, x, order, h);
    let fine = stencil(&f, &w, x, order, 0.5 * h);
    let gain = 2f64.powi(accuracy as i32);
    (gain * fine - coarse) / (gain - 1.0)
}

fn stencil<F: Fn(f64) -> f64>(f: &F, w: &[f64], x: f64, order: u32, h: f64) -> f64 {
    let centre = STENCIL_HALF_WIDTH as usize;
    let mut acc = NeumaierSum::new();
    if order.is_multiple_of(2) {
        acc.add(w[centre] * f(x));
    }
    for k in 1..=STENCIL_HALF_WIDTH {
        let hk = f64::from(k) * h;
        let (fp, fm) = (f(x + hk), f(x - hk));
        let pair = if order % 2 == 1 { fp - fm } else { fp + fm };
        acc.add(w[centre + k as usize] * pair);
    }
    acc.value() / h.powi(order as i32)
}

/// Finite-difference estimates of `f^(k)(0)` for each odd `k` in `orders`.
pub fn odd_derivatives_vanish(lambda: f64, c_shift: f64, orders: &[u32]) -> Result<Vec<f64>> {
    check_lambda("odd_derivatives_vanish", lambda)?;
    check_shift("odd_derivatives_vanish", c_shift)?;
    if let Some(&k) = orders.iter().find(|&&k| k % 2 == 0 || k > 7) {
        return Err(Error::domain(
            "odd_derivatives_vanish",
            format!("orders must be odd and at most 7, got {k}"),
        ));
    }
    let scale = c_shift.sqrt().min(1.0 / lambda).min(1.0);
    Ok(orders
        .iter()
        .map(|&k| central_derivative(|x| test_function(lambda, c_shift, x), 0.0, k, scale))
        .collect())
}

/// `I_d` from its radial integral:
/// `(2 pi^(d/2) / Gamma(d/2)) int_0^inf exp(-lambda r) r^(d-1) dr`.
pub fn i_term_quadrature(d: u32, lambda: f64) -> Result<f64> {
    check_dimension("i_term_quadrature", d)?;
    check_lambda("i_term_quadrature", lambda)?;
    let surface = 2.0 * PI.powf(0.5 * f64::from(d)) / gamma_half(d)?;
    let radial = integrate_semi_infinite(
        |r| (-lambda * r).exp() * r.powi(d as i32 - 1),
        0.0,
        f64::from(d) / lambda,
        0.0,
        1e-13,
    )?;
    Ok(surface * radial.value)
}

/// Relative residual of `Gamma(d) / Gamma(d/2) = 2^(d-1) Gamma((d+1)/2) / sqrt(pi)`.
pub fn gamma_identity_residual(d: u32) -> Result<f64> {
    check_dimension("gamma_identity_residual", d)?;
    let lhs = gamma_half(2 * d)? / gamma_half(d)?;
    let rhs = 2f64.powi(d as i32 - 1) * gamma_half(d + 1)? / PI.sqrt();
    Ok(((lhs - rhs) / rhs).abs())
}

/// `int_0^pi sin^k(t) dt` by quadrature, and its closed form
/// `sqrt(pi) Gamma((k+1)/2) / Gamma((k+2)/2)`.
pub fn angular_integral(k: u32) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::domain("angular_integral", "power must be positive"));
    }
    let quad = integrate(|t: f64| t.sin().powi(k as i32), 0.0, PI, 0.0, 1e-14)?;
    let closed = PI.sqrt() * gamma_half(k + 1)? / gamma_half(k + 2)?;
    Ok((quad.value, closed))
}
