use super::check_lambda;
use crate::compensated::NeumaierSum;
use crate::error::Result;
use crate::series::{euler_maclaurin_tail, quadratic_power_taylor, EM_TAYLOR_LEN};
use crate::special::{bessel_k0, EULER_GAMMA};
use std::f64::consts::PI;

/// `sum_{n >= 1} K_0(lambda n)`, summed until `K_0(lambda N) < 1e-18`.
///
/// Returns the sum and the number of terms used.
pub fn k0_lattice_sum_direct(lambda: f64) -> Result<(f64, usize)> {
    check_lambda("k0_lattice_sum_direct", lambda)?;
    let mut acc = NeumaierSum::new();
    let mut n = 1usize;
    loop {
        let k = bessel_k0(lambda * n as f64)?;
        acc.add(k);
        if k < 1e-18 {
            return Ok((acc.value(), n));
        }
        n += 1;
    }
}

/// Right-hand side of the lattice identity for `sum_n K_0(lambda n)`:
///
/// ```text
/// (gamma + ln(lambda / 4 pi)) / 2 + pi / (2 lambda)
///     + pi sum_{m >= 1} ( 1/sqrt(lambda^2 + 4 m^2 pi^2) - 1/(2 m pi) )
/// ```
///
/// The `m`-series is summed explicitly to `M - 1` and closed with its
/// integral and Euler–Maclaurin corrections.
pub fn k0_lattice_sum_series(lambda: f64) -> Result<f64> {
    check_lambda("k0_lattice_sum_series", lambda)?;
    let two_pi = 2.0 * PI;
    let m_split = 20f64.max((lambda / PI).ceil());

    let mut head = NeumaierSum::new();
    let mut m = 1.0;
    while m < m_split {
        let a = two_pi * m;
        let r = (lambda * lambda + a * a).sqrt();
        // 1/r - 1/a without cancellation
        head.add(-lambda * lambda / (a * r * (a + r)));
        m += 1.0;
    }

    // int_M^inf = (1/2pi) [ln(2y) - asinh(y)] with y = 2 pi M / lambda
    let y = two_pi * m_split / lambda;
    let inv_y2 = 1.0 / (y * y);
    let z = inv_y2 / ((1.0 + inv_y2).sqrt() + 1.0);
    let integral = -(0.5 * z).ln_1p() / two_pi;

    let c0 = lambda * lambda + two_pi * two_pi * m_split * m_split;
    let mut taylor = quadratic_power_taylor(
        [c0, 2.0 * two_pi * two_pi * m_split, two_pi * two_pi],
        -0.5,
        EM_TAYLOR_LEN,
    );
    // subtract the Taylor coefficients of 1 / (2 pi (M + e))
    let mut coeff = 1.0 / (two_pi * m_split);
    for t in taylor.iter_mut() {
        *t -= coeff;
        coeff *= -1.0 / m_split;
    }
    let (tail, _) = euler_maclaurin_tail(integral, &taylor);

    let series = head.value() + tail;
    Ok(0.5 * (EULER_GAMMA + (lambda / (2.0 * two_pi)).ln()) + PI / (2.0 * lambda) + PI * series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_sides_agree() {
        for lambda in [0.5, 1.0, 2.0, 3.7] {
            let (lhs, n) = k0_lattice_sum_direct(lambda).unwrap();
            let rhs = k0_lattice_sum_series(lambda).unwrap();
            assert!((lhs - rhs).abs() < 1e-12, "lambda = {lambda}: {lhs} vs {rhs}");
            assert!(n > 1);
        }
    }
}
