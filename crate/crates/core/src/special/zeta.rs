use super::bernoulli::em_coefficient;
use crate::compensated::{DoubleDouble, NeumaierSum};
use crate::error::{Error, Result};

const BERNOULLI_EVEN_ABS: [(f64, f64); 10] = [
    (1.0, 6.0),
    (1.0, 30.0),
    (1.0, 42.0),
    (1.0, 30.0),
    (5.0, 66.0),
    (691.0, 2730.0),
    (7.0, 6.0),
    (3617.0, 510.0),
    (43867.0, 798.0),
    (174_611.0, 330.0),
];

/// Explicit head length for the direct sum; the rest is an Euler–Maclaurin tail.
const HEAD: u32 = 16;
const EM_ORDERS: usize = 8;

/// Riemann zeta at an integer `s >= 2`.
///
/// Even `s <= 20` use `zeta(2k) = |B_2k| (2 pi)^(2k) / (2 (2k)!)`; everything
/// else sums `m^-s` explicitly up to a fixed head and closes the tail with
/// the integral, the half-term and Euler–Maclaurin derivative corrections.
pub fn zeta_int(s: u32) -> Result<f64> {
    if s < 2 {
        return Err(Error::domain(
            "zeta_int",
            format!("argument must be an integer >= 2, got {s}"),
        ));
    }
    if s.is_multiple_of(2) && s <= 20 {
        return Ok(zeta_even_closed_form(s));
    }
    Ok(zeta_summed(s))
}

fn zeta_even_closed_form(s: u32) -> f64 {
    let (num, den) = BERNOULLI_EVEN_ABS[(s / 2 - 1) as usize];
    let two_pi = DoubleDouble::PI.mul_f64(2.0);
    let mut fact = DoubleDouble::ONE;
    for i in 2..=s {
        fact = fact.mul_f64(f64::from(i));
    }
    (two_pi.powi(s) * DoubleDouble::from_f64(num) / (fact.mul_f64(2.0 * den))).to_f64()
}

fn zeta_summed(s: u32) -> f64 {
    let sf = f64::from(s);
    let mut acc = NeumaierSum::new();
    for m in 1..HEAD {
        acc.add(f64::from(m).powf(-sf));
    }
    let m = f64::from(HEAD);
    let head = m.powf(-sf);
    acc.add(m * head / (sf - 1.0));
    acc.add(0.5 * head);
    // f^(r)(M) = (-1)^r (s)_r M^(-s-r); only odd r enter the corrections
    let mut rising = sf; // (s)_1
    let mut power = head / m; // M^(-s-1)
    for k in 1..=EM_ORDERS {
        let r = 2 * k - 1;
        let deriv = -rising * power;
        acc.add(-em_coefficient(k) * deriv);
        rising *= (sf + r as f64) * (sf + r as f64 + 1.0);
        power /= m * m;
    }
    acc.value()
}
