use crate::compensated::DoubleDouble;
use crate::error::{Error, Result};

/// `Gamma(two_a / 2)` for a positive integer `two_a`, i.e. at integers and
/// half-integers only.
///
/// Built from `Gamma(1/2) = sqrt(pi)`, `Gamma(1) = 1` and `Gamma(z+1) = z Gamma(z)`.
pub fn gamma_half(two_a: u32) -> Result<f64> {
    if two_a == 0 {
        return Err(Error::domain("gamma_half", "argument must be positive"));
    }
    let v = gamma_half_pi_pow(two_a, 0).to_f64();
    if !v.is_finite() {
        return Err(Error::Overflow {
            routine: "gamma_half",
            reason: format!("Gamma({}/2) exceeds the f64 range", two_a),
        });
    }
    Ok(v)
}

/// `Gamma(two_a / 2) * pi^(two_b / 2)` in double-double precision.
///
/// Any `sqrt(pi)` coming from a half-integer Gamma is folded into the power
/// of pi before it is evaluated, so the common products in the lattice-sum
/// formulas reduce to an integer-or-dyadic rational times a power of pi.
pub(crate) fn gamma_half_pi_pow(two_a: u32, two_b: i32) -> DoubleDouble {
    debug_assert!(two_a > 0);
    let mut rational = DoubleDouble::ONE;
    let mut pi_exp2 = two_b;
    if two_a.is_multiple_of(2) {
        for k in 1..(two_a / 2) {
            rational = rational.mul_f64(k as f64);
        }
    } else {
        pi_exp2 += 1;
        let mut z = 0.5;
        while 2.0 * z + 2.0 <= two_a as f64 {
            rational = rational.mul_f64(z);
            z += 1.0;
        }
    }
    rational * pi_power_half(pi_exp2)
}

/// `pi^(e / 2)` in double-double precision.
pub(crate) fn pi_power_half(e: i32) -> DoubleDouble {
    let whole = DoubleDouble::PI.powi(e.unsigned_abs() / 2);
    let mut p = if e.unsigned_abs() % 2 == 1 {
        whole * DoubleDouble::PI.sqrt()
    } else {
        whole
    };
    if e < 0 {
        p = p.recip();
    }
    p
}

/// Binomial coefficient `C(n, k)` as a float (exact for the sizes used here).
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut r = 1.0;
    for i in 0..k {
        r = r * f64::from(n - i) / f64::from(i + 1);
    }
    r.round()
}
