use super::EULER_GAMMA;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Beyond this `K_0` is below the smallest subnormal.
const UNDERFLOW_X: f64 = 745.2;

/// Modified Bessel function of the second kind, order zero, on `x > 0`.
///
/// `x <= 2` uses the ascending series
/// `K_0 = -(ln(x/2) + gamma) I_0(x) + sum_k (x^2/4)^k H_k / (k!)^2`;
/// larger arguments use Steed's continued fraction for `K_0 / K_1`
/// (Temme's normalisation), which converges quickly once `x >= 2`.
pub fn bessel_k0(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(
            "bessel_k0",
            format!("argument must be positive, got {x}"),
        ));
    }
    if x.is_infinite() || x > UNDERFLOW_X {
        return Ok(0.0);
    }
    if x <= 2.0 {
        Ok(k0_ascending(x))
    } else {
        Ok(k0_continued_fraction(x))
    }
}

fn k0_ascending(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0; // (x^2/4)^k / (k!)^2
    let mut harmonic = 0.0;
    let mut i0 = 1.0;
    let mut rest = 0.0;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        rest += term * harmonic;
        if term * harmonic < 1e-17 * rest && term < 1e-17 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + rest
}

fn k0_continued_fraction(x: f64) -> f64 {
    // order nu = 0, so a1 = 1/4 - nu^2
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() * (-x).exp() / s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive() {
        assert!(bessel_k0(0.0).is_err());
        assert!(bessel_k0(-1.0).is_err());
        assert!(bessel_k0(f64::NAN).is_err());
    }

    #[test]
    fn underflows_to_zero() {
        assert_eq!(bessel_k0(800.0).unwrap(), 0.0);
        assert_eq!(bessel_k0(f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn regimes_meet_smoothly_at_two() {
        let below = k0_ascending(2.0);
        let above = k0_continued_fraction(2.0);
        assert!(((below - above) / above).abs() < 1e-14, "{below} vs {above}");
    }

    #[test]
    fn monotone_decreasing() {
        let mut prev = f64::INFINITY;
        let mut x = 1e-3;
        while x < 700.0 {
            let v = bessel_k0(x).unwrap();
            assert!(v < prev, "not decreasing at {x}");
            prev = v;
            x *= 1.07;
        }
    }
}
