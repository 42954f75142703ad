use crate::error::{Error, Result};

/// Even-index Bernoulli numbers `B_0, B_2, ..., B_20` as exact fractions.
const BERNOULLI_EVEN: [(i64, i64); 11] = [
    (1, 1),
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
];

/// Bernoulli number `B_n` for `n <= 20` (with `B_1 = -1/2`).
pub fn bernoulli_number(n: u32) -> Result<f64> {
    match n {
        0 => Ok(1.0),
        1 => Ok(-0.5),
        n if n > 20 => Err(Error::domain(
            "bernoulli_number",
            format!("only orders up to 20 are tabulated, got {n}"),
        )),
        n if n % 2 == 1 => Ok(0.0),
        n => {
            let (num, den) = BERNOULLI_EVEN[(n / 2) as usize];
            Ok(num as f64 / den as f64)
        }
    }
}

/// `B_{2k} / (2k)!` for `1 <= k <= 10`, the Euler–Maclaurin correction weights.
pub(crate) fn em_coefficient(k: usize) -> f64 {
    let (num, den) = BERNOULLI_EVEN[k];
    let mut fact = 1.0;
    for i in 2..=(2 * k) {
        fact *= i as f64;
    }
    num as f64 / (den as f64 * fact)
}

/// Bernoulli polynomial `B_n(x)` for `2 <= n <= 8` and `0 <= x <= 1`.
///
/// Coefficients come from `B_n(x) = sum_k C(n, k) B_k x^(n-k)`, each formed
/// from exact integers with a single rounding.
pub fn bernoulli_periodic(n: u32, x: f64) -> Result<f64> {
    if !(2..=8).contains(&n) {
        return Err(Error::domain(
            "bernoulli_periodic",
            format!("order must lie in 2..=8, got {n}"),
        ));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(
            "bernoulli_periodic",
            format!("x must lie in [0, 1], got {x}"),
        ));
    }
    // coefficient of x^(n-k) is C(n,k) B_k; Horner from the leading power
    let mut acc = 0.0;
    for k in 0..=n {
        let c = binom_u64(n, k) as f64;
        let coeff = match k {
            0 => c,
            1 => -c / 2.0,
            k if k % 2 == 1 => 0.0,
            k => {
                let (num, den) = BERNOULLI_EVEN[(k / 2) as usize];
                (c as i64 * num) as f64 / den as f64
            }
        };
        acc = acc * x + coeff;
    }
    Ok(acc)
}

fn binom_u64(n: u32, k: u32) -> u64 {
    let mut r = 1u64;
    for i in 0..k {
        r = r * u64::from(n - i) / u64::from(i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(bernoulli_periodic(2, 0.0).unwrap(), 1.0 / 6.0);
        assert_eq!(bernoulli_periodic(3, 0.0).unwrap(), 0.0);
        assert!((bernoulli_periodic(2, 0.5).unwrap() + 1.0 / 12.0).abs() < 1e-16);
        // B_4(1/2) = -(1 - 2^-3) B_4 = 7/240
        assert!((bernoulli_periodic(4, 0.5).unwrap() - 7.0 / 240.0).abs() < 1e-16);
    }

    #[test]
    fn reflection_at_endpoints() {
        for n in 2..=8 {
            let b0 = bernoulli_periodic(n, 0.0).unwrap();
            let b1 = bernoulli_periodic(n, 1.0).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((b1 - sign * b0).abs() <= 1e-15, "n = {n}");
        }
    }

    #[test]
    fn derivative_lowers_order() {
        let h = 1e-5;
        for n in 3..=8 {
            for i in 1..=10 {
                let x = i as f64 / 11.0;
                let d = (bernoulli_periodic(n, x + h).unwrap()
                    - bernoulli_periodic(n, x - h).unwrap())
                    / (2.0 * h);
                let expected = n as f64 * bernoulli_periodic(n - 1, x).unwrap();
                assert!((d - expected).abs() < 1e-8, "n = {n}, x = {x}");
            }
        }
    }

    #[test]
    fn rejects_unsupported_orders_and_arguments() {
        assert!(bernoulli_periodic(1, 0.3).is_err());
        assert!(bernoulli_periodic(9, 0.3).is_err());
        assert!(bernoulli_periodic(4, 1.5).is_err());
        assert!(bernoulli_number(22).is_err());
    }

    #[test]
    fn em_weights() {
        assert!((em_coefficient(1) - 1.0 / 12.0).abs() < 1e-17);
        assert!((em_coefficient(2) + 1.0 / 720.0).abs() < 1e-18);
    }
}
