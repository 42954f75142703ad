//! Truncated Taylor-series arithmetic and Euler–Maclaurin tail closure.
//!
//! Derivatives needed by the tail corrections and by the remainder checks
//! are obtained from exact power-series recurrences rather than from finite
//! differences, so they carry full working precision at any order used here.

use crate::special::bernoulli_number;

/// Taylor coefficients of `(c0 + c1 e + c2 e^2)^alpha` about `e = 0`, up to
/// and including order `n`.
///
/// Uses the J.C.P. Miller recurrence for powers of a power series; requires
/// `c0 > 0`.
pub(crate) fn quadratic_power_taylor(c: [f64; 3], alpha: f64, n: usize) -> Vec<f64> {
    debug_assert!(c[0] > 0.0);
    let mut a = Vec::with_capacity(n + 1);
    a.push(c[0].powf(alpha));
    for k in 1..=n {
        let kf = k as f64;
        let mut acc = 0.0;
        for i in 1..=k.min(2) {
            let fi = i as f64;
            acc += ((alpha + 1.0) * fi - kf) * c[i] * a[k - i];
        }
        a.push(acc / (kf * c[0]));
    }
    a
}

/// Taylor coefficients of `exp(v(e))` given those of `v`.
pub(crate) fn exp_taylor(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut e = Vec::with_capacity(n);
    e.push(v[0].exp());
    for k in 1..n {
        let mut acc = 0.0;
        for i in 1..=k {
            acc += i as f64 * v[i] * e[k - i];
        }
        e.push(acc / k as f64);
    }
    e
}

/// Number of Bernoulli corrections applied by [`euler_maclaurin_tail`].
pub(crate) const EM_CORRECTIONS: usize = 8;

/// Length of the Taylor expansion [`euler_maclaurin_tail`] expects.
pub(crate) const EM_TAYLOR_LEN: usize = 2 * EM_CORRECTIONS + 2;

/// Closes `sum_{m >= M} f(m)` for a smooth decaying `f`.
///
/// `integral` is `int_M^inf f`, `taylor` holds the Taylor coefficients of `f`
/// about `M` (at least [`EM_TAYLOR_LEN`] of them). Returns the tail value
/// and the magnitude of the first omitted correction as an error estimate.
pub(crate) fn euler_maclaurin_tail(integral: f64, taylor: &[f64]) -> (f64, f64) {
    debug_assert!(taylor.len() >= EM_TAYLOR_LEN);
    // f^(2k-1)(M) B_2k / (2k)! = t_{2k-1} (2k-1)! B_2k / (2k)! = t_{2k-1} B_2k / (2k)
    let weight = |k: usize| bernoulli_number(2 * k as u32).unwrap() / (2 * k) as f64;
    let mut value = integral + 0.5 * taylor[0];
    for k in 1..=EM_CORRECTIONS {
        value -= weight(k) * taylor[2 * k - 1];
    }
    let k = EM_CORRECTIONS + 1;
    let bound = (weight(k) * taylor[2 * k - 1]).abs();
    (value, bound)
}
