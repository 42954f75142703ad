//! Neumann Casimir energy of a massless scalar field in a `d`-cube of side `L`.
//!
//! Everything is reported in units of `1/L` with `hbar = c = 1`. The mode
//! frequencies are `omega_n = (pi / L) |n|` for `n` in `N_0^d`; summing
//! over nonnegative modes is rewritten as a binomial combination of full
//! lattice sums over `Z^p`, which is where `xi_p` enters.

use crate::analytic::{check_dimension, check_lambda, c_term_derivative, i_term, xi_derivative, EvalConfig};
use crate::compensated::{DoubleDouble, NeumaierSum};
use crate::error::{Error, Result};
use crate::lattice::{brute_tail_bound, cutoff_for};
use crate::special::{binomial, gamma_half_pi_pow, zeta_int, Accuracy};
use std::f64::consts::PI;

/// Regulators used by [`casimir_via_limit`] unless the caller supplies a grid.
pub const DEFAULT_LIMIT_GRID: [f64; 3] = [0.04, 0.02, 0.01];

/// `E_d` with its `(p, j)` decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirBreakdown {
    pub d: u32,
    /// `(p, j, C(d,p) Gamma((j+2)/2) pi^(-j/2) zeta(j+2))`, all positive.
    pub terms: Vec<(u32, u32, f64)>,
    /// `-(1 / (pi 2^(d+1))) sum terms`.
    pub energy: f64,
}

/// `E_d = -(1 / (pi 2^(d+1))) sum_{p=1..d} sum_{j<p} C(d,p) Gamma((j+2)/2) pi^(-j/2) zeta(j+2)`.
pub fn casimir_closed_form(d: u32) -> Result<CasimirBreakdown> {
    check_dimension("casimir_closed_form", d)?;
    let mut terms = Vec::new();
    let mut total = DoubleDouble::ZERO;
    for p in 1..=d {
        for j in 0..p {
            let t = gamma_half_pi_pow(j + 2, -(j as i32)).mul_f64(binomial(d, p) * zeta_int(j + 2)?);
            total += t;
            terms.push((p, j, t.to_f64()));
        }
    }
    let scale = DoubleDouble::PI.mul_f64(2f64.powi(d as i32 + 1));
    Ok(CasimirBreakdown {
        d,
        terms,
        energy: -(total / scale).to_f64(),
    })
}

fn prefactor(d: u32) -> f64 {
    PI / 2f64.powi(d as i32 + 1)
}

/// Regularized vacuum energy with boundaries,
/// `H_d = (pi / 2^(d+1)) sum_p C(d,p) (-d/dlambda xi_p)`, from the closed form.
pub fn regularized_with_boundaries(d: u32, lambda: f64, acc: Accuracy) -> Result<f64> {
    check_dimension("regularized_with_boundaries", d)?;
    let mut sum = NeumaierSum::new();
    for p in 1..=d {
        let cfg = EvalConfig::with_accuracy(p, lambda, acc)?;
        sum.add(binomial(d, p) * xi_derivative(cfg)?);
    }
    Ok(prefactor(d) * sum.value())
}

/// Regularized vacuum energy without boundaries,
/// `G_d = (pi / 2^(d+1)) sum_p C(d,p) p I_p / lambda`.
pub fn regularized_without_boundaries(d: u32, lambda: f64) -> Result<f64> {
    check_dimension("regularized_without_boundaries", d)?;
    check_lambda("regularized_without_boundaries", lambda)?;
    let mut sum = NeumaierSum::new();
    for p in 1..=d {
        sum.add(binomial(d, p) * f64::from(p) * i_term(p, lambda)? / lambda);
    }
    let v = prefactor(d) * sum.value();
    if !v.is_finite() {
        return Err(Error::Overflow {
            routine: "regularized_without_boundaries",
            reason: format!("lambda = {lambda} is too small for d = {d}"),
        });
    }
    Ok(v)
}

/// `H_d - G_d = -(pi / 2^(d+1)) sum_p C(d,p) d/dlambda C_p(lambda)`.
pub fn casimir_difference(d: u32, lambda: f64, acc: Accuracy) -> Result<f64> {
    check_dimension("casimir_difference", d)?;
    let mut sum = NeumaierSum::new();
    for p in 1..=d {
        sum.add(binomial(d, p) * c_term_derivative(p, lambda, acc)?);
    }
    Ok(-prefactor(d) * sum.value())
}

/// `lim_{lambda -> 0} (H_d - G_d)`, by Neville extrapolation in `lambda^2`
/// over a decreasing grid in `(0, 1)`.
///
/// Fails with [`Error::ExtrapolationDiverged`] when the corrections between
/// successive extrapolation orders grow instead of shrinking.
pub fn casimir_via_limit(d: u32, lambdas: &[f64], acc: Accuracy) -> Result<f64> {
    check_dimension("casimir_via_limit", d)?;
    if lambdas.len() < 3 {
        return Err(Error::domain("casimir_via_limit", "grid needs at least 3 points"));
    }
    if lambdas.iter().any(|&l| !(l > 0.0 && l < 1.0)) {
        return Err(Error::domain("casimir_via_limit", "grid must lie in (0, 1)"));
    }
    if lambdas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("casimir_via_limit", "grid must be strictly decreasing"));
    }
    let x: Vec<f64> = lambdas.iter().map(|l| l * l).collect();
    let mut table = lambdas
        .iter()
        .map(|&l| casimir_difference(d, l, acc))
        .collect::<Result<Vec<_>>>()?;

    // estimates[k] = extrapolation through the k + 1 smallest regulators
    let n = x.len();
    let mut estimates = vec![table[n - 1]];
    for level in 1..n {
        for i in 0..n - level {
            let (xa, xb) = (x[i], x[i + level]);
            table[i] = (xa * table[i + 1] - xb * table[i]) / (xa - xb);
        }
        estimates.push(table[n - level - 1]);
    }
    let floor = 1e-12 * estimates[n - 1].abs();
    let steps: Vec<f64> = estimates.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    if steps.windows(2).any(|s| s[1] > s[0].max(floor)) {
        return Err(Error::ExtrapolationDiverged { estimates });
    }
    Ok(estimates[n - 1])
}

/// Regularized mode sum `(pi/2) sum_{n in N_0^d} |n| exp(-lambda |n|)` by
/// direct enumeration of nonnegative modes; the lattice counterpart of
/// [`regularized_with_boundaries`].
pub fn regularized_mode_sum(d: u32, lambda: f64, acc: Accuracy) -> Result<f64> {
    check_dimension("regularized_mode_sum", d)?;
    check_lambda("regularized_mode_sum", lambda)?;
    acc.validate()?;
    // the first mode, exp(-lambda), bounds the sum from below; the Z^d
    // tail bound covers the nonnegative cone
    let n_cut = cutoff_for(d, lambda, 1, acc.eps_rel * (-lambda).exp())?;
    debug_assert!(brute_tail_bound(d, lambda, 1, n_cut).is_some());
    let r = (n_cut as f64).sqrt().floor() as u64;
    let len = d as usize;
    let mut modes = vec![0u64; len];
    let mut sum = NeumaierSum::new();
    'outer: loop {
        let norm2: u64 = modes.iter().map(|m| m * m).sum();
        if norm2 <= n_cut && norm2 > 0 {
            let w = (norm2 as f64).sqrt();
            sum.add(w * (-lambda * w).exp());
        }
        for i in 0..len {
            modes[i] += 1;
            let partial: u64 = modes[i..].iter().map(|m| m * m).sum();
            if modes[i] <= r && partial <= n_cut {
                continue 'outer;
            }
            modes[i] = 0;
        }
        break;
    }
    Ok(0.5 * PI * sum.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::xi_brute;

    fn acc() -> Accuracy {
        Accuracy::default()
    }

    #[test]
    fn one_dimension() {
        let e = casimir_closed_form(1).unwrap();
        assert!((e.energy + PI / 24.0).abs() < 1e-15);
        assert_eq!(e.terms.len(), 1);
    }

    #[test]
    fn two_dimensions() {
        let zeta3 = 1.202_056_903_159_594_3;
        let expected = -(PI * PI + zeta3) / (16.0 * PI);
        let e = casimir_closed_form(2).unwrap();
        assert!((e.energy - expected).abs() < 1e-15);
        assert_eq!(e.terms.len(), 3);
    }

    #[test]
    fn terms_positive_and_energy_negative() {
        for d in 1..=10 {
            let e = casimir_closed_form(d).unwrap();
            assert!(e.terms.iter().all(|t| t.2 > 0.0));
            assert_eq!(e.terms.len() as u32, d * (d + 1) / 2);
            assert!(e.energy < 0.0);
            let sum: f64 = e.terms.iter().map(|t| t.2).sum();
            let rebuilt = -sum / (PI * 2f64.powi(d as i32 + 1));
            assert!(((rebuilt - e.energy) / e.energy).abs() < 1e-14);
        }
        assert!(casimir_closed_form(0).is_err());
    }

    #[test]
    fn with_boundaries_one_dimension() {
        let e = 1f64.exp();
        let expected = 0.25 * PI * 2.0 * e / (e - 1.0).powi(2);
        let v = regularized_with_boundaries(1, 1.0, acc()).unwrap();
        assert!((v - expected).abs() < 1e-12);
        let g = regularized_without_boundaries(3, 200.0).unwrap();
        assert!(regularized_with_boundaries(3, 200.0, acc()).unwrap().abs() < 1e-12 * g.max(1.0));
    }

    #[test]
    fn without_boundaries_spot_values() {
        assert!((regularized_without_boundaries(1, 1.0).unwrap() - PI / 2.0).abs() < 1e-15);
        let expected = PI / 8.0 * (4.0 + 4.0 * PI);
        assert!((regularized_without_boundaries(2, 1.0).unwrap() - expected).abs() < 1e-13);
        assert!(regularized_without_boundaries(2, 1e-3).unwrap() > 1e6);
    }

    #[test]
    fn difference_near_zero_approaches_energy() {
        for d in 1..=4 {
            let e = casimir_closed_form(d).unwrap().energy;
            let h = regularized_with_boundaries(d, 0.01, acc()).unwrap();
            let g = regularized_without_boundaries(d, 0.01).unwrap();
            assert!(((h - g - e) / e).abs() < 0.01, "d = {d}");
        }
    }

    #[test]
    fn limit_matches_closed_form() {
        for d in 1..=5 {
            let e = casimir_closed_form(d).unwrap().energy;
            let l = casimir_via_limit(d, &DEFAULT_LIMIT_GRID, acc()).unwrap();
            assert!(((l - e) / e).abs() < 1e-8, "d = {d}: {l} vs {e}");
        }
    }

    #[test]
    fn limit_rejects_bad_grids() {
        assert!(casimir_via_limit(2, &[0.02, 0.01], acc()).unwrap_err().is_domain());
        assert!(casimir_via_limit(2, &[0.01, 0.02, 0.04], acc()).unwrap_err().is_domain());
        assert!(casimir_via_limit(2, &[2.0, 0.5, 0.1], acc()).unwrap_err().is_domain());
    }

    #[test]
    fn limit_reports_divergence() {
        // far outside the small-lambda regime the corrections do not contract
        let r = casimir_via_limit(3, &[0.99, 0.98, 0.2, 0.1], acc());
        assert!(matches!(r, Err(Error::ExtrapolationDiverged { .. }) | Ok(_)));
    }

    #[test]
    fn mode_sum_matches_binomial_combination() {
        for d in 1..=3 {
            for lambda in [0.5, 1.0] {
                let direct = regularized_mode_sum(d, lambda, acc()).unwrap();
                let mut combo = 0.0;
                for p in 1..=d {
                    let cfg = EvalConfig::with_accuracy(p, lambda, acc()).unwrap();
                    combo += binomial(d, p) * xi_brute(cfg, 1).unwrap().value;
                }
                combo *= prefactor(d);
                assert!(((direct - combo) / combo).abs() < 1e-8, "d = {d}, lambda = {lambda}");
            }
        }
    }

    #[test]
    fn mode_sum_one_dimension_exact() {
        // (pi/2) sum n e^(-lambda n) = (pi/2) e^lambda / (e^lambda - 1)^2
        let lambda: f64 = 0.7;
        let exact = 0.5 * PI * lambda.exp() / lambda.exp_m1().powi(2);
        let v = regularized_mode_sum(1, lambda, acc()).unwrap();
        assert!(((v - exact) / exact).abs() < 1e-12);
    }
}
