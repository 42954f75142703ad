//! Exact side of the comparison: integer tables of `r_d(n)` and direct
//! evaluation of the lattice sums built from them.

use crate::analytic::{check_dimension, check_lambda, i_term, xi_formula, ChiMode, EvalConfig};
use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::special::{gamma_half, Accuracy};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Largest table length (`nmax + 1`) either builder will allocate.
pub const MAX_TABLE_LEN: u64 = 20_000_000;

/// Largest number of sorted tuples the enumeration builder will visit.
pub const MAX_ENUMERATION_TUPLES: u64 = 100_000_000;

/// Default relative tolerance for lattice sums; keeps truncation far below
/// the closed-form remainder being measured.
pub const BRUTE_EPS_REL: f64 = 1e-10;

/// Exact counts `r_d(0..=nmax)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdTable {
    d: u32,
    counts: Vec<u64>,
}

impl RdTable {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn nmax(&self) -> u64 {
        self.counts.len() as u64 - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        self.counts.get(n as usize).copied()
    }

    /// Number of lattice points in the closed ball of radius `sqrt(nmax)`.
    pub fn cumulative(&self) -> u128 {
        self.counts.iter().map(|&c| u128::from(c)).sum()
    }
}

fn check_table_size(routine: &'static str, d: u32, nmax: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::domain(routine, "dimension must be at least 1"));
    }
    if nmax >= MAX_TABLE_LEN {
        return Err(Error::Guard {
            routine,
            reason: format!("nmax = {nmax} exceeds the table limit {}", MAX_TABLE_LEN - 1),
        });
    }
    Ok(())
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Builds `r_d` by repeated convolution with `r_1`:
/// `r_d(n) = sum_{k^2 <= n} r_(d-1)(n - k^2) (2 - [k = 0])`.
pub fn rd_table_convolution(d: u32, nmax: u64) -> Result<RdTable> {
    check_table_size("rd_table_convolution", d, nmax)?;
    let len = nmax as usize + 1;
    let root = isqrt(nmax) as usize;

    // every count is bounded by the number of points in the cube [-root, root]^d
    let checked = ((2 * root + 1) as f64).powi(d as i32) >= u64::MAX as f64 / 4.0;

    let mut cur = vec![0u64; len];
    for k in 0..=root {
        cur[k * k] = if k == 0 { 1 } else { 2 };
    }
    for _ in 1..d {
        let mut next = vec![0u64; len];
        let nonzero = cur.iter().filter(|&&c| c != 0).count();
        if checked {
            for (i, &c) in cur.iter().enumerate().filter(|(_, &c)| c != 0) {
                for k in 0..=root {
                    let n = i + k * k;
                    if n >= len {
                        break;
                    }
                    let w = if k == 0 { c } else { c.checked_mul(2).ok_or_else(overflow)? };
                    next[n] = next[n].checked_add(w).ok_or_else(overflow)?;
                }
            }
        } else if nonzero * 4 < len {
            for (i, &c) in cur.iter().enumerate().filter(|(_, &c)| c != 0) {
                for k in 0..=root {
                    let n = i + k * k;
                    if n >= len {
                        break;
                    }
                    next[n] += if k == 0 { c } else { 2 * c };
                }
            }
        } else {
            for k in 0..=root {
                let k2 = k * k;
                let w = if k == 0 { 1 } else { 2 };
                for (dst, &src) in next[k2..].iter_mut().zip(&cur[..len - k2]) {
                    *dst += w * src;
                }
            }
        }
        cur = next;
    }
    Ok(RdTable { d, counts: cur })
}

fn overflow() -> Error {
    Error::Overflow {
        routine: "rd_table_convolution",
        reason: "a count exceeds the 64-bit range".into(),
    }
}

/// Builds `r_d` by enumerating sorted tuples `0 <= n_1 <= ... <= n_d` with
/// `sum n_i^2 <= nmax`. Each tuple stands for its distinct orderings
/// (`d! / prod mult!`) and sign choices (`2^#nonzero`), so negative entries
/// and permutations are never visited.
pub fn rd_table_enumeration(d: u32, nmax: u64) -> Result<RdTable> {
    check_table_size("rd_table_enumeration", d, nmax)?;
    // sorted tuples number about vol(ball) / (2^d d!); refuse hopeless
    // requests up front instead of discovering them by counting
    let radius = (nmax as f64).sqrt() + 1.0;
    let ball = PI.powf(0.5 * f64::from(d)) * radius.powi(d as i32) / gamma_half(d + 2)?;
    let sorted = ball / (2f64.powi(d as i32) * (1..=d).map(f64::from).product::<f64>());
    if sorted > 4.0 * MAX_ENUMERATION_TUPLES as f64 {
        return Err(Error::Guard {
            routine: "rd_table_enumeration",
            reason: format!("about {sorted:.1e} tuples exceed the limit {MAX_ENUMERATION_TUPLES}"),
        });
    }
    let mut state = Enumeration {
        d: d as usize,
        nmax,
        counts: vec![0u64; nmax as usize + 1],
        tuple: vec![0u64; d as usize],
        visited: 0,
        d_factorial: (1..=u64::from(d)).product(),
    };
    state.descend(0, 0, 0)?;
    Ok(RdTable {
        d,
        counts: state.counts,
    })
}

struct Enumeration {
    d: usize,
    nmax: u64,
    counts: Vec<u64>,
    tuple: Vec<u64>,
    visited: u64,
    d_factorial: u64,
}

impl Enumeration {
    fn descend(&mut self, pos: usize, min: u64, partial: u64) -> Result<()> {
        if pos == self.d {
            self.visited += 1;
            if self.visited > MAX_ENUMERATION_TUPLES {
                return Err(Error::Guard {
                    routine: "rd_table_enumeration",
                    reason: format!("more than {MAX_ENUMERATION_TUPLES} tuples"),
                });
            }
            let w = self.weight();
            let slot = &mut self.counts[partial as usize];
            *slot = slot.checked_add(w).ok_or(Error::Overflow {
                routine: "rd_table_enumeration",
                reason: "a count exceeds the 64-bit range".into(),
            })?;
            return Ok(());
        }
        let mut v = min;
        while partial + v * v <= self.nmax {
            self.tuple[pos] = v;
            self.descend(pos + 1, v, partial + v * v)?;
            v += 1;
        }
        Ok(())
    }

    fn weight(&self) -> u64 {
        let mut orderings = self.d_factorial;
        let mut run = 1u64;
        for i in 1..=self.d {
            if i < self.d && self.tuple[i] == self.tuple[i - 1] {
                run += 1;
            } else {
                orderings /= (1..=run).product::<u64>();
                run = 1;
            }
        }
        let nonzero = self.tuple.iter().filter(|&&v| v != 0).count();
        orderings << nonzero
    }
}

/// A truncated lattice sum and its rigorous tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteSumResult {
    pub config: EvalConfig,
    pub value: f64,
    /// Last shell `n` included.
    pub n_cut: u64,
    pub tail_bound: f64,
}

/// Upper bound on `sum_{n > n_cut} r_d(n) n^(p/2) exp(-lambda sqrt(n))`.
///
/// Each lattice point outside radius `R = sqrt(n_cut)` owns a unit cube lying
/// beyond `R - sqrt(d)/2`; since `r^p exp(-lambda r)` decreases past `p/lambda`,
/// the sum is dominated by
/// `S_d (1 + sqrt(d) / 2x)^(d-1) int_x^inf u^(d-1+p) exp(-lambda u) du`
/// with `x = R - sqrt(d)` and `S_d = 2 pi^(d/2) / Gamma(d/2)`. Returns `None`
/// when `x` is not yet past the peak of the summand.
pub fn brute_tail_bound(d: u32, lambda: f64, weight_p: u32, n_cut: u64) -> Option<f64> {
    let sqrt_d = f64::from(d).sqrt();
    let x = (n_cut as f64).sqrt() - sqrt_d;
    if x <= 0.0 || x < f64::from(weight_p) / lambda {
        return None;
    }
    let surface = 2.0 * PI.powf(0.5 * f64::from(d)) / gamma_half(d).ok()?;
    let widen = (1.0 + sqrt_d / (2.0 * x)).powi(d as i32 - 1);
    // int_x^inf u^m e^(-lambda u) du = e^(-lambda x) sum_k m!/k! x^k / lambda^(m+1-k)
    let m = d - 1 + weight_p;
    let mut sum = 0.0;
    for k in 0..=m {
        let falling: f64 = ((k + 1)..=m).map(f64::from).product();
        sum += falling * x.powi(k as i32) / lambda.powi((m + 1 - k) as i32);
    }
    Some(surface * widen * (-lambda * x).exp() * sum)
}

/// Smallest `n_cut` (up to rounding of the search) whose tail bound is at most `target`.
pub(crate) fn cutoff_for(d: u32, lambda: f64, weight_p: u32, target: f64) -> Result<u64> {
    let ok = |r: f64| {
        brute_tail_bound(d, lambda, weight_p, (r * r).ceil() as u64)
            .is_some_and(|b| b <= target)
    };
    let mut hi = f64::from(d).sqrt() + f64::from(weight_p) / lambda + 1.0;
    while !ok(hi) {
        hi *= 1.5;
        if hi * hi >= MAX_TABLE_LEN as f64 {
            return Err(Error::Guard {
                routine: "xi_brute",
                reason: format!(
                    "d = {d}, lambda = {lambda} needs more than {MAX_TABLE_LEN} shells"
                ),
            });
        }
    }
    let mut lo = hi / 1.5;
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((hi * hi).ceil() as u64)
}

/// Sums `r_d(n) n^(p/2) exp(-lambda sqrt(n))` over `1 <= n <= n_cut` from a
/// prebuilt table, in ascending `n`.
pub fn weighted_shell_sum(table: &RdTable, lambda: f64, weight_p: u32, n_cut: u64) -> f64 {
    let mut acc = NeumaierSum::new();
    for (n, &c) in table.counts().iter().enumerate().take(n_cut as usize + 1).skip(1) {
        if c == 0 {
            continue;
        }
        let root = (n as f64).sqrt();
        let w = if weight_p == 1 { root } else { 1.0 };
        acc.add(c as f64 * w * (-lambda * root).exp());
    }
    acc.value()
}

fn check_weight(weight_p: u32) -> Result<()> {
    if weight_p > 1 {
        return Err(Error::domain(
            "xi_brute",
            format!("weight power must be 0 or 1, got {weight_p}"),
        ));
    }
    Ok(())
}

/// Value of the sum and the `n_cut` it needs, given a table that is large enough.
fn brute_from_table(
    table: &RdTable,
    config: EvalConfig,
    weight_p: u32,
    n_cut: u64,
) -> Result<Option<BruteSumResult>> {
    let value = weighted_shell_sum(table, config.lambda, weight_p, n_cut);
    let bound = brute_tail_bound(config.d, config.lambda, weight_p, n_cut).unwrap_or(f64::INFINITY);
    if bound < config.accuracy.eps_rel * value {
        Ok(Some(BruteSumResult {
            config,
            value,
            n_cut,
            tail_bound: bound,
        }))
    } else {
        Ok(None)
    }
}

/// The `n_cut` candidates tried for one `(d, lambda, p)`: a sizing guess
/// from the continuum integral, then the rigorous first-shell lower bound.
fn cutoff_candidates(config: &EvalConfig, weight_p: u32) -> Result<[u64; 2]> {
    let (d, lambda, eps) = (config.d, config.lambda, config.accuracy.eps_rel);
    let shell_one = 2.0 * f64::from(d) * (-lambda).exp();
    let continuum = i_term(d, lambda)? * if weight_p == 1 { f64::from(d) / lambda } else { 1.0 };
    let guess = shell_one.max(0.5 * continuum);
    Ok([
        cutoff_for(d, lambda, weight_p, eps * guess)?,
        cutoff_for(d, lambda, weight_p, eps * shell_one)?,
    ])
}

/// Direct lattice sum `sum_{n >= 1} r_d(n) n^(p/2) exp(-lambda sqrt(n))`
/// for `p` in `{0, 1}`, truncated where the tail bound drops below
/// `eps_rel * value`.
pub fn xi_brute(config: EvalConfig, weight_p: u32) -> Result<BruteSumResult> {
    config.validate()?;
    check_weight(weight_p)?;
    let candidates = cutoff_candidates(&config, weight_p)?;
    let table = rd_table_convolution(config.d, candidates[0])?;
    if let Some(r) = brute_from_table(&table, config, weight_p, candidates[0])? {
        return Ok(r);
    }
    let table = rd_table_convolution(config.d, candidates[1])?;
    brute_from_table(&table, config, weight_p, candidates[1])?.ok_or(Error::ToleranceNotReached {
        routine: "xi_brute",
        eps_rel: config.accuracy.eps_rel,
        terms: candidates[1],
        bound: brute_tail_bound(config.d, config.lambda, weight_p, candidates[1]).unwrap_or(f64::NAN),
    })
}

/// Evaluates [`xi_brute`] at several regulators sharing one table.
pub fn xi_brute_many(d: u32, lambdas: &[f64], weight_p: u32, acc: Accuracy) -> Result<Vec<BruteSumResult>> {
    check_dimension("xi_brute_many", d)?;
    check_weight(weight_p)?;
    let configs = lambdas
        .iter()
        .map(|&l| EvalConfig::with_accuracy(d, l, acc))
        .collect::<Result<Vec<_>>>()?;
    let cuts = configs
        .iter()
        .map(|c| cutoff_candidates(c, weight_p))
        .collect::<Result<Vec<_>>>()?;
    let first_max = cuts.iter().map(|c| c[0]).max().unwrap_or(0);
    let table = rd_table_convolution(d, first_max)?;
    let mut out = Vec::with_capacity(configs.len());
    for (cfg, cut) in configs.into_iter().zip(cuts) {
        match brute_from_table(&table, cfg, weight_p, cut[0])? {
            Some(r) => out.push(r),
            None => out.push(xi_brute(cfg, weight_p)?),
        }
    }
    Ok(out)
}

/// `(1 / nmax) sum_{n=0}^{nmax} r_2(n)`, which tends to `pi`.
pub fn average_order_check(nmax: u64) -> Result<f64> {
    if nmax == 0 {
        return Err(Error::domain("average_order_check", "nmax must be at least 1"));
    }
    let table = rd_table_convolution(2, nmax)?;
    Ok(table.cumulative() as f64 / nmax as f64)
}

/// One cell of the closed-form versus lattice-sum comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub d: u32,
    pub lambda: f64,
    pub xi_formula: f64,
    pub xi_brute: f64,
    /// `|formula - brute|`, the size of the neglected remainder.
    pub abs_diff: f64,
    /// `100 |formula - brute| / brute`.
    pub pct_diff: f64,
    pub i_term: f64,
    pub c_term: f64,
    pub ratio_c_over_i: f64,
}

/// Closed form against lattice sum over a `(d, lambda)` grid.
///
/// Dimensions are processed in parallel, one shared table per dimension;
/// rows come back sorted by `(d, lambda)`.
pub fn compare(d_list: &[u32], lambda_list: &[f64], acc: Accuracy) -> Result<Vec<ComparisonRow>> {
    acc.validate()?;
    for &l in lambda_list {
        check_lambda("compare", l)?;
    }
    let mut ds: Vec<u32> = d_list.to_vec();
    ds.sort_unstable();
    ds.dedup();
    let mut lambdas: Vec<f64> = lambda_list.to_vec();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();

    let brute_acc = Accuracy {
        eps_rel: acc.eps_rel.min(BRUTE_EPS_REL),
        ..acc
    };
    let per_d: Vec<Result<Vec<ComparisonRow>>> = ds
        .par_iter()
        .map(|&d| {
            let brute = xi_brute_many(d, &lambdas, 0, brute_acc)?;
            brute
                .into_iter()
                .map(|b| {
                    let cfg = EvalConfig::with_accuracy(d, b.config.lambda, acc)?;
                    let f = xi_formula(cfg, ChiMode::DirectChi)?;
                    let diff = (f.xi - b.value).abs();
                    Ok(ComparisonRow {
                        d,
                        lambda: b.config.lambda,
                        xi_formula: f.xi,
                        xi_brute: b.value,
                        abs_diff: diff,
                        pct_diff: 100.0 * diff / b.value,
                        i_term: f.i_term,
                        c_term: f.c_term,
                        ratio_c_over_i: f.c_term / f.i_term,
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_d {
        rows.extend(r?);
    }
    Ok(rows)
}
