//! Machine check of the inequalities that connect the recursions to their
//! closed forms.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::formulas::{
    beta_closed_form, check_evenness, decide_le, multiset, n_sequence, padic_dominates_main, padic_exponent_checks,
    star_bound, star_iterate, PhiSource,
};
use super::interval::Interval;
use super::{default_precision, MAX_PRECISION};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub instances: u64,
    pub passed: bool,
    pub failures: Vec<String>,
    /// Highest interval precision that was needed.
    pub precision_bits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub d_max: u32,
    pub phi_source: String,
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

/// Grid bounds for the `s`-vector checks.
pub const GRID_ENTRY_MAX: u64 = 3;
pub const GRID_D_MAX: usize = 4;
pub const GRID_M_MAX: u64 = 5;

/// Runs `f` at increasing precision until it returns a decision.
pub fn with_refinement<T>(start: u32, mut f: impl FnMut(u32) -> Result<Option<T>>) -> Result<(T, u32)> {
    let mut prec = start;
    loop {
        if let Some(v) = f(prec)? {
            return Ok((v, prec));
        }
        if prec >= MAX_PRECISION {
            return Err(Error::Undecided {
                what: "interval comparison".into(),
                bits: prec,
            });
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}

/// Every `(s_d, …, s_1)` with entries in `0..=max` and `d` entries.
pub fn s_vectors(d: usize, max: u64) -> Vec<Vec<BigUint>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(BigUint::from(x));
                    w
                })
            })
            .collect();
    }
    out
}

fn fmt_s(s: &[BigUint]) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

/// (a) `n_d` even and `n_d ≤ closed form` for `d ≤ d_max`.
pub fn check_beta(d_max: u32, phis: &PhiSource, prec: u32) -> Result<(CheckResult, CheckResult)> {
    let vals = phis.values(d_max)?;
    let seq = n_sequence(d_max, &vals)?;
    let even_failures = check_evenness(&seq);
    let even = CheckResult {
        name: "n-sequence-even".into(),
        instances: seq.len() as u64,
        passed: even_failures.is_empty(),
        failures: even_failures,
        precision_bits: 0,
    };
    let rows: Vec<(u32, Result<(bool, u32)>)> = (1..=d_max)
        .into_par_iter()
        .map(|d| {
            let n = &seq[d as usize];
            let r = with_refinement(prec, |p| {
                let cf = beta_closed_form(d, &vals, p)?;
                Ok(decide_le(&Interval::from_uint(n, p), &cf))
            });
            (d, r)
        })
        .collect();
    let mut failures = Vec::new();
    let mut bits = prec;
    for (d, r) in rows {
        match r {
            Ok((true, p)) => bits = bits.max(p),
            Ok((false, _)) => failures.push(format!("n_{d} exceeds the closed form")),
            Err(e) => failures.push(format!("d = {d}: {e}")),
        }
    }
    let dom = CheckResult {
        name: "beta-closed-form-dominance".into(),
        instances: d_max as u64,
        passed: failures.is_empty(),
        failures,
        precision_bits: bits,
    };
    Ok((even, dom))
}

/// (b) `s_i^{(j)} ≤ Σ_{ℓ ≥ i} s_ℓ (jm)^{ℓ-i}` on the grid
/// `d ≤ 4`, entries `≤ 3`, `1 ≤ m ≤ 5`, `0 ≤ j ≤ s_d`.
pub fn check_star_grid() -> CheckResult {
    let cases: Vec<(Vec<BigUint>, u64)> = (1..=GRID_D_MAX)
        .flat_map(|d| s_vectors(d, GRID_ENTRY_MAX))
        .flat_map(|s| (1..=GRID_M_MAX).map(move |m| (s.clone(), m)))
        .collect();
    let results: Vec<(u64, Vec<String>)> = cases
        .par_iter()
        .map(|(s, m)| {
            let mb = BigUint::from(*m);
            let sd: u64 = s[0].clone().try_into().expect("small");
            let mut fails = Vec::new();
            for j in 0..=sd {
                let it = star_iterate(s, &mb, j).expect("j ≤ s_d");
                let bound = star_bound(s, &mb, j);
                if it.iter().zip(&bound).any(|(a, b)| a > b) {
                    fails.push(format!("s={} m={m} j={j}: {} > {}", fmt_s(s), fmt_s(&it), fmt_s(&bound)));
                }
            }
            (sd + 1, fails)
        })
        .collect();
    let instances = results.iter().map(|r| r.0).sum();
    let failures: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
    CheckResult {
        name: "star-iterate-bound".into(),
        instances,
        passed: failures.is_empty(),
        failures,
        precision_bits: 0,
    }
}

/// Whether the star-iterate bound is attained with equality somewhere in
/// `s^{(j)}` (used to exhibit tight instances).
pub fn star_bound_is_tight(s: &[BigUint], m: u64, j: u64) -> bool {
    let mb = BigUint::from(m);
    match star_iterate(s, &mb, j) {
        Ok(it) => {
            let b = star_bound(s, &mb, j);
            it.iter().zip(&b).skip(1).any(|(a, c)| a == c && !a.is_zero())
        }
        Err(_) => false,
    }
}

/// (c) `2 Σ s_i m^i ≥ 2 Σ s_i ⟨m, i⟩ + d' - 1` with `d' = |{i : s_i ≠ 0}|`,
/// on the same grid with `2 ≤ m ≤ 5`.
pub fn check_cost_grid() -> CheckResult {
    let cases: Vec<(Vec<BigUint>, u64)> = (1..=GRID_D_MAX)
        .flat_map(|d| s_vectors(d, GRID_ENTRY_MAX))
        .flat_map(|s| (2..=GRID_M_MAX).map(move |m| (s.clone(), m)))
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(s, m)| {
            let d = s.len();
            let mut lhs = BigInt::zero();
            let mut rhs = BigInt::zero();
            let mut d_prime = 0i64;
            for (idx, si) in s.iter().enumerate() {
                let i = (d - idx) as u32;
                let si = BigInt::from(si.clone());
                if !si.is_zero() {
                    d_prime += 1;
                }
                lhs += &si * BigInt::from(*m).pow(i) * 2;
                rhs += &si * BigInt::from(multiset(*m, i as u64)) * 2;
            }
            rhs += d_prime - 1;
            (lhs < rhs).then(|| format!("s={} m={m}: {lhs} < {rhs}", fmt_s(s)))
        })
        .collect();
    CheckResult {
        name: "degree-lower-cost".into(),
        instances: cases.len() as u64,
        passed: failures.is_empty(),
        failures,
        precision_bits: 0,
    }
}

/// (d) exponent inequalities of the p-adic bound, and dominance of the
/// p-adic bound over the main bound at `φ_k = 8k²` for `d ≤ min(d_max, 10)`.
pub fn check_padic(d_max: u32, prec: u32) -> (CheckResult, CheckResult) {
    let exps: Vec<(u32, Result<((bool, bool), u32)>)> = (2..=d_max.max(2))
        .into_par_iter()
        .map(|d| {
            let r = with_refinement(prec, |p| {
                let (a, b) = padic_exponent_checks(d, p);
                Ok(match (a, b) {
                    (Some(x), Some(y)) => Some((x, y)),
                    _ => None,
                })
            });
            (d, r)
        })
        .collect();
    let mut failures = Vec::new();
    let mut bits = prec;
    for (d, r) in exps {
        match r {
            Ok(((true, true), p)) => bits = bits.max(p),
            Ok(((a, b), _)) => failures.push(format!("d = {d}: exponent sum {a}, product {b}")),
            Err(e) => failures.push(format!("d = {d}: {e}")),
        }
    }
    let exp_check = CheckResult {
        name: "padic-exponent".into(),
        instances: d_max.saturating_sub(1) as u64,
        passed: failures.is_empty(),
        failures,
        precision_bits: bits,
    };
    let top = d_max.min(10);
    let dom: Vec<(u32, Result<(bool, u32)>)> = (2..=top)
        .into_par_iter()
        .map(|d| (d, with_refinement(prec, |p| padic_dominates_main(d, p))))
        .collect();
    let mut failures = Vec::new();
    let mut bits = prec;
    for (d, r) in dom {
        match r {
            Ok((true, p)) => bits = bits.max(p),
            Ok((false, _)) => failures.push(format!("d = {d}: main bound exceeds the p-adic bound")),
            Err(e) => failures.push(format!("d = {d}: {e}")),
        }
    }
    let dom_check = CheckResult {
        name: "padic-dominates-main".into(),
        instances: top.saturating_sub(1) as u64,
        passed: failures.is_empty(),
        failures,
        precision_bits: bits,
    };
    (exp_check, dom_check)
}

/// Runs every check. Failures are reported in the result, not as errors.
pub fn verify_inequalities(d_max: u32, phis: &PhiSource, prec: Option<u32>) -> Result<VerificationReport> {
    let prec = prec.unwrap_or_else(default_precision);
    let (even, dom) = check_beta(d_max, phis, prec)?;
    let (pexp, pdom) = check_padic(d_max, prec);
    let checks = vec![even, dom, check_star_grid(), check_cost_grid(), pexp, pdom];
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        d_max,
        phi_source: phis.to_string(),
        checks,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = verify_inequalities(6, &PhiSource::Skinner, None).unwrap();
        assert!(r.all_passed, "{r:?}");
    }

    #[test]
    fn tight_case_present() {
        let s = [BigUint::from(2u32), BigUint::from(1u32)];
        assert!(star_bound_is_tight(&s, 3, 1));
        assert!(!star_bound_is_tight(&s, 3, 2));
    }

    #[test]
    fn grids_pass() {
        let b = check_star_grid();
        assert!(b.passed, "{:?}", b.failures);
        let c = check_cost_grid();
        assert!(c.passed, "{:?}", c.failures);
    }
}
