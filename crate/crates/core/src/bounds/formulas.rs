//! Bound formulas and recursions, exact where the exponents are integers and
//! interval-valued where they involve the golden ratio.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{golden, Interval};
use crate::error::{Error, Result};
use crate::taylor::binomial;

/// Largest exact result (in bits) computed before callers are told to use
/// the interval form.
pub const EXACT_BIT_LIMIT: f64 = (1u64 << 26) as f64;

/// Where the values `φ_2, …, φ_d` come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhiSource {
    /// `φ_k = 8k²`.
    Skinner,
    /// Explicit values starting at `φ_2`.
    List(Vec<u64>),
}

impl PhiSource {
    /// Parses `skinner` or `list:4,72,…`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("skinner") {
            return Ok(PhiSource::Skinner);
        }
        let Some(rest) = s.strip_prefix("list:") else {
            return Err(Error::parse(format!("unknown phi source `{s}`")));
        };
        let vals = rest
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<u64>().map_err(|e| Error::parse(format!("phi value `{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if vals.contains(&0) {
            return Err(Error::parse("phi values must be positive"));
        }
        Ok(PhiSource::List(vals))
    }

    /// `φ_2, …, φ_d` (empty for `d < 2`).
    pub fn values(&self, d: u32) -> Result<Vec<BigUint>> {
        let need = d.saturating_sub(1) as usize;
        match self {
            PhiSource::Skinner => Ok((2..=d as u64).map(|k| BigUint::from(8 * k * k)).collect()),
            PhiSource::List(v) => {
                if v.len() < need {
                    return Err(Error::Precondition(format!(
                        "{need} phi values needed for d = {d}, {} given",
                        v.len()
                    )));
                }
                Ok(v[..need].iter().map(|&x| BigUint::from(x)).collect())
            }
        }
    }
}

impl std::fmt::Display for PhiSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PhiSource::Skinner => write!(f, "skinner"),
            PhiSource::List(v) => {
                let s: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "list:{}", s.join(","))
            }
        }
    }
}

/// `φ_k` out of a slice that starts at `φ_2`.
fn phi_at(phis: &[BigUint], k: u32) -> Result<&BigUint> {
    phis.get((k as usize).wrapping_sub(2))
        .ok_or_else(|| Error::Precondition(format!("phi_{k} not provided")))
}

fn need_phis(phis: &[BigUint], d: u32) -> Result<()> {
    if d >= 2 {
        phi_at(phis, d)?;
    }
    if phis.iter().any(Zero::is_zero) {
        return Err(Error::Precondition("phi values must be positive".into()));
    }
    Ok(())
}

/// `φ^k` for an integer `k`, from `φ^k = (L_k + F_k √5) / 2`.
pub fn golden_power(k: i64, prec: u32) -> Interval {
    let wp = prec + 16;
    let n = k.unsigned_abs();
    let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let t = &f0 + &f1;
        f0 = f1;
        f1 = t;
    }
    let fib = f0.clone();
    let lucas = &f1 * 2 - &f0;
    let sqrt5 = Interval::from_i64(5, wp + 2 * n as u32).sqrt();
    let f = Interval::from_int(&fib, wp + 2 * n as u32);
    let l = Interval::from_int(&lucas, wp + 2 * n as u32);
    let v = if k >= 0 {
        l.add(&f.mul(&sqrt5))
    } else {
        // φ^{-n} = (-1)^n (L_n - F_n √5) / 2.
        let w = l.sub(&f.mul(&sqrt5));
        if n % 2 == 1 {
            w.neg()
        } else {
            w
        }
    };
    v.mul_pow2(-1).with_precision(prec)
}

/// `φ^x` for an interval exponent.
pub fn golden_power_real(x: &Interval) -> Interval {
    golden(x.precision() + 16).pow(x).with_precision(x.precision())
}

fn pow_exact(b: &BigUint, e: &BigUint) -> Result<BigUint> {
    if b.is_one() || e.is_zero() {
        return Ok(BigUint::one());
    }
    if b.is_zero() {
        return Ok(BigUint::zero());
    }
    let bits = e.to_f64().unwrap_or(f64::INFINITY) * (b.bits() as f64);
    if bits > EXACT_BIT_LIMIT {
        return Err(Error::Precondition(format!(
            "exact value has about {bits:.3e} bits; use the interval form"
        )));
    }
    Ok(b.pow(e.to_u32().expect("bounded by the bit limit")))
}

fn two_pow(k: u32) -> BigUint {
    BigUint::one() << k as u64
}

/// `V_{d,s} = 2 s^{2^{d-1}} φ_d^{2^{d-2}} ∏_{i=2}^{d-1} (φ_i + 1)^{2^{i-2}}`.
pub fn wooley_bound(d: u32, s: &BigUint, phis: &[BigUint]) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::Precondition("Wooley's bound needs d ≥ 2".into()));
    }
    need_phis(phis, d)?;
    let mut acc = BigUint::from(2u32) * pow_exact(s, &two_pow(d - 1))?;
    acc *= pow_exact(phi_at(phis, d)?, &two_pow(d - 2))?;
    for i in 2..d {
        acc *= pow_exact(&(phi_at(phis, i)? + 1u32), &two_pow(i - 2))?;
    }
    Ok(acc)
}

fn ln_uint(x: &BigUint, prec: u32) -> Interval {
    Interval::from_uint(x, prec).ln()
}

/// Enclosure of [`wooley_bound`], usable when the exact value is too large.
pub fn wooley_bound_interval(d: u32, s: &BigUint, phis: &[BigUint], prec: u32) -> Result<Interval> {
    if d < 2 {
        return Err(Error::Precondition("Wooley's bound needs d ≥ 2".into()));
    }
    need_phis(phis, d)?;
    if s.is_zero() {
        return Ok(Interval::from_i64(0, prec));
    }
    let wp = prec + 32;
    let p2 = |k: u32| Interval::from_uint(&two_pow(k), wp);
    let mut log = Interval::from_i64(2, wp).ln();
    log = log.add(&p2(d - 1).mul(&ln_uint(s, wp)));
    log = log.add(&p2(d - 2).mul(&ln_uint(phi_at(phis, d)?, wp)));
    for i in 2..d {
        log = log.add(&p2(i - 2).mul(&ln_uint(&(phi_at(phis, i)? + 1u32), wp)));
    }
    Ok(log.exp().with_precision(prec))
}

/// `n_0 = 2`, `n_1 = 4`, `n_k = (φ_k + 11) n_{k-1} n_{k-2} / 2`.
pub fn n_sequence(d: u32, phis: &[BigUint]) -> Result<Vec<BigUint>> {
    need_phis(phis, d)?;
    let mut n = vec![BigUint::from(2u32), BigUint::from(4u32)];
    for k in 2..=d {
        let prod = (phi_at(phis, k)? + 11u32) * &n[k as usize - 1] * &n[k as usize - 2];
        let (q, r) = prod.div_rem(&BigUint::from(2u32));
        if !r.is_zero() {
            return Err(Error::Violated(format!("n_{k} is not an integer")));
        }
        n.push(q);
    }
    n.truncate(d as usize + 1);
    let bad = check_evenness(&n);
    if let Some(msg) = bad.first() {
        return Err(Error::Violated(msg.clone()));
    }
    Ok(n)
}

/// Indices of odd entries, as failure messages.
pub fn check_evenness(seq: &[BigUint]) -> Vec<String> {
    seq.iter()
        .enumerate()
        .filter(|(_, v)| v.is_odd())
        .map(|(k, v)| format!("n_{k} = {v} is odd"))
        .collect()
}

/// `2^{1 + φ^{d-1}} ∏_{k=2}^d (φ_k + 11)^{φ^{d-k}}`.
pub fn beta_closed_form(d: u32, phis: &[BigUint], prec: u32) -> Result<Interval> {
    if d < 1 {
        return Err(Error::Precondition("the closed form needs d ≥ 1".into()));
    }
    need_phis(phis, d)?;
    if d == 1 {
        // 2^{1 + φ^0} is the integer 4.
        return Ok(Interval::from_i64(4, prec));
    }
    let wp = prec + 32;
    let mut log = Interval::from_i64(1, wp)
        .add(&golden_power(d as i64 - 1, wp))
        .mul(&Interval::from_i64(2, wp).ln());
    for k in 2..=d {
        let base = phi_at(phis, k)? + 11u32;
        log = log.add(&golden_power((d - k) as i64, wp).mul(&ln_uint(&base, wp)));
    }
    Ok(log.exp().with_precision(prec))
}

/// `m_d = (φ_d + 9) ⌈(β_{d-2} + 1) / 2⌉` with `β_{d-2} + 1` replaced by
/// its upper bound `n_{d-2}` (even, so the ceiling is exact).
pub fn m_of_d(d: u32, phis: &[BigUint]) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::Precondition("m_d needs d ≥ 2".into()));
    }
    let n = n_sequence(d - 2, phis)?;
    Ok((phi_at(phis, d)? + 9u32) * (&n[d as usize - 2] >> 1))
}

/// `m_2, …, m_d`.
pub fn m_vector(d: u32, phis: &[BigUint]) -> Result<Vec<BigUint>> {
    (2..=d).map(|k| m_of_d(k, phis)).collect()
}

/// One degree-lowering step for `s = (s_d, …, s_1)`: the cost
/// `2 Σ_i s_i (m s_d)^i` and `r = (r_{d-1}, …, r_1)` with
/// `r_i = Σ_{k ≥ i} (m s_d)^{k-i} s_k`.
pub fn degree_lower_step(s_desc: &[BigUint], m: &BigUint) -> Result<(BigUint, Vec<BigUint>)> {
    let d = s_desc.len();
    if d == 0 || s_desc[0].is_zero() {
        return Err(Error::Precondition("s_d must be at least 1".into()));
    }
    // Ascending: s[i] = s_{i+1}.
    let s: Vec<&BigUint> = s_desc.iter().rev().collect();
    let q = m * s[d - 1];
    let mut cost = BigUint::zero();
    let mut qp = BigUint::one();
    for si in &s {
        qp *= &q;
        cost += *si * &qp;
    }
    cost *= 2u32;
    let mut r = Vec::with_capacity(d - 1);
    for i in (1..d).rev() {
        // r_i over k = i..=d by Horner from the top.
        let mut acc = BigUint::zero();
        for k in (i..=d).rev() {
            acc = acc * &q + s[k - 1];
        }
        r.push(acc);
    }
    Ok((cost, r))
}

/// `s^{(j)}`: `j` applications of `s*_d = s_d - 1`,
/// `s*_i = Σ_{k ≥ i} s_k m^{k-i}` (for `i < d`).
pub fn star_iterate(s_desc: &[BigUint], m: &BigUint, j: u64) -> Result<Vec<BigUint>> {
    let d = s_desc.len();
    if d == 0 {
        return Err(Error::Precondition("empty s-vector".into()));
    }
    if BigUint::from(j) > s_desc[0] {
        return Err(Error::Precondition(format!("j = {j} exceeds s_d = {}", s_desc[0])));
    }
    let mut s: Vec<BigUint> = s_desc.iter().rev().cloned().collect();
    for _ in 0..j {
        let mut next = s.clone();
        next[d - 1] = &s[d - 1] - 1u32;
        for i in 0..d - 1 {
            let mut acc = BigUint::zero();
            for k in (i..d).rev() {
                acc = acc * m + &s[k];
            }
            next[i] = acc;
        }
        s = next;
    }
    s.reverse();
    Ok(s)
}

/// Right side of the bound `s_i^{(j)} ≤ Σ_{ℓ ≥ i} s_ℓ (jm)^{ℓ-i}`, in the
/// same descending order.
pub fn star_bound(s_desc: &[BigUint], m: &BigUint, j: u64) -> Vec<BigUint> {
    let d = s_desc.len();
    let s: Vec<&BigUint> = s_desc.iter().rev().collect();
    let q = m * j;
    let mut out: Vec<BigUint> = (0..d)
        .map(|i| {
            let mut acc = BigUint::zero();
            for k in (i..d).rev() {
                acc = acc * &q + s[k];
            }
            acc
        })
        .collect();
    out.reverse();
    out
}

/// `d s^{2^{d-1}} (m_2+1)^2 (m_3+1)^3 ∏_{i=4}^d (m_i+1)^{2^{i-2}}`; for
/// `d = 2` this is `2 s^2 (m_2+1)^2`. `m_vec` starts at `m_2`.
pub fn powers_bound(d: u32, s: &BigUint, m_vec: &[BigUint]) -> Result<BigUint> {
    if d < 2 {
        return Err(Error::Precondition("the powers bound needs d ≥ 2".into()));
    }
    if m_vec.len() < d as usize - 1 {
        return Err(Error::Precondition(format!("m_2..m_{d} needed")));
    }
    let mut acc = BigUint::from(d) * pow_exact(s, &two_pow(d - 1))?;
    for i in 2..=d {
        let e = match i {
            2 => BigUint::from(2u32),
            3 => BigUint::from(3u32),
            _ => two_pow(i - 2),
        };
        acc *= pow_exact(&(&m_vec[i as usize - 2] + 1u32), &e)?;
    }
    Ok(acc)
}

pub fn powers_bound_interval(d: u32, s: &BigUint, m_vec: &[BigUint], prec: u32) -> Result<Interval> {
    if d < 2 {
        return Err(Error::Precondition("the powers bound needs d ≥ 2".into()));
    }
    if m_vec.len() < d as usize - 1 {
        return Err(Error::Precondition(format!("m_2..m_{d} needed")));
    }
    if s.is_zero() {
        return Ok(Interval::from_i64(0, prec));
    }
    let wp = prec + 32;
    let mut log = Interval::from_i64(d as i64, wp).ln();
    log = log.add(&Interval::from_uint(&two_pow(d - 1), wp).mul(&ln_uint(s, wp)));
    for i in 2..=d {
        let e = match i {
            2 => BigUint::from(2u32),
            3 => BigUint::from(3u32),
            _ => two_pow(i - 2),
        };
        log = log.add(&Interval::from_uint(&e, wp).mul(&ln_uint(&(&m_vec[i as usize - 2] + 1u32), wp)));
    }
    Ok(log.exp().with_precision(prec))
}

/// `ln` of `max_i s_i^{2^{i-1}}` for `s = (s_d, …, s_1)`, i.e. of
/// `s^{2^{d-1}}` with `s = max_i s_i^{2^{i-d}}`. `None` when every `s_i` is 0.
fn ln_s_factor(s_desc: &[BigUint], wp: u32) -> Option<Interval> {
    let d = s_desc.len();
    let mut best: Option<Interval> = None;
    for (idx, si) in s_desc.iter().enumerate() {
        if si.is_zero() {
            continue;
        }
        let i = (d - idx) as u32;
        let v = Interval::from_uint(&two_pow(i - 1), wp).mul(&ln_uint(si, wp));
        best = Some(match best {
            None => v,
            Some(b) => {
                if b.certainly_le(&v) {
                    v
                } else if v.certainly_le(&b) {
                    b
                } else {
                    // Overlapping enclosures: the hull encloses the maximum.
                    let hi = if b.hi() >= v.hi() { b.hi().clone() } else { v.hi().clone() };
                    let lo = if b.lo() >= v.lo() { b.lo().clone() } else { v.lo().clone() };
                    Interval::new(lo, hi, wp)
                }
            }
        });
    }
    best
}

/// `ln C_d` with `C_d = 2^{(2φ)^{d-2}} ∏_{k=2}^d (φ_k+11)^{2^{d-2}(φ^{d-k-1} + 2^{k-d}) + 4}`.
pub fn ln_c_d(d: u32, phis: &[BigUint], wp: u32) -> Result<Interval> {
    if d < 2 {
        return Err(Error::Precondition("the main bound needs d ≥ 2".into()));
    }
    need_phis(phis, d)?;
    let two_d2 = Interval::from_uint(&two_pow(d - 2), wp);
    let mut log = two_d2
        .mul(&golden_power(d as i64 - 2, wp))
        .mul(&Interval::from_i64(2, wp).ln());
    for k in 2..=d {
        // 2^{d-2} φ^{d-k-1} + 2^{k-2} + 4
        let e = two_d2
            .mul(&golden_power(d as i64 - k as i64 - 1, wp))
            .add(&Interval::from_uint(&two_pow(k - 2), wp))
            .add(&Interval::from_i64(4, wp));
        log = log.add(&e.mul(&ln_uint(&(phi_at(phis, k)? + 11u32), wp)));
    }
    Ok(log)
}

/// `B_{d,s} = s^{2^{d-1}} C_d` where `s = max_i s_i^{2^{i-d}}` for
/// `s = (s_d, …, s_1)`.
pub fn main_bound(s_desc: &[BigUint], phis: &[BigUint], prec: u32) -> Result<Interval> {
    let d = s_desc.len() as u32;
    let wp = prec + 32 + 2 * d;
    let mut log = ln_c_d(d, phis, wp)?;
    match ln_s_factor(s_desc, wp) {
        Some(ls) => log = log.add(&ls),
        None => return Ok(Interval::from_i64(0, prec)),
    }
    Ok(log.exp().with_precision(prec))
}

/// `ln` of the p-adic bound `s^{2^{d-1}} (4d)^{(2φ)^{d-1} + 2^d + 8d} 2^{(2φ)^{d-2}}`
/// without the `s` factor.
fn ln_padic_constant(d: u32, wp: u32) -> Interval {
    let two_phi = |k: i64| Interval::from_uint(&two_pow(k as u32), wp).mul(&golden_power(k, wp));
    let e = two_phi(d as i64 - 1)
        .add(&Interval::from_uint(&two_pow(d), wp))
        .add(&Interval::from_i64(8 * d as i64, wp));
    e.mul(&Interval::from_i64(4 * d as i64, wp).ln())
        .add(&two_phi(d as i64 - 2).mul(&Interval::from_i64(2, wp).ln()))
}

pub fn padic_bound(d: u32, s: &BigUint, prec: u32) -> Result<Interval> {
    if d < 2 {
        return Err(Error::Precondition("the p-adic bound needs d ≥ 2".into()));
    }
    if s.is_zero() {
        return Ok(Interval::from_i64(0, prec));
    }
    let wp = prec + 32 + 2 * d;
    let log = ln_padic_constant(d, wp).add(&Interval::from_uint(&two_pow(d - 1), wp).mul(&ln_uint(s, wp)));
    Ok(log.exp().with_precision(prec))
}

/// Whether `main_bound ≤ padic_bound` at `φ_k = 8k²`, compared on logs:
/// `Some(true)` proved, `Some(false)` refuted, `None` undecided.
pub fn padic_dominates_main(d: u32, prec: u32) -> Result<Option<bool>> {
    let phis = PhiSource::Skinner.values(d)?;
    let wp = prec + 32 + 2 * d;
    let main = ln_c_d(d, &phis, wp)?;
    let padic = ln_padic_constant(d, wp);
    Ok(decide_le(&main, &padic))
}

/// `Some(true)` if `a ≤ b` certainly, `Some(false)` if `a > b` certainly.
pub fn decide_le(a: &Interval, b: &Interval) -> Option<bool> {
    if a.certainly_le(b) {
        Some(true)
    } else if b.certainly_lt(a) {
        Some(false)
    } else {
        None
    }
}

/// Exponent inequalities behind the p-adic bound at degree `d`:
/// `2^{d-1} Σ_{k=2}^d (2^{k-d} + φ^{d-k-1}) ≤ (2φ)^{d-1} + 2^d` and
/// `∏_k (8k²+11)^{2^{d-2}(2^{k-d}+φ^{d-k-1})+4} ≤ (4d)^{2^{d-1} Σ_k (…) + 8d}`.
pub fn padic_exponent_checks(d: u32, prec: u32) -> (Option<bool>, Option<bool>) {
    let wp = prec + 32 + 2 * d;
    let mut sum = Interval::from_i64(0, wp);
    for k in 2..=d {
        sum = sum
            .add(&Interval::from_i64(1, wp).mul_pow2(k as i64 - d as i64))
            .add(&golden_power(d as i64 - k as i64 - 1, wp));
    }
    let lhs = Interval::from_uint(&two_pow(d - 1), wp).mul(&sum);
    let rhs = Interval::from_uint(&two_pow(d - 1), wp)
        .mul(&golden_power(d as i64 - 1, wp))
        .add(&Interval::from_uint(&two_pow(d), wp));
    let first = decide_le(&lhs, &rhs);

    let two_d2 = Interval::from_uint(&two_pow(d - 2), wp);
    let mut log_prod = Interval::from_i64(0, wp);
    for k in 2..=d {
        let e = two_d2
            .mul(
                &Interval::from_i64(1, wp)
                    .mul_pow2(k as i64 - d as i64)
                    .add(&golden_power(d as i64 - k as i64 - 1, wp)),
            )
            .add(&Interval::from_i64(4, wp));
        let base = Interval::from_i64(8 * (k as i64) * (k as i64) + 11, wp);
        log_prod = log_prod.add(&e.mul(&base.ln()));
    }
    let log_rhs = lhs
        .add(&Interval::from_i64(8 * d as i64, wp))
        .mul(&Interval::from_i64(4 * d as i64, wp).ln());
    (first, decide_le(&log_prod, &log_rhs))
}

/// Multiset coefficient `⟨m, i⟩ = C(m + i - 1, i)`.
pub fn multiset(m: u64, i: u64) -> BigUint {
    if m == 0 {
        return BigUint::from((i == 0) as u32);
    }
    binomial(m + i - 1, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn phis(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| u(x)).collect()
    }

    #[test]
    fn wooley_values() {
        assert_eq!(wooley_bound(2, &u(1), &phis(&[4])).unwrap(), u(8));
        assert_eq!(wooley_bound(2, &u(2), &phis(&[4])).unwrap(), u(32));
        assert_eq!(wooley_bound(3, &u(1), &phis(&[4, 72])).unwrap(), u(51840));
        let iv = wooley_bound_interval(3, &u(1), &phis(&[4, 72]), 128).unwrap();
        assert!(iv.contains_int(&BigInt::from(51840)));
    }

    #[test]
    fn n_sequence_values() {
        let n = n_sequence(3, &phis(&[4, 72])).unwrap();
        assert_eq!(n, vec![u(2), u(4), u(60), u(9960)]);
        let mut bad = n.clone();
        bad[2] = u(61);
        assert_eq!(check_evenness(&bad), vec!["n_2 = 61 is odd".to_string()]);
    }

    #[test]
    fn closed_form_values() {
        let b2 = beta_closed_form(2, &phis(&[4]), 128).unwrap();
        let expect = 2f64.powf(2.0 + 0.618033988749895) * 15.0;
        assert!((b2.midpoint().to_f64() - expect).abs() < 1e-9);
        assert!((92.0..92.2).contains(&expect));
        assert!(Interval::from_i64(60, 128).certainly_le(&b2));
        let b1 = beta_closed_form(1, &[], 128).unwrap();
        assert!(b1.contains_int(&BigInt::from(4)));
        let b3 = beta_closed_form(3, &phis(&[4, 72]), 128).unwrap();
        assert!(Interval::from_i64(9960, 128).certainly_le(&b3));
    }

    #[test]
    fn m_values() {
        assert_eq!(m_of_d(2, &phis(&[4])).unwrap(), u(13));
        assert_eq!(m_of_d(3, &phis(&[4, 72])).unwrap(), u(162));
        assert_eq!(m_of_d(4, &phis(&[4, 72, 1])).unwrap(), u(300));
    }

    #[test]
    fn lowering_and_star() {
        assert_eq!(degree_lower_step(&[u(1), u(0)], &u(13)).unwrap(), (u(338), vec![u(13)]));
        assert_eq!(degree_lower_step(&[u(1), u(1)], &u(13)).unwrap(), (u(364), vec![u(14)]));
        assert!(degree_lower_step(&[u(0), u(1)], &u(13)).is_err());
        assert_eq!(star_iterate(&[u(2), u(1)], &u(3), 0).unwrap(), vec![u(2), u(1)]);
        assert_eq!(star_iterate(&[u(2), u(1)], &u(3), 1).unwrap(), vec![u(1), u(7)]);
        assert_eq!(star_iterate(&[u(2), u(1)], &u(3), 2).unwrap(), vec![u(0), u(10)]);
        assert_eq!(star_bound(&[u(2), u(1)], &u(3), 1), vec![u(2), u(7)]);
        assert_eq!(star_bound(&[u(2), u(1)], &u(3), 2), vec![u(2), u(13)]);
    }

    #[test]
    fn powers_values() {
        assert_eq!(powers_bound(2, &u(1), &[u(13)]).unwrap(), u(392));
        assert_eq!(powers_bound(3, &u(1), &[u(13), u(162)]).unwrap(), u(3 * 196 * 163 * 163 * 163));
        assert_eq!(powers_bound(2, &u(2), &[u(13)]).unwrap(), u(4 * 392));
    }

    #[test]
    fn main_bound_value() {
        let b = main_bound(&[u(1), u(0)], &phis(&[4]), 128).unwrap();
        assert!(b.relative_width() < 1e-10);
        let mid = b.midpoint().to_f64();
        assert!((8.0e6..8.2e6).contains(&mid), "{mid}");
        let exact = 2.0 * 15f64.powf(5.0 + 1.0 / 1.618033988749895);
        assert!((mid - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn padic_value_and_dominance() {
        let b = padic_bound(2, &u(1), 128).unwrap();
        let g = 1.618033988749895f64;
        let expect = 2.0 * 8f64.powf(2.0 * g + 20.0);
        assert!((b.midpoint().to_f64() - expect).abs() / expect < 1e-12);
        for d in 2..=10 {
            assert_eq!(padic_dominates_main(d, 128).unwrap(), Some(true));
            assert_eq!(padic_exponent_checks(d, 128), (Some(true), Some(true)));
        }
    }

    #[test]
    fn golden_powers() {
        for k in -5..10 {
            let g = golden_power(k, 128);
            let f = 1.618033988749895f64.powi(k as i32);
            assert!((g.midpoint().to_f64() - f).abs() < 1e-12 * f.max(1.0));
        }
        assert!(golden_power(0, 128).contains_int(&BigInt::one()));
    }

    #[test]
    fn phi_source_parsing() {
        assert_eq!(PhiSource::parse("list:4,72").unwrap(), PhiSource::List(vec![4, 72]));
        assert_eq!(PhiSource::parse("skinner").unwrap().values(3).unwrap(), phis(&[32, 72]));
        assert!(PhiSource::parse("list:4").unwrap().values(3).is_err());
    }
}
