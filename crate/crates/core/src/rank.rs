//! Birch rank: exact formulas for quadratic and diagonal forms, and a
//! point-counting oracle over prime fields for everything else.
//!
//! The Birch rank of `f` is the codimension of `{x : ∇f(x) = 0}` capped at
//! `n`; for a collection of forms of one degree it is the minimum over all
//! nonzero linear combinations. The oracle replaces "codimension" by
//! `n - round(log_p N)` where `N` counts `F_p`-points, which is exact up to
//! rounding for varieties whose point counts are close to `p^dim`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{linalg, Field, Form, FormSystem, PrimeField};
use crate::error::{Error, Result};

/// Default cap on the number of points an oracle may enumerate.
pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;
/// Projective combination spaces up to this size are enumerated exhaustively.
pub const EXHAUSTIVE_COMBINATIONS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RankValue {
    Exact(usize),
    Bounds(usize, usize),
}

impl RankValue {
    pub fn upper(&self) -> usize {
        match *self {
            RankValue::Exact(v) | RankValue::Bounds(_, v) => v,
        }
    }

    pub fn lower(&self) -> usize {
        match *self {
            RankValue::Exact(v) | RankValue::Bounds(v, _) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    QuadraticExact,
    DiagonalExact,
    PointCountOracle,
    SampledUpper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Combination achieving the reported value, first nonzero entry 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combination: Option<Vec<String>>,
    /// Points of the gradient locus of that combination.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combinations_examined: Option<u64>,
    /// Rank of the symmetric matrix, or the support size of a diagonal form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub value: RankValue,
    pub method: RankMethod,
    pub certificate: Option<Certificate>,
}

/// Symmetric matrix `A` with `f(x) = xᵀ A x`.
pub fn quadratic_matrix<F: Field>(f: &Form<F>) -> Result<Vec<Vec<F::Elem>>> {
    if f.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: f.degree(),
        });
    }
    let k = f.field();
    let n = f.num_vars();
    let half = k
        .inv(&k.from_i64(2))
        .ok_or_else(|| Error::CharacteristicTooSmall {
            characteristic: 2,
            degree: 2,
        })?;
    let mut a = vec![vec![k.zero(); n]; n];
    for (m, c) in f.terms() {
        let s: Vec<usize> = m.support().collect();
        match s.as_slice() {
            [i] => a[*i][*i] = c.clone(),
            [i, j] => {
                let h = k.mul(c, &half);
                a[*i][*j] = h.clone();
                a[*j][*i] = h;
            }
            _ => unreachable!("quadratic monomials touch one or two variables"),
        }
    }
    Ok(a)
}

/// Exact Birch rank of a quadratic form: the rank of its symmetric matrix.
pub fn birch_rank_quadratic<F: Field>(f: &Form<F>) -> Result<RankReport> {
    let a = quadratic_matrix(f)?;
    let r = linalg::rank(f.field(), &a);
    Ok(RankReport {
        value: RankValue::Exact(r.min(f.num_vars())),
        method: RankMethod::QuadraticExact,
        certificate: Some(Certificate {
            witness: Some(format!("matrix rank {r}")),
            ..Default::default()
        }),
    })
}

/// Exact Birch rank of a diagonal form: the number of nonzero coefficients.
///
/// A nonzero linear form has a gradient that vanishes nowhere, so its rank
/// is the cap `n`.
pub fn birch_rank_diagonal<F: Field>(f: &Form<F>) -> Result<RankReport> {
    let coeffs = f.diagonal_coefficients().ok_or(Error::NotDiagonal)?;
    f.check_characteristic()?;
    let support = coeffs.iter().filter(|c| !f.field().is_zero(c)).count();
    let value = if f.degree() == 1 && support > 0 {
        f.num_vars()
    } else {
        support.min(f.num_vars())
    };
    Ok(RankReport {
        value: RankValue::Exact(value),
        method: RankMethod::DiagonalExact,
        certificate: Some(Certificate {
            witness: Some(format!("support size {support}")),
            ..Default::default()
        }),
    })
}

impl Default for Certificate {
    fn default() -> Self {
        Certificate {
            combination: None,
            point_count: None,
            combinations_examined: None,
            witness: None,
        }
    }
}

/// A form over `F_p` compiled for fast evaluation at small points.
#[derive(Debug, Clone)]
struct FpPoly {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl FpPoly {
    fn compile(f: &Form<PrimeField>) -> Self {
        let terms = f
            .terms()
            .map(|(m, c)| {
                let vars = m
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e))
                    .collect();
                (*c, vars)
            })
            .collect();
        FpPoly { terms }
    }

    #[inline]
    fn eval(&self, pw: &[Vec<u64>], p: u64) -> u64 {
        let mut acc = 0u64;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &(i, e) in vars {
                t = t * pw[i][e as usize] % p;
            }
            acc += t;
        }
        acc % p
    }
}

fn max_exponent(f: &Form<PrimeField>) -> u32 {
    f.terms()
        .flat_map(|(m, _)| m.exps().iter().copied().collect::<Vec<_>>())
        .max()
        .unwrap_or(0)
}

fn total_points(p: u64, n: usize, budget: u64) -> Result<u64> {
    let needed = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}

/// Runs `visit` on every point of `F_p^n` in parallel chunks and sums the
/// per-chunk results; the sum is independent of how rayon splits the work.
fn sweep<T, V>(p: u64, n: usize, total: u64, maxe: u32, init: T, visit: V) -> T
where
    T: Send + Clone + Sync + Merge,
    V: Fn(&mut T, &[u64], &[Vec<u64>]) + Sync,
{
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = init.clone();
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut x = vec![0u64; n];
            let mut r = start;
            for xi in x.iter_mut() {
                *xi = r % p;
                r /= p;
            }
            let mut pw: Vec<Vec<u64>> = x.iter().map(|&v| powers(v, maxe, p)).collect();
            for idx in start..end {
                visit(&mut acc, &x, &pw);
                if idx + 1 == end {
                    break;
                }
                for i in 0..n {
                    x[i] += 1;
                    if x[i] == p {
                        x[i] = 0;
                        pw[i] = powers(0, maxe, p);
                    } else {
                        pw[i] = powers(x[i], maxe, p);
                        break;
                    }
                }
            }
            acc
        })
        .reduce(|| init.clone(), |mut a, b| {
            a.merge(b);
            a
        })
}

trait Merge {
    fn merge(&mut self, other: Self);
}

impl Merge for u64 {
    fn merge(&mut self, other: Self) {
        *self += other;
    }
}

impl Merge for Vec<u64> {
    fn merge(&mut self, other: Self) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b;
        }
    }
}

fn powers(x: u64, maxe: u32, p: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(maxe as usize + 1);
    let mut acc = 1 % p;
    for _ in 0..=maxe {
        out.push(acc);
        acc = acc * x % p;
    }
    out
}

/// `round(log_p count)`, decided exactly: `k` with `p^(2k-1) ≤ count² < p^(2k+1)`.
pub fn round_log(count: u64, p: u64) -> Option<usize> {
    if count == 0 {
        return None;
    }
    let c2 = (count as u128) * (count as u128);
    let p = p as u128;
    // k = 0 when count² < p.
    if c2 < p {
        return Some(0);
    }
    let mut k = 1usize;
    let mut lo = p; // p^(2k-1)
    loop {
        let hi = lo.saturating_mul(p).saturating_mul(p); // p^(2k+1)
        if c2 < hi || hi == u128::MAX {
            return Some(k);
        }
        lo = hi;
        k += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub count: u64,
    pub total: u64,
    /// `None` when the variety has no `F_p`-points at all.
    pub dimension: Option<usize>,
}

/// Dimension of `Z(polys) ⊂ A^n(F_p)` estimated from an exhaustive count.
pub fn dimension_estimate(polys: &[Form<PrimeField>], n: usize, budget: u64) -> Result<DimensionEstimate> {
    let Some(first) = polys.first() else {
        return Err(Error::Precondition("no field given for an empty system".into()));
    };
    let k = *first.field();
    dimension_estimate_in(k, polys, n, budget)
}

/// As [`dimension_estimate`], with the field given explicitly so that the
/// empty system (the whole space) is allowed.
pub fn dimension_estimate_in(
    k: PrimeField,
    polys: &[Form<PrimeField>],
    n: usize,
    budget: u64,
) -> Result<DimensionEstimate> {
    for f in polys {
        if f.num_vars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.num_vars(),
            });
        }
    }
    let p = k.p();
    let total = total_points(p, n, budget)?;
    let compiled: Vec<FpPoly> = polys.iter().map(FpPoly::compile).collect();
    let maxe = polys.iter().map(max_exponent).max().unwrap_or(0);
    let count = sweep(p, n, total, maxe, 0u64, |acc, _x, pw| {
        if compiled.iter().all(|f| f.eval(pw, p) == 0) {
            *acc += 1;
        }
    });
    Ok(DimensionEstimate {
        count,
        total,
        dimension: round_log(count, p),
    })
}

/// Normalizes so the first nonzero entry is 1; `None` for the zero vector.
fn normalize(v: &mut [u64], p: u64) -> Option<()> {
    let k = PrimeField::new(p).expect("prime");
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = k.inv(&lead).expect("nonzero");
    for x in v.iter_mut() {
        *x = *x * inv % p;
    }
    Some(())
}

fn encode(v: &[u64], p: u64) -> u64 {
    v.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Every point of `P^{s-1}(F_p)` as a normalized vector, in lex order of
/// its base-`p` code.
pub fn projective_points(p: u64, s: usize) -> Vec<Vec<u64>> {
    let total = p.pow(s as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut v = vec![0u64; s];
        let mut r = code;
        for x in v.iter_mut() {
            *x = r % p;
            r /= p;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

/// Basis of `{a ∈ F_p^s : Σ_j a_j g_j = 0}` for rows `g_j` of length `n`.
fn left_kernel(g: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let k = PrimeField::new(p).expect("prime");
    let n = g.first().map_or(0, Vec::len);
    let cols = linalg::transpose(g, n);
    linalg::kernel(&k, &cols, g.len())
}

/// Counts `N_a = #{x ∈ F_p^n : ∇(Σ a_j f_j)(x) = 0}` for each combination.
///
/// Rather than evaluating every combination at every point, each point
/// contributes to exactly the `a` in the left kernel of its gradient matrix.
pub fn gradient_locus_counts(
    forms: &[Form<PrimeField>],
    combos: &[Vec<u64>],
    budget: u64,
) -> Result<Vec<u64>> {
    let Some(first) = forms.first() else {
        return Ok(vec![0; combos.len()]);
    };
    let k = *first.field();
    let p = k.p();
    let n = first.num_vars();
    let s = forms.len();
    let total = total_points(p, n, budget)?;
    let grads: Vec<Vec<FpPoly>> = forms
        .iter()
        .map(|f| f.gradient().iter().map(FpPoly::compile).collect())
        .collect();
    let maxe = forms.iter().map(max_exponent).max().unwrap_or(0);
    let index: HashMap<u64, usize> = combos
        .iter()
        .enumerate()
        .map(|(i, a)| (encode(a, p), i))
        .collect();
    let counts = sweep(p, n, total, maxe, vec![0u64; combos.len()], |acc, _x, pw| {
        let g: Vec<Vec<u64>> = grads
            .iter()
            .map(|row| row.iter().map(|d| d.eval(pw, p)).collect())
            .collect();
        let ker = left_kernel(&g, p);
        if ker.is_empty() {
            return;
        }
        let kdim = ker.len() as u32;
        let kernel_points = p.checked_pow(kdim).map_or(u64::MAX, |t| (t - 1) / (p - 1));
        if kernel_points <= combos.len() as u64 {
            for c in projective_points(p, ker.len()) {
                let mut v = vec![0u64; s];
                for (ci, b) in c.iter().zip(&ker) {
                    for (vj, bj) in v.iter_mut().zip(b) {
                        *vj = (*vj + ci * bj) % p;
                    }
                }
                normalize(&mut v, p);
                if let Some(&i) = index.get(&encode(&v, p)) {
                    acc[i] += 1;
                }
            }
        } else {
            for (i, a) in combos.iter().enumerate() {
                let zero = (0..n).all(|col| {
                    a.iter()
                        .zip(&g)
                        .fold(0u64, |t, (aj, row)| (t + aj * row[col]) % p)
                        == 0
                });
                if zero {
                    acc[i] += 1;
                }
            }
        }
    });
    Ok(counts)
}

/// Options for [`birch_rank_estimate`].
#[derive(Debug, Clone, Copy)]
pub struct EstimateOptions {
    /// Number of sampled combinations when exhaustive enumeration is too big.
    pub samples: u64,
    pub seed: u64,
    pub point_budget: u64,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        EstimateOptions {
            samples: 200,
            seed: 0,
            point_budget: DEFAULT_POINT_BUDGET,
        }
    }
}

/// Collective Birch rank over `F_p` of the forms of one degree, estimated
/// by point counting over every (or a sample of) `F_p`-rational combination.
pub fn birch_rank_estimate_class(forms: &[Form<PrimeField>], opts: EstimateOptions) -> Result<RankReport> {
    let first = forms
        .first()
        .ok_or_else(|| Error::Precondition("empty degree class".into()))?;
    let k = *first.field();
    let p = k.p();
    let n = first.num_vars();
    let s = forms.len();
    if forms.iter().any(|f| f.degree() != first.degree()) {
        return Err(Error::Precondition("forms of one degree class expected".into()));
    }
    let space = (p as u128).checked_pow(s as u32).map_or(u128::MAX, |t| (t - 1) / (p as u128 - 1));
    let exhaustive = space <= EXHAUSTIVE_COMBINATIONS as u128;
    let combos = if exhaustive {
        projective_points(p, s)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut draws = 0u64;
        while (out.len() as u64) < opts.samples && draws < opts.samples.saturating_mul(20) {
            draws += 1;
            let mut a: Vec<u64> = (0..s).map(|_| rng.gen_range(0..p)).collect();
            if normalize(&mut a, p).is_none() {
                continue;
            }
            if seen.insert(a.clone()) {
                out.push(a);
            }
        }
        out
    };
    let counts = gradient_locus_counts(forms, &combos, opts.point_budget)?;
    let mut best: Option<(usize, usize)> = None;
    for (i, &c) in counts.iter().enumerate() {
        let r = n - round_log(c, p).map_or(0, |d| d.min(n));
        if best.is_none_or(|(b, _)| r < b) {
            best = Some((r, i));
        }
    }
    let (r, i) = best.ok_or_else(|| Error::not_found("combination sampling"))?;
    let certificate = Certificate {
        combination: Some(combos[i].iter().map(|x| x.to_string()).collect()),
        point_count: Some(counts[i].to_string()),
        combinations_examined: Some(combos.len() as u64),
        witness: None,
    };
    Ok(RankReport {
        value: if exhaustive {
            RankValue::Bounds(r, r)
        } else {
            RankValue::Bounds(0, r)
        },
        method: if exhaustive {
            RankMethod::PointCountOracle
        } else {
            RankMethod::SampledUpper
        },
        certificate: Some(certificate),
    })
}

/// Collective Birch rank of a system: the minimum over its degree classes.
pub fn birch_rank_estimate(sys: &FormSystem<PrimeField>, opts: EstimateOptions) -> Result<RankReport> {
    let mut best: Option<RankReport> = None;
    for d in 1..=sys.max_degree() {
        let class: Vec<Form<PrimeField>> = sys.degree_class(d).into_iter().cloned().collect();
        if class.is_empty() {
            continue;
        }
        let rep = birch_rank_estimate_class(&class, opts)?;
        let better = match &best {
            None => true,
            Some(b) => rep.value.upper() < b.value.upper(),
        };
        let sampled = rep.method == RankMethod::SampledUpper
            || best.as_ref().is_some_and(|b| b.method == RankMethod::SampledUpper);
        if better {
            best = Some(rep);
        }
        if sampled {
            if let Some(b) = best.as_mut() {
                b.method = RankMethod::SampledUpper;
                b.value = RankValue::Bounds(0, b.value.upper());
            }
        }
    }
    best.ok_or_else(|| Error::Precondition("empty system".into()))
}

/// All maximal minors of the gradient matrix of a system, as forms.
///
/// Their common zero locus is where the gradients are linearly dependent.
pub fn singular_locus_conditions<F: Field>(sys: &FormSystem<F>) -> Result<Vec<Form<F>>> {
    let n = sys.num_vars();
    let s = sys.s_total();
    if s > n {
        return Err(Error::TooManyForms { forms: s, vars: n });
    }
    let grads: Vec<Vec<Form<F>>> = sys.forms().iter().map(Form::gradient).collect();
    let mut out = Vec::new();
    for cols in combinations(n, s) {
        let m: Vec<Vec<&Form<F>>> = grads
            .iter()
            .map(|row| cols.iter().map(|&c| &row[c]).collect())
            .collect();
        out.push(determinant(sys.field(), n, &m)?);
    }
    Ok(out)
}

/// Increasing `k`-subsets of `0..n` in lex order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant of a square matrix of forms by cofactor expansion along the
/// first row. Row `i` is homogeneous of a common degree.
fn determinant<F: Field>(k: &F, n: usize, m: &[Vec<&Form<F>>]) -> Result<Form<F>> {
    let size = m.len();
    if size == 0 {
        return Ok(Form::constant(k.clone(), n, k.one()));
    }
    let row_deg = |r: &[&Form<F>]| r.first().map_or(0, |f| f.degree());
    let total_deg: u32 = m.iter().map(|r| row_deg(r)).sum();
    let mut acc = Form::zero(k.clone(), n, total_deg);
    for j in 0..size {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<&Form<F>>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, f)| *f)
                    .collect()
            })
            .collect();
        let sub = determinant(k, n, &minor)?;
        let mut term = m[0][j].mul(&sub)?;
        if j % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term)?;
    }
    if acc.is_zero() {
        acc = Form::zero(k.clone(), n, total_deg);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;

    fn q(s: &str, n: usize) -> Form<Rationals> {
        Form::parse_with_vars(s, Rationals, n).unwrap()
    }

    fn fp(s: &str, p: u64, n: usize) -> Form<PrimeField> {
        Form::parse_with_vars(s, PrimeField::new(p).unwrap(), n).unwrap()
    }

    #[test]
    fn quadratic_examples() {
        let r = |s, n| birch_rank_quadratic(&q(s, n)).unwrap().value;
        assert_eq!(r("x1^2 + x2^2", 2), RankValue::Exact(2));
        assert_eq!(r("x1 x2", 2), RankValue::Exact(2));
        assert_eq!(r("x1^2", 3), RankValue::Exact(1));
        assert!(birch_rank_quadratic(&q("x1^3", 1)).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let r = |f: Form<Rationals>| birch_rank_diagonal(&f).unwrap().value;
        assert_eq!(r(q("x1^3 + x2^3 + x3^3", 3)), RankValue::Exact(3));
        assert_eq!(r(q("x1^3", 5)), RankValue::Exact(1));
        assert_eq!(r(Form::zero(Rationals, 4, 3)), RankValue::Exact(0));
        assert_eq!(birch_rank_diagonal(&q("x1 x2", 2)), Err(Error::NotDiagonal));
    }

    #[test]
    fn point_counts() {
        let k = PrimeField::new(5).unwrap();
        let d = |polys: &[Form<PrimeField>]| dimension_estimate_in(k, polys, 2, 1000).unwrap();
        let e = d(&[fp("x1", 5, 2)]);
        assert_eq!((e.count, e.dimension), (5, Some(1)));
        let e = d(&[fp("x1 x2", 5, 2)]);
        assert_eq!((e.count, e.dimension), (9, Some(1)));
        let e = d(&[]);
        assert_eq!((e.count, e.dimension), (25, Some(2)));
        assert!(matches!(
            dimension_estimate_in(k, &[], 12, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn rounding_boundaries() {
        assert_eq!(round_log(1, 7), Some(0));
        assert_eq!(round_log(2, 7), Some(0));
        assert_eq!(round_log(3, 7), Some(1));
        assert_eq!(round_log(7, 7), Some(1));
        assert_eq!(round_log(18, 7), Some(1));
        assert_eq!(round_log(19, 7), Some(2));
        assert_eq!(round_log(0, 7), None);
    }

    #[test]
    fn collective_examples() {
        let sys = FormSystem::single(fp("x1^3 + x2^3 + x3^3", 7, 3));
        let r = birch_rank_estimate(&sys, EstimateOptions::default()).unwrap();
        assert_eq!(r.value, RankValue::Bounds(3, 3));
        let k = PrimeField::new(7).unwrap();
        let sys = FormSystem::new(k, 2, vec![fp("x1^2", 7, 2), fp("x1^2 + x2^2", 7, 2)]).unwrap();
        let r = birch_rank_estimate(&sys, EstimateOptions::default()).unwrap();
        assert_eq!(r.value, RankValue::Bounds(1, 1));
        assert_eq!(r.method, RankMethod::PointCountOracle);
    }

    #[test]
    fn minors() {
        let sys = FormSystem::new(Rationals, 2, vec![q("x1^2", 2), q("x2^2", 2)]).unwrap();
        assert_eq!(singular_locus_conditions(&sys).unwrap(), vec![q("4 x1 x2", 2)]);
        let sys = FormSystem::new(Rationals, 4, vec![q("x1 x2", 4), q("x3 x4", 4)]).unwrap();
        assert_eq!(singular_locus_conditions(&sys).unwrap().len(), 6);
        let sys = FormSystem::single(q("x1^2 + x2^2", 2));
        assert_eq!(
            singular_locus_conditions(&sys).unwrap(),
            vec![q("2 x1", 2), q("2 x2", 2)]
        );
        let sys = FormSystem::new(Rationals, 1, vec![q("x1", 1), q("x1^2", 1)]).unwrap();
        assert!(matches!(
            singular_locus_conditions(&sys),
            Err(Error::TooManyForms { .. })
        ));
    }
}
