//! Diagonal forms and non-degenerate diagonal systems.
//!
//! A diagonal system in `n` variables has rows `f_1, …, f_d` of degrees
//! `1, …, d` followed by a row `f_{d+1}` of degree greater than `d`, all with
//! nonzero coefficients. A solution is a point where the first `d` rows
//! vanish and the last does not.
//!
//! Search strategies differ by field:
//! * over `F_p` candidates are enumerated exhaustively in a fixed order when
//!   the budget allows, and sampled from a seeded generator otherwise;
//! * over `Q` integer points are scanned in boxes `[-H, H]^n` with `H`
//!   doubling each round;
//! * over `Q_p` a solution modulo `p` is found as over `F_p` and then lifted
//!   by Newton's method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::form::check_characteristic;
use crate::algebra::hensel::{hensel_lift, lift_system, IntPoly};
use crate::algebra::parse::parse_coeff;
use crate::algebra::{linalg, Field, FieldDescriptor, Form, FormSystem, PadicElem, PadicField, PrimeField, Rationals};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalRow<E> {
    pub degree: u32,
    pub coeffs: Vec<E>,
}

/// A non-degenerate system of diagonal forms.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSystem<F: Field> {
    field: F,
    n: usize,
    rows: Vec<DiagonalRow<F::Elem>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalRowJson {
    pub degree: u32,
    pub coeffs: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalSystemJson {
    pub n: usize,
    pub rows: Vec<DiagonalRowJson>,
}

impl<F: Field> DiagonalSystem<F> {
    pub fn new(field: F, n: usize, rows: Vec<DiagonalRow<F::Elem>>) -> Result<Self> {
        let Some(top) = rows.last() else {
            return Err(Error::Precondition("a diagonal system needs at least one row".into()));
        };
        let d = rows.len() - 1;
        for (i, row) in rows.iter().enumerate() {
            if row.coeffs.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.coeffs.len(),
                });
            }
            if i < d && row.degree as usize != i + 1 {
                return Err(Error::WrongDegree {
                    expected: i as u32 + 1,
                    found: row.degree,
                });
            }
            if let Some(j) = row.coeffs.iter().position(|c| field.is_zero(c)) {
                return Err(Error::Degenerate(format!(
                    "row {} has a zero coefficient at x{}",
                    i + 1,
                    j + 1
                )));
            }
        }
        if top.degree as usize <= d {
            return Err(Error::WrongDegree {
                expected: d as u32 + 1,
                found: top.degree,
            });
        }
        check_characteristic(&field, top.degree)?;
        Ok(DiagonalSystem { field, n, rows })
    }

    /// Random system with coefficients drawn from `field.random_elem`.
    pub fn random<R: Rng + ?Sized>(field: F, n: usize, d: usize, top_degree: u32, height: u64, rng: &mut R) -> Result<Self> {
        let mut rows = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let degree = if i < d { i as u32 + 1 } else { top_degree };
            let coeffs = (0..n)
                .map(|_| loop {
                    let c = field.random_elem(rng, height);
                    if !field.is_zero(&c) {
                        break c;
                    }
                })
                .collect();
            rows.push(DiagonalRow { degree, coeffs });
        }
        DiagonalSystem::new(field, n, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    /// Number of rows that must vanish.
    pub fn d(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[DiagonalRow<F::Elem>] {
        &self.rows
    }

    pub fn top(&self) -> &DiagonalRow<F::Elem> {
        self.rows.last().expect("nonempty")
    }

    pub fn forms(&self) -> Vec<Form<F>> {
        self.rows
            .iter()
            .map(|r| Form::diagonal(self.field.clone(), &r.coeffs, r.degree).expect("validated"))
            .collect()
    }

    pub fn to_form_system(&self) -> FormSystem<F> {
        FormSystem::new(self.field.clone(), self.n, self.forms()).expect("shared ring")
    }

    /// The system on the coordinates in `idx` (in that order).
    pub fn restrict_coordinates(&self, idx: &[usize]) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| DiagonalRow {
                degree: r.degree,
                coeffs: idx.iter().map(|&i| r.coeffs[i].clone()).collect(),
            })
            .collect();
        DiagonalSystem::new(self.field.clone(), idx.len(), rows)
    }

    /// The same coefficients with a different top row.
    pub fn with_top(&self, keep: usize, top: &DiagonalRow<F::Elem>) -> Result<Self> {
        let mut rows: Vec<_> = self.rows[..keep].to_vec();
        rows.push(top.clone());
        DiagonalSystem::new(self.field.clone(), self.n, rows)
    }

    pub fn row_values(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|r| diagonal_value(&self.field, &r.coeffs, r.degree, x))
            .collect())
    }

    /// Whether `x` solves the system: lower rows vanish, the top row does not.
    pub fn is_solution(&self, x: &[F::Elem]) -> Result<bool> {
        let v = self.row_values(x)?;
        let (top, lower) = v.split_last().expect("nonempty");
        Ok(lower.iter().all(|c| self.field.is_zero(c)) && !self.field.is_zero(top))
    }

    pub fn to_json(&self) -> DiagonalSystemJson {
        DiagonalSystemJson {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|r| DiagonalRowJson {
                    degree: r.degree,
                    coeffs: r
                        .coeffs
                        .iter()
                        .map(|c| Value::String(self.field.format_elem(c)))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &DiagonalSystemJson, field: F) -> Result<Self> {
        let rows = j
            .rows
            .iter()
            .map(|r| {
                Ok(DiagonalRow {
                    degree: r.degree,
                    coeffs: r
                        .coeffs
                        .iter()
                        .map(|c| parse_coeff(c, &field))
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DiagonalSystem::new(field, j.n, rows)
    }

    pub fn from_json_str(s: &str, field: F) -> Result<Self> {
        let j: DiagonalSystemJson = serde_json::from_str(s).map_err(|e| Error::parse(e.to_string()))?;
        Self::from_json(&j, field)
    }
}

/// `Σ a_i x_i^d`.
pub fn diagonal_value<F: Field>(k: &F, coeffs: &[F::Elem], d: u32, x: &[F::Elem]) -> F::Elem {
    coeffs
        .iter()
        .zip(x)
        .fold(k.zero(), |acc, (a, xi)| k.add(&acc, &k.mul(a, &k.pow(xi, d))))
}

/// Divides by the first nonzero coordinate.
pub fn normalize_vector<F: Field>(k: &F, x: &[F::Elem]) -> Vec<F::Elem> {
    match x.iter().find(|c| !k.is_zero(c)).and_then(|c| k.inv(c)) {
        Some(inv) => x.iter().map(|c| k.mul(c, &inv)).collect(),
        None => x.to_vec(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of candidates examined.
    pub budget: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 1_000_000,
            seed: 0,
        }
    }
}

/// Outcome of a search. `vector: None` with `exhaustive: true` proves there
/// is no solution (only possible over finite fields).
#[derive(Debug, Clone, PartialEq)]
pub struct Search<E> {
    pub vector: Option<Vec<E>>,
    pub exhaustive: bool,
    pub candidates: u64,
}

impl<E> Search<E> {
    pub fn into_found(self, stage: &str) -> Result<Vec<E>> {
        self.vector.ok_or_else(|| Error::not_found(stage))
    }
}

/// Field-specific search strategies.
pub trait DiagonalSearch: Field {
    fn search_isotropic(&self, coeffs: &[Self::Elem], d: u32, opts: SearchOptions) -> Result<Search<Self::Elem>>;
    fn search_system(&self, sys: &DiagonalSystem<Self>, opts: SearchOptions) -> Result<Search<Self::Elem>>;
}

/// A nonzero `x` with `Σ a_i x_i^d = 0`, normalized so its first nonzero
/// coordinate is 1.
pub fn isotropic_vector<F: DiagonalSearch>(
    field: &F,
    coeffs: &[F::Elem],
    d: u32,
    opts: SearchOptions,
) -> Result<Search<F::Elem>> {
    check_characteristic(field, d)?;
    if d == 0 {
        return Err(Error::WrongDegree { expected: 1, found: 0 });
    }
    if let Some(j) = coeffs.iter().position(|c| field.is_zero(c)) {
        return Err(Error::Degenerate(format!("zero coefficient at x{}", j + 1)));
    }
    let mut s = field.search_isotropic(coeffs, d, opts)?;
    if let Some(x) = s.vector.take() {
        let x = normalize_vector(field, &x);
        let ok = x.iter().any(|c| !field.is_zero(c)) && field.is_zero(&diagonal_value(field, coeffs, d, &x));
        if !ok {
            return Err(Error::Violated("isotropic vector failed re-verification".into()));
        }
        s.vector = Some(x);
    }
    Ok(s)
}

/// A point where the lower rows vanish and the top row does not, normalized
/// so its first nonzero coordinate is 1.
pub fn solve_diagonal_system<F: DiagonalSearch>(sys: &DiagonalSystem<F>, opts: SearchOptions) -> Result<Search<F::Elem>> {
    let k = sys.field();
    let mut s = k.search_system(sys, opts)?;
    if let Some(x) = s.vector.take() {
        let x = normalize_vector(k, &x);
        if !sys.is_solution(&x)? {
            return Err(Error::Violated("system solution failed re-verification".into()));
        }
        s.vector = Some(x);
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// F_p

/// Number of nonzero vectors in `F_p^n` with first nonzero coordinate 1.
fn projective_count(p: u64, n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    (p as u128).checked_pow(n as u32).map_or(u128::MAX, |t| (t - 1) / (p as u128 - 1))
}

/// The `t`-th normalized vector of `F_p^n` in lexicographic order.
fn decode_normalized(mut t: u128, p: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for lead in (0..n).rev() {
        let size = (p as u128).pow((n - 1 - lead) as u32);
        if t < size {
            v[lead] = 1;
            for j in (lead + 1..n).rev() {
                v[j] = (t % p as u128) as u64;
                t /= p as u128;
            }
            return v;
        }
        t -= size;
    }
    unreachable!("index below the projective count")
}

fn random_nonzero(rng: &mut ChaCha8Rng, p: u64, n: usize) -> Vec<u64> {
    loop {
        let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

/// Exhaustive (in canonical order, first hit wins) or seeded random search
/// over normalized vectors of `F_p^n`.
fn fp_search<P>(p: u64, n: usize, opts: SearchOptions, accept: P) -> Search<u64>
where
    P: Fn(&[u64]) -> bool + Sync,
{
    let count = projective_count(p, n);
    if count <= opts.budget as u128 {
        let hit = (0..count as u64)
            .into_par_iter()
            .find_first(|&t| accept(&decode_normalized(t as u128, p, n)));
        let candidates = hit.map_or(count as u64, |t| t + 1);
        return Search {
            vector: hit.map(|t| decode_normalized(t as u128, p, n)),
            exhaustive: true,
            candidates,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for i in 0..opts.budget {
        let v = random_nonzero(&mut rng, p, n);
        if accept(&v) {
            return Search {
                vector: Some(v),
                exhaustive: false,
                candidates: i + 1,
            };
        }
    }
    Search {
        vector: None,
        exhaustive: false,
        candidates: opts.budget,
    }
}

fn fp_diag(k: &PrimeField, coeffs: &[u64], d: u32, x: &[u64]) -> u64 {
    diagonal_value(k, coeffs, d, x)
}

/// Completes free coordinates `y` (for `x_2 … x_n`) with `x_1` solving the
/// linear row.
fn fp_complete(k: &PrimeField, linear: &[u64], y: &[u64]) -> Vec<u64> {
    let s = linear[1..].iter().zip(y).fold(0, |acc, (a, b)| k.add(&acc, &k.mul(a, b)));
    let x1 = k.neg(&k.div(&s, &linear[0]).expect("nonzero coefficient"));
    let mut x = Vec::with_capacity(y.len() + 1);
    x.push(x1);
    x.extend_from_slice(y);
    x
}

impl DiagonalSearch for PrimeField {
    fn search_isotropic(&self, coeffs: &[u64], d: u32, opts: SearchOptions) -> Result<Search<u64>> {
        let n = coeffs.len();
        Ok(fp_search(self.p(), n, opts, |x| fp_diag(self, coeffs, d, x) == 0))
    }

    fn search_system(&self, sys: &DiagonalSystem<Self>, opts: SearchOptions) -> Result<Search<u64>> {
        let rows = sys.rows();
        let d = sys.d();
        let ok = |x: &[u64]| {
            let lower = rows[..d]
                .iter()
                .skip(1)
                .all(|r| fp_diag(self, &r.coeffs, r.degree, x) == 0);
            let top = sys.top();
            lower && fp_diag(self, &top.coeffs, top.degree, x) != 0
        };
        if d == 0 {
            return Ok(fp_search(self.p(), sys.num_vars(), opts, ok));
        }
        let linear = &rows[0].coeffs;
        let mut s = fp_search(self.p(), sys.num_vars() - 1, opts, |y| ok(&fp_complete(self, linear, y)));
        s.vector = s.vector.map(|y| fp_complete(self, linear, &y));
        Ok(s)
    }
}

// ---------------------------------------------------------------------------
// Q

/// Integer points of `Z^n` in boxes `[-H, H]^n`, `H = 1, 2, 4, …`; within a
/// box the new points are visited in lexicographic order of the key
/// `0, 1, -1, 2, -2, …`. Only points whose first nonzero entry is positive
/// are produced.
pub struct BoxShells {
    n: usize,
    prev: i64,
    h: i64,
    keys: Vec<i64>,
    started: bool,
}

impl BoxShells {
    pub fn new(n: usize) -> Self {
        BoxShells {
            n,
            prev: 0,
            h: 1,
            keys: vec![0; n],
            started: false,
        }
    }

    fn value(k: i64) -> i64 {
        if k % 2 == 1 {
            (k + 1) / 2
        } else {
            -k / 2
        }
    }

    fn advance(&mut self) {
        let top = 2 * self.h;
        for i in (0..self.n).rev() {
            if self.keys[i] < top {
                self.keys[i] += 1;
                return;
            }
            self.keys[i] = 0;
        }
        // Box exhausted: grow it.
        self.prev = self.h;
        self.h *= 2;
    }
}

impl Iterator for BoxShells {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.n == 0 {
            return None;
        }
        loop {
            if self.started {
                self.advance();
            }
            self.started = true;
            let v: Vec<i64> = self.keys.iter().map(|&k| Self::value(k)).collect();
            let max = v.iter().map(|x| x.abs()).max().unwrap_or(0);
            if max <= self.prev {
                continue;
            }
            if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                continue;
            }
            return Some(v);
        }
    }
}

/// Clears denominators of a rational row.
fn integral_row(coeffs: &[num_rational::BigRational]) -> Vec<BigInt> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

fn int_diag(coeffs: &[BigInt], d: u32, x: &[BigInt]) -> BigInt {
    coeffs
        .iter()
        .zip(x)
        .map(|(a, xi)| a * num_traits::pow(xi.clone(), d as usize))
        .sum()
}

fn to_rationals(x: &[BigInt]) -> Vec<num_rational::BigRational> {
    x.iter().map(|v| num_rational::BigRational::from_integer(v.clone())).collect()
}

impl DiagonalSearch for Rationals {
    fn search_isotropic(
        &self,
        coeffs: &[num_rational::BigRational],
        d: u32,
        opts: SearchOptions,
    ) -> Result<Search<num_rational::BigRational>> {
        let c = integral_row(coeffs);
        for (i, v) in BoxShells::new(c.len()).take(opts.budget as usize).enumerate() {
            let x: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
            if int_diag(&c, d, &x).is_zero() {
                return Ok(Search {
                    vector: Some(to_rationals(&x)),
                    exhaustive: false,
                    candidates: i as u64 + 1,
                });
            }
        }
        Ok(Search {
            vector: None,
            exhaustive: false,
            candidates: opts.budget,
        })
    }

    fn search_system(
        &self,
        sys: &DiagonalSystem<Self>,
        opts: SearchOptions,
    ) -> Result<Search<num_rational::BigRational>> {
        let rows: Vec<(u32, Vec<BigInt>)> = sys
            .rows()
            .iter()
            .map(|r| (r.degree, integral_row(&r.coeffs)))
            .collect();
        let d = sys.d();
        let n = sys.num_vars();
        // With a linear row a·x = 0, use x_1 = -Σ a_i y_i, x_i = a_1 y_i so
        // that every candidate stays integral.
        let complete = |y: Vec<i64>| -> Vec<BigInt> {
            let y: Vec<BigInt> = y.into_iter().map(BigInt::from).collect();
            if d == 0 {
                return y;
            }
            let a = &rows[0].1;
            let x1: BigInt = -a[1..].iter().zip(&y).map(|(ai, yi)| ai * yi).sum::<BigInt>();
            let mut x = vec![x1];
            x.extend(y.iter().map(|yi| &a[0] * yi));
            x
        };
        let free = if d == 0 { n } else { n - 1 };
        for (i, y) in BoxShells::new(free).take(opts.budget as usize).enumerate() {
            let x = complete(y);
            let (top, lower) = rows.split_last().expect("nonempty");
            if lower.iter().skip(1).all(|(deg, c)| int_diag(c, *deg, &x).is_zero())
                && !int_diag(&top.1, top.0, &x).is_zero()
            {
                return Ok(Search {
                    vector: Some(to_rationals(&x)),
                    exhaustive: false,
                    candidates: i as u64 + 1,
                });
            }
        }
        Ok(Search {
            vector: None,
            exhaustive: false,
            candidates: opts.budget,
        })
    }
}

// ---------------------------------------------------------------------------
// Q_p

fn padic_valuation_of_int(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    while m.is_multiple_of(&pb) {
        m /= &pb;
        v += 1;
    }
    v
}

/// Rows scaled by powers of `p` to integral with a unit coefficient, and the
/// common absolute precision of the scaled coefficients.
fn padic_integral_rows(k: &PadicField, rows: &[&[PadicElem]]) -> Result<(Vec<Vec<BigInt>>, u32)> {
    let mut scaled_rows = Vec::new();
    for row in rows {
        let vmin = row
            .iter()
            .filter_map(PadicElem::valuation)
            .min()
            .ok_or_else(|| Error::Degenerate("row is zero at working precision".into()))?;
        let p = k.from_i64(k.p() as i64);
        let pw = if vmin >= 0 {
            k.inv(&k.pow(&p, vmin as u32)).ok_or(Error::DivisionByZero)?
        } else {
            k.pow(&p, (-vmin) as u32)
        };
        scaled_rows.push(row.iter().map(|c| k.mul(c, &pw)).collect::<Vec<_>>());
    }
    let prec = scaled_rows
        .iter()
        .flatten()
        .map(PadicElem::precision)
        .min()
        .unwrap_or(k.prec() as i64)
        .max(1) as u32;
    let ints = scaled_rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| c.residue(prec as i64).ok_or(Error::DivisionByZero))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ints, prec))
}

fn diag_poly(n: usize, coeffs: &[BigInt], d: u32) -> IntPoly {
    IntPoly {
        num_vars: n,
        terms: coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = d;
                (e, c.clone())
            })
            .collect(),
    }
}

fn residues_mod(c: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    c.iter().map(|x| x.mod_floor(&pb).to_u64().expect("small")).collect()
}

impl DiagonalSearch for PadicField {
    fn search_isotropic(&self, coeffs: &[PadicElem], d: u32, opts: SearchOptions) -> Result<Search<PadicElem>> {
        let p = self.p();
        let n = coeffs.len();
        let (rows, prec) = padic_integral_rows(self, &[coeffs])?;
        let c = &rows[0];
        let vd = padic_valuation_of_int(&BigInt::from(d), p);
        // Candidates modulo q = p^r with r = 2 v_p(d) + 1 satisfy Hensel's
        // criterion in any coordinate that is a unit with a unit coefficient.
        let r = 2 * vd + 1;
        let q = BigInt::from(p).pow(r);
        let usable = |x: &[BigInt]| -> Option<usize> {
            let s = int_diag(c, d, x);
            if !s.mod_floor(&q).is_zero() {
                return None;
            }
            (0..n).find(|&j| {
                !x[j].is_multiple_of(&BigInt::from(p)) && !c[j].is_multiple_of(&BigInt::from(p))
            })
        };
        let lift = |x: &[BigInt], j: usize| -> Result<Vec<BigInt>> {
            let rest = int_diag(c, d, x) - &c[j] * num_traits::pow(x[j].clone(), d as usize);
            let mut g = vec![BigInt::zero(); d as usize + 1];
            g[0] = rest;
            g[d as usize] = c[j].clone();
            let root = hensel_lift(&g, &x[j], p, prec)?;
            let mut y = x.to_vec();
            y[j] = root;
            Ok(y)
        };
        let found = if r == 1 {
            let s = fp_search(p, n, opts, |x| {
                let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                usable(&xb).is_some()
            });
            let hit = s.vector.as_ref().and_then(|x| {
                let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
                usable(&xb).map(|j| (xb, j))
            });
            (hit, s.candidates, s.exhaustive)
        } else {
            let qu = q.to_u64().unwrap_or(u64::MAX);
            let mut hit = None;
            let mut count = 0u64;
            let mut digits = vec![0u64; n];
            'outer: loop {
                let mut i = n;
                loop {
                    if i == 0 {
                        break 'outer;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < qu {
                        break;
                    }
                    digits[i] = 0;
                }
                count += 1;
                if count > opts.budget {
                    break;
                }
                let xb: Vec<BigInt> = digits.iter().map(|&v| BigInt::from(v)).collect();
                if let Some(j) = usable(&xb) {
                    hit = Some((xb, j));
                    break;
                }
            }
            (hit, count.min(opts.budget), false)
        };
        let (hit, candidates, _) = found;
        let vector = match hit {
            Some((x, j)) => {
                let y = lift(&x, j)?;
                Some(y.iter().map(|v| self.from_bigint(v)).collect())
            }
            None => None,
        };
        Ok(Search {
            vector,
            exhaustive: false,
            candidates,
        })
    }

    fn search_system(&self, sys: &DiagonalSystem<Self>, opts: SearchOptions) -> Result<Search<PadicElem>> {
        let p = self.p();
        let n = sys.num_vars();
        let d = sys.d();
        let row_refs: Vec<&[PadicElem]> = sys.rows().iter().map(|r| r.coeffs.as_slice()).collect();
        let (rows, prec) = padic_integral_rows(self, &row_refs)?;
        let degrees: Vec<u32> = sys.rows().iter().map(|r| r.degree).collect();
        let fp = PrimeField::new(p)?;
        let res: Vec<Vec<u64>> = rows.iter().map(|r| residues_mod(r, p)).collect();
        let pivots_at = |x: &[u64]| -> Option<Vec<usize>> {
            let jac: Vec<Vec<u64>> = (0..d)
                .map(|i| {
                    let deg = degrees[i];
                    (0..n)
                        .map(|j| {
                            let t = fp.mul(&res[i][j], &fp.pow(&x[j], deg - 1));
                            fp.mul(&t, &fp.reduce_i64(deg as i64))
                        })
                        .collect()
                })
                .collect();
            let (_, piv) = linalg::rref(&fp, &jac);
            (piv.len() == d).then_some(piv)
        };
        let accept = |x: &[u64]| {
            let lower = (0..d).all(|i| fp_diag(&fp, &res[i], degrees[i], x) == 0);
            lower && fp_diag(&fp, &res[d], degrees[d], x) != 0 && pivots_at(x).is_some()
        };
        let s = fp_search(p, n, opts, accept);
        let vector = match s.vector {
            Some(x0) => {
                let free = pivots_at(&x0).expect("accepted");
                let polys: Vec<IntPoly> = (0..d).map(|i| diag_poly(n, &rows[i], degrees[i])).collect();
                let xb: Vec<BigInt> = x0.iter().map(|&v| BigInt::from(v)).collect();
                let y = lift_system(&polys, &xb, &free, p, prec)?;
                Some(y.iter().map(|v| self.from_bigint(v)).collect())
            }
            None => None,
        };
        Ok(Search {
            vector,
            exhaustive: false,
            candidates: s.candidates,
        })
    }
}

// ---------------------------------------------------------------------------
// φ_d estimation over F_p

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiRow {
    pub n: usize,
    pub forms_tested: u64,
    pub anisotropic: u64,
    /// Every coefficient class was tested (rather than a sample).
    pub exhaustive_coefficients: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEstimate {
    pub field: FieldDescriptor,
    pub d: u32,
    pub value: usize,
    /// True when every form in `value + 1` variables was shown isotropic by
    /// exhaustive enumeration of coefficient classes.
    pub certified: bool,
    /// Coefficients of an anisotropic form in `value` variables.
    pub witness: Vec<String>,
    pub table: Vec<PhiRow>,
}

fn factorize(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            out.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Least primitive root modulo `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let k = PrimeField::new(p).expect("prime");
    let fs = factorize(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&q| k.pow(&g, ((p - 1) / q) as u32) != 1))
        .expect("primitive roots exist")
}

/// Representatives `g^0, …, g^{e-1}` of `F_p^* / (F_p^*)^d`, `e = gcd(d, p-1)`.
pub fn power_class_representatives(p: u64, d: u32) -> Vec<u64> {
    let e = (d as u64).gcd(&(p - 1));
    let g = primitive_root(p);
    let k = PrimeField::new(p).expect("prime");
    (0..e).map(|i| k.pow(&g, i as u32)).collect()
}

/// Nondecreasing index tuples of length `n` over `0..r`, in lex order.
fn multisets(r: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(r: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(r, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Empirical `φ_d(F_p)`: the largest `n` with an anisotropic diagonal form
/// in `n` variables, scanning `n = 1, 2, …` until every tested form is
/// isotropic.
///
/// Scaling a coefficient by a `d`-th power does not change isotropy, so only
/// multisets of power-class representatives are tested.
pub fn phi_estimate(k: PrimeField, d: u32, n_max: usize, trials: u64, opts: SearchOptions) -> Result<PhiEstimate> {
    check_characteristic(&k, d)?;
    if d == 0 {
        return Err(Error::WrongDegree { expected: 1, found: 0 });
    }
    let p = k.p();
    let reps = power_class_representatives(p, d);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut table = Vec::new();
    let mut witness: Option<Vec<u64>> = None;
    let mut value = 0;
    let mut certified = false;
    for n in 1..=n_max {
        if projective_count(p, n) > opts.budget as u128 {
            return Err(Error::BudgetExceeded {
                needed: projective_count(p, n),
                budget: opts.budget,
            });
        }
        let all = multisets(reps.len(), n);
        let exhaustive_coefficients = all.len() as u64 <= trials;
        let chosen: Vec<Vec<usize>> = if exhaustive_coefficients {
            all
        } else {
            (0..trials)
                .map(|_| {
                    let mut v: Vec<usize> = (0..n).map(|_| rng.gen_range(0..reps.len())).collect();
                    v.sort_unstable();
                    v
                })
                .collect()
        };
        let mut anisotropic = 0u64;
        let mut first: Option<Vec<u64>> = None;
        for idx in &chosen {
            let coeffs: Vec<u64> = idx.iter().map(|&i| reps[i]).collect();
            let s = isotropic_vector(&k, &coeffs, d, opts)?;
            if s.vector.is_none() {
                debug_assert!(s.exhaustive);
                anisotropic += 1;
                first.get_or_insert(coeffs);
            }
        }
        table.push(PhiRow {
            n,
            forms_tested: chosen.len() as u64,
            anisotropic,
            exhaustive_coefficients,
        });
        if anisotropic == 0 {
            certified = exhaustive_coefficients;
            break;
        }
        value = n;
        witness = first;
    }
    Ok(PhiEstimate {
        field: k.descriptor(),
        d,
        value,
        certified,
        witness: witness.unwrap_or_default().iter().map(|c| c.to_string()).collect(),
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> num_rational::BigRational {
        Rationals.from_i64(v)
    }

    #[test]
    fn isotropic_examples() {
        let s = isotropic_vector(&Rationals, &[q(1), q(-1)], 2, SearchOptions::default()).unwrap();
        assert_eq!(s.vector, Some(vec![q(1), q(1)]));
        let f5 = PrimeField::new(5).unwrap();
        let s = isotropic_vector(&f5, &[1, 1], 2, SearchOptions::default()).unwrap();
        assert_eq!(s.vector, Some(vec![1, 2]));
        let f3 = PrimeField::new(3).unwrap();
        let s = isotropic_vector(&f3, &[1, 1], 2, SearchOptions::default()).unwrap();
        assert_eq!(s.vector, None);
        assert!(s.exhaustive);
    }

    #[test]
    fn system_examples_over_rationals() {
        let row = |deg, c: &[i64]| DiagonalRow {
            degree: deg,
            coeffs: c.iter().map(|&v| q(v)).collect(),
        };
        let sys = DiagonalSystem::new(Rationals, 2, vec![row(1, &[1, 1]), row(2, &[1, 1])]).unwrap();
        let x = solve_diagonal_system(&sys, SearchOptions::default()).unwrap().vector.unwrap();
        assert_eq!(x, vec![q(1), q(-1)]);
        let sys = DiagonalSystem::new(
            Rationals,
            3,
            vec![row(1, &[1, 1, 1]), row(2, &[1, 3, -1]), row(3, &[1, 1, 1])],
        )
        .unwrap();
        let x = solve_diagonal_system(&sys, SearchOptions::default()).unwrap().vector.unwrap();
        assert_eq!(x, vec![q(1), q(1), q(-2)]);
    }

    #[test]
    fn odd_cube_system_over_f5() {
        let k = PrimeField::new(5).unwrap();
        let row = |deg, c: Vec<u64>| DiagonalRow { degree: deg, coeffs: c };
        let sys = DiagonalSystem::new(k, 2, vec![row(1, vec![1, 1]), row(3, vec![1, 1])]).unwrap();
        let s = solve_diagonal_system(&sys, SearchOptions::default()).unwrap();
        assert!(s.vector.is_none() && s.exhaustive);
        let sys = DiagonalSystem::new(k, 3, vec![row(1, vec![1, 1, 1]), row(3, vec![1, 1, 1])]).unwrap();
        let x = solve_diagonal_system(&sys, SearchOptions::default()).unwrap().vector.unwrap();
        assert!(sys.is_solution(&x).unwrap());
    }

    #[test]
    fn degenerate_rejected() {
        let k = PrimeField::new(7).unwrap();
        let rows = vec![
            DiagonalRow { degree: 1, coeffs: vec![1, 0] },
            DiagonalRow { degree: 2, coeffs: vec![1, 1] },
        ];
        assert!(matches!(DiagonalSystem::new(k, 2, rows), Err(Error::Degenerate(_))));
    }

    #[test]
    fn phi_small_cases() {
        let f3 = PrimeField::new(3).unwrap();
        let e = phi_estimate(f3, 2, 4, 1000, SearchOptions::default()).unwrap();
        assert_eq!(e.value, 2);
        assert!(e.certified);
        assert_eq!(e.witness, vec!["1", "1"]);
        let f7 = PrimeField::new(7).unwrap();
        let e = phi_estimate(f7, 1, 3, 1000, SearchOptions::default()).unwrap();
        assert_eq!(e.value, 1);
    }

    #[test]
    fn padic_isotropic_and_system() {
        let k = PadicField::new(7, 6).unwrap();
        let c = vec![k.from_i64(1), k.from_i64(-2)];
        let s = isotropic_vector(&k, &c, 2, SearchOptions::default()).unwrap();
        let x = s.vector.unwrap();
        assert!(k.is_zero(&diagonal_value(&k, &c, 2, &x)));

        let rows = vec![
            DiagonalRow { degree: 1, coeffs: vec![k.from_i64(1), k.from_i64(1), k.from_i64(1)] },
            DiagonalRow { degree: 2, coeffs: vec![k.from_i64(1), k.from_i64(3), k.from_i64(-1)] },
            DiagonalRow { degree: 3, coeffs: vec![k.from_i64(1), k.from_i64(1), k.from_i64(1)] },
        ];
        let sys = DiagonalSystem::new(k, 3, rows).unwrap();
        let x = solve_diagonal_system(&sys, SearchOptions::default()).unwrap().vector.unwrap();
        assert!(sys.is_solution(&x).unwrap());
    }

    #[test]
    fn box_order() {
        let v: Vec<Vec<i64>> = BoxShells::new(2).take(5).collect();
        assert_eq!(v, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, -1], vec![0, 2]]);
    }
}
