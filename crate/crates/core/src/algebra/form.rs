//! Sparse homogeneous polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::field::Field;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous polynomial of fixed degree in `num_vars` variables.
///
/// Terms are kept in canonical graded-lex order with no zero coefficients.
/// The zero form is an empty term map that still carries its degree.
#[derive(Clone, Debug)]
pub struct Form<F: Field> {
    field: F,
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Form<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.num_vars == other.num_vars
            && self.degree == other.degree
            && self.terms == other.terms
    }
}

impl<F: Field> Form<F> {
    /// Builds a form, merging repeated exponent vectors.
    ///
    /// Rejects inhomogeneous terms and fields whose characteristic does not
    /// exceed the degree.
    pub fn new(
        field: F,
        num_vars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, F::Elem)>,
    ) -> Result<Self> {
        check_characteristic(&field, degree)?;
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: exps.len(),
                });
            }
            let m = Monomial(exps);
            let found = m.degree();
            if found != degree {
                return Err(Error::Inhomogeneous {
                    expected: degree,
                    found,
                });
            }
            accumulate(&field, &mut map, m, c);
        }
        Ok(Form {
            field,
            num_vars,
            degree,
            terms: map,
        })
    }

    pub fn zero(field: F, num_vars: usize, degree: u32) -> Self {
        Form {
            field,
            num_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The degree-zero form with value `c`.
    pub fn constant(field: F, num_vars: usize, c: F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(Monomial::one(num_vars), c);
        }
        Form {
            field,
            num_vars,
            degree: 0,
            terms,
        }
    }

    /// `Σ c_i x_i`.
    pub fn linear(field: F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        let terms = coeffs.iter().enumerate().filter_map(|(i, c)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (!field.is_zero(c)).then(|| (Monomial(e), c.clone()))
        });
        let terms = terms.collect();
        Form {
            field,
            num_vars: n,
            degree: 1,
            terms,
        }
    }

    /// `Σ c_i x_i^d`.
    pub fn diagonal(field: F, coeffs: &[F::Elem], degree: u32) -> Result<Self> {
        let n = coeffs.len();
        let terms = coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; n];
            e[i] = degree;
            (e, c.clone())
        });
        Form::new(field, n, degree, terms)
    }

    /// Internal constructor for terms already known to be homogeneous.
    pub(crate) fn from_map(
        field: F,
        num_vars: usize,
        degree: u32,
        terms: BTreeMap<Monomial, F::Elem>,
    ) -> Self {
        debug_assert!(terms
            .iter()
            .all(|(m, c)| m.degree() == degree && m.len() == num_vars && !field.is_zero(c)));
        Form {
            field,
            num_vars,
            degree,
            terms,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> F::Elem {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn evaluate(&self, x: &[F::Elem]) -> Result<F::Elem> {
        if x.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: x.len(),
            });
        }
        let k = &self.field;
        let mut powers: HashMap<(usize, u32), F::Elem> = HashMap::new();
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers.entry((i, e)).or_insert_with(|| k.pow(&x[i], e));
                t = k.mul(&t, pw);
            }
            acc = k.add(&acc, &t);
        }
        Ok(acc)
    }

    /// `∂f/∂x_i`.
    pub fn partial(&self, i: usize) -> Form<F> {
        let k = &self.field;
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            let c = k.mul(c, &k.from_i64(e as i64));
            accumulate(k, &mut out, Monomial(exps), c);
        }
        Form::from_map(
            self.field.clone(),
            self.num_vars,
            self.degree.saturating_sub(1),
            out,
        )
    }

    pub fn gradient(&self) -> Vec<Form<F>> {
        (0..self.num_vars).map(|i| self.partial(i)).collect()
    }

    fn check_compatible(&self, other: &Form<F>) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field.descriptor(),
                other.field.descriptor()
            )));
        }
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form<F>) -> Result<Form<F>> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !(self.is_zero() || other.is_zero()) {
            return Err(Error::WrongDegree {
                expected: self.degree,
                found: other.degree,
            });
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&self.field, &mut out, m.clone(), c.clone());
        }
        Ok(Form::from_map(self.field.clone(), self.num_vars, self.degree, out))
    }

    pub fn sub(&self, other: &Form<F>) -> Result<Form<F>> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form<F> {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, c: &F::Elem) -> Form<F> {
        let k = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), k.mul(a, c)))
            .filter(|(_, a)| !k.is_zero(a))
            .collect();
        Form::from_map(self.field.clone(), self.num_vars, self.degree, terms)
    }

    pub fn mul(&self, other: &Form<F>) -> Result<Form<F>> {
        self.check_compatible(other)?;
        let k = &self.field;
        let mut out = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(k, &mut out, ma.mul(mb), k.mul(ca, cb));
            }
        }
        Ok(Form::from_map(
            self.field.clone(),
            self.num_vars,
            self.degree + other.degree,
            out,
        ))
    }

    pub fn pow(&self, e: u32) -> Form<F> {
        let mut acc = Form::constant(self.field.clone(), self.num_vars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Substitutes `x_i ↦ images[i]`; every image must have the same degree
    /// and the same number of variables.
    pub fn substitute(&self, images: &[Form<F>]) -> Result<Form<F>> {
        if images.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: images.len(),
            });
        }
        let (k_vars, img_deg) = match images.first() {
            Some(g) => (g.num_vars, g.degree),
            None => (0, 1),
        };
        for g in images {
            if g.num_vars != k_vars {
                return Err(Error::DimensionMismatch {
                    expected: k_vars,
                    found: g.num_vars,
                });
            }
            if g.degree != img_deg && !g.is_zero() {
                return Err(Error::WrongDegree {
                    expected: img_deg,
                    found: g.degree,
                });
            }
        }
        let k = &self.field;
        let mut powers: HashMap<(usize, u32), Form<F>> = HashMap::new();
        let mut out: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut prod = Form::constant(k.clone(), k_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e));
                prod = prod.mul(pw)?;
                if prod.is_zero() {
                    break;
                }
            }
            for (mm, cc) in prod.terms {
                accumulate(k, &mut out, mm, cc);
            }
        }
        Ok(Form::from_map(
            self.field.clone(),
            k_vars,
            self.degree * img_deg,
            out,
        ))
    }

    /// `f(y_1 v_1 + … + y_k v_k)` for an arbitrary family of vectors, as a
    /// form in `k` variables. The coefficients are the Taylor components of
    /// `f` evaluated at the family.
    pub fn restrict_to_family(&self, vectors: &[Vec<F::Elem>]) -> Result<Form<F>> {
        for v in vectors {
            if v.len() != self.num_vars {
                return Err(Error::DimensionMismatch {
                    expected: self.num_vars,
                    found: v.len(),
                });
            }
        }
        let k = vectors.len();
        let images: Vec<Form<F>> = (0..self.num_vars)
            .map(|i| {
                let coeffs: Vec<F::Elem> = vectors.iter().map(|v| v[i].clone()).collect();
                Form::linear(self.field.clone(), &coeffs)
            })
            .collect();
        if self.num_vars == 0 {
            return Ok(Form::zero(self.field.clone(), k, self.degree));
        }
        self.substitute(&images)
    }

    /// Restriction to a subspace in the coordinates of its basis.
    pub fn restrict(&self, l: &Subspace<F>) -> Result<Form<F>> {
        if l.ambient_dim() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: l.ambient_dim(),
            });
        }
        self.restrict_to_family(l.basis())
    }

    /// Moves variable `i` to position `map[i]` of an `n`-variable ring.
    pub fn relabel(&self, n: usize, map: &[usize]) -> Result<Form<F>> {
        if map.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad + 1,
            });
        }
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; n];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            accumulate(&self.field, &mut out, Monomial(e), c.clone());
        }
        Ok(Form::from_map(self.field.clone(), n, self.degree, out))
    }

    /// Coefficients `a_i` if the form is `Σ a_i x_i^d`.
    pub fn diagonal_coefficients(&self) -> Option<Vec<F::Elem>> {
        let mut out = vec![self.field.zero(); self.num_vars];
        for (m, c) in &self.terms {
            let mut support = m.support();
            let i = support.next()?;
            if support.next().is_some() {
                return None;
            }
            out[i] = c.clone();
        }
        if self.degree == 0 && !self.is_zero() {
            return None;
        }
        Some(out)
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal_coefficients().is_some()
    }

    /// Re-checks the characteristic assumption for this form's degree.
    pub fn check_characteristic(&self) -> Result<()> {
        check_characteristic(&self.field, self.degree)
    }
}

/// `char K = 0` or `char K > degree`.
pub(crate) fn check_characteristic<F: Field>(field: &F, degree: u32) -> Result<()> {
    let c = field.characteristic();
    if c != 0 && c <= degree as u64 {
        return Err(Error::CharacteristicTooSmall {
            characteristic: c,
            degree,
        });
    }
    Ok(())
}

pub(crate) fn accumulate<F: Field>(
    k: &F,
    map: &mut BTreeMap<Monomial, F::Elem>,
    m: Monomial,
    c: F::Elem,
) {
    if k.is_zero(&c) {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = k.add(o.get(), &c);
            if k.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<F: Field> fmt::Display for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = self.field.format_elem(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.degree() == 0 {
                factors.push(mag);
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn parse(s: &str) -> Form<Rationals> {
        Form::parse(s, Rationals).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let f = parse("x1^2 + 3 x2^2 - x3^2");
        assert_eq!(f.evaluate(&[q(1), q(1), q(-2)]).unwrap(), q(0));
        let g = parse("x1^3 + x2^3 + x3^3");
        assert_eq!(g.evaluate(&[q(1), q(1), q(-2)]).unwrap(), q(-6));
        assert_eq!(g.evaluate(&[q(0), q(0), q(0)]).unwrap(), q(0));
        assert!(matches!(
            g.evaluate(&[q(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gradient_examples() {
        let g = parse("x1^2 + x2^2").gradient();
        assert_eq!(g[0], parse("2 x1").relabel(2, &[0]).unwrap());
        assert_eq!(g[1], Form::parse_with_vars("2 x2", Rationals, 2).unwrap());
        let h = parse("x1 x2").gradient();
        assert_eq!(h[0], Form::parse_with_vars("x2", Rationals, 2).unwrap());
        assert_eq!(h[1], Form::parse_with_vars("x1", Rationals, 2).unwrap());
        let d = Form::parse_with_vars("5 x1^4", Rationals, 3).unwrap().gradient();
        assert_eq!(d[0], Form::parse_with_vars("20 x1^3", Rationals, 3).unwrap());
        assert!(d[1].is_zero() && d[2].is_zero());
        assert_eq!(d[1].degree(), 3);
    }

    #[test]
    fn restriction_examples() {
        let f = parse("x1^2 - x2^2");
        let l = Subspace::new(Rationals, 2, vec![vec![q(1), q(1)]]).unwrap();
        assert!(f.restrict(&l).unwrap().is_zero());

        let f = parse("x1^2 + x2^2");
        let l = Subspace::new(Rationals, 2, vec![vec![q(1), q(0)]]).unwrap();
        assert_eq!(f.restrict(&l).unwrap(), parse("x1^2"));

        let f = parse("x1 x2 + x3^2");
        let l = Subspace::coordinate(Rationals, 3, &[0, 1]).unwrap();
        assert_eq!(f.restrict(&l).unwrap(), parse("x1 x2"));
    }

    #[test]
    fn characteristic_guard() {
        let k = PrimeField::new(3).unwrap();
        assert!(matches!(
            Form::parse("x1^3", k),
            Err(Error::CharacteristicTooSmall { .. })
        ));
        assert!(Form::parse("x1^2", k).is_ok());
    }

    #[test]
    fn inhomogeneous_rejected() {
        assert!(matches!(
            Form::parse("x1 + x1^2", Rationals),
            Err(Error::Inhomogeneous { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        let f = parse("x1^2 + 3 x2^2 - 1/2 x3^2 - x1 x3");
        let g = Form::parse_with_vars(&f.to_string(), Rationals, 3).unwrap();
        assert_eq!(f, g);
        assert_eq!(parse("x1 - x2").to_string(), "x1 - x2");
    }

    #[test]
    fn cancellation_drops_terms() {
        let f = parse("x1^2 + x2^2");
        let g = parse("x1^2 - x2^2");
        let s = f.add(&g.neg()).unwrap();
        assert_eq!(s, parse("2 x2^2").relabel(2, &[0, 1]).unwrap());
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn diagonal_detection() {
        assert!(parse("x1^3 - 2 x2^3").is_diagonal());
        assert!(!parse("x1 x2").is_diagonal());
        assert!(Form::zero(Rationals, 3, 2).is_diagonal());
    }
}
