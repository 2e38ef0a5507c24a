//! Taylor expansion of forms into multi-homogeneous components.
//!
//! For a form `f` of degree `d` in `n` variables and a block count `m`,
//! `f(x_1 + … + x_m) = Σ_{|e| = d} f^e(x_1, …, x_m)` where `f^e` has degree
//! `e_j` in the block `x_j`. Block `j` (1-based) occupies variables
//! `(j-1)n + 1 ..= jn` of the expanded ring.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::form::check_characteristic;
use crate::algebra::{Field, Form, FormJson, FormSystem, Subspace};
use crate::error::{Error, Result};

/// Exponent vector over blocks.
pub type MultiIndex = Vec<u32>;

/// Every `e ∈ N^m` with `|e| = total`, in lexicographically decreasing order.
pub fn multi_indices(m: usize, total: u32) -> Vec<MultiIndex> {
    fn rec(m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if cur.len() + 1 == m {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(m, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(m, total, &mut Vec::with_capacity(m), &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of components of degree `i` in `m` blocks, `C(m + i - 1, i)`.
pub fn component_count(m: u64, i: u64) -> BigUint {
    if m == 0 {
        return BigUint::from((i == 0) as u32);
    }
    binomial(m + i - 1, i)
}

/// `(Σ e)! / Π e_j!`.
pub fn multinomial(e: &[u32]) -> BigUint {
    let mut total = 0u64;
    let mut acc = BigUint::one();
    for &x in e {
        total += x as u64;
        acc *= binomial(total, x as u64);
    }
    acc
}

/// Block multi-degree of an exponent vector on `m` blocks of size `n`.
fn block_degree(exps: &[u32], n: usize) -> MultiIndex {
    exps.chunks(n.max(1)).map(|c| c.iter().sum()).collect()
}

/// All Taylor components of every form in a system.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorExpansion<F: Field> {
    m: usize,
    n: usize,
    components: BTreeMap<(usize, MultiIndex), Form<F>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub form: usize,
    pub e: MultiIndex,
    pub component: FormJson,
}

impl<F: Field> TaylorExpansion<F> {
    pub fn blocks(&self) -> usize {
        self.m
    }

    pub fn block_size(&self) -> usize {
        self.n
    }

    pub fn component(&self, form: usize, e: &[u32]) -> Option<&Form<F>> {
        self.components.get(&(form, e.to_vec()))
    }

    pub fn components(&self) -> impl Iterator<Item = (&(usize, MultiIndex), &Form<F>)> {
        self.components.iter()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Components as forms of one system on `m·n` variables.
    pub fn to_system(&self) -> Result<FormSystem<F>> {
        let forms: Vec<Form<F>> = self.components.values().cloned().collect();
        let field = forms
            .first()
            .map(|f| f.field().clone())
            .ok_or_else(|| Error::Precondition("empty expansion".into()))?;
        FormSystem::new(field, self.m * self.n, forms)
    }

    pub fn to_json(&self) -> Vec<ComponentJson> {
        self.components
            .iter()
            .map(|((i, e), f)| ComponentJson {
                form: *i,
                e: e.clone(),
                component: f.to_json(),
            })
            .collect()
    }
}

/// Expands one form on `m` blocks.
pub fn expand_form<F: Field>(f: &Form<F>, m: usize) -> Result<BTreeMap<MultiIndex, Form<F>>> {
    if m == 0 {
        return Err(Error::Precondition("block count must be at least 1".into()));
    }
    check_characteristic(f.field(), f.degree())?;
    let n = f.num_vars();
    let k = f.field();
    let images: Vec<Form<F>> = (0..n)
        .map(|i| {
            let mut c = vec![k.zero(); m * n];
            for j in 0..m {
                c[j * n + i] = k.one();
            }
            Form::linear(k.clone(), &c)
        })
        .collect();
    let total = if n == 0 {
        Form::zero(k.clone(), 0, f.degree())
    } else {
        f.substitute(&images)?
    };
    let mut parts: BTreeMap<MultiIndex, Vec<(Vec<u32>, F::Elem)>> = multi_indices(m, f.degree())
        .into_iter()
        .map(|e| (e, Vec::new()))
        .collect();
    for (mono, c) in total.terms() {
        let e = block_degree(mono.exps(), n);
        parts
            .get_mut(&e)
            .expect("every block degree sums to the form degree")
            .push((mono.exps().to_vec(), c.clone()));
    }
    parts
        .into_iter()
        .map(|(e, terms)| Ok((e, Form::new(k.clone(), m * n, f.degree(), terms)?)))
        .collect()
}

/// Taylor expansion of every form of `sys` on `m` blocks.
pub fn taylor_expand<F: Field>(sys: &FormSystem<F>, m: usize) -> Result<TaylorExpansion<F>> {
    let mut components = BTreeMap::new();
    for (i, f) in sys.forms().iter().enumerate() {
        for (e, g) in expand_form(f, m)? {
            components.insert((i, e), g);
        }
    }
    Ok(TaylorExpansion {
        m,
        n: sys.num_vars(),
        components,
    })
}

/// The multilinear component `f^{(1,…,1)}` on `d` blocks.
pub fn polarize<F: Field>(f: &Form<F>) -> Result<Form<F>> {
    let d = f.degree() as usize;
    if d == 0 {
        return Ok(f.clone());
    }
    let mut parts = expand_form(f, d)?;
    Ok(parts.remove(&vec![1; d]).expect("multilinear index present"))
}

/// Values `f^e(x_1, …, x_m)` at a family of points, keyed by `e`.
///
/// Only the nonzero values are returned; this reads the coefficients of
/// `f(t_1 x_1 + … + t_m x_m)`.
pub fn component_values<F: Field>(
    f: &Form<F>,
    points: &[Vec<F::Elem>],
) -> Result<BTreeMap<MultiIndex, F::Elem>> {
    let g = f.restrict_to_family(points)?;
    Ok(g.terms().map(|(mono, c)| (mono.exps().to_vec(), c.clone())).collect())
}

/// Whether `f` is additive across the spans of the given families: every
/// mixed Taylor component vanishes on their product.
pub fn check_orthogonality_families<F: Field>(
    f: &Form<F>,
    families: &[Vec<Vec<F::Elem>>],
) -> Result<bool> {
    let sizes: Vec<usize> = families.iter().map(Vec::len).collect();
    let all: Vec<Vec<F::Elem>> = families.iter().flatten().cloned().collect();
    let g = f.restrict_to_family(&all)?;
    let mut owner = Vec::with_capacity(all.len());
    for (b, &s) in sizes.iter().enumerate() {
        owner.extend(std::iter::repeat(b).take(s));
    }
    let additive = g.terms().all(|(mono, _)| {
        let mut blocks = mono.support().map(|i| owner[i]);
        let first = blocks.next();
        blocks.all(|b| Some(b) == first)
    });
    Ok(additive)
}

/// Whether the subspaces are `f`-orthogonal.
pub fn check_orthogonality<F: Field>(f: &Form<F>, spaces: &[Subspace<F>]) -> Result<bool> {
    for s in spaces {
        if s.ambient_dim() != f.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: f.num_vars(),
                found: s.ambient_dim(),
            });
        }
    }
    let families: Vec<Vec<Vec<F::Elem>>> = spaces.iter().map(|s| s.basis().to_vec()).collect();
    check_orthogonality_families(f, &families)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    fn q(s: &str, n: usize) -> Form<Rationals> {
        Form::parse_with_vars(s, Rationals, n).unwrap()
    }

    #[test]
    fn cube_on_two_blocks() {
        let parts = expand_form(&q("x1^3", 1), 2).unwrap();
        assert_eq!(parts.len(), 4);
        assert_eq!(parts[&vec![2, 1]], q("3 x1^2 x2", 2));
    }

    #[test]
    fn bilinear_part_of_product() {
        let parts = expand_form(&q("x1 x2", 2), 2).unwrap();
        assert_eq!(parts[&vec![1, 1]], q("x1 x4 + x2 x3", 4));
        assert_eq!(parts[&vec![2, 0]], q("x1 x2", 4));
    }

    #[test]
    fn single_block_is_identity() {
        let f = q("x1^2 x2 - 5 x3^3", 3);
        let parts = expand_form(&f, 1).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&vec![3]], f);
    }

    #[test]
    fn counts() {
        assert_eq!(component_count(3, 2), BigUint::from(6u32));
        assert_eq!(component_count(7, 0), BigUint::from(1u32));
        assert_eq!(component_count(2, 5), BigUint::from(6u32));
        assert_eq!(multi_indices(2, 5).len(), 6);
        assert_eq!(multinomial(&[2, 1, 1]), BigUint::from(12u32));
    }

    #[test]
    fn polarizations() {
        assert_eq!(polarize(&q("x1^2", 1)).unwrap(), q("2 x1 x2", 2));
        assert_eq!(polarize(&q("x1^3", 1)).unwrap(), q("6 x1 x2 x3", 3));
        assert_eq!(polarize(&q("x1 x2", 2)).unwrap(), q("x1 x4 + x2 x3", 4));
    }

    #[test]
    fn orthogonality_examples() {
        let k = Rationals;
        let e1 = Subspace::coordinate(k, 2, &[0]).unwrap();
        let e2 = Subspace::coordinate(k, 2, &[1]).unwrap();
        let both = [e1.clone(), e2.clone()];
        assert!(check_orthogonality(&q("x1^2 + x2^2", 2), &both).unwrap());
        assert!(!check_orthogonality(&q("x1 x2", 2), &both).unwrap());
        assert!(check_orthogonality(&q("x1 x2", 2), &[Subspace::whole(k, 2)]).unwrap());
    }

    #[test]
    fn characteristic_guard() {
        let k = PrimeField::new(5).unwrap();
        let f = Form::parse("x1^3 + x2^3", k).unwrap();
        assert!(expand_form(&f, 3).is_ok());
        assert!(Form::parse("x1^5", k).is_err());
    }
}
