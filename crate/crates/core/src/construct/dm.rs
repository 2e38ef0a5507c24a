//! Orthogonal configurations `(w_1, w_2, w_3, v_1, …, v_{m-3})`: every
//! lower form vanishes on their span, and `span(w)`, `v_1`, …, `v_{m-3}` are
//! orthogonal for the top form.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{linalg, Field, Form, FormSystem, Subspace};
use crate::diagonal::SearchOptions;
use crate::error::{Error, Result};
use crate::rank::quadratic_matrix;
use crate::taylor::check_orthogonality_families;

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalConfig<F: Field> {
    pub w: [Vec<F::Elem>; 3],
    pub v: Vec<Vec<F::Elem>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalConfigJson {
    pub m: usize,
    pub w: Vec<Vec<String>>,
    pub v: Vec<Vec<String>>,
}

impl<F: Field> OrthogonalConfig<F> {
    /// Total block count `m = 3 + #v`.
    pub fn m(&self) -> usize {
        3 + self.v.len()
    }

    /// `w_1, w_2, w_3, v_1, …` in order.
    pub fn vectors(&self) -> Vec<Vec<F::Elem>> {
        self.w.iter().chain(&self.v).cloned().collect()
    }

    pub fn to_json(&self, k: &F) -> OrthogonalConfigJson {
        let fmt = |v: &Vec<F::Elem>| v.iter().map(|c| k.format_elem(c)).collect();
        OrthogonalConfigJson {
            m: self.m(),
            w: self.w.iter().map(fmt).collect(),
            v: self.v.iter().map(fmt).collect(),
        }
    }
}

/// Exact membership test for a system whose top form is the last form of
/// maximal degree.
pub fn dm_membership<F: Field>(sys: &FormSystem<F>, cand: &OrthogonalConfig<F>) -> Result<bool> {
    let n = sys.num_vars();
    let (f, gs) = sys
        .split_top()
        .ok_or_else(|| Error::Precondition("empty system".into()))?;
    let all = cand.vectors();
    if let Some(v) = all.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    for g in gs {
        if !g.restrict_to_family(&all)?.is_zero() {
            return Ok(false);
        }
    }
    let mut families = vec![cand.w.to_vec()];
    families.extend(cand.v.iter().map(|v| vec![v.clone()]));
    check_orthogonality_families(f, &families)
}

#[cfg(test)]
fn unit<F: Field>(k: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![k.zero(); n];
    v[i] = k.one();
    v
}

/// Connected components of the graph joining variables that share a
/// monomial of `f`, ordered by smallest index.
fn interaction_components<F: Field>(f: &Form<F>) -> Vec<Vec<usize>> {
    let n = f.num_vars();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (m, _) in f.terms() {
        let mut s = m.support();
        if let Some(a) = s.next() {
            for b in s {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if index[r] == usize::MAX {
            index[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[index[r]].push(i);
    }
    comps
}

/// Coefficient rows of the linear lower forms; `None` if some lower form is
/// not linear.
fn linear_rows<F: Field>(gs: &[&Form<F>]) -> Option<Vec<Vec<F::Elem>>> {
    let mut rows = Vec::new();
    for g in gs {
        if g.degree() != 1 {
            return None;
        }
        let n = g.num_vars();
        rows.push((0..n).map(|i| g.coeff(&unit_exps(n, i))).collect());
    }
    Some(rows)
}

fn unit_exps(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Basis of `{x supported on coords : rows · x = 0}` as ambient vectors.
fn kernel_on<F: Field>(k: &F, rows: &[Vec<F::Elem>], coords: &[usize], n: usize) -> Vec<Vec<F::Elem>> {
    let sub: Vec<Vec<F::Elem>> = rows.iter().map(|r| coords.iter().map(|&i| r[i].clone()).collect()).collect();
    linalg::kernel(k, &sub, coords.len())
        .into_iter()
        .map(|kv| {
            let mut v = vec![k.zero(); n];
            for (j, &i) in coords.iter().enumerate() {
                v[i] = kv[j].clone();
            }
            v
        })
        .collect()
}

/// A vector in the span of `basis` with `f ≠ 0`: basis vectors first, then
/// a few pairwise sums and seeded random combinations.
fn nonzero_in_span<F: Field>(f: &Form<F>, basis: &[Vec<F::Elem>], rng: &mut ChaCha8Rng, tries: u64) -> Result<Option<Vec<F::Elem>>> {
    let k = f.field();
    for b in basis {
        if !k.is_zero(&f.evaluate(b)?) {
            return Ok(Some(b.clone()));
        }
    }
    if basis.is_empty() {
        return Ok(None);
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let v: Vec<F::Elem> = basis[i].iter().zip(&basis[j]).map(|(a, b)| k.add(a, b)).collect();
            if !k.is_zero(&f.evaluate(&v)?) {
                return Ok(Some(v));
            }
        }
    }
    for t in 0..tries {
        let c: Vec<F::Elem> = basis.iter().map(|_| k.random_elem(rng, 2 + t / 16)).collect();
        let v = combine(k, basis, &c);
        if v.iter().any(|x| !k.is_zero(x)) && !k.is_zero(&f.evaluate(&v)?) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn combine<F: Field>(k: &F, basis: &[Vec<F::Elem>], c: &[F::Elem]) -> Vec<F::Elem> {
    let n = basis.first().map_or(0, Vec::len);
    let mut v = vec![k.zero(); n];
    for (b, ci) in basis.iter().zip(c) {
        for (x, bi) in v.iter_mut().zip(b) {
            *x = k.add(x, &k.mul(ci, bi));
        }
    }
    v
}

fn accept<F: Field>(sys: &FormSystem<F>, cand: &OrthogonalConfig<F>) -> Result<bool> {
    let k = sys.field();
    let (f, _) = sys.split_top().expect("nonempty");
    if Subspace::new(k.clone(), sys.num_vars(), cand.vectors()).is_err() {
        return Ok(false);
    }
    for v in &cand.v {
        if k.is_zero(&f.evaluate(v)?) {
            return Ok(false);
        }
    }
    dm_membership(sys, cand)
}

/// Blocks of whole interaction components, filled greedily: the first block
/// needs three independent admissible vectors, each later block one
/// admissible vector with `f ≠ 0`. Admissible means in the kernel of the
/// linear lower forms (all vectors when `rows` is empty).
fn block_rung<F: Field>(
    sys: &FormSystem<F>,
    m: usize,
    rows: &[Vec<F::Elem>],
    rng: &mut ChaCha8Rng,
) -> Result<Option<OrthogonalConfig<F>>> {
    let k = sys.field();
    let n = sys.num_vars();
    let (f, _) = sys.split_top().expect("nonempty");
    let comps = interaction_components(f);
    let mut coords: Vec<usize> = Vec::new();
    let mut w: Option<[Vec<F::Elem>; 3]> = None;
    let mut v: Vec<Vec<F::Elem>> = Vec::new();
    for comp in comps {
        if v.len() == m - 3 {
            break;
        }
        coords.extend(comp);
        let ker = kernel_on(k, rows, &coords, n);
        if w.is_none() {
            if ker.len() >= 3 {
                w = Some([ker[0].clone(), ker[1].clone(), ker[2].clone()]);
                coords.clear();
            }
            continue;
        }
        if let Some(x) = nonzero_in_span(f, &ker, rng, 8)? {
            v.push(x);
            coords.clear();
        }
    }
    let Some(w) = w else {
        return Ok(None);
    };
    if v.len() < m - 3 {
        return Ok(None);
    }
    let cand = OrthogonalConfig { w, v };
    Ok(accept(sys, &cand)?.then_some(cand))
}

/// For a quadratic top form with bilinear form `B`: choose `v_1, v_2, …` in
/// the admissible space one at a time, each `B`-orthogonal to the previous
/// ones and with `f(v_i) ≠ 0`, then `w` in what remains. With `randomize`
/// the choices are seeded random combinations instead of basis vectors.
fn quadratic_rung<F: Field>(
    sys: &FormSystem<F>,
    m: usize,
    rows: &[Vec<F::Elem>],
    rng: &mut ChaCha8Rng,
    randomize: bool,
) -> Result<Option<OrthogonalConfig<F>>> {
    let k = sys.field();
    let n = sys.num_vars();
    let (f, _) = sys.split_top().expect("nonempty");
    if f.degree() != 2 {
        return Ok(None);
    }
    let b = quadratic_matrix(f)?;
    let mut constraints: Vec<Vec<F::Elem>> = rows.to_vec();
    let mut v = Vec::new();
    for _ in 0..m - 3 {
        let space = linalg::kernel(k, &constraints, n);
        let pick = if randomize {
            let mut found = None;
            for t in 0..16 {
                let c: Vec<F::Elem> = space.iter().map(|_| k.random_elem(rng, 2 + t)).collect();
                let x = combine(k, &space, &c);
                if x.iter().any(|e| !k.is_zero(e)) && !k.is_zero(&f.evaluate(&x)?) {
                    found = Some(x);
                    break;
                }
            }
            found
        } else {
            nonzero_in_span(f, &space, rng, 0)?
        };
        let Some(x) = pick else {
            return Ok(None);
        };
        // The functional y ↦ B(x, y).
        let row: Vec<F::Elem> = (0..n)
            .map(|j| (0..n).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&x[i], &b[i][j]))))
            .collect();
        constraints.push(row);
        v.push(x);
    }
    let space = linalg::kernel(k, &constraints, n);
    if space.len() < 3 {
        return Ok(None);
    }
    let w = if randomize {
        let mut pick = || {
            let c: Vec<F::Elem> = space.iter().map(|_| k.random_elem(rng, 3)).collect();
            combine(k, &space, &c)
        };
        [pick(), pick(), pick()]
    } else {
        [space[0].clone(), space[1].clone(), space[2].clone()]
    };
    let cand = OrthogonalConfig { w, v };
    Ok(accept(sys, &cand)?.then_some(cand))
}

/// Searches for a configuration passing [`dm_membership`] with independent
/// vectors and `f(v_i) ≠ 0`.
///
/// Strategies in order: whole interaction components as blocks, the same
/// blocks cut down to the kernel of the linear lower forms, sequential
/// orthogonalization for quadratic top forms, then seeded random variants of
/// the latter until the budget is spent.
pub fn dm_search<F: Field>(sys: &FormSystem<F>, m: usize, opts: SearchOptions) -> Result<OrthogonalConfig<F>> {
    if m < 3 {
        return Err(Error::Precondition("m must be at least 3".into()));
    }
    let (_, gs) = sys
        .split_top()
        .ok_or_else(|| Error::Precondition("empty system".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    if opts.budget == 0 {
        return Err(Error::not_found("dm_search"));
    }
    if gs.is_empty() {
        if let Some(c) = block_rung(sys, m, &[], &mut rng)? {
            return Ok(c);
        }
    }
    let Some(rows) = linear_rows(&gs) else {
        // Lower forms of higher degree: only the plain block rung applies,
        // and only if they happen to vanish there.
        if let Some(c) = block_rung(sys, m, &[], &mut rng)? {
            return Ok(c);
        }
        return Err(Error::not_found("dm_search"));
    };
    if let Some(c) = block_rung(sys, m, &rows, &mut rng)? {
        return Ok(c);
    }
    if opts.budget < 2 {
        return Err(Error::not_found("dm_search"));
    }
    if let Some(c) = quadratic_rung(sys, m, &rows, &mut rng, false)? {
        return Ok(c);
    }
    for _ in 2..opts.budget.min(64) {
        if let Some(c) = quadratic_rung(sys, m, &rows, &mut rng, true)? {
            return Ok(c);
        }
    }
    Err(Error::not_found("dm_search"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;

    fn sys(forms: &[&str], n: usize) -> FormSystem<Rationals> {
        let fs = forms.iter().map(|s| Form::parse_with_vars(s, Rationals, n).unwrap()).collect();
        FormSystem::new(Rationals, n, fs).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<num_rational::BigRational> {
        unit(&Rationals, n, i)
    }

    #[test]
    fn membership_examples() {
        let s = sys(&["x1^2 + x2^2 + x3^2 + x4^2 + x5^2"], 5);
        let c = OrthogonalConfig {
            w: [e(5, 0), e(5, 1), e(5, 2)],
            v: vec![e(5, 3), e(5, 4)],
        };
        assert!(dm_membership(&s, &c).unwrap());

        let s = sys(&["x1 x2 + x3^2 + x4^2 + x5^2"], 5);
        let c = OrthogonalConfig {
            w: [e(5, 2), e(5, 3), e(5, 4)],
            v: vec![e(5, 0), e(5, 1)],
        };
        assert!(!dm_membership(&s, &c).unwrap());

        let s = sys(&["x1 + x2", "x1^2 + x3^2"], 3);
        let k = Rationals;
        let c = OrthogonalConfig {
            w: [vec![k.one(), k.from_i64(-1), k.zero()], e(3, 2), vec![k.from_i64(2), k.from_i64(-2), k.one()]],
            v: vec![],
        };
        assert!(dm_membership(&s, &c).unwrap());
    }

    #[test]
    fn search_examples() {
        let s = sys(&["x1^2 + 2 x2^2 + 3 x3^2 + 4 x4^2 + 5 x5^2 + 6 x6^2 + 7 x7^2 + 8 x8^2"], 8);
        let c = dm_search(&s, 4, SearchOptions::default()).unwrap();
        assert!(dm_membership(&s, &c).unwrap());

        let s = sys(
            &[
                "x1 + x2 + x3 + x4 + x5 + x6 + x7 + x8",
                "x1^2 + 2 x2^2 + 3 x3^2 + 4 x4^2 + 5 x5^2 + 6 x6^2 + 7 x7^2 + 8 x8^2",
            ],
            8,
        );
        let c = dm_search(&s, 4, SearchOptions::default()).unwrap();
        assert!(dm_membership(&s, &c).unwrap());

        let s = sys(&["x1^2 + x2^2"], 2);
        assert!(matches!(dm_search(&s, 4, SearchOptions::default()), Err(Error::NotFound { .. })));
    }

    #[test]
    fn quadratic_rung_handles_cross_terms() {
        let s = sys(&["x1 + x6", "x1 x2 + x2 x3 + x3^2 + x4 x5 + x5^2 + x6^2 + x7^2"], 7);
        let c = dm_search(&s, 5, SearchOptions::default()).unwrap();
        assert!(dm_membership(&s, &c).unwrap());
    }
}
