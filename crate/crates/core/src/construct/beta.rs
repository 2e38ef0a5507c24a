//! The seven-dimensional subspace built from a non-degenerate diagonal
//! system: `f_1, …, f_{d-1}` vanish on it and `f_d` restricted to it is good.
//!
//! Coordinates are split as follows (with `n_k` the even sequence from the
//! bounds module and `φ = φ_d`):
//! * the last `3 n_{d-1}` coordinates form three blocks, each giving `w^{(j)}`
//!   with `f_1 = … = f_{d-1} = 0` and `f_{d+1} ≠ 0`;
//! * the first `(φ+1) n_{d-1} n_{d-2} / 2 + 2 n_{d-1}` coordinates form blocks
//!   of size `n_{d-1}`, each giving `u^{(j)}` with `f_1 = … = f_{d-1} = 0` and
//!   `f_d ≠ 0`.
//!
//! The first `m'' = (φ+1) n_{d-2} / 2` of the `u`'s carry the diagonal form
//! `g(x) = f_d(Σ x_i u^{(i)})`, on which `x` and `y` are solved blockwise.

use serde::{Deserialize, Serialize};

use super::assemble::{combine, finish, solve_x_y, BlockPlan, GoodSubspace};
use crate::algebra::{Field, FieldDescriptor, Form, PrimeField};
use crate::bounds::n_sequence;
use crate::diagonal::{solve_diagonal_system, DiagonalSearch, DiagonalSystem, SearchOptions};
use crate::error::{Error, Result};
use crate::rank::{dimension_estimate, DEFAULT_POINT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaOptions {
    /// `φ_2, …, φ_d`.
    pub phis: Vec<u64>,
    pub search: SearchOptions,
    /// Point budget for the complete-intersection check over `F_p`.
    pub point_budget: u64,
}

impl BetaOptions {
    pub fn new(phis: Vec<u64>, search: SearchOptions) -> Self {
        BetaOptions {
            phis,
            search,
            point_budget: DEFAULT_POINT_BUDGET,
        }
    }
}

/// Sizes used by the construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaTrace {
    pub d: usize,
    pub n: usize,
    pub n_d: String,
    pub n_d_minus_1: usize,
    pub n_d_minus_2: usize,
    pub phi_d: u64,
    /// Coordinates used by the `u` blocks.
    pub m_prime: usize,
    /// Number of `u` vectors carrying `g`.
    pub m_double_prime: usize,
    pub x_plan: BlockPlan,
    /// Coefficients `f_d(u^{(i)})` of `g`.
    pub g_coefficients: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaSubspace<F: Field> {
    pub good: GoodSubspace<F>,
    pub trace: BetaTrace,
}

fn to_usize(v: &num_bigint::BigUint, what: &str) -> Result<usize> {
    v.try_into()
        .map_err(|_| Error::Precondition(format!("{what} is too large for a desk-scale construction")))
}

/// Solves the system made of `f_1, …, f_{d-1}` and `top` on a block of
/// coordinates and embeds the solution.
fn block_solution<F: DiagonalSearch>(
    sys: &DiagonalSystem<F>,
    top: usize,
    block: std::ops::Range<usize>,
    opts: SearchOptions,
    stage: String,
) -> Result<Vec<F::Elem>> {
    let k = sys.field();
    let d = sys.d();
    let idx: Vec<usize> = block.collect();
    let local = sys.restrict_coordinates(&idx)?;
    let sub = local.with_top(d - 1, &local.rows()[top].clone())?;
    let s = solve_diagonal_system(&sub, opts)?;
    let v = s.vector.ok_or_else(|| Error::not_found(stage))?;
    let mut out = vec![k.zero(); sys.num_vars()];
    for (i, val) in idx.into_iter().zip(v) {
        out[i] = val;
    }
    Ok(out)
}

/// Converts a form to one over `F_p` through its JSON representation.
fn to_prime_form<F: Field>(f: &Form<F>, p: u64) -> Result<Form<PrimeField>> {
    Form::from_json(&f.to_json(), PrimeField::new(p)?)
}

/// Builds the subspace; see the module documentation for the layout.
pub fn build_beta_subspace<F: DiagonalSearch>(sys: &DiagonalSystem<F>, opts: &BetaOptions) -> Result<BetaSubspace<F>> {
    let k = sys.field();
    let d = sys.d();
    let n = sys.num_vars();
    if d < 2 {
        return Err(Error::Precondition("the construction needs d ≥ 2".into()));
    }
    if n < 7 {
        return Err(Error::Precondition(format!("n = {n} < 7: a 7-dimensional subspace cannot exist")));
    }
    let phis: Vec<num_bigint::BigUint> = opts.phis.iter().map(|&v| v.into()).collect();
    let seq = n_sequence(d as u32, &phis)?;
    if num_bigint::BigUint::from(n) < seq[d] {
        return Err(Error::Precondition(format!("n = {n} is below n_{d} = {}", seq[d])));
    }
    let n1 = to_usize(&seq[d - 1], "n_{d-1}")?;
    let n2 = to_usize(&seq[d - 2], "n_{d-2}")?;
    let phi = opts.phis[d - 2];
    let phi1 = phi as usize + 1;
    let m2 = phi1 * n2 / 2;
    let m1 = m2 * n1 + 2 * n1;

    // w blocks at the end, u blocks at the start.
    let mut w = Vec::with_capacity(3);
    for j in 0..3 {
        let start = n - 3 * n1 + j * n1;
        w.push(block_solution(sys, d, start..start + n1, opts.search, format!("beta: w block {}", j + 1))?);
    }
    let mut u = Vec::with_capacity(m2 + 2);
    for j in 0..m2 + 2 {
        let start = j * n1;
        u.push(block_solution(sys, d - 1, start..start + n1, opts.search, format!("beta: u block {}", j + 1))?);
    }
    let forms = sys.forms();
    let fd = &forms[d - 1];
    let c: Vec<F::Elem> = u[..m2].iter().map(|v| fd.evaluate(v)).collect::<Result<_>>()?;
    let plan = BlockPlan {
        block_size: phi1,
        blocks: n2 / 2,
    };
    let xy = solve_x_y(k, &c, d as u32, plan, opts.search, "beta")?;
    let big_x = combine(k, &xy.x, &u[..m2]);
    let big_y = combine(k, &xy.y, &u[..m2]);
    let basis = vec![
        big_x,
        big_y,
        u[m2].clone(),
        u[m2 + 1].clone(),
        w[0].clone(),
        w[1].clone(),
        w[2].clone(),
    ];

    let mut warnings = xy.warnings.clone();
    let ci = match k.descriptor() {
        FieldDescriptor::PrimeField { p } if (p as u128).pow(7) <= opts.point_budget as u128 => {
            let l = crate::algebra::Subspace::new(k.clone(), n, basis.clone())?;
            let a = to_prime_form(&fd.restrict(&l)?, p)?;
            let b = to_prime_form(&forms[d].restrict(&l)?, p)?;
            let est = dimension_estimate(&[a, b], 7, opts.point_budget)?;
            Some(est.dimension == Some(5))
        }
        FieldDescriptor::PrimeField { p } => {
            warnings.push(format!("codimension check skipped: {p}^7 points exceed the point budget"));
            None
        }
        _ => {
            warnings.push("codimension check skipped: no exact dimension count outside prime fields".into());
            None
        }
    };
    let lower: Vec<&Form<F>> = forms[..d - 1].iter().collect();
    let good = finish(k, n, basis, &lower, fd, xy.x.clone(), xy.y.clone(), warnings, ci)?;
    let trace = BetaTrace {
        d,
        n,
        n_d: seq[d].to_string(),
        n_d_minus_1: n1,
        n_d_minus_2: n2,
        phi_d: phi,
        m_prime: m1,
        m_double_prime: m2,
        x_plan: xy.plan,
        g_coefficients: c.iter().map(|v| k.format_elem(v)).collect(),
    };
    Ok(BetaSubspace { good, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::DiagonalRow;
    use rand::SeedableRng;

    #[test]
    fn d2_over_f13() {
        let k = PrimeField::new(13).unwrap();
        // n_2 = (φ_2 + 11) n_1 n_0 / 2 with φ_2(F_p) = 2 for odd p.
        let n = 52;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let sys = DiagonalSystem::random(k, n, 2, 3, 0, &mut rng).unwrap();
        let opts = BetaOptions::new(vec![2], SearchOptions { budget: 1_000_000, seed: 9 });
        let b = build_beta_subspace(&sys, &opts).unwrap();
        assert_eq!(b.good.subspace.dim(), 7);
        assert!(b.good.verification.lower_forms_vanish);
        assert!(b.good.verification.top_is_good);
    }

    #[test]
    fn small_n_rejected() {
        let k = PrimeField::new(13).unwrap();
        let row = |deg, c: Vec<u64>| DiagonalRow { degree: deg, coeffs: c };
        let sys = DiagonalSystem::new(k, 6, vec![row(1, vec![1; 6]), row(2, vec![1; 6]), row(3, vec![1; 6])]).unwrap();
        let opts = BetaOptions::new(vec![2], SearchOptions::default());
        assert!(matches!(build_beta_subspace(&sys, &opts), Err(Error::Precondition(_))));
    }
}
