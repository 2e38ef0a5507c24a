//! Subspaces on which the top form becomes good: the shared `(x, y)` step,
//! assembly from an orthogonal configuration, and the end-to-end pipeline.

use serde::{Deserialize, Serialize};

use super::dm::{dm_membership, dm_search, OrthogonalConfig, OrthogonalConfigJson};
use super::good::{detect_good, good_points, GoodDecomposition, GoodDecompositionJson};
use crate::algebra::{Field, Form, FormSystem, Subspace};
use crate::bounds::n_sequence;
use crate::diagonal::{isotropic_vector, solve_diagonal_system, DiagonalRow, DiagonalSearch, DiagonalSystem, SearchOptions};
use crate::error::{Error, Result};
use crate::taylor::binomial;

/// How the coordinates of a diagonal form are cut into blocks for the
/// isotropic vector `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPlan {
    pub block_size: usize,
    pub blocks: usize,
}

/// `x` with `g(x) = 0` built blockwise, and `y` on `supp(x)` with
/// `g^{(d-e,e)}(x, y) = 0` for `1 ≤ e < d-1` and `g^{(1,d-1)}(x, y) ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct XySolution<E> {
    pub x: Vec<E>,
    pub y: Vec<E>,
    pub plan: BlockPlan,
    pub warnings: Vec<String>,
}

fn scalar_field_elem<F: Field>(k: &F, n: u64) -> F::Elem {
    k.from_i64(n as i64)
}

/// `C(d,e) Σ c_i x_i^{d-e} y_i^e`.
pub fn diagonal_taylor_value<F: Field>(k: &F, c: &[F::Elem], d: u32, e: u32, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    let b = scalar_field_elem(k, binomial(d as u64, e as u64).try_into().unwrap_or(u64::MAX));
    let s = c
        .iter()
        .zip(x.iter().zip(y))
        .fold(k.zero(), |acc, (ci, (xi, yi))| {
            k.add(&acc, &k.mul(ci, &k.mul(&k.pow(xi, d - e), &k.pow(yi, e))))
        });
    k.mul(&b, &s)
}

/// Solves for `x` and `y` for the diagonal form `Σ c_i t_i^d`.
pub fn solve_x_y<F: DiagonalSearch>(
    k: &F,
    c: &[F::Elem],
    d: u32,
    plan: BlockPlan,
    opts: SearchOptions,
    stage: &str,
) -> Result<XySolution<F::Elem>> {
    let n = c.len();
    let mut warnings = Vec::new();
    let mut plan = plan;
    if plan.block_size == 0 || plan.blocks == 0 {
        return Err(Error::Precondition("empty block plan".into()));
    }
    if plan.block_size * plan.blocks > n {
        let fitted = n / plan.block_size;
        let adjusted = if fitted >= 1 {
            BlockPlan { block_size: plan.block_size, blocks: fitted }
        } else {
            BlockPlan { block_size: n, blocks: 1 }
        };
        warnings.push(format!(
            "{stage}: {} blocks of {} need {} coordinates but only {n} are available; using {} of {}",
            plan.blocks,
            plan.block_size,
            plan.block_size * plan.blocks,
            adjusted.blocks,
            adjusted.block_size
        ));
        plan = adjusted;
    }
    let mut x = vec![k.zero(); n];
    for j in 0..plan.blocks {
        let r = j * plan.block_size..(j + 1) * plan.block_size;
        let s = isotropic_vector(k, &c[r.clone()], d, opts)?;
        let v = s
            .vector
            .ok_or_else(|| Error::not_found(format!("{stage}: isotropic x (block {})", j + 1)))?;
        for (slot, val) in x[r].iter_mut().zip(v) {
            *slot = val;
        }
    }
    let supp: Vec<usize> = (0..n).filter(|&i| !k.is_zero(&x[i])).collect();
    let mut rows = Vec::new();
    for e in 1..d.saturating_sub(1) {
        let b = scalar_field_elem(k, binomial(d as u64, e as u64).try_into().unwrap_or(u64::MAX));
        rows.push(DiagonalRow {
            degree: e,
            coeffs: supp
                .iter()
                .map(|&i| k.mul(&b, &k.mul(&c[i], &k.pow(&x[i], d - e))))
                .collect(),
        });
    }
    let dd = scalar_field_elem(k, d as u64);
    rows.push(DiagonalRow {
        degree: d - 1,
        coeffs: supp.iter().map(|&i| k.mul(&dd, &k.mul(&c[i], &x[i]))).collect(),
    });
    let ysys = DiagonalSystem::new(k.clone(), supp.len(), rows)?;
    let ys = solve_diagonal_system(&ysys, opts)?
        .vector
        .ok_or_else(|| Error::not_found(format!("{stage}: y system")))?;
    let mut y = vec![k.zero(); n];
    for (&i, v) in supp.iter().zip(ys) {
        y[i] = v;
    }
    // The conditions that make the restriction good.
    if !k.is_zero(&crate::diagonal::diagonal_value(k, c, d, &x)) {
        return Err(Error::Violated(format!("{stage}: g(x) ≠ 0")));
    }
    for e in 1..d {
        let v = diagonal_taylor_value(k, c, d, e, &x, &y);
        let ok = if e + 1 < d { k.is_zero(&v) } else { !k.is_zero(&v) };
        if !ok {
            return Err(Error::Violated(format!("{stage}: Taylor condition at e = {e}")));
        }
    }
    Ok(XySolution { x, y, plan, warnings })
}

/// Combination `Σ coeffs_i vectors_i`.
pub fn combine<F: Field>(k: &F, coeffs: &[F::Elem], vectors: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let n = vectors.first().map_or(0, Vec::len);
    let mut out = vec![k.zero(); n];
    for (c, v) in coeffs.iter().zip(vectors) {
        if k.is_zero(c) {
            continue;
        }
        for (o, vi) in out.iter_mut().zip(v) {
            *o = k.add(o, &k.mul(c, vi));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceVerification {
    pub independent: bool,
    pub lower_forms_vanish: bool,
    pub top_is_good: bool,
    pub good_roles: Option<(usize, usize, usize)>,
    /// `codim Z(f_d, f_{d+1}) ∩ L = 2`, when it could be checked.
    pub complete_intersection: Option<bool>,
    pub warnings: Vec<String>,
}

impl SubspaceVerification {
    pub fn passed(&self) -> bool {
        self.independent && self.lower_forms_vanish && self.top_is_good && self.complete_intersection != Some(false)
    }
}

/// A subspace on which the lower forms vanish and the top form is good.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodSubspace<F: Field> {
    pub subspace: Subspace<F>,
    pub decomposition: GoodDecomposition<F>,
    pub x: Vec<F::Elem>,
    pub y: Vec<F::Elem>,
    pub verification: SubspaceVerification,
}

/// Options for [`assemble_l`] and the pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssembleOptions {
    /// `φ_2, …, φ_d`; without them a single block is used.
    pub phis: Option<Vec<u64>>,
    pub search: SearchOptions,
}

fn plan_for(d: u32, m0: usize, phis: Option<&[u64]>, warnings: &mut Vec<String>) -> BlockPlan {
    let big: Vec<num_bigint::BigUint> = phis.unwrap_or(&[]).iter().map(|&v| v.into()).collect();
    let blocks = match n_sequence(d - 2, &big) {
        Ok(seq) => {
            let nd2: usize = (&seq[d as usize - 2] / 2u32).try_into().unwrap_or(usize::MAX);
            nd2.max(1)
        }
        Err(_) => {
            warnings.push(format!("n_{} unavailable without phi values; using one block", d - 2));
            1
        }
    };
    let block_size = match phis.and_then(|p| p.get(d as usize - 2)) {
        Some(&phi) => phi as usize + 1,
        None => (m0 / blocks).max(1),
    };
    BlockPlan { block_size, blocks }
}

/// `L = span(Σ x_i v_i, Σ y_i v_i, v_{m-3}, w_1, w_2, w_3)` for a
/// configuration passing [`dm_membership`].
pub fn assemble_l<F: DiagonalSearch>(
    cand: &OrthogonalConfig<F>,
    sys: &FormSystem<F>,
    opts: &AssembleOptions,
) -> Result<GoodSubspace<F>> {
    let k = sys.field();
    if !dm_membership(sys, cand)? {
        return Err(Error::Precondition("configuration fails the membership test".into()));
    }
    let (f, gs) = sys.split_top().expect("membership checked a nonempty system");
    let d = f.degree();
    if d < 2 {
        return Err(Error::Precondition("the top form must have degree at least 2".into()));
    }
    let m = cand.m();
    if m < 5 {
        return Err(Error::Precondition(format!("m = {m} leaves no vectors for f_0")));
    }
    let vs = &cand.v[..m - 4];
    let last = &cand.v[m - 4];
    let c: Vec<F::Elem> = vs.iter().map(|v| f.evaluate(v)).collect::<Result<_>>()?;
    if let Some(i) = c.iter().position(|ci| k.is_zero(ci)) {
        return Err(Error::Degenerate(format!("f(v_{}) = 0, so f_0 has a zero coefficient", i + 1)));
    }
    if k.is_zero(&f.evaluate(last)?) {
        return Err(Error::Degenerate(format!("f(v_{}) = 0", m - 3)));
    }
    let mut warnings = Vec::new();
    let plan = plan_for(d, c.len(), opts.phis.as_deref(), &mut warnings);
    let xy = solve_x_y(k, &c, d, plan, opts.search, "assemble_L")?;
    warnings.extend(xy.warnings.iter().cloned());
    let big_x = combine(k, &xy.x, vs);
    let big_y = combine(k, &xy.y, vs);
    let basis = vec![big_x, big_y, last.clone(), cand.w[0].clone(), cand.w[1].clone(), cand.w[2].clone()];
    finish(sys.field(), sys.num_vars(), basis, &gs, f, xy.x, xy.y, warnings, None)
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn finish<F: Field>(
    k: &F,
    n: usize,
    basis: Vec<Vec<F::Elem>>,
    lower: &[&Form<F>],
    top: &Form<F>,
    x: Vec<F::Elem>,
    y: Vec<F::Elem>,
    warnings: Vec<String>,
    complete_intersection: Option<bool>,
) -> Result<GoodSubspace<F>> {
    let subspace = Subspace::new(k.clone(), n, basis).map_err(|e| match e {
        Error::LinearlyDependent => Error::Violated("spanning vectors of L are dependent".into()),
        other => other,
    })?;
    let mut lower_forms_vanish = true;
    for g in lower {
        if !g.restrict(&subspace)?.is_zero() {
            lower_forms_vanish = false;
        }
    }
    let restricted = top.restrict(&subspace)?;
    let dec = detect_good(&restricted);
    let verification = SubspaceVerification {
        independent: true,
        lower_forms_vanish,
        top_is_good: dec.is_some(),
        good_roles: dec.as_ref().map(|d| (d.roles.x, d.roles.y, d.roles.z)),
        complete_intersection,
        warnings,
    };
    if !verification.lower_forms_vanish {
        return Err(Error::Violated("a lower form does not vanish on L".into()));
    }
    let decomposition = dec.ok_or_else(|| Error::Violated("the top form is not good on L".into()))?;
    Ok(GoodSubspace {
        subspace,
        decomposition,
        x,
        y,
        verification,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOptions {
    pub m: usize,
    pub count: usize,
    pub assemble: AssembleOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult<F: Field> {
    pub config: OrthogonalConfig<F>,
    pub good: GoodSubspace<F>,
    pub points: Vec<Vec<F::Elem>>,
    pub residuals: Vec<PointCheck>,
}

/// Re-evaluation of one emitted point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheck {
    /// Values of every form of the system, in order.
    pub values: Vec<String>,
    /// Value of the avoided form, if any.
    pub avoid: Option<String>,
    pub ok: bool,
}

/// `dm_search → assemble_L → detect_good → good_points`, with every point
/// re-evaluated against the whole system.
pub fn run_pipeline<F: DiagonalSearch>(
    sys: &FormSystem<F>,
    h: Option<&Form<F>>,
    opts: &PipelineOptions,
) -> Result<PipelineResult<F>> {
    let k = sys.field();
    if let Some(h) = h {
        if h.num_vars() != sys.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: sys.num_vars(),
                found: h.num_vars(),
            });
        }
    }
    let config = dm_search(sys, opts.m, opts.assemble.search)?;
    let good = assemble_l(&config, sys, &opts.assemble)?;
    let h_on_l = h.map(|h| h.restrict(&good.subspace)).transpose()?;
    let local = good_points(&good.decomposition, h_on_l.as_ref(), opts.count, opts.assemble.search)?;
    let mut points: Vec<Vec<F::Elem>> = Vec::new();
    for p in local {
        let q = crate::diagonal::normalize_vector(k, &good.subspace.point(&p)?);
        if !points.contains(&q) {
            points.push(q);
        }
    }
    if points.len() < opts.count {
        return Err(Error::not_found("good_points (ambient duplicates)"));
    }
    let mut residuals = Vec::new();
    for p in &points {
        let vals: Vec<F::Elem> = sys.forms().iter().map(|f| f.evaluate(p)).collect::<Result<_>>()?;
        let hv = h.map(|h| h.evaluate(p)).transpose()?;
        let ok = vals.iter().all(|v| k.is_zero(v)) && hv.as_ref().is_none_or(|v| !k.is_zero(v));
        if !ok {
            return Err(Error::Violated("emitted point fails re-evaluation".into()));
        }
        residuals.push(PointCheck {
            values: vals.iter().map(|v| k.format_elem(v)).collect(),
            avoid: hv.map(|v| k.format_elem(&v)),
            ok,
        });
    }
    Ok(PipelineResult {
        config,
        good,
        points,
        residuals,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodSubspaceJson {
    pub basis: Vec<Vec<String>>,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub decomposition: GoodDecompositionJson,
    pub verification: SubspaceVerification,
}

impl<F: Field> GoodSubspace<F> {
    pub fn to_json(&self) -> GoodSubspaceJson {
        let k = self.subspace.field();
        let fmt = |v: &[F::Elem]| v.iter().map(|c| k.format_elem(c)).collect::<Vec<_>>();
        GoodSubspaceJson {
            basis: self.subspace.basis().iter().map(|v| fmt(v)).collect(),
            x: fmt(&self.x),
            y: fmt(&self.y),
            decomposition: self.decomposition.to_json(),
            verification: self.verification.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineJson {
    pub configuration: OrthogonalConfigJson,
    pub subspace: GoodSubspaceJson,
    pub points: Vec<Vec<String>>,
    pub verification: Vec<PointCheck>,
}

impl<F: Field> PipelineResult<F> {
    pub fn to_json(&self, k: &F) -> PipelineJson {
        PipelineJson {
            configuration: self.config.to_json(k),
            subspace: self.good.to_json(),
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(|c| k.format_elem(c)).collect())
                .collect(),
            verification: self.residuals.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;

    fn crafted() -> FormSystem<Rationals> {
        let n = 12;
        let g = Form::parse_with_vars("x1 + x2 + x3 + x4 + x5 + x6 + x7 + x8 + x9 + x10 + x11 + x12", Rationals, n).unwrap();
        let f = Form::parse_with_vars(
            "x1^2 - 2 x2^2 + 3 x3^2 - x4^2 + x5^2 - 3 x6^2 + 2 x7^2 - x8^2 + x9^2 - 5 x10^2 + x11^2 + 7 x12^2",
            Rationals,
            n,
        )
        .unwrap();
        FormSystem::new(Rationals, n, vec![g, f]).unwrap()
    }

    #[test]
    fn pipeline_emits_verified_points() {
        let sys = crafted();
        let h = Form::parse_with_vars("x1 + 2 x5", Rationals, 12).unwrap();
        let opts = PipelineOptions {
            m: 8,
            count: 10,
            assemble: AssembleOptions {
                phis: None,
                search: SearchOptions { budget: 100_000, seed: 1 },
            },
        };
        let r = run_pipeline(&sys, Some(&h), &opts).unwrap();
        assert_eq!(r.points.len(), 10);
        assert!(r.residuals.iter().all(|c| c.ok));
        assert_eq!(r.good.verification.good_roles, Some((0, 1, 2)));
    }

    #[test]
    fn rejects_bad_configurations() {
        let sys = crafted();
        let k = Rationals;
        let e = |i: usize| {
            let mut v = vec![k.zero(); 12];
            v[i] = k.one();
            v
        };
        let bad = OrthogonalConfig {
            w: [e(0), e(1), e(2)],
            v: vec![e(3), e(4)],
        };
        let opts = AssembleOptions {
            phis: None,
            search: SearchOptions::default(),
        };
        assert!(matches!(assemble_l(&bad, &sys, &opts), Err(Error::Precondition(_))));
    }
}
