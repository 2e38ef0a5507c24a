//! Birch rank three ways: the exact quadratic and diagonal formulas, and
//! the point-counting oracle over a prime field.

use forms_density::algebra::{Field, Form, FormSystem, PrimeField, Rationals, Subspace};
use forms_density::rank::{birch_rank_diagonal, birch_rank_estimate, birch_rank_quadratic, EstimateOptions};

fn main() -> forms_density::Result<()> {
    let q = Rationals;
    let f = Form::parse_with_vars("x1^2 - x2^2 + x1 x3", q, 3)?;
    println!("Brk({f}) = {:?}", birch_rank_quadratic(&f)?.value);

    // Restricting to a hyperplane costs at most 2.
    let h = Form::parse_with_vars("x1^2 - x2^2", q, 2)?;
    let diag = Subspace::new(q, 2, vec![vec![q.from_i64(1), q.from_i64(1)]])?;
    println!(
        "Brk(x1^2 - x2^2) = {:?}, on x1 = x2: {:?}",
        birch_rank_quadratic(&h)?.value,
        birch_rank_quadratic(&h.restrict(&diag)?)?.value
    );

    let g = Form::parse_with_vars("x1^3 + 2 x2^3 + 4 x3^3", q, 4)?;
    println!("Brk({g}) = {:?} (support size)", birch_rank_diagonal(&g)?.value);

    let k = PrimeField::new(7)?;
    let sys = FormSystem::new(
        k,
        3,
        vec![Form::parse_with_vars("x1 x2 + x3^2", k, 3)?, Form::parse_with_vars("x1^2 - x2^2", k, 3)?],
    )?;
    let r = birch_rank_estimate(&sys, EstimateOptions::default())?;
    println!("collective Brk over F_7: {:?} via {:?}", r.value, r.method);
    println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
    Ok(())
}
