//! Isotropic vectors and diagonal systems over F_p, Q and Q_p.

use forms_density::algebra::{Field, PadicField, PrimeField, Rationals};
use forms_density::diagonal::{isotropic_vector, solve_diagonal_system, DiagonalRow, DiagonalSystem, SearchOptions};

fn main() -> forms_density::Result<()> {
    let opts = SearchOptions { budget: 1_000_000, seed: 42 };

    let f5 = PrimeField::new(5)?;
    let s = isotropic_vector(&f5, &[1, 1], 2, opts)?;
    println!("x1^2 + x2^2 over F_5: {:?}", s.vector);
    let f3 = PrimeField::new(3)?;
    let s = isotropic_vector(&f3, &[1, 1], 2, opts)?;
    println!("x1^2 + x2^2 over F_3: {:?} (exhaustive: {})", s.vector, s.exhaustive);

    // The lower rows vanish and the top row does not.
    let q = Rationals;
    let sys = DiagonalSystem::new(
        q,
        3,
        vec![
            DiagonalRow { degree: 1, coeffs: vec![q.from_i64(1), q.from_i64(1), q.from_i64(1)] },
            DiagonalRow { degree: 2, coeffs: vec![q.from_i64(1), q.from_i64(1), q.from_i64(-1)] },
            DiagonalRow { degree: 3, coeffs: vec![q.from_i64(1), q.from_i64(2), q.from_i64(3)] },
        ],
    )?;
    let s = solve_diagonal_system(&sys, opts)?;
    let x = s.into_found("rational system")?;
    println!("rational system: {:?}, row values {:?}", fmt(&q, &x), fmt(&q, &sys.row_values(&x)?));

    let q7 = PadicField::new(7, 12)?;
    let coeffs: Vec<_> = [1i64, 1, 1].iter().map(|&c| q7.from_i64(c)).collect();
    let s = isotropic_vector(&q7, &coeffs, 2, opts)?;
    if let Some(x) = s.vector {
        println!("x1^2 + x2^2 + x3^2 over Q_7 (12 digits): {:?}", fmt(&q7, &x));
    }
    Ok(())
}

fn fmt<F: Field>(k: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|c| k.format_elem(c)).collect()
}
