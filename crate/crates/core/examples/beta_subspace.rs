//! A seven-dimensional subspace of a random diagonal system over F_13 on
//! which the lower forms vanish and the next form is good.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use forms_density::algebra::PrimeField;
use forms_density::construct::{build_beta_subspace, BetaOptions};
use forms_density::diagonal::{DiagonalSystem, SearchOptions};

fn main() -> forms_density::Result<()> {
    let k = PrimeField::new(13)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // d = 2 with phi_2 = 2 needs n_2 = 52 variables.
    let sys = DiagonalSystem::random(k, 52, 2, 3, 0, &mut rng)?;
    let b = build_beta_subspace(&sys, &BetaOptions::new(vec![2], SearchOptions { budget: 1_000_000, seed: 9 }))?;
    let t = &b.trace;
    println!("n_d = {}, n_(d-1) = {}, n_(d-2) = {}, m'' = {}", t.n_d, t.n_d_minus_1, t.n_d_minus_2, t.m_double_prime);
    for (i, v) in b.good.subspace.basis().iter().enumerate() {
        let nz: Vec<String> = v.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, c)| format!("{c}e{}", j + 1)).collect();
        println!("L{}: {}", i + 1, nz.join(" + "));
    }
    let v = &b.good.verification;
    println!("lower forms vanish: {}, top form good: {}", v.lower_forms_vanish, v.top_is_good);
    for w in &v.warnings {
        println!("note: {w}");
    }
    Ok(())
}
