//! Exact and interval values of the bound recursions.

use num_bigint::BigUint;

use forms_density::bounds::{self, PhiSource};

fn main() -> forms_density::Result<()> {
    let u = |v: u64| BigUint::from(v);
    let phis = PhiSource::parse("list:4,72")?.values(3)?;
    let n: Vec<String> = bounds::n_sequence(3, &phis)?.iter().map(|v| v.to_string()).collect();
    println!("n-sequence for phi = (4, 72): {}", n.join(", "));
    println!("Wooley V_2,1 at phi_2 = 4: {}", bounds::wooley_bound(2, &u(1), &[u(4)])?);

    let m = bounds::m_vector(3, &phis)?;
    println!("m_2, m_3: {}, {}", m[0], m[1]);
    println!("powers bound (d = 2, s = 1): {}", bounds::powers_bound(2, &u(1), &m)?);

    let prec = bounds::default_precision();
    println!("main bound (d = 2, s = 1): {}", bounds::main_bound(&[u(1), u(0)], &[u(4)], prec)?);
    println!("beta closed form d = 3: {}", bounds::beta_closed_form(3, &phis, prec)?);
    for d in 2..=4 {
        println!("p-adic bound d = {d}: {}", bounds::padic_bound(d, &u(1), prec)?);
    }

    let report = bounds::verify_inequalities(12, &PhiSource::Skinner, None)?;
    for c in &report.checks {
        println!("{:<28} {} ({} instances)", c.name, if c.passed { "ok" } else { "FAILED" }, c.instances);
    }
    Ok(())
}
