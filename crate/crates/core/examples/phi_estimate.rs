//! Smallest n with every diagonal form of degree d in more than n
//! variables isotropic, estimated over small prime fields.

use forms_density::algebra::PrimeField;
use forms_density::diagonal::{phi_estimate, SearchOptions};

fn main() -> forms_density::Result<()> {
    for (p, d) in [(3, 2), (5, 2), (7, 3), (13, 3)] {
        let e = phi_estimate(PrimeField::new(p)?, d, 6, 100, SearchOptions { budget: 1_000_000, seed: 1 })?;
        println!(
            "phi_{d}(F_{p}) = {}  certified: {}  anisotropic witness: {:?}",
            e.value, e.certified, e.witness
        );
    }
    Ok(())
}
