//! Lifting a simple root modulo p to one modulo p^k.

use num_bigint::BigInt;

use forms_density::algebra::hensel_lift;

fn main() {
    // x^2 - 2 has the root 3 modulo 7.
    let g = [BigInt::from(-2), BigInt::from(0), BigInt::from(1)];
    for k in [1, 2, 5, 10] {
        let r = hensel_lift(&g, &BigInt::from(3), 7, k).expect("simple root");
        println!("sqrt(2) mod 7^{k} = {r}");
    }
    // A double root fails the criterion.
    let g = [BigInt::from(-7), BigInt::from(0), BigInt::from(1)];
    println!("x^2 - 7 from 0: {:?}", hensel_lift(&g, &BigInt::from(0), 7, 3).map_err(|e| e.to_string()));
}
