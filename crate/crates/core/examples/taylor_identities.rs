//! Expands a cubic on two blocks and checks the sum and polarization
//! identities at a sample point.

use forms_density::algebra::{Field, Form, Rationals};
use forms_density::taylor::{expand_form, polarize};

fn main() -> forms_density::Result<()> {
    let k = Rationals;
    let f = Form::parse("x1^3 - 2 x1 x2^2 + 5 x2^3", k)?;
    let parts = expand_form(&f, 2)?;
    for (e, g) in &parts {
        println!("f^{e:?} = {g}");
    }

    let x = [k.from_i64(1), k.from_i64(2)];
    let y = [k.from_i64(-3), k.from_i64(1)];
    let xy: Vec<_> = x.iter().chain(&y).cloned().collect();
    let sum: Vec<_> = x.iter().zip(&y).map(|(a, b)| k.add(a, b)).collect();
    let total = parts.values().try_fold(k.zero(), |acc, g| Ok::<_, forms_density::Error>(k.add(&acc, &g.evaluate(&xy)?)))?;
    println!("f(x + y) = {}, sum of components = {}", f.evaluate(&sum)?, total);

    let p = polarize(&f)?;
    let xxx: Vec<_> = x.iter().chain(&x).chain(&x).cloned().collect();
    println!("f^(1,1,1)(x, x, x) = {} = 3! f(x) = {}", p.evaluate(&xxx)?, k.mul(&k.from_i64(6), &f.evaluate(&x)?));
    Ok(())
}
