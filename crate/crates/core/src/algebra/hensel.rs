//! Hensel lifting over `Z_p`, for one polynomial in one variable and for
//! square systems with an invertible Jacobian modulo `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::field::strip_p;
use super::padic::{mod_inverse, pow_p};
use crate::error::{Error, Result};

fn valuation(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let mut m = n.clone();
    Some(strip_p(&mut m, p))
}

/// `Σ coeffs[i] x^i` by Horner's rule.
pub fn eval_univariate(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Root of `g = Σ coeffs[i] x^i` modulo `p^k` that is congruent to `x0`.
///
/// Requires `v(g(x0)) > 2 v(g'(x0))`. The root is then unique in the disc
/// `v(x - x0) > v(g'(x0))`, and Newton's method converges to it.
pub fn hensel_lift(coeffs: &[BigInt], x0: &BigInt, p: u64, k: u32) -> Result<BigInt> {
    let modulus = pow_p(p, k as i64);
    let dg = derivative(coeffs);
    let g0 = eval_univariate(coeffs, x0);
    if g0.is_zero() {
        return Ok(x0.mod_floor(&modulus));
    }
    let vg = valuation(&g0, p).expect("nonzero");
    let vd = valuation(&eval_univariate(&dg, x0), p);
    let e = match vd {
        Some(e) if vg > 2 * e => e,
        _ => {
            return Err(Error::HenselCriterion {
                value_valuation: vg,
                derivative_valuation: vd,
            })
        }
    };
    // Work modulo p^(k + e + 1) so the division by p^e leaves k + 1 digits.
    let work = pow_p(p, k as i64 + e + 1);
    let pe = pow_p(p, e);
    let mut x = x0.mod_floor(&work);
    loop {
        let gx = eval_univariate(coeffs, &x);
        match valuation(&gx, p) {
            None => break,
            Some(v) if v >= k as i64 + e => break,
            _ => {}
        }
        let dx = eval_univariate(&dg, &x);
        let (q, r) = gx.div_rem(&pe);
        debug_assert!(r.is_zero());
        let u = &dx / &pe;
        let ui = mod_inverse(&u, &work).expect("derivative unit part is invertible");
        x = (x - q * ui).mod_floor(&work);
    }
    Ok(x.mod_floor(&modulus))
}

/// A polynomial with integer coefficients in `n` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct IntPoly {
    pub num_vars: usize,
    pub terms: Vec<(Vec<u32>, BigInt)>,
}

impl IntPoly {
    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    t *= num_traits::pow(xi.clone(), ei as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> IntPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * BigInt::from(e[i]))
            })
            .collect();
        IntPoly {
            num_vars: self.num_vars,
            terms,
        }
    }
}

/// Solves `A x = b` modulo `p^k` when `det A` is a unit modulo `p`.
pub fn solve_mod(a: &[Vec<BigInt>], b: &[BigInt], p: u64, k: u32) -> Option<Vec<BigInt>> {
    let m = pow_p(p, k as i64);
    let pb = BigInt::from(p);
    let n = a.len();
    let mut rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r: Vec<BigInt> = r.iter().map(|x| x.mod_floor(&m)).collect();
            r.push(bi.mod_floor(&m));
            r
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| !rows[i][c].is_multiple_of(&pb))?;
        rows.swap(c, pr);
        let inv = mod_inverse(&rows[c][c], &m)?;
        for x in rows[c].iter_mut() {
            *x = (&*x * &inv).mod_floor(&m);
        }
        for i in 0..n {
            if i == c || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..=n {
                let t = &f * &rows[c][j];
                rows[i][j] = (&rows[i][j] - t).mod_floor(&m);
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

/// Lifts an approximate common zero of `polys` to one modulo `p^k`.
///
/// Only the coordinates listed in `free` move; the Jacobian of `polys` with
/// respect to them must be square and invertible modulo `p`, and `x0` must
/// be a common zero modulo `p`.
pub fn lift_system(
    polys: &[IntPoly],
    x0: &[BigInt],
    free: &[usize],
    p: u64,
    k: u32,
) -> Result<Vec<BigInt>> {
    if polys.len() != free.len() {
        return Err(Error::DimensionMismatch {
            expected: polys.len(),
            found: free.len(),
        });
    }
    let m = pow_p(p, k as i64);
    let pb = BigInt::from(p);
    let mut x: Vec<BigInt> = x0.iter().map(|v| v.mod_floor(&m)).collect();
    for g in polys {
        let v = g.eval(&x);
        if !v.is_multiple_of(&pb) {
            return Err(Error::HenselCriterion {
                value_valuation: 0,
                derivative_valuation: None,
            });
        }
    }
    let jac: Vec<Vec<IntPoly>> = polys
        .iter()
        .map(|g| free.iter().map(|&i| g.partial(i)).collect())
        .collect();
    // Newton's method doubles the number of correct digits per step.
    let steps = 34 - k.max(1).leading_zeros() + 2;
    for _ in 0..steps {
        let gx: Vec<BigInt> = polys.iter().map(|g| g.eval(&x).mod_floor(&m)).collect();
        if gx.iter().all(Zero::is_zero) {
            return Ok(x);
        }
        let jx: Vec<Vec<BigInt>> = jac
            .iter()
            .map(|row| row.iter().map(|d| d.eval(&x)).collect())
            .collect();
        let delta = solve_mod(&jx, &gx, p, k).ok_or(Error::HenselCriterion {
            value_valuation: 1,
            derivative_valuation: Some(0),
        })?;
        for (&i, di) in free.iter().zip(&delta) {
            x[i] = (&x[i] - di).mod_floor(&m);
        }
    }
    if polys.iter().all(|g| g.eval(&x).mod_floor(&m).is_zero()) {
        return Ok(x);
    }
    Err(Error::HenselCriterion {
        value_valuation: 1,
        derivative_valuation: Some(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn square_root_of_two_in_q7() {
        let g = [b(-2), b(0), b(1)];
        let r = hensel_lift(&g, &b(3), 7, 3).unwrap();
        assert_eq!(r, b(108));
        assert_eq!((&r * &r - 2) % 343, b(0));
    }

    #[test]
    fn linear_is_exact() {
        let g = [b(-5), b(1)];
        for k in 1..6 {
            assert_eq!(hensel_lift(&g, &b(5), 7, k).unwrap(), b(5));
        }
    }

    #[test]
    fn vanishing_derivative_rejected() {
        let g = [b(-7), b(0), b(1)];
        assert!(matches!(
            hensel_lift(&g, &b(0), 7, 3),
            Err(Error::HenselCriterion {
                derivative_valuation: None,
                ..
            })
        ));
    }

    #[test]
    fn non_unit_derivative_with_enough_slack() {
        // x^2 + 7 over Q_2: x0 = 1 has v(g) = 3 > 2 v(g') = 2.
        let g = [b(7), b(0), b(1)];
        let r = hensel_lift(&g, &b(1), 2, 10).unwrap();
        assert_eq!((&r * &r + 7) % 1024, b(0));
    }

    #[test]
    fn two_by_two_system() {
        // x + y = 0, x^2 + y^2 - 7 = 0 near (1, -1) mod 5.
        let f1 = IntPoly {
            num_vars: 2,
            terms: vec![(vec![1, 0], b(1)), (vec![0, 1], b(1))],
        };
        let f2 = IntPoly {
            num_vars: 2,
            terms: vec![(vec![2, 0], b(1)), (vec![0, 2], b(1)), (vec![0, 0], b(-7))],
        };
        let x = lift_system(&[f1.clone(), f2.clone()], &[b(1), b(-1)], &[0, 1], 5, 6).unwrap();
        let m = pow_p(5, 6);
        assert!(f1.eval(&x).mod_floor(&m).is_zero());
        assert!(f2.eval(&x).mod_floor(&m).is_zero());
    }
}
