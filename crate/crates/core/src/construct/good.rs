//! Forms of shape `α x y^{d-1} + β y^d + γ z^d + g(t)` with `αγ ≠ 0`, and
//! their rational-point parametrization.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Form, FormJson, Monomial};
use crate::diagonal::{normalize_vector, SearchOptions};
use crate::error::{Error, Result};

/// Variable roles (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// Remaining variables in increasing order; `g` uses them in this order.
    pub t: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoodDecomposition<F: Field> {
    pub roles: Roles,
    pub alpha: F::Elem,
    pub beta: F::Elem,
    pub gamma: F::Elem,
    /// Residual form on the `t` variables.
    pub g: Form<F>,
    num_vars: usize,
    degree: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodDecompositionJson {
    pub roles: Roles,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub g: FormJson,
}

fn unit_exps(n: usize, parts: &[(usize, u32)]) -> Vec<u32> {
    let mut e = vec![0; n];
    for &(i, k) in parts {
        e[i] += k;
    }
    e
}

/// Finds the lexicographically least role triple `(x, y, z)` making `f`
/// good in the given coordinates.
pub fn detect_good<F: Field>(f: &Form<F>) -> Option<GoodDecomposition<F>> {
    let d = f.degree();
    let n = f.num_vars();
    if d < 2 || n < 3 {
        return None;
    }
    let k = f.field();
    // Monomials that involve each variable.
    let mut touching: Vec<Vec<(&Monomial, &F::Elem)>> = vec![Vec::new(); n];
    for (m, c) in f.terms() {
        for i in m.support() {
            touching[i].push((m, c));
        }
    }
    for x in 0..n {
        // x may only occur in the single monomial x·y^{d-1}.
        let [(mx, alpha)] = touching[x].as_slice() else {
            continue;
        };
        let e = mx.exps();
        if e[x] != 1 {
            continue;
        }
        let Some(y) = (0..n).find(|&j| j != x && e[j] == d - 1) else {
            continue;
        };
        let yd = unit_exps(n, &[(y, d)]);
        let xy = unit_exps(n, &[(x, 1), (y, d - 1)]);
        if !touching[y].iter().all(|(m, _)| m.exps() == yd.as_slice() || m.exps() == xy.as_slice()) {
            continue;
        }
        for z in 0..n {
            if z == x || z == y {
                continue;
            }
            let zd = unit_exps(n, &[(z, d)]);
            let [(mz, gamma)] = touching[z].as_slice() else {
                continue;
            };
            if mz.exps() != zd.as_slice() {
                continue;
            }
            let t: Vec<usize> = (0..n).filter(|&i| i != x && i != y && i != z).collect();
            let terms: Vec<(Vec<u32>, F::Elem)> = f
                .terms()
                .filter(|(m, _)| m.exps()[x] == 0 && m.exps()[y] == 0 && m.exps()[z] == 0)
                .map(|(m, c)| (t.iter().map(|&i| m.exps()[i]).collect(), c.clone()))
                .collect();
            let g = Form::new(k.clone(), t.len(), d, terms).expect("homogeneous part of a form");
            return Some(GoodDecomposition {
                roles: Roles { x, y, z, t },
                alpha: (*alpha).clone(),
                beta: f.coeff(&yd),
                gamma: (*gamma).clone(),
                g,
                num_vars: n,
                degree: d,
            });
        }
    }
    None
}

impl<F: Field> GoodDecomposition<F> {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &F {
        self.g.field()
    }

    /// `α x y^{d-1} + β y^d + γ z^d + g(t)` in the original variables.
    pub fn reassemble(&self) -> Form<F> {
        let n = self.num_vars;
        let d = self.degree;
        let r = &self.roles;
        let mut terms = vec![
            (unit_exps(n, &[(r.x, 1), (r.y, d - 1)]), self.alpha.clone()),
            (unit_exps(n, &[(r.y, d)]), self.beta.clone()),
            (unit_exps(n, &[(r.z, d)]), self.gamma.clone()),
        ];
        for (m, c) in self.g.terms() {
            let mut e = vec![0; n];
            for (j, &i) in r.t.iter().enumerate() {
                e[i] = m.exps()[j];
            }
            terms.push((e, c.clone()));
        }
        Form::new(self.field().clone(), n, d, terms).expect("well-formed")
    }

    /// The point with the given `y, z, t` and `x = -(β y^d + γ z^d + g(t)) / (α y^{d-1})`;
    /// `None` when `y = 0`.
    pub fn lift(&self, y: &F::Elem, z: &F::Elem, t: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        let k = self.field();
        if k.is_zero(y) {
            return Ok(None);
        }
        let d = self.degree;
        let num = k.add(
            &k.add(&k.mul(&self.beta, &k.pow(y, d)), &k.mul(&self.gamma, &k.pow(z, d))),
            &self.g.evaluate(t)?,
        );
        let den = k.mul(&self.alpha, &k.pow(y, d - 1));
        let x = k.neg(&k.div(&num, &den).ok_or(Error::DivisionByZero)?);
        let mut p = vec![k.zero(); self.num_vars];
        p[self.roles.x] = x;
        p[self.roles.y] = y.clone();
        p[self.roles.z] = z.clone();
        for (j, &i) in self.roles.t.iter().enumerate() {
            p[i] = t[j].clone();
        }
        Ok(Some(p))
    }

    pub fn to_json(&self) -> GoodDecompositionJson {
        let k = self.field();
        GoodDecompositionJson {
            roles: self.roles.clone(),
            alpha: k.format_elem(&self.alpha),
            beta: k.format_elem(&self.beta),
            gamma: k.format_elem(&self.gamma),
            g: self.g.to_json(),
        }
    }
}

/// `count` distinct normalized zeros of the decomposed form with `h ≠ 0`.
///
/// `y, z, t` are drawn from the seeded generator with heights growing slowly
/// over the attempts; `opts.budget` caps the number of attempts.
pub fn good_points<F: Field>(
    dec: &GoodDecomposition<F>,
    h: Option<&Form<F>>,
    count: usize,
    opts: SearchOptions,
) -> Result<Vec<Vec<F::Elem>>> {
    let k = dec.field();
    if let Some(h) = h {
        if h.num_vars() != dec.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: dec.num_vars(),
                found: h.num_vars(),
            });
        }
    }
    let f = dec.reassemble();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out: Vec<Vec<F::Elem>> = Vec::with_capacity(count);
    let tn = dec.roles.t.len();
    for attempt in 0..opts.budget {
        if out.len() >= count {
            break;
        }
        let height = 1 + attempt / 32;
        let y = k.random_elem(&mut rng, height);
        let z = k.random_elem(&mut rng, height);
        let t: Vec<F::Elem> = (0..tn).map(|_| k.random_elem(&mut rng, height)).collect();
        let Some(p) = dec.lift(&y, &z, &t)? else {
            continue;
        };
        let p = normalize_vector(k, &p);
        if !k.is_zero(&f.evaluate(&p)?) {
            return Err(Error::Violated("parametrized point is not a zero".into()));
        }
        if let Some(h) = h {
            if k.is_zero(&h.evaluate(&p)?) {
                continue;
            }
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    if out.len() < count {
        return Err(Error::not_found(format!(
            "good_points ({} of {count} points)",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;

    fn q(s: &str, n: usize) -> Form<Rationals> {
        Form::parse_with_vars(s, Rationals, n).unwrap()
    }

    #[test]
    fn detects_shapes() {
        let f = q("x1 x2^2 + x3^3", 3);
        let dec = detect_good(&f).unwrap();
        assert_eq!((dec.roles.x, dec.roles.y, dec.roles.z), (0, 1, 2));
        assert!(Rationals.is_zero(&dec.beta));
        assert_eq!(dec.reassemble(), f);

        let f = q("2 x1 x2^2 + 5 x2^3 + 7 x3^3 + x4^3 - x5^3", 5);
        let dec = detect_good(&f).unwrap();
        assert_eq!(dec.alpha, Rationals.from_i64(2));
        assert_eq!(dec.beta, Rationals.from_i64(5));
        assert_eq!(dec.gamma, Rationals.from_i64(7));
        assert_eq!(dec.g, q("x1^3 - x2^3", 2));
        assert_eq!(dec.reassemble(), f);

        assert!(detect_good(&q("x1^3 + x2^3 + x3^3", 3)).is_none());
    }

    #[test]
    fn lifts_points() {
        let dec = detect_good(&q("x1 x2^2 + x3^3", 3)).unwrap();
        let k = Rationals;
        let p = dec.lift(&k.one(), &k.one(), &[]).unwrap().unwrap();
        assert_eq!(p, vec![k.from_i64(-1), k.one(), k.one()]);
        let p = dec.lift(&k.one(), &k.zero(), &[]).unwrap().unwrap();
        assert!(k.is_zero(&p[0]));

        let dec = detect_good(&q("x1 x2 + x3^2", 3)).unwrap();
        let p = dec.lift(&k.from_i64(2), &k.one(), &[]).unwrap().unwrap();
        assert_eq!(p, vec![k.from_rational(&"-1/2".parse().unwrap()).unwrap(), k.from_i64(2), k.one()]);
    }

    #[test]
    fn avoids_h() {
        let f = q("x1 x2^2 + x3^3", 3);
        let dec = detect_good(&f).unwrap();
        let h = q("x1", 3);
        let pts = good_points(&dec, Some(&h), 10, SearchOptions { budget: 10_000, seed: 3 }).unwrap();
        assert_eq!(pts.len(), 10);
        for p in &pts {
            assert!(Rationals.is_zero(&f.evaluate(p).unwrap()));
            assert!(!Rationals.is_zero(&p[0]));
        }
    }
}
