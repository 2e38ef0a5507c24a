//! Truncated `p`-adic numbers with absolute precision tracking.
//!
//! An element is `p^val · unit + O(p^prec)` where `unit` is a `p`-adic unit
//! known modulo `p^(prec - val)`. Zero at precision `prec` is stored with
//! `unit = 0` and `val = prec`. Sums keep the smaller precision, products and
//! quotients shift it by the valuations involved.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::field::{is_prime, strip_p, Field, FieldDescriptor};
use crate::error::{Error, Result};

/// `Q_p` truncated at absolute precision `p^prec`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicField {
    p: u64,
    prec: u32,
}

#[derive(Debug, Clone)]
pub struct PadicElem {
    p: u64,
    val: i64,
    unit: BigUint,
    prec: i64,
}

impl PadicElem {
    pub fn valuation(&self) -> Option<i64> {
        (!self.unit.is_zero()).then_some(self.val)
    }

    /// Absolute precision: the value is known modulo `p^precision()`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Integer representative of the value modulo `p^k`, when the value is
    /// integral and known to at least that precision.
    pub fn residue(&self, k: i64) -> Option<BigInt> {
        if self.prec < k {
            return None;
        }
        if self.unit.is_zero() || self.val >= k {
            return Some(BigInt::zero());
        }
        if self.val < 0 {
            return None;
        }
        let m = pow_p(self.p, k);
        let v = BigInt::from(self.unit.clone()) * pow_p(self.p, self.val);
        Some(v.mod_floor(&m))
    }
}

impl PartialEq for PadicElem {
    /// Equality modulo the smaller of the two precisions.
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let prec = self.prec.min(other.prec);
        let za = self.unit.is_zero() || self.val >= prec;
        let zb = other.unit.is_zero() || other.val >= prec;
        match (za, zb) {
            (true, true) => true,
            (false, false) => {
                if self.val != other.val {
                    return false;
                }
                let m = pow_p(self.p, prec - self.val);
                let m = m.magnitude();
                &self.unit % m == &other.unit % m
            }
            _ => false,
        }
    }
}

pub(crate) fn pow_p(p: u64, k: i64) -> BigInt {
    debug_assert!(k >= 0);
    num_traits::pow(BigInt::from(p), k as usize)
}

impl PadicField {
    pub fn new(p: u64, prec: u32) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::Precondition(format!("{p} is not a prime below 2^32")));
        }
        if prec == 0 {
            return Err(Error::Precondition("p-adic precision must be at least 1".into()));
        }
        Ok(PadicField { p, prec })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn zero_at(&self, prec: i64) -> PadicElem {
        PadicElem {
            p: self.p,
            val: prec,
            unit: BigUint::zero(),
            prec,
        }
    }

    /// Builds `p^val · num + O(p^prec)` for an arbitrary integer `num`.
    pub(crate) fn normalize(&self, mut val: i64, num: BigInt, prec: i64) -> PadicElem {
        if val >= prec || num.is_zero() {
            return self.zero_at(prec);
        }
        let mut num = num.mod_floor(&pow_p(self.p, prec - val));
        if num.is_zero() {
            return self.zero_at(prec);
        }
        val += strip_p(&mut num, self.p);
        PadicElem {
            p: self.p,
            val,
            unit: num.to_biguint().expect("reduced residue is nonnegative"),
            prec,
        }
    }

    /// Element from an integer known modulo `p^prec`.
    pub fn from_bigint(&self, n: &BigInt) -> PadicElem {
        self.normalize(0, n.clone(), self.prec as i64)
    }

    fn shifted(&self, e: &PadicElem, to: i64) -> BigInt {
        BigInt::from(e.unit.clone()) * pow_p(self.p, e.val - to)
    }
}

impl Field for PadicField {
    type Elem = PadicElem;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Padic {
            p: self.p,
            prec: self.prec,
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> PadicElem {
        self.zero_at(self.prec as i64)
    }
    fn one(&self) -> PadicElem {
        self.normalize(0, BigInt::one(), self.prec as i64)
    }
    fn from_rational(&self, r: &BigRational) -> Result<PadicElem> {
        let prec = self.prec as i64;
        let mut num = r.numer().clone();
        let mut den = r.denom().clone();
        if num.is_zero() {
            return Ok(self.zero());
        }
        let val = strip_p(&mut num, self.p) - strip_p(&mut den, self.p);
        if val >= prec {
            return Ok(self.zero());
        }
        let m = pow_p(self.p, prec - val);
        let den_inv = mod_inverse(&den, &m).ok_or(Error::DivisionByZero)?;
        Ok(self.normalize(val, num * den_inv, prec))
    }
    fn is_zero(&self, a: &PadicElem) -> bool {
        a.unit.is_zero()
    }
    fn add(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        let prec = a.prec.min(b.prec);
        let v = a.val.min(b.val);
        if v >= prec {
            return self.zero_at(prec);
        }
        let num = self.shifted(a, v) + self.shifted(b, v);
        self.normalize(v, num, prec)
    }
    fn neg(&self, a: &PadicElem) -> PadicElem {
        self.normalize(a.val, -BigInt::from(a.unit.clone()), a.prec)
    }
    fn mul(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        let prec = (a.prec + b.val).min(b.prec + a.val);
        if a.unit.is_zero() || b.unit.is_zero() {
            return self.zero_at(prec);
        }
        let num = BigInt::from(&a.unit * &b.unit);
        self.normalize(a.val + b.val, num, prec)
    }
    fn inv(&self, a: &PadicElem) -> Option<PadicElem> {
        if a.unit.is_zero() {
            return None;
        }
        let rel = a.prec - a.val;
        let m = pow_p(self.p, rel);
        let u = mod_inverse(&BigInt::from(a.unit.clone()), &m)?;
        Some(self.normalize(-a.val, u, a.prec - 2 * a.val))
    }
    fn format_elem(&self, a: &PadicElem) -> String {
        if a.unit.is_zero() {
            return "0".into();
        }
        if a.val >= 0 {
            (BigInt::from(a.unit.clone()) * pow_p(self.p, a.val)).to_string()
        } else {
            format!("{}/{}", a.unit, pow_p(self.p, -a.val))
        }
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, _height: u64) -> PadicElem {
        // Digits drawn one at a time keep this independent of BigInt sampling.
        let mut n = BigInt::zero();
        for _ in 0..self.prec {
            n = n * BigInt::from(self.p) + BigInt::from(rng.gen_range(0..self.p));
        }
        self.from_bigint(&n)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q7() -> PadicField {
        PadicField::new(7, 4).unwrap()
    }

    #[test]
    fn rational_embedding_and_valuation() {
        let k = q7();
        let a = k.parse_elem("14").unwrap();
        assert_eq!(a.valuation(), Some(1));
        let b = k.parse_elem("1/49").unwrap();
        assert_eq!(b.valuation(), Some(-2));
        assert_eq!(k.format_elem(&b), "1/49");
        assert!(k.is_zero(&k.parse_elem("2401").unwrap()));
    }

    #[test]
    fn inverse_tracks_precision() {
        let k = q7();
        let a = k.parse_elem("21").unwrap();
        let ai = k.inv(&a).unwrap();
        assert_eq!(ai.precision(), 4 - 2);
        assert!(k.is_one(&k.mul(&a, &ai)));
        assert_eq!(k.mul(&a, &ai), k.one());
    }

    #[test]
    fn cancellation_loses_relative_precision() {
        let k = q7();
        let a = k.parse_elem("1").unwrap();
        let b = k.parse_elem("-1").unwrap();
        let c = k.add(&a, &b);
        assert!(k.is_zero(&c));
        assert_eq!(c.precision(), 4);
        assert_eq!(k.neg(&k.parse_elem("3").unwrap()), k.parse_elem("2398").unwrap());
    }

    #[test]
    fn residue_of_integral_values() {
        let k = q7();
        let a = k.parse_elem("-1").unwrap();
        assert_eq!(a.residue(2), Some(BigInt::from(48)));
        assert_eq!(k.parse_elem("1/7").unwrap().residue(1), None);
    }
}
