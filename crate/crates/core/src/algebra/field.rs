//! Exact scalar fields.
//!
//! Three concrete families are supported: the rationals, prime fields
//! `F_p` and truncated `p`-adic numbers. Every field implements [`Field`],
//! which exposes arithmetic on an associated element type; the field value
//! itself carries the parameters (`p`, precision) so elements stay small.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::padic::PadicField;
use crate::error::{Error, Result};

/// Arithmetic over an exact field.
///
/// Elements are plain values; all operations go through the field so that
/// moduli and precisions live in one place.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    /// Zero for characteristic zero.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero (or for a p-adic zero at its precision).
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Random element; `height` bounds the size of rational samples and is
    /// ignored by finite fields.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers embed in every supported field")
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        self.from_rational(&parse_rational(s)?)
    }

    /// `Σ a_i b_i`.
    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }
}

/// Textual identity of a field: `Q`, `Fp:<p>` or `Qp:<p>:prec=<k>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    PrimeField { p: u64 },
    Padic { p: u64, prec: u32 },
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::PrimeField { p } => *p,
            _ => 0,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField { p } => write!(f, "Fp:{p}"),
            FieldDescriptor::Padic { p, prec } => write!(f, "Qp:{p}:prec={prec}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::parse(format!("bad field descriptor `{s}`"));
        match parts.as_slice() {
            ["Fp", p] => {
                let p: u64 = p.parse().map_err(|_| bad())?;
                PrimeField::new(p)?;
                Ok(FieldDescriptor::PrimeField { p })
            }
            ["Qp", p, prec] => {
                let p: u64 = p.parse().map_err(|_| bad())?;
                let prec = prec.strip_prefix("prec=").ok_or_else(bad)?;
                let prec: u32 = prec.parse().map_err(|_| bad())?;
                PadicField::new(p, prec)?;
                Ok(FieldDescriptor::Padic { p, prec })
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `"-3"`, `"3/4"`, `"1.25"` or `"+7"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::parse(format!("bad number `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    let (neg, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((n, d)) = body.split_once('/') {
        if !digits(n) || !digits(d) {
            return Err(bad());
        }
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        BigRational::new(n.parse().map_err(|_| bad())?, d)
    } else if let Some((i, frac)) = body.split_once('.') {
        if !(digits(i) || i.is_empty()) || !digits(frac) || (i.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let whole: BigInt = format!("{i}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        BigRational::new(whole, scale)
    } else {
        if !digits(body) {
            return Err(bad());
        }
        BigRational::from_integer(body.parse().map_err(|_| bad())?)
    };
    Ok(if neg { -value } else { value })
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> BigRational {
        let h = height.clamp(1, i64::MAX as u64) as i64;
        self.from_i64(rng.gen_range(-h..=h))
    }
}

/// The prime field `F_p` for a prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::Precondition(format!("prime {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
}

/// Trial division; `p` is below `2^32` so this is at most 65536 steps.
pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::PrimeField { p: self.p }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_rational(&self, r: &BigRational) -> Result<u64> {
        let d = self.reduce_bigint(r.denom());
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.reduce_bigint(r.numer());
        Ok(n * mod_pow(d, self.p - 2, self.p) % self.p)
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| mod_pow(*a, self.p - 2, self.p))
    }
    fn pow(&self, a: &u64, e: u32) -> u64 {
        mod_pow(*a, e as u64, self.p)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, _height: u64) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// Removes every factor `p` from `n`, returning the count.
pub(crate) fn strip_p(n: &mut BigInt, p: u64) -> i64 {
    if n.is_zero() {
        return 0;
    }
    let pb = BigInt::from(p);
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return k;
        }
        *n = q;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        for s in ["Q", "Fp:5", "Qp:7:prec=3"] {
            let d: FieldDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("Fp:6".parse::<FieldDescriptor>().is_err());
        assert!("Qp:7:3".parse::<FieldDescriptor>().is_err());
        assert!("R".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn rational_parsing() {
        let r = |s| parse_rational(s).unwrap();
        assert_eq!(r("-3"), BigRational::from_integer((-3).into()));
        assert_eq!(r("6/4"), BigRational::new(3.into(), 2.into()));
        assert_eq!(r("1.25"), BigRational::new(5.into(), 4.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn prime_field_inverse_of_rational() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.parse_elem("1/2").unwrap(), 4);
        assert_eq!(f.parse_elem("-1").unwrap(), 6);
        assert!(f.parse_elem("1/7").is_err());
        assert!(PrimeField::new(9).is_err());
    }
}
