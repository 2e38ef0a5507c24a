//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! Endpoints are `m · 2^e` with an arbitrary-precision mantissa rounded to a
//! fixed number of bits, so values such as `2^(10^9)` stay cheap while every
//! operation still returns an enclosure of the exact result.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `m · 2^e`. Equality and ordering compare values, not representations.
#[derive(Debug, Clone)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { m: BigInt::zero(), e: 0 }
    }

    pub fn new(m: BigInt, e: i64) -> Self {
        Dyadic { m, e }
    }

    pub fn from_int(n: &BigInt) -> Self {
        Dyadic { m: n.clone(), e: 0 }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.m.sign()
    }

    fn bits(&self) -> u64 {
        self.m.bits()
    }

    /// Position just above the leading bit: `2^(top-1) ≤ |x| < 2^top`.
    fn top(&self) -> i64 {
        self.e + self.bits() as i64
    }

    /// Rounds to at most `prec` mantissa bits, toward +∞ if `up`.
    pub fn round(&self, prec: u32, up: bool) -> Dyadic {
        let b = self.bits();
        if b <= prec as u64 {
            return self.clone();
        }
        let shift = b - prec as u64;
        let d = pow2(shift);
        let (q, r) = self.m.div_mod_floor(&d);
        let q = if up && !r.is_zero() { q + 1 } else { q };
        Dyadic { m: q, e: self.e + shift as i64 }
    }

    fn neg(&self) -> Dyadic {
        Dyadic { m: -&self.m, e: self.e }
    }

    fn add_exact(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &o.m << (o.e - e) as u64;
        Dyadic { m: a + b, e }
    }

    /// `self + o` rounded to `prec` bits; avoids materializing huge
    /// mantissas when the exponents are far apart.
    pub fn add_round(&self, o: &Dyadic, prec: u32, up: bool) -> Dyadic {
        if self.is_zero() {
            return o.round(prec, up);
        }
        if o.is_zero() {
            return self.round(prec, up);
        }
        let (big, small) = if self.top() >= o.top() { (self, o) } else { (o, self) };
        let guard = prec as i64 + 4;
        if big.top() - small.top() > guard {
            // |small| is below one unit in the last place of `big` widened to
            // `guard` bits, so it only decides the rounding direction.
            let widen = (guard as u64).saturating_sub(big.bits());
            let mut m = &big.m << widen;
            let e = big.e - widen as i64;
            let small_pos = small.m.is_positive();
            if up && small_pos {
                m += 1;
            } else if !up && !small_pos {
                m -= 1;
            }
            return Dyadic { m, e }.round(prec, up);
        }
        self.add_exact(o).round(prec, up)
    }

    pub fn mul_round(&self, o: &Dyadic, prec: u32, up: bool) -> Dyadic {
        Dyadic {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
        .round(prec, up)
    }

    /// `self / o` rounded to `prec` bits. `o` must be nonzero.
    pub fn div_round(&self, o: &Dyadic, prec: u32, up: bool) -> Dyadic {
        assert!(!o.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let s = (prec as i64 + o.bits() as i64 - self.bits() as i64 + 2).max(0) as u64;
        let num = &self.m << s;
        let (q, r) = num.div_mod_floor(&o.m);
        let q = if up && !r.is_zero() { q + 1 } else { q };
        Dyadic {
            m: q,
            e: self.e - s as i64 - o.e,
        }
        .round(prec, up)
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        Dyadic { m: self.m.clone(), e: self.e + k }
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> BigInt {
        if self.e >= 0 {
            &self.m << self.e as u64
        } else {
            self.m.div_floor(&pow2((-self.e) as u64))
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Nearest `f64`, saturating to ±∞.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, false);
        let m = r.m.to_f64().unwrap_or(0.0);
        if r.e > 2000 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if r.e < -2000 {
            return 0.0;
        }
        m * 2f64.powi(r.e as i32)
    }

    /// `log2 |x|` to about double precision (for diagnostics and sizing).
    pub fn log2_approx(&self) -> f64 {
        let r = self.round(60, false);
        r.m.abs().to_f64().unwrap_or(1.0).log2() + r.e as f64
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        let (sa, sb) = (self.m.sign(), o.m.sign());
        if sa != sb || sa == Sign::NoSign {
            return sign_rank(sa).cmp(&sign_rank(sb));
        }
        let mag = if self.top() != o.top() {
            self.top().cmp(&o.top())
        } else {
            let e = self.e.min(o.e);
            let a = self.m.abs() << (self.e - e) as u64;
            let b = o.m.abs() << (o.e - e) as u64;
            a.cmp(&b)
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// A closed interval `[lo, hi]` with endpoints rounded outward to `prec` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval {
            lo: lo.round(prec, false),
            hi: hi.round(prec, true),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Interval::new(x.clone(), x, prec)
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(n), prec)
    }

    pub fn from_uint(n: &BigUint, prec: u32) -> Self {
        Interval::from_int(&BigInt::from(n.clone()), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Interval::from_int(&BigInt::from(n), prec)
    }

    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        let a = Dyadic::from_int(&BigInt::from(num));
        let b = Dyadic::from_int(&BigInt::from(den));
        let (b, a) = if den < 0 { (b.neg(), a.neg()) } else { (b, a) };
        Interval {
            lo: a.div_round(&b, prec, false),
            hi: a.div_round(&b, prec, true),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    fn p2(&self, o: &Interval) -> u32 {
        self.prec.max(o.prec)
    }

    pub fn add(&self, o: &Interval) -> Interval {
        let p = self.p2(o);
        Interval {
            lo: self.lo.add_round(&o.lo, p, false),
            hi: self.hi.add_round(&o.hi, p, true),
            prec: p,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = self.p2(o);
        let cands = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = cands.iter().map(|(a, b)| a.mul_round(b, p, false)).min().expect("four");
        let hi = cands.iter().map(|(a, b)| a.mul_round(b, p, true)).max().expect("four");
        Interval { lo, hi, prec: p }
    }

    pub fn mul_int(&self, k: i64) -> Interval {
        self.mul(&Interval::from_i64(k, self.prec))
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    /// `None` when `o` contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let p = self.p2(o);
        let cands = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = cands.iter().map(|(a, b)| a.div_round(b, p, false)).min().expect("four");
        let hi = cands.iter().map(|(a, b)| a.div_round(b, p, true)).max().expect("four");
        Some(Interval { lo, hi, prec: p })
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != Sign::Plus && self.hi.sign() != Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.lo.sign() == Sign::Plus
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_int(&self, n: &BigInt) -> bool {
        self.contains(&Dyadic::from_int(n))
    }

    /// Whether `o ⊆ self`.
    pub fn encloses(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    /// Certainly `self ≤ o` (every element of `self` is at most every
    /// element of `o`).
    pub fn certainly_le(&self, o: &Interval) -> bool {
        self.hi <= o.lo
    }

    pub fn certainly_lt(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    /// Hull of both intervals.
    pub fn hull(&self, o: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
            prec: self.p2(o),
        }
    }

    pub fn powi(&self, mut n: u64) -> Interval {
        let mut acc = Interval::from_i64(1, self.prec);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = if base.lo.sign() == Sign::Minus && base.hi.sign() == Sign::Plus {
                    let m = base.mul(&base);
                    Interval {
                        lo: Dyadic::zero(),
                        hi: m.hi,
                        prec: m.prec,
                    }
                } else {
                    base.mul(&base)
                };
            }
        }
        acc
    }

    /// Square root; requires `lo ≥ 0`.
    pub fn sqrt(&self) -> Interval {
        assert!(self.lo.sign() != Sign::Minus, "square root of a negative interval");
        Interval {
            lo: sqrt_round(&self.lo, self.prec, false),
            hi: sqrt_round(&self.hi, self.prec, true),
            prec: self.prec,
        }
    }

    /// Natural logarithm; requires `lo > 0`.
    pub fn ln(&self) -> Interval {
        assert!(self.is_positive(), "logarithm of a non-positive interval");
        let a = ln_point(&self.lo, self.prec);
        let b = ln_point(&self.hi, self.prec);
        Interval {
            lo: a.lo,
            hi: b.hi,
            prec: self.prec,
        }
    }

    pub fn exp(&self) -> Interval {
        let a = exp_point(&self.lo, self.prec);
        let b = exp_point(&self.hi, self.prec);
        Interval {
            lo: a.lo,
            hi: b.hi,
            prec: self.prec,
        }
    }

    /// `self^e = exp(e · ln self)` for a positive base.
    pub fn pow(&self, e: &Interval) -> Interval {
        e.mul(&self.ln()).exp()
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add_round(&self.hi, self.prec + 2, false).mul_pow2(-1)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.add_round(&self.lo.neg(), self.prec + 2, true)
    }

    /// `width / |midpoint|` as a float (∞ when the midpoint is zero).
    pub fn relative_width(&self) -> f64 {
        let mid = self.midpoint();
        if mid.is_zero() {
            return f64::INFINITY;
        }
        let w = self.width();
        if w.is_zero() {
            return 0.0;
        }
        (w.log2_approx() - mid.log2_approx()).exp2()
    }

    /// Decimal rendering `[lo, hi]` with `digits` significant digits,
    /// rounded outward.
    pub fn to_decimal_pair(&self, digits: usize) -> (String, String) {
        (to_scientific(&self.lo, digits, false), to_scientific(&self.hi, digits, true))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_decimal_pair(20);
        write!(f, "[{a}, {b}]")
    }
}

fn sqrt_round(x: &Dyadic, prec: u32, up: bool) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    // Scale so the exponent is even and the mantissa has about 2·prec bits.
    let want = 2 * prec as i64 + 4;
    let mut s = (want - x.bits() as i64).max(0);
    if (x.e - s).rem_euclid(2) != 0 {
        s += 1;
    }
    let m = &x.m << s as u64;
    let r = m.sqrt();
    let exact = &r * &r == m;
    let r = if up && !exact { r + 1 } else { r };
    Dyadic {
        m: r,
        e: (x.e - s) / 2,
    }
    .round(prec, up)
}

/// `Σ_{j≥0} t^{2j+1} / (2j+1)` for `0 ≤ t ≤ 1/2`, with the tail enclosed.
fn atanh_series(t: &Interval, wp: u32) -> Interval {
    let t2 = t.mul(t);
    let mut pw = t.clone();
    let mut sum = Interval::from_i64(0, wp);
    let eps = Dyadic::new(BigInt::one(), -(wp as i64) - 8);
    let mut j = 0i64;
    loop {
        let term = pw.div(&Interval::from_i64(2 * j + 1, wp)).expect("positive");
        sum = sum.add(&term);
        pw = pw.mul(&t2);
        j += 1;
        if pw.hi < eps {
            break;
        }
    }
    // Remaining terms are bounded by t^{2j+1} / (1 - t²) ≤ (4/3) t^{2j+1}.
    let tail = pw.hi.mul_round(&Dyadic::new(BigInt::from(3), -1), wp, true);
    Interval {
        lo: sum.lo,
        hi: sum.hi.add_round(&tail, wp, true),
        prec: wp,
    }
}

pub fn ln2(prec: u32) -> Interval {
    let wp = prec + 16;
    atanh_series(&Interval::from_ratio(1, 3, wp), wp).mul_pow2(1).with_precision(prec)
}

fn ln_point(x: &Dyadic, prec: u32) -> Interval {
    let wp = prec + 32;
    // x = y · 2^k with 1 ≤ y < 2.
    let k = x.top() - 1;
    let y = Interval::point(Dyadic::new(x.m.clone(), x.e - k), wp + x.bits() as u32);
    let one = Interval::from_i64(1, wp);
    let t = y.sub(&one).div(&y.add(&one)).expect("positive").with_precision(wp);
    let ln_y = atanh_series(&t, wp).mul_pow2(1);
    let k_ln2 = ln2(wp + 64).mul(&Interval::from_i64(k, wp + 64));
    ln_y.add(&k_ln2).with_precision(prec)
}

fn exp_point(a: &Dyadic, prec: u32) -> Interval {
    // Extra bits to absorb the error of the range reduction a - k·ln 2.
    let mag = a.top().max(0) as u32;
    let wp = prec + 32 + mag;
    let l2 = ln2(wp);
    let k = a.div_round(&l2.lo, 64, false).floor().to_i64().expect("exponent range");
    let r = Interval::point(a.clone(), wp).sub(&l2.mul(&Interval::from_i64(k, wp)));
    // Taylor series of exp(r) for |r| ≤ 1.
    let mut sum = Interval::from_i64(1, wp);
    let mut term = Interval::from_i64(1, wp);
    let eps = Dyadic::new(BigInt::one(), -(wp as i64) - 8);
    let mut j = 1;
    loop {
        term = term.mul(&r).div(&Interval::from_i64(j, wp)).expect("positive");
        sum = sum.add(&term);
        j += 1;
        let big = term.hi.clone().max(term.lo.neg());
        if big < eps {
            break;
        }
    }
    // |tail| ≤ 2 |last term|.
    let big = term.hi.clone().max(term.lo.neg()).mul_pow2(1);
    let sum = Interval {
        lo: sum.lo.add_round(&big.neg(), wp, false),
        hi: sum.hi.add_round(&big, wp, true),
        prec: wp,
    };
    sum.mul_pow2(k).with_precision(prec)
}

/// `φ = (1 + √5) / 2`.
pub fn golden(prec: u32) -> Interval {
    let wp = prec + 8;
    Interval::from_i64(5, wp)
        .sqrt()
        .add(&Interval::from_i64(1, wp))
        .mul_pow2(-1)
        .with_precision(prec)
}

/// Scientific notation `d.ddd…e±N`, rounded down or up.
fn to_scientific(x: &Dyadic, digits: usize, up: bool) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.sign() == Sign::Minus;
    let ax = if neg { x.neg() } else { x.clone() };
    // Rounding direction on the magnitude.
    let mag_up = up != neg;
    let digits = digits.max(1);
    let est = (ax.log2_approx() * std::f64::consts::LOG10_2).floor() as i64;
    let wp = (digits as f64 * 3.33) as u32 + 64 + (est.unsigned_abs() as f64).log2().max(0.0) as u32;
    for e10 in [est - 1, est, est + 1] {
        let shift = digits as i64 - 1 - e10;
        let ten = Interval::from_i64(10, wp);
        let scale = if shift >= 0 {
            if shift < 4096 {
                ten.powi(shift as u64)
            } else {
                ten.ln().mul(&Interval::from_i64(shift, wp)).exp()
            }
        } else if -shift < 4096 {
            Interval::from_i64(1, wp).div(&ten.powi((-shift) as u64)).expect("nonzero")
        } else {
            ten.ln().mul(&Interval::from_i64(shift, wp)).exp()
        };
        let v = Interval::point(ax.clone(), wp).mul(&scale);
        let n = if mag_up { v.hi.ceil() } else { v.lo.floor() };
        let s = n.to_string();
        if s.len() == digits {
            let (a, b) = s.split_at(1);
            let b = b.trim_end_matches('0');
            let sign = if neg { "-" } else { "" };
            return if b.is_empty() {
                format!("{sign}{a}e{e10}")
            } else {
                format!("{sign}{a}.{b}e{e10}")
            };
        }
    }
    // Unreachable in practice; fall back to the raw dyadic.
    format!("{}*2^{}", x.m, x.e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt5_and_golden() {
        let g = golden(128);
        assert!(g.relative_width() < 1e-30);
        let g2 = g.mul(&g);
        let g1 = g.add(&Interval::from_i64(1, 128));
        // φ² = φ + 1: the enclosures overlap.
        assert!(g2.lo <= g1.hi && g1.lo <= g2.hi);
        assert!((g.midpoint().to_f64() - 1.618033988749895).abs() < 1e-15);
    }

    #[test]
    fn ln_exp_roundtrip() {
        let x = Interval::from_i64(15, 128);
        let l = x.ln();
        assert!((l.midpoint().to_f64() - 15f64.ln()).abs() < 1e-14);
        let back = l.exp();
        assert!(back.contains_int(&BigInt::from(15)));
        assert!(back.relative_width() < 1e-30);
        let l2 = ln2(128);
        assert!((l2.midpoint().to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
    }

    #[test]
    fn huge_exponents() {
        // 2^(10^6) is exact as a dyadic and must lie in its exp/ln enclosure.
        let e = Interval::from_i64(1_000_000, 128).mul(&ln2(128));
        let v = e.exp();
        assert!(v.contains(&Dyadic::new(BigInt::one(), 1_000_000)));
    }

    #[test]
    fn decimal_rendering() {
        let x = Interval::from_ratio(1, 3, 128);
        let (a, b) = x.to_decimal_pair(5);
        assert_eq!(a, "3.3333e-1");
        assert_eq!(b, "3.3334e-1");
        let (a, _) = Interval::from_i64(8, 64).to_decimal_pair(3);
        assert_eq!(a, "8e0");
    }

    #[test]
    fn far_apart_addition_rounds_outward() {
        let big = Dyadic::new(BigInt::one(), 10_000);
        let tiny = Dyadic::new(BigInt::one(), -10_000);
        let up = big.add_round(&tiny, 64, true);
        let down = big.add_round(&tiny, 64, false);
        assert!(up > big);
        assert_eq!(down, big);
    }
}
