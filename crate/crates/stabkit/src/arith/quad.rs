use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

/// Trial-division budget when extracting the square-free part of a radicand.
const TRIAL_LIMIT: u64 = 20_000_000;

/// `a + b·√d` with `d` square-free. Rational values are stored with `b = 0, d = 0`,
/// so every number has exactly one representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u64,
}

/// Result of comparing two real algebraic numbers. `exact` is false when the
/// order was decided by interval enclosures of the radicals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub ordering: Ordering,
    pub exact: bool,
}

impl QuadExt {
    /// Builds `a + b·√d` for any non-negative integer `d`, pulling square factors out of `d`.
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        let (k, d) = square_free_decompose(&BigUint::from(d))?;
        let k = Rational::from_integer(BigInt::from_biguint(Sign::Plus, k));
        Ok(Self::canonical(a, b * k, d))
    }

    pub fn rational(a: Rational) -> Self {
        Self::canonical(a, Rational::zero(), 0)
    }

    /// Exact square root of a non-negative rational.
    pub fn sqrt(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand(fmt_rational(r)));
        }
        if r.is_zero() {
            return Ok(Self::rational(Rational::zero()));
        }
        let (kn, dn) = square_free_decompose(&r.numer().magnitude().clone())?;
        let (km, dm) = square_free_decompose(&r.denom().magnitude().clone())?;
        let (g, d) = mul_square_free(dn, dm)?;
        // sqrt(n/m) = kn·sqrt(dn·dm) / (km·dm)
        let num = BigInt::from_biguint(Sign::Plus, kn) * BigInt::from(g);
        let den = BigInt::from_biguint(Sign::Plus, km) * BigInt::from(dm);
        Ok(Self::canonical(
            Rational::zero(),
            Rational::new(num, den),
            d,
        ))
    }

    fn canonical(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() || d == 0 {
            Self {
                a,
                b: Rational::zero(),
                d: 0,
            }
        } else if d == 1 {
            Self {
                a: a + b,
                b: Rational::zero(),
                d: 0,
            }
        } else {
            Self { a, b, d }
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Square-free radicand; 0 for rational values.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// `a² − b²d`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.into())
    }

    fn common_radical(&self, other: &Self) -> Option<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Some(d),
            (x, y) if x == y => Some(x),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self
            .common_radical(other)
            .ok_or(Error::MixedRadical(self.d, other.d))?;
        Ok(Self::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other.clone())
    }

    /// Product; two pure surds over different radicands multiply into a third field.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        match self.common_radical(other) {
            Some(d) => {
                let dq = Rational::from_integer(d.into());
                let a = &self.a * &other.a + &self.b * &other.b * dq;
                let b = &self.a * &other.b + &self.b * &other.a;
                Ok(Self::canonical(a, b, d))
            }
            None if self.a.is_zero() && other.a.is_zero() => {
                let (g, d) = mul_square_free(self.d, other.d)?;
                let b = &self.b * &other.b * Rational::from_integer(g.into());
                Ok(Self::canonical(Rational::zero(), b, d))
            }
            None => Err(Error::MixedRadical(self.d, other.d)),
        }
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::canonical(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn square(&self) -> Self {
        self.try_mul(self).expect("same field")
    }

    /// Exact sign as -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(self.d.into());
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Exact ordering for numbers in a common field.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.try_sub(other)?.signum().cmp(&0))
    }

    /// Ordering of any two values; mixed radicals are separated by refining rational
    /// enclosures of the square roots.
    pub fn compare(&self, other: &Self) -> Comparison {
        if let Ok(ordering) = self.try_cmp(other) {
            return Comparison {
                ordering,
                exact: true,
            };
        }
        let mut bits = 128;
        loop {
            let (xl, xh) = self.enclosure(bits);
            let (yl, yh) = other.enclosure(bits);
            if xh < yl {
                return Comparison {
                    ordering: Ordering::Less,
                    exact: false,
                };
            }
            if yh < xl {
                return Comparison {
                    ordering: Ordering::Greater,
                    exact: false,
                };
            }
            // Distinct radicands with nonzero surd parts can never be equal.
            bits *= 2;
            assert!(
                bits <= 1 << 20,
                "interval refinement did not separate values"
            );
        }
    }

    /// Rational interval `[lo, hi]` containing the value, with radical error `2^{-bits}·|b|`.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        if self.d == 0 {
            return (self.a.clone(), self.a.clone());
        }
        let scaled = BigUint::from(self.d) << (2 * bits as usize);
        let s = scaled.sqrt();
        let den = BigInt::one() << bits as usize;
        let lo = Rational::new(BigInt::from_biguint(Sign::Plus, s.clone()), den.clone());
        let hi = Rational::new(BigInt::from_biguint(Sign::Plus, s + 1u32), den);
        let (p, q) = (&self.a + &self.b * &lo, &self.a + &self.b * &hi);
        if p <= q {
            (p, q)
        } else {
            (q, p)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.d == 0 {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Writes `n = k²·d` with `d` square-free.
pub(crate) fn square_free_decompose(n: &BigUint) -> Result<(BigUint, u64)> {
    if n.is_zero() {
        return Ok((BigUint::zero(), 0));
    }
    let too_large = || Error::RadicandTooLarge(n.to_string());
    let mut m = n.clone();
    let mut k = BigUint::one();
    let mut d = BigUint::one();
    let mut p: u64 = 2;
    while BigUint::from(p).pow(3) <= m {
        if p > TRIAL_LIMIT {
            return Err(too_large());
        }
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            k *= bp.pow(e / 2);
            if e % 2 == 1 {
                d *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // What remains has at most two prime factors.
    let r = m.sqrt();
    if &r * &r == m {
        k *= r;
    } else {
        d *= m;
    }
    let d = d.to_u64().ok_or_else(too_large)?;
    Ok((k, d))
}

/// For square-free `x, y`: `x·y = g²·d` with `d` square-free.
fn mul_square_free(x: u64, y: u64) -> Result<(u64, u64)> {
    let g = x.gcd(&y);
    let d = (x / g)
        .checked_mul(y / g)
        .ok_or_else(|| Error::RadicandTooLarge(format!("{x}*{y}")))?;
    Ok((g, d))
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: &QuadExt) -> QuadExt {
                (&self).$m(rhs)
            }
        }
        impl $tr<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $m(self, rhs: QuadExt) -> QuadExt {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let surd = if self.b.is_one() {
            format!("√{}", self.d)
        } else {
            format!("({})√{}", fmt_rational(&self.b), self.d)
        };
        if self.a.is_zero() {
            write!(f, "{surd}")
        } else {
            write!(f, "{} + {surd}", fmt_rational(&self.a))
        }
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq([
            fmt_rational(&self.a),
            fmt_rational(&self.b),
            self.d.to_string(),
        ])
    }
}
