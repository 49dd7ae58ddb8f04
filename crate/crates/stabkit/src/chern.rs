//! Chern vectors `(v0, v1, v2, v3)` with `v_j = ω^{3−j}·ch_j^B`, the `B + ϑω` twist,
//! rescaling of `ω`, and the central charges, slopes and quadratic forms built from them.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::{fmt_rational, int, parse_rational_list, rat, ComplexExact, ExtSlope, QuadExt};
use crate::arith::{Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernVector<T = Rational> {
    pub v0: T,
    pub v1: T,
    pub v2: T,
    pub v3: T,
}

/// Which charge of the tilting tower to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChargeKind {
    /// `Z = −v1 + v0·i`.
    Slope,
    /// `Z_t† = (−2t·v2 + v0) + v1·i`.
    Tilt(Rational),
    /// `W_t† = ((1+t)·v1 − 18t·v3) + (6v2 − v0)·i`.
    DoubleTilt(Rational),
    /// `Z_{ω,B} = (−v3 + v1/2) + (v2 − v0/6)·i`.
    Bridgeland,
}

impl ChargeKind {
    pub fn tilt(t: Rational) -> Result<Self> {
        positive(&t)?;
        Ok(ChargeKind::Tilt(t))
    }

    pub fn double_tilt(t: Rational) -> Result<Self> {
        positive(&t)?;
        Ok(ChargeKind::DoubleTilt(t))
    }
}

fn positive(t: &Rational) -> Result<()> {
    if Scalar::is_positive(t) {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "charge parameter {} must be positive",
            fmt_rational(t)
        )))
    }
}

/// Outcome of the `v3 ≤ v1/18` test on the locus `v2 = v0/6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BmtCheck {
    pub applicable: bool,
    pub holds: bool,
}

impl ChernVector<Rational> {
    /// Parses four comma separated fractions.
    pub fn parse(s: &str) -> Result<Self> {
        let xs = parse_rational_list(s)?;
        let arr: [Rational; 4] = xs
            .try_into()
            .map_err(|_| Error::Parse(format!("{s:?}: expected four components")))?;
        Ok(Self::from_array(arr))
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        Self::from_array(v.map(int))
    }

    /// The class `(1, c, c²/2, c³/6)`.
    pub fn exponential(c: &Rational) -> Self {
        let c2 = c * c;
        let c3 = &c2 * c;
        Self::new(int(1), c.clone(), c2 * rat(1, 2), c3 * rat(1, 6))
    }

    pub fn to_quad(&self) -> ChernVector<QuadExt> {
        self.map(|x| QuadExt::from(x.clone()))
    }

    pub fn fmt_strings(&self) -> [String; 4] {
        self.to_array().map(|x| fmt_rational(&x))
    }
}

impl<T: Scalar> ChernVector<T> {
    pub fn new(v0: T, v1: T, v2: T, v3: T) -> Self {
        Self { v0, v1, v2, v3 }
    }

    pub fn from_array([v0, v1, v2, v3]: [T; 4]) -> Self {
        Self { v0, v1, v2, v3 }
    }

    pub fn to_array(&self) -> [T; 4] {
        [
            self.v0.clone(),
            self.v1.clone(),
            self.v2.clone(),
            self.v3.clone(),
        ]
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> ChernVector<U> {
        ChernVector {
            v0: f(&self.v0),
            v1: f(&self.v1),
            v2: f(&self.v2),
            v3: f(&self.v3),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = (self.to_array(), o.to_array());
        Self::from_array(std::array::from_fn(|i| a[i].clone() + b[i].clone()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let (a, b) = (self.to_array(), o.to_array());
        Self::from_array(std::array::from_fn(|i| a[i].clone() - b[i].clone()))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// The twist `B → B + ϑω`: `v_i ↦ Σ_j (−1)^j/j!·ϑ^j·v_{i−j}`.
    pub fn twist(&self, theta: &T) -> Self {
        let v = self.to_array();
        let mut coef = [T::one(), T::zero(), T::zero(), T::zero()];
        let fact = [1, 1, 2, 6];
        for j in 1..4 {
            let pow = coef[j - 1].clone() * theta.clone() * T::from_int(fact[j - 1]);
            coef[j] = -pow / T::from_int(fact[j]);
        }
        Self::from_array(std::array::from_fn(|i| {
            (0..=i).fold(T::zero(), |acc, j| acc + coef[j].clone() * v[i - j].clone())
        }))
    }

    /// Rescales `ω → sω`: `(s³v0, s²v1, s·v2, v3)`.
    pub fn scale_omega(&self, s: &T) -> Result<Self> {
        if !s.is_positive() {
            return Err(Error::NonPositiveScale);
        }
        let s2 = s.clone() * s.clone();
        let s3 = s2.clone() * s.clone();
        Ok(Self::new(
            s3 * self.v0.clone(),
            s2 * self.v1.clone(),
            s.clone() * self.v2.clone(),
            self.v3.clone(),
        ))
    }

    pub fn central_charge(&self, kind: &ChargeKind) -> ComplexExact<T> {
        let (v0, v1, v2, v3) = (&self.v0, &self.v1, &self.v2, &self.v3);
        match kind {
            ChargeKind::Slope => ComplexExact::new(-v1.clone(), v0.clone()),
            ChargeKind::Tilt(t) => {
                let t = T::from(t.clone());
                ComplexExact::new(v0.clone() - T::from_int(2) * t * v2.clone(), v1.clone())
            }
            ChargeKind::DoubleTilt(t) => {
                let t = T::from(t.clone());
                let re = (T::one() + t.clone()) * v1.clone() - T::from_int(18) * t * v3.clone();
                ComplexExact::new(re, T::from_int(6) * v2.clone() - v0.clone())
            }
            ChargeKind::Bridgeland => self.bridgeland(),
        }
    }

    fn bridgeland(&self) -> ComplexExact<T> {
        let half = T::from(rat(1, 2));
        let sixth = T::from(rat(1, 6));
        ComplexExact::new(
            half * self.v1.clone() - self.v3.clone(),
            self.v2.clone() - sixth * self.v0.clone(),
        )
    }

    /// `Im Z_{ω,B}(v) = v2 − v0/6`.
    pub fn im_bridgeland(&self) -> T {
        self.bridgeland().im
    }

    /// `−Re/Im` of the chosen charge.
    /// Rejects only the zero vector; a vanishing charge of a nonzero class has slope `+∞`.
    pub fn slope(&self, kind: &ChargeKind) -> Result<ExtSlope<T>> {
        self.nonzero()?;
        let z = self.central_charge(kind);
        Ok(ExtSlope::ratio(-z.re, z.im))
    }

    fn nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroCharge)
        } else {
            Ok(())
        }
    }

    /// Tilt slope `ν = Im Z_{ω,B}/v1`.
    pub fn nu(&self) -> Result<ExtSlope<T>> {
        self.nonzero()?;
        Ok(ExtSlope::ratio(self.im_bridgeland(), self.v1.clone()))
    }

    /// Finite `ν`, or `NotApplicable` when `v1 = 0`.
    pub fn nu_finite(&self) -> Result<T> {
        if self.v1.is_zero() {
            return Err(Error::NotApplicable("tilt slope needs v1 != 0".into()));
        }
        Ok(self.im_bridgeland() / self.v1.clone())
    }

    /// `Δ̄ = v1² − 2·v0·v2`.
    pub fn delta_bar(&self) -> T {
        self.v1.clone() * self.v1.clone() - T::from_int(2) * self.v0.clone() * self.v2.clone()
    }

    /// `∇̄ = 2·v2² − 3·v1·v3`.
    pub fn nabla_bar(&self) -> T {
        T::from_int(2) * self.v2.clone() * self.v2.clone()
            - T::from_int(3) * self.v1.clone() * self.v3.clone()
    }

    /// `Δ̄ + 6∇̄`.
    pub fn bms_discrepancy(&self) -> T {
        self.delta_bar() + T::from_int(6) * self.nabla_bar()
    }

    pub fn check_bms(&self) -> bool {
        !self.bms_discrepancy().is_negative()
    }

    pub fn check_bmt(&self) -> BmtCheck {
        let on_locus = self.v2.clone() * T::from_int(6) == self.v0;
        let applicable = on_locus && !self.v1.is_zero();
        let holds = !(T::from_int(18) * self.v3.clone() - self.v1.clone()).is_positive();
        BmtCheck { applicable, holds }
    }

    /// `ξ = (18v3 − v1)/(6v2 − v0)`.
    pub fn xi(&self) -> Result<ExtSlope<T>> {
        let num = T::from_int(18) * self.v3.clone() - self.v1.clone();
        self.ratio_over_xi_den(num)
    }

    /// `18v3/(6v2 − v0)`, the form of `ξ` meant for classes with `v1 = 0`.
    pub fn xi_restricted(&self) -> Result<ExtSlope<T>> {
        self.ratio_over_xi_den(T::from_int(18) * self.v3.clone())
    }

    fn ratio_over_xi_den(&self, num: T) -> Result<ExtSlope<T>> {
        self.nonzero()?;
        let den = T::from_int(6) * self.v2.clone() - self.v0.clone();
        Ok(ExtSlope::ratio(num, den))
    }
}

impl fmt::Display for ChernVector<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.fmt_strings().join(", "))
    }
}

impl Serialize for ChernVector<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.fmt_strings())
    }
}

impl Serialize for ChernVector<QuadExt> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.to_array())
    }
}
