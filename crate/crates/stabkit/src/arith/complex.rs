use std::fmt;

use serde::{Serialize, Serializer};

use super::rational::{fmt_rational, Rational};
use super::slope::ExtSlope;
use super::QuadExt;
use super::Scalar;
use crate::error::{Error, Result};

/// Complex number with exact real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexExact<T = Rational> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> ComplexExact<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `−Re/Im`, infinite when `Im = 0`; an error when the value is zero.
    pub fn slope(&self) -> Result<ExtSlope<T>> {
        if self.is_zero() {
            return Err(Error::ZeroCharge);
        }
        if self.im.is_zero() {
            return Ok(ExtSlope::Infinite);
        }
        Ok(ExtSlope::Finite(-self.re.clone() / self.im.clone()))
    }

    pub fn abs_sq(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    /// Whether the value lies in `ℍ ∪ ℝ_{≤0}`.
    pub fn in_closed_half_plane(&self) -> bool {
        self.im.is_positive() || (self.im.is_zero() && !self.re.is_positive())
    }
}

impl<T: Scalar> std::ops::Add for ComplexExact<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl<T: fmt::Display> fmt::Display for ComplexExact<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})i", self.re, self.im)
    }
}

impl Serialize for ComplexExact<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Complex", 2)?;
        st.serialize_field("re", &fmt_rational(&self.re))?;
        st.serialize_field("im", &fmt_rational(&self.im))?;
        st.end()
    }
}

impl Serialize for ComplexExact<QuadExt> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Complex", 2)?;
        st.serialize_field("re", &self.re)?;
        st.serialize_field("im", &self.im)?;
        st.end()
    }
}
