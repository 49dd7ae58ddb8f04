use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::rational::{fmt_rational, Rational};
use super::{QuadExt, Scalar};

/// A slope value: a finite number or the single point `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtSlope<T = Rational> {
    Finite(T),
    Infinite,
}

impl<T> ExtSlope<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtSlope::Infinite)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtSlope::Finite(x) => Some(x),
            ExtSlope::Infinite => None,
        }
    }
}

impl<T: Scalar> ExtSlope<T> {
    /// `num/den`, infinite when `den = 0`.
    pub fn ratio(num: T, den: T) -> Self {
        if den.is_zero() {
            ExtSlope::Infinite
        } else {
            ExtSlope::Finite(num / den)
        }
    }
}

impl PartialOrd for ExtSlope<Rational> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtSlope<Rational> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtSlope::Infinite, ExtSlope::Infinite) => Ordering::Equal,
            (ExtSlope::Infinite, _) => Ordering::Greater,
            (_, ExtSlope::Infinite) => Ordering::Less,
            (ExtSlope::Finite(a), ExtSlope::Finite(b)) => a.cmp(b),
        }
    }
}

impl ExtSlope<QuadExt> {
    /// Ordering within a common radical field.
    pub fn try_cmp(&self, other: &Self) -> crate::Result<Ordering> {
        Ok(match (self, other) {
            (ExtSlope::Infinite, ExtSlope::Infinite) => Ordering::Equal,
            (ExtSlope::Infinite, _) => Ordering::Greater,
            (_, ExtSlope::Infinite) => Ordering::Less,
            (ExtSlope::Finite(a), ExtSlope::Finite(b)) => a.try_cmp(b)?,
        })
    }
}

impl fmt::Display for ExtSlope<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtSlope::Finite(x) => write!(f, "{}", fmt_rational(x)),
            ExtSlope::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtSlope<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for ExtSlope<QuadExt> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtSlope::Finite(x) => x.serialize(s),
            ExtSlope::Infinite => s.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn order_with_infinity() {
        let a = ExtSlope::Finite(rat(1, 2));
        let b = ExtSlope::Finite(int(3));
        assert!(a < b);
        assert!(b < ExtSlope::Infinite);
        assert_eq!(
            ExtSlope::<Rational>::Infinite.cmp(&ExtSlope::Infinite),
            Ordering::Equal
        );
        assert_eq!(ExtSlope::ratio(int(1), int(0)), ExtSlope::Infinite);
        assert_eq!(ExtSlope::ratio(int(1), int(4)).to_string(), "1/4");
    }
}
