//! Exact scalars: rationals, the quadratic extensions `ℚ(√d)`, complex values and
//! extended slopes.

mod complex;
pub mod linalg;
mod quad;
mod rational;
mod slope;

pub use complex::ComplexExact;
pub use quad::{Comparison, QuadExt};
pub use rational::{
    fmt_rational, int, parse_rational, parse_rational_list, rat, ser_opt_rational, ser_rational,
    ser_rational_vec, Rational,
};
pub use slope::ExtSlope;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

/// Field elements the Chern calculus is generic over.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + From<Rational>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Sign as -1, 0 or 1.
    fn sign(&self) -> i8;
    fn is_positive(&self) -> bool {
        self.sign() > 0
    }
    fn is_negative(&self) -> bool {
        self.sign() < 0
    }
    fn from_int(n: i64) -> Self {
        Self::from(int(n))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sign(&self) -> i8 {
        if Zero::is_zero(self) {
            0
        } else if Signed::is_positive(self) {
            1
        } else {
            -1
        }
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        QuadExt::from(int(0))
    }
    fn one() -> Self {
        QuadExt::from(int(1))
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn sign(&self) -> i8 {
        self.signum()
    }
}
