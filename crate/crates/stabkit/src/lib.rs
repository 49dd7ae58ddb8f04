//! Exact calculus for stability conditions.
//!
//! * [`chern`]: Chern vectors, twists and the tower of central charges on a 3-fold.
//! * [`walls`]: tilt walls as exact conics, the limit parameter `β̄` and destabilizer search.
//! * [`quiver`]: very weak stability on quiver representations over small prime fields.
//! * [`hall`]: Hall-algebra point counts and naive DT invariants for quiver fixtures.

pub mod arith;
pub mod chern;
pub mod error;
pub mod hall;
pub mod par;
pub mod quiver;
pub mod walls;

pub use arith::{ComplexExact, ExtSlope, QuadExt, Rational};
pub use chern::{ChargeKind, ChernVector};
pub use error::{Error, Result};
