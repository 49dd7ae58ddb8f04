//! Bundled quivers with stability data.

use std::sync::Arc;

use super::charge::VWCharge;
use super::rep::Quiver;
use crate::arith::{int, ComplexExact};

fn c(re: i64, im: i64) -> ComplexExact {
    ComplexExact::new(int(re), int(im))
}

/// `l` arrows `1 → 2`, `Z(S1) = 0`, `Z(S2) = i`, `(Δ_R, Δ_I) = (0, l·v2 − v1)`.
pub fn kronecker(l: usize) -> (Arc<Quiver>, VWCharge) {
    let q = Quiver::new(2, vec![(0, 1); l]).expect("acyclic");
    let z = VWCharge::new(vec![c(0, 0), c(0, 1)], vec![0, 0], vec![-1, l as i64]).expect("sizes");
    (Arc::new(q), z)
}

/// Arrows `1 → 2`, `1 → 3`, `3 → 2`; `Z = (0, i, −1 + i)`, `(Δ_R, Δ_I) = (−v3, v2 + v3 − v1)`.
pub fn three_vertex() -> (Arc<Quiver>, VWCharge) {
    let q = Quiver::new(3, vec![(0, 1), (0, 2), (2, 1)]).expect("acyclic");
    let z = VWCharge::new(
        vec![c(0, 0), c(0, 1), c(-1, 1)],
        vec![0, 0, -1],
        vec![-1, 1, 1],
    )
    .expect("sizes");
    (Arc::new(q), z)
}

/// One vertex, no arrows, `Z(S) = i`.
pub fn one_vertex() -> (Arc<Quiver>, VWCharge) {
    let q = Quiver::new(1, vec![]).expect("acyclic");
    let z = VWCharge::new(vec![c(0, 1)], vec![0], vec![0]).expect("sizes");
    (Arc::new(q), z)
}

/// The `A2` quiver `1 → 2`, with the charge of the one-arrow Kronecker fixture.
pub fn a2() -> (Arc<Quiver>, VWCharge) {
    kronecker(1)
}
