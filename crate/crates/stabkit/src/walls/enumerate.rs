use serde::Serialize;

use super::conic::{numerical_wall, Region, WallConic};
use crate::arith::{int, rat, Scalar};
use crate::chern::ChernVector;
use crate::error::{Error, Result};
use crate::par;

const MAX_CANDIDATES: u128 = 50_000_000;

/// Lattice points `w_j = n_j / den_j` with integer `n_j ∈ [lo_j, hi_j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBox {
    pub denominators: [i64; 4],
    pub lo: [i64; 4],
    pub hi: [i64; 4],
}

impl LatticeBox {
    /// `|n_j| ≤ bound` in every coordinate.
    pub fn symmetric(bound: i64, denominators: [i64; 4]) -> Self {
        Self {
            denominators,
            lo: [-bound; 4],
            hi: [bound; 4],
        }
    }

    fn extents(&self) -> [u64; 4] {
        std::array::from_fn(|j| (self.hi[j] - self.lo[j] + 1).max(0) as u64)
    }

    pub fn len(&self) -> u128 {
        self.extents().iter().map(|&e| e as u128).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `index`-th lattice point in lexicographic order.
    fn point(&self, mut index: u64) -> ChernVector {
        let ext = self.extents();
        let mut n = [0i64; 4];
        for j in (0..4).rev() {
            n[j] = self.lo[j] + (index % ext[j]) as i64;
            index /= ext[j];
        }
        ChernVector::from_array(std::array::from_fn(|j| rat(n[j], self.denominators[j])))
    }
}

/// A splitting `v = w + (v − w)` whose numerical wall crosses the query region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub w: ChernVector,
    pub rest: ChernVector,
    pub wall: WallConic,
}

/// The five admission tests, reported separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionFilters {
    pub delta_w_nonneg: bool,
    pub delta_rest_nonneg: bool,
    pub superadditive: bool,
    pub not_proportional: bool,
    pub wall_in_region: bool,
}

impl DecompositionFilters {
    pub fn all(&self) -> bool {
        self.delta_w_nonneg
            && self.delta_rest_nonneg
            && self.superadditive
            && self.not_proportional
            && self.wall_in_region
    }
}

pub fn is_proportional(v: &ChernVector, w: &ChernVector) -> bool {
    let (a, b) = (v.to_array(), w.to_array());
    (0..4).all(|i| (0..i).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

pub fn check_filters(v: &ChernVector, w: &ChernVector, region: &Region) -> DecompositionFilters {
    let rest = v.sub(w);
    let (dw, dr) = (w.delta_bar(), rest.delta_bar());
    let zero = int(0);
    let not_proportional = !is_proportional(v, w);
    DecompositionFilters {
        delta_w_nonneg: dw >= zero,
        delta_rest_nonneg: dr >= zero,
        superadditive: &dw + &dr <= v.delta_bar(),
        not_proportional,
        wall_in_region: not_proportional && numerical_wall(v, w).meets(region),
    }
}

/// All lattice points `w` of the box passing every filter, in lexicographic order.
pub fn enumerate_wall_decompositions(
    v: &ChernVector,
    bx: &LatticeBox,
    region: &Region,
) -> Result<Vec<Decomposition>> {
    if bx.denominators.iter().any(|&d| d <= 0) {
        return Err(Error::Invalid(
            "lattice denominators must be positive".into(),
        ));
    }
    let n = bx.len();
    if n > MAX_CANDIDATES {
        return Err(Error::CapExceeded {
            what: "box size",
            value: n,
            cap: MAX_CANDIDATES,
        });
    }
    if n == 0 || region.alpha.is_empty() || region.beta.is_empty() {
        return Ok(Vec::new());
    }
    let dv = v.delta_bar();
    if Scalar::is_negative(&dv) {
        return Ok(Vec::new());
    }
    let found = par::map_range(n as usize, |i| {
        let w = bx.point(i as u64);
        let f = check_filters(v, &w, region);
        f.all().then(|| Decomposition {
            rest: v.sub(&w),
            wall: numerical_wall(v, &w),
            w,
        })
    });
    Ok(found.into_iter().flatten().collect())
}
