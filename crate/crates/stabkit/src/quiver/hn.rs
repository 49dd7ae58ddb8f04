//! Semistability and Harder–Narasimhan filtrations of quiver representations.

use std::cmp::Ordering;

use serde::Serialize;

use super::charge::{cmp_slope, validate_vw, VWCharge};
use super::lattice::{EnumCaps, SubLattice};
use super::rep::{DimVector, QuiverRep};
use crate::arith::ExtSlope;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnFactor {
    pub dims: DimVector,
    pub slope: ExtSlope,
}

/// `0 = E_0 ⊊ E_1 ⊊ … ⊊ E_n = E` with semistable factors of strictly decreasing slope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnFiltration {
    /// Dimension vectors of `E_1, …, E_n`.
    pub steps: Vec<DimVector>,
    pub factors: Vec<HnFactor>,
    /// Indices of `E_1, …, E_n` in the subrepresentation lattice.
    #[serde(skip)]
    pub chain: Vec<usize>,
}

fn check_charge(rep: &QuiverRep, z: &VWCharge) -> Result<()> {
    let v = validate_vw(&rep.quiver, z);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(v.join("; ")))
    }
}

/// Whether `μ(F) ≤ μ(E)` for every nonzero subrepresentation `F`.
pub fn is_semistable(rep: &QuiverRep, z: &VWCharge) -> Result<bool> {
    is_semistable_with(rep, z, EnumCaps::default())
}

pub fn is_semistable_with(rep: &QuiverRep, z: &VWCharge, caps: EnumCaps) -> Result<bool> {
    check_charge(rep, z)?;
    if rep.is_zero() {
        return Ok(true);
    }
    let lat = SubLattice::enumerate(rep, caps)?;
    let charges = lat.charges(&z.integral());
    let whole = charges[lat.full()];
    Ok((1..lat.len()).all(|i| cmp_slope(charges[i], whole) != Ordering::Greater))
}

/// HN filtration by repeatedly taking the maximal destabilizing subobject of the quotient.
pub fn hn_filtration(rep: &QuiverRep, z: &VWCharge) -> Result<HnFiltration> {
    hn_filtration_with(rep, z, EnumCaps::default())
}

pub fn hn_filtration_with(rep: &QuiverRep, z: &VWCharge, caps: EnumCaps) -> Result<HnFiltration> {
    check_charge(rep, z)?;
    let lat = SubLattice::enumerate(rep, caps)?;
    hn_from_lattice(&lat, z)
}

pub fn hn_from_lattice(lat: &SubLattice, z: &VWCharge) -> Result<HnFiltration> {
    let charges = lat.charges(&z.integral());
    let diff = |j: usize, c: usize| (charges[j].0 - charges[c].0, charges[j].1 - charges[c].1);
    let mut current = lat.zero();
    let mut chain = Vec::new();
    while current != lat.full() {
        let mut best: Option<usize> = None;
        let mut ties = false;
        for j in 0..lat.len() {
            if j == current || !lat.is_sub(current, j) {
                continue;
            }
            let Some(b) = best else {
                best = Some(j);
                continue;
            };
            let ord = cmp_slope(diff(j, current), diff(b, current))
                .then(lat.dims[j].total().cmp(&lat.dims[b].total()));
            match ord {
                Ordering::Greater => {
                    best = Some(j);
                    ties = false;
                }
                Ordering::Equal => ties = true,
                Ordering::Less => {}
            }
        }
        let b = best.expect("a proper subobject has a strictly larger one");
        if ties {
            return Err(Error::Invalid(
                "maximal destabilizing subobject is not unique".into(),
            ));
        }
        chain.push(b);
        current = b;
    }
    let steps: Vec<DimVector> = chain.iter().map(|&i| lat.dims[i].clone()).collect();
    let mut factors = Vec::with_capacity(steps.len());
    let mut prev = DimVector::zeros(lat.tables.len());
    for s in &steps {
        let d = s - &prev;
        factors.push(HnFactor {
            slope: z.slope(&d),
            dims: d,
        });
        prev = s.clone();
    }
    Ok(HnFiltration {
        steps,
        factors,
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::quiver::fixtures;

    #[test]
    fn simples_are_semistable() {
        let (q, z) = fixtures::three_vertex();
        for i in 0..3 {
            let mut dims = vec![0; 3];
            dims[i] = 1;
            let rep = QuiverRep::zero_maps(&q, crate::quiver::Fp::new(2).unwrap(), &dims);
            assert!(is_semistable(&rep, &z).unwrap());
        }
    }

    #[test]
    fn split_kronecker_filtration() {
        let (q, z) = fixtures::kronecker(2);
        // S1 ⊕ S2 with zero maps: S2 is the sub of slope 0, S1 the quotient of slope +∞,
        // so the filtration is S1 first.
        let rep = QuiverRep::from_ints(&q, 2, &[1, 1], &[vec![vec![0]], vec![vec![0]]]).unwrap();
        assert!(!is_semistable(&rep, &z).unwrap());
        let hn = hn_filtration(&rep, &z).unwrap();
        assert_eq!(hn.steps, vec![DimVector(vec![1, 0]), DimVector(vec![1, 1])]);
        assert_eq!(hn.factors[0].slope, ExtSlope::Infinite);
        assert_eq!(hn.factors[1].slope, ExtSlope::Finite(rat(0, 1)));
    }

    #[test]
    fn nonsplit_kronecker_is_semistable() {
        let (q, z) = fixtures::kronecker(2);
        let rep = QuiverRep::from_ints(&q, 2, &[1, 1], &[vec![vec![1]], vec![vec![0]]]).unwrap();
        assert!(is_semistable(&rep, &z).unwrap());
        let hn = hn_filtration(&rep, &z).unwrap();
        assert_eq!(hn.steps.len(), 1);
    }
}
