//! The logarithm-type combination `ε(v) = Σ_l (−1)^{l−1}/l Σ δ(v₁) * ⋯ * δ(v_l)` over ordered
//! decompositions of `v` into classes of the same phase.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::element::HallElement;
use crate::arith::{rat, Rational};
use crate::error::{Error, Result};
use crate::quiver::{DimVector, Fp, Quiver, VWCharge};

/// Whether `Z(w)` is a positive multiple of `Z(v)`.
pub fn same_phase(z: &VWCharge, v: &DimVector, w: &DimVector) -> bool {
    let (a, b) = (z.charge(v), z.charge(w));
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let cross = &a.re * &b.im - &a.im * &b.re;
    let dot = &a.re * &b.re + &a.im * &b.im;
    cross.is_zero() && dot.is_positive()
}

/// One summand: the ordered parts and the coefficient `(−1)^{l−1}/l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTerm {
    pub parts: Vec<DimVector>,
    pub coefficient: Rational,
}

/// Every ordered decomposition of `v` into nonzero classes on the ray of `Z(v)`.
pub fn epsilon_terms(z: &VWCharge, v: &DimVector) -> Result<Vec<EpsilonTerm>> {
    if !v.is_nonnegative() || v.is_zero() {
        return Err(Error::Invalid(format!(
            "{v} is not a nonzero dimension vector"
        )));
    }
    if z.in_kernel(v) {
        return Err(Error::NotApplicable(format!("Z({v}) = 0 has no phase")));
    }
    let ray: Vec<DimVector> = DimVector::box_below(v)
        .into_iter()
        .filter(|w| !w.is_zero() && same_phase(z, v, w))
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    compositions(v, &ray, &mut stack, &mut out);
    Ok(out
        .into_iter()
        .map(|parts| {
            let l = parts.len() as i64;
            let sign = if l % 2 == 1 { 1 } else { -1 };
            EpsilonTerm {
                parts,
                coefficient: rat(sign, l),
            }
        })
        .collect())
}

fn compositions(
    rest: &DimVector,
    ray: &[DimVector],
    stack: &mut Vec<DimVector>,
    out: &mut Vec<Vec<DimVector>>,
) {
    if rest.is_zero() {
        out.push(stack.clone());
        return;
    }
    for w in ray {
        if w.le(rest) {
            stack.push(w.clone());
            compositions(&(rest - w), ray, stack, out);
            stack.pop();
        }
    }
}

/// `ε(v)` over one prime field.
pub fn epsilon(q: &Arc<Quiver>, z: &VWCharge, v: &DimVector, field: Fp) -> Result<HallElement> {
    let terms = epsilon_terms(z, v)?;
    let mut deltas: BTreeMap<DimVector, HallElement> = BTreeMap::new();
    let mut total = HallElement::zero(q, field);
    for term in &terms {
        let mut acc = HallElement::unit(q, field);
        for part in &term.parts {
            if !deltas.contains_key(part) {
                deltas.insert(part.clone(), HallElement::delta(q, field, z, part)?);
            }
            acc = acc.product(&deltas[part])?;
            if acc.values.is_empty() {
                break;
            }
        }
        total = total.add(&acc.scale(&term.coefficient))?;
    }
    Ok(total)
}

/// Stacky count of `ε(v)` at `v`.
pub fn epsilon_count(q: &Arc<Quiver>, z: &VWCharge, v: &DimVector, field: Fp) -> Result<Rational> {
    Ok(epsilon(q, z, v, field)?.count(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::quiver::fixtures;

    #[test]
    fn primitive_is_single_term() {
        let (_, z) = fixtures::kronecker(2);
        let t = epsilon_terms(&z, &DimVector(vec![1, 1])).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].coefficient, int(1));
    }

    #[test]
    fn one_vertex_double() {
        let (q, z) = fixtures::one_vertex();
        let v = DimVector(vec![2]);
        let terms = epsilon_terms(&z, &v).unwrap();
        assert_eq!(terms.len(), 2);
        let pair = terms.iter().find(|t| t.parts.len() == 2).unwrap();
        assert_eq!(pair.coefficient, rat(-1, 2));
        assert_eq!(
            epsilon_count(&q, &z, &v, Fp::new(2).unwrap()).unwrap(),
            rat(-1, 12)
        );
        assert_eq!(
            epsilon_count(&q, &z, &v, Fp::new(3).unwrap()).unwrap(),
            rat(-1, 48)
        );
    }
}
