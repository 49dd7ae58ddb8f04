//! Membership of objects in the torsion pair, the tilted heart and the slices at `t = 0`.

use serde::Serialize;

use super::charge::{in_c, VWCharge};
use super::field::kernel;
use super::hn::{hn_filtration, is_semistable};
use super::rep::{DimVector, QuiverRep};
use super::tilt::tilt_charge;
use crate::arith::{int, ComplexExact, ExtSlope, Rational};
use crate::error::{Error, Result};

/// An object `U[1] ⊕ Q` of the derived category with `U, Q` in the quiver category.
#[derive(Clone, Debug)]
pub struct HeartInput {
    pub shifted: QuiverRep,
    pub object: QuiverRep,
}

impl HeartInput {
    pub fn object(e: QuiverRep) -> Self {
        let shifted = QuiverRep::zero_maps(&e.quiver, e.field, &vec![0; e.dims.len()]);
        Self { shifted, object: e }
    }

    pub fn shifted(u: QuiverRep) -> Self {
        let object = QuiverRep::zero_maps(&u.quiver, u.field, &vec![0; u.dims.len()]);
        Self { shifted: u, object }
    }

    /// A pair glued by extension data; only the split case is supported.
    pub fn pair(u: QuiverRep, q: QuiverRep, nontrivial_extension: bool) -> Result<Self> {
        if nontrivial_extension {
            return Err(Error::NotApplicable(
                "objects with nontrivial extension data between the shifted and unshifted parts"
                    .into(),
            ));
        }
        if u.quiver != q.quiver || u.field != q.field {
            return Err(Error::Invalid(
                "the two parts live on different quivers or fields".into(),
            ));
        }
        Ok(Self {
            shifted: u,
            object: q,
        })
    }

    pub fn class(&self) -> DimVector {
        &self.object.dim_vector() - &self.shifted.dim_vector()
    }
}

/// Dimension of `Hom(S_i, E)`: vectors at `i` killed by every arrow leaving `i`.
pub fn hom_from_simple(i: usize, e: &QuiverRep) -> usize {
    if e.dims[i] == 0 {
        return 0;
    }
    kernel(e.field, &e.outgoing(i)).dim()
}

/// Dimension of `Ext¹(S_i, U) = dim Hom(S_i, U) − ⟨e_i, dim U⟩`.
pub fn ext1_from_simple(i: usize, u: &QuiverRep) -> usize {
    let chi = u.quiver.euler_form(&u.quiver.simple(i), &u.dim_vector());
    (hom_from_simple(i, u) as i64 - chi) as usize
}

#[derive(Clone, Debug, Serialize)]
pub struct HeartReport {
    pub class: DimVector,
    pub shifted_in_f: bool,
    pub object_in_t: bool,
    /// The unshifted part, viewed in the quiver category, lies in `T` / `F`.
    pub object_in_torsion: bool,
    pub object_in_free: bool,
    pub in_tilted_heart: bool,
    pub in_c: bool,
    pub in_c_dag: bool,
    /// `dim Hom(C, E)`, summed over the simples of `C`.
    pub hom_c_dim: usize,
    pub tilt_charge: ComplexExact,
    /// Phase at `t = 0`: one of `(0,1/2)`, `1/2`, `(1/2,1)`, `1`.
    pub phase: Option<&'static str>,
    /// Which description of the `t = 0` slice applies (1 to 4), and whether it is satisfied.
    pub t0_clause: Option<u8>,
    pub t0_clause_holds: bool,
}

fn in_t(rep: &QuiverRep, z: &VWCharge) -> Result<bool> {
    if rep.is_zero() {
        return Ok(true);
    }
    let hn = hn_filtration(rep, z)?;
    Ok(hn
        .factors
        .last()
        .is_some_and(|f| f.slope > ExtSlope::Finite(int(0))))
}

fn in_f(rep: &QuiverRep, z: &VWCharge) -> Result<bool> {
    if rep.is_zero() {
        return Ok(true);
    }
    let hn = hn_filtration(rep, z)?;
    Ok(hn
        .factors
        .first()
        .is_some_and(|f| f.slope <= ExtSlope::Finite(int(0))))
}

pub fn heart_membership(input: &HeartInput, z: &VWCharge, t: &Rational) -> Result<HeartReport> {
    let (u, q) = (&input.shifted, &input.object);
    let class = input.class();
    let shifted_in_f = in_f(u, z)?;
    let object_in_t = in_t(q, z)?;
    let unshifted = u.is_zero();
    let object_in_torsion = unshifted && object_in_t;
    let object_in_free = unshifted && in_f(q, z)?;
    let in_c_obj = unshifted && in_c(z, &class);
    let in_c_dag = in_c_obj && z.delta_i_of(&class) == 0;
    let hom_c_dim = z
        .kernel_vertices()
        .into_iter()
        .map(|i| ext1_from_simple(i, u) + hom_from_simple(i, q))
        .sum::<usize>();
    let z0 = tilt_charge(z, &int(0), &class)?;
    let zero = int(0);
    let (phase, clause) = if z0.is_zero() {
        (Some("1"), Some(4))
    } else if z0.im > zero {
        if z0.re > zero {
            (Some("(0,1/2)"), Some(1))
        } else if z0.re == zero {
            (Some("1/2"), Some(2))
        } else {
            (Some("(1/2,1)"), Some(3))
        }
    } else if z0.im == zero && z0.re < zero {
        (Some("1"), Some(4))
    } else {
        (None, None)
    };
    let semistable = |r: &QuiverRep| -> Result<bool> {
        if r.is_zero() {
            Ok(true)
        } else {
            is_semistable(r, z)
        }
    };
    let q_in_c = in_c(z, &q.dim_vector());
    let holds = match clause {
        Some(1) => unshifted && semistable(q)?,
        Some(2) => unshifted && semistable(q)? && hom_c_dim == 0,
        Some(3) => !unshifted && semistable(u)? && q_in_c && hom_c_dim == 0,
        Some(4) => {
            let u_ok = unshifted
                || (semistable(u)? && z.slope(&u.dim_vector()) == ExtSlope::Finite(int(0)));
            u_ok && q_in_c
        }
        _ => false,
    };
    Ok(HeartReport {
        class: class.clone(),
        shifted_in_f,
        object_in_t,
        object_in_torsion,
        object_in_free,
        in_tilted_heart: shifted_in_f && object_in_t,
        in_c: in_c_obj,
        in_c_dag,
        hom_c_dim,
        tilt_charge: tilt_charge(z, t, &class)?,
        phase,
        t0_clause: clause,
        t0_clause_holds: holds,
    })
}
