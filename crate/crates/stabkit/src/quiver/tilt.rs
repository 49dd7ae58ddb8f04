//! The tilted charge `Z_t† = −iZ + tΔ_I`, numerical walls in `t`, and the small-`t` bound.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::charge::VWCharge;
use super::realize::{ClassEntry, Status};
use super::rep::DimVector;
use crate::arith::{int, ser_rational, ser_rational_vec, ComplexExact, ExtSlope, Rational};
use crate::error::{Error, Result};

fn check_t(t: &Rational) -> Result<()> {
    if t.is_negative() {
        Err(Error::Invalid(format!("t = {t} must be non-negative")))
    } else {
        Ok(())
    }
}

/// `Z_t†(d) = (Im Z + tΔ_I) − Re Z·i`.
pub fn tilt_charge(z: &VWCharge, t: &Rational, d: &DimVector) -> Result<ComplexExact> {
    check_t(t)?;
    Ok(ComplexExact::new(
        z.im(d) + t * int(z.delta_i_of(d)),
        -z.re(d),
    ))
}

/// `μ_t† = (Im Z + tΔ_I)/Re Z`, infinite when `Re Z = 0`.
pub fn mu_dag(z: &VWCharge, t: &Rational, d: &DimVector) -> Result<ExtSlope> {
    check_t(t)?;
    Ok(ExtSlope::ratio(z.im(d) + t * int(z.delta_i_of(d)), z.re(d)))
}

/// `λ = Δ_I / Re Z`, infinite when `Re Z = 0`.
pub fn lambda(z: &VWCharge, d: &DimVector) -> ExtSlope {
    ExtSlope::ratio(int(z.delta_i_of(d)), z.re(d))
}

/// Parameter `t > 0` at which `μ_t†(a) = μ_t†(b)`, when both real parts are negative and the
/// two slopes cross at a single point.
pub fn crossing(z: &VWCharge, a: &DimVector, b: &DimVector) -> Option<Rational> {
    let (ra, rb) = (z.re(a), z.re(b));
    if !ra.is_negative() || !rb.is_negative() {
        return None;
    }
    let (ia, ib) = (z.im(a), z.im(b));
    let (da, db) = (int(z.delta_i_of(a)), int(z.delta_i_of(b)));
    let den = &da * &rb - &db * &ra;
    if den.is_zero() {
        return None;
    }
    let t = (ib * &ra - ia * &rb) / den;
    t.is_positive().then_some(t)
}

/// The bound below which no wall can occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmallT {
    Finite(Rational),
    /// No finite bound is needed, for the stated reason.
    Unbounded(String),
}

impl SmallT {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Self::Finite(t) => Some(t),
            Self::Unbounded(_) => None,
        }
    }

    /// Whether `0 < t < t₀`.
    pub fn contains(&self, t: &Rational) -> bool {
        t.is_positive() && self.value().is_none_or(|t0| t < t0)
    }
}

impl Serialize for SmallT {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(2))?;
        match self {
            Self::Finite(t) => {
                m.serialize_entry("value", &crate::arith::fmt_rational(t))?;
                m.serialize_entry("unbounded", &false)?;
            }
            Self::Unbounded(why) => {
                m.serialize_entry("value", "inf")?;
                m.serialize_entry("reason", why)?;
            }
        }
        m.end()
    }
}

fn denominators_lcm<'a>(xs: impl Iterator<Item = &'a Rational>) -> BigInt {
    xs.fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()))
}

/// `t₀ = 4 / (Δ(v) r² s² R²)` with `rIm Z` and `sRe Z` integral and `R = Re Z(v)`.
pub fn small_t_bound(z: &VWCharge, v: &DimVector) -> Result<SmallT> {
    let delta = z.delta(v);
    let re = z.re(v);
    if re.is_zero() {
        return Ok(SmallT::Unbounded(
            "Re Z(v) = 0, so every slope mu_t is infinite".into(),
        ));
    }
    if delta.is_negative() {
        return Err(Error::Invalid(format!("Delta(v) = {delta} < 0")));
    }
    if delta.is_zero() {
        return Ok(SmallT::Unbounded(
            "Delta(v) = 0, so no wall is possible".into(),
        ));
    }
    let r = Rational::from_integer(denominators_lcm(z.z.iter().map(|c| &c.im)));
    let s = Rational::from_integer(denominators_lcm(z.z.iter().map(|c| &c.re)));
    let scale = &r * &r * &s * &s * &re * &re;
    Ok(SmallT::Finite(int(4) / (delta * scale)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassWall {
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    pub sub: DimVector,
    pub quotient: DimVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct TWalls {
    pub v: DimVector,
    #[serde(serialize_with = "ser_rational")]
    pub re_z: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub delta: Rational,
    #[serde(serialize_with = "ser_rational_vec")]
    pub walls: Vec<Rational>,
    pub sources: Vec<ClassWall>,
    pub t0: SmallT,
    pub no_wall_below_t0: bool,
}

/// Candidate classes of objects in the tilted heart: `+d` for semistable `d` with `μ(d) > 0`
/// and `−d` for semistable `d` with `μ(d) ≤ 0`, restricted to `Re Z < 0`.
pub fn tilted_candidates(z: &VWCharge, table: &[ClassEntry]) -> Vec<DimVector> {
    let zero = ExtSlope::Finite(int(0));
    let mut out = BTreeSet::new();
    for e in table.iter().filter(|e| e.status == Status::Found) {
        let c = if e.slope > zero {
            e.dims.clone()
        } else {
            -&e.dims
        };
        if z.re(&c).is_negative() {
            out.insert(c.0);
        }
    }
    out.into_iter().map(DimVector).collect()
}

/// Walls in `t` for the class `v`: values where `μ_t†(c₁) = μ_t†(c₂)` for a decomposition
/// `v = c₁ + c₂` into candidate classes.
pub fn t_walls(z: &VWCharge, v: &DimVector, table: &[ClassEntry]) -> Result<TWalls> {
    if v.len() != z.len() {
        return Err(Error::Invalid(format!("class {v} has the wrong length")));
    }
    let t0 = small_t_bound(z, v)?;
    let re_z = z.re(v);
    let delta = z.delta(v);
    let mut sources = Vec::new();
    if !re_z.is_zero() {
        let cands = tilted_candidates(z, table);
        let set: BTreeSet<&Vec<i64>> = cands.iter().map(|c| &c.0).collect();
        for c1 in &cands {
            let c2 = v - c1;
            if c2.is_zero() || !set.contains(&c2.0) {
                continue;
            }
            if let Some(t) = crossing(z, c1, &c2) {
                sources.push(ClassWall {
                    t,
                    sub: c1.clone(),
                    quotient: c2,
                });
            }
        }
    }
    sources.sort_by(|a, b| a.t.cmp(&b.t).then(a.sub.0.cmp(&b.sub.0)));
    let mut walls: Vec<Rational> = sources.iter().map(|w| w.t.clone()).collect();
    walls.dedup();
    let no_wall_below_t0 = walls.iter().all(|w| !t0.contains(w));
    Ok(TWalls {
        v: v.clone(),
        re_z,
        delta,
        walls,
        sources,
        t0,
        no_wall_below_t0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaInequality {
    /// Why the check was not carried out, if it was not.
    pub skipped: Option<String>,
    #[serde(serialize_with = "ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

/// `Δ(v₁+v₂) ≥ Δ(v₁) + Δ(v₂) + (R₁R₂/t)(I₁/R₁ − I₂/R₂)²` for classes of equal `μ_t†`.
pub fn delta_inequality_check(
    z: &VWCharge,
    v1: &DimVector,
    v2: &DimVector,
    t: &Rational,
) -> Result<DeltaInequality> {
    if !t.is_positive() {
        return Err(Error::Invalid("t must be positive".into()));
    }
    let skip = |why: &str| DeltaInequality {
        skipped: Some(why.into()),
        lhs: int(0),
        rhs: int(0),
        holds: false,
    };
    if v1.is_zero() || v2.is_zero() {
        return Ok(skip("degenerate: one of the classes is zero"));
    }
    let (r1, r2) = (z.re(v1), z.re(v2));
    if !r1.is_negative() || !r2.is_negative() {
        return Ok(skip("precondition: Re Z(v_i) < 0 fails"));
    }
    if mu_dag(z, t, v1)? != mu_dag(z, t, v2)? {
        return Ok(skip("precondition: mu_t(v1) != mu_t(v2)"));
    }
    let (d1, d2) = (z.delta(v1), z.delta(v2));
    if d1.is_negative() || d2.is_negative() {
        return Ok(skip("precondition: Delta(v_i) >= 0 fails"));
    }
    let (i1, i2) = (z.im(v1), z.im(v2));
    let gap = &i1 / &r1 - &i2 / &r2;
    let rhs = d1 + d2 + &r1 * &r2 / t * &gap * &gap;
    let lhs = z.delta(&(v1 + v2));
    Ok(DeltaInequality {
        skipped: None,
        holds: lhs >= rhs,
        lhs,
        rhs,
    })
}
