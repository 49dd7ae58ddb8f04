//! Object-level `μ_t†`-stability for representations in the torsion class `T`.
//!
//! When every `Re Z(S_i) ≤ 0`, every object of `F` has `Re Z = 0`. A subobject of `E ∈ T`
//! in the tilted heart is then an extension of a subrepresentation `I ⊂ E` with `I ∈ T` by an
//! object of `F`, and the `F` part only lowers `μ_t†`. So `E` is `μ_t†`-semistable exactly when
//! `μ_t†(I) ≤ μ_t†(E)` for every nonzero proper subrepresentation `I ∈ T`.

use std::sync::Arc;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::charge::VWCharge;
use super::field::Fp;
use super::lattice::{EnumCaps, SubLattice};
use super::rep::{DimVector, Quiver, QuiverRep, RepSpace};
use super::tilt::{lambda, mu_dag, small_t_bound, SmallT};
use crate::arith::{int, ser_opt_rational, ser_rational, ser_rational_vec, ExtSlope, Rational};
use crate::error::{Error, Result};
use crate::par;

fn check_model(z: &VWCharge) -> Result<()> {
    if z.z.iter().any(|c| c.re.is_positive()) {
        return Err(Error::NotApplicable(
            "object-level tilt stability needs Re Z(S_i) <= 0 for every vertex".into(),
        ));
    }
    Ok(())
}

/// Lattice data shared by the object-level checks.
struct ObjectView {
    lat: SubLattice,
    charges: Vec<(i128, i128)>,
}

impl ObjectView {
    fn new(rep: &QuiverRep, z: &VWCharge, caps: EnumCaps) -> Result<Self> {
        let lat = SubLattice::enumerate(rep, caps)?;
        let charges = lat.charges(&z.integral());
        Ok(Self { lat, charges })
    }

    /// Subrepresentation `j` lies in `T`: every nonzero quotient `j/k` has `μ > 0`.
    fn in_t(&self, j: usize) -> bool {
        let (rj, ij) = self.charges[j];
        (0..self.lat.len()).all(|k| {
            if k == j || !self.lat.is_sub(k, j) {
                return true;
            }
            let (r, i) = (rj - self.charges[k].0, ij - self.charges[k].1);
            i == 0 || r < 0
        })
    }

    /// Nonzero proper subrepresentations lying in `T`.
    fn t_subs(&self) -> Vec<usize> {
        (1..self.lat.full()).filter(|&j| self.in_t(j)).collect()
    }
}

/// Whether `E` lies in `T`.
pub fn in_torsion(rep: &QuiverRep, z: &VWCharge) -> Result<bool> {
    let view = ObjectView::new(rep, z, EnumCaps::default())?;
    Ok(view.in_t(view.lat.full()))
}

/// `μ_t†`-semistability of `E` evaluated directly at `t`; `None` when `E ∉ T`.
pub fn object_verdict(rep: &QuiverRep, z: &VWCharge, t: &Rational) -> Result<Option<bool>> {
    check_model(z)?;
    let view = ObjectView::new(rep, z, EnumCaps::default())?;
    if !view.in_t(view.lat.full()) {
        return Ok(None);
    }
    let me = mu_dag(z, t, &rep.dim_vector())?;
    for j in view.t_subs() {
        if mu_dag(z, t, &view.lat.dims[j])? > me {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

/// Closed set of `t > 0` on which an object is `μ_t†`-semistable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableRange {
    pub empty: bool,
    /// Lower end; `None` means the range reaches down to `0`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub lo: Option<Rational>,
    /// Upper end; `None` means unbounded.
    #[serde(serialize_with = "ser_opt_rational")]
    pub hi: Option<Rational>,
}

impl StableRange {
    fn all() -> Self {
        Self {
            empty: false,
            lo: None,
            hi: None,
        }
    }

    fn none() -> Self {
        Self {
            empty: true,
            lo: None,
            hi: None,
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        !self.empty
            && t.is_positive()
            && self.lo.as_ref().is_none_or(|lo| t >= lo)
            && self.hi.as_ref().is_none_or(|hi| t <= hi)
    }
}

/// Exact range of `t` where `E ∈ T` is `μ_t†`-semistable; `None` when `E ∉ T`.
pub fn stable_range(rep: &QuiverRep, z: &VWCharge) -> Result<Option<StableRange>> {
    check_model(z)?;
    let view = ObjectView::new(rep, z, EnumCaps::default())?;
    Ok(stable_range_in(&view, z))
}

fn stable_range_in(view: &ObjectView, z: &VWCharge) -> Option<StableRange> {
    let full = view.lat.full();
    if !view.in_t(full) {
        return None;
    }
    let v = &view.lat.dims[full];
    let (re, im, di) = (z.re(v), z.im(v), int(z.delta_i_of(v)));
    if re == int(0) {
        return Some(StableRange::all());
    }
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for j in view.t_subs() {
        let d = &view.lat.dims[j];
        let rj = z.re(d);
        if rj == int(0) {
            // A subobject in C has infinite slope.
            return Some(StableRange::none());
        }
        // μ_t†(I) ≤ μ_t†(E)  ⇔  a + b·t ≤ 0 after multiplying by R_I·R_E > 0.
        let a = z.im(d) * &re - &im * &rj;
        let b = int(z.delta_i_of(d)) * &re - &di * &rj;
        if b == int(0) {
            if a.is_positive() {
                return Some(StableRange::none());
            }
        } else {
            let root = -&a / &b;
            if b.is_positive() {
                if !root.is_positive() {
                    return Some(StableRange::none());
                }
                if hi.as_ref().is_none_or(|h| root < *h) {
                    hi = Some(root);
                }
            } else if root.is_positive() && lo.as_ref().is_none_or(|l| root > *l) {
                lo = Some(root);
            }
        }
    }
    if let (Some(l), Some(h)) = (&lo, &hi) {
        if l > h {
            return Some(StableRange::none());
        }
    }
    Some(StableRange {
        empty: false,
        lo,
        hi,
    })
}

/// The representations of a dimension vector examined by the object-level checks.
#[derive(Clone, Debug)]
pub struct ObjectSample {
    pub reps: Vec<QuiverRep>,
    /// Whether every point of the representation space is included.
    pub exhaustive: bool,
}

/// All representations of `d` when there are at most `limit` of them, otherwise `samples`
/// seeded random ones.
pub fn object_sample(
    q: &Arc<Quiver>,
    field: Fp,
    d: &DimVector,
    limit: u64,
    samples: u64,
    seed: u64,
) -> Result<ObjectSample> {
    let space = RepSpace::new(q.clone(), field, d)?;
    match space.len() {
        Some(n) if n <= limit => Ok(ObjectSample {
            reps: (0..n).map(|i| space.rep(i)).collect(),
            exhaustive: true,
        }),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let reps = (0..samples)
                .map(|_| {
                    let mut rep = space.rep(0);
                    for m in rep.maps.iter_mut() {
                        for x in m.data.iter_mut() {
                            *x = rng.gen_range(0..field.p()) as u8;
                        }
                    }
                    rep
                })
                .collect();
            Ok(ObjectSample {
                reps,
                exhaustive: false,
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectWalls {
    pub v: DimVector,
    pub exhaustive: bool,
    /// Number of sampled representations lying in `T`.
    pub torsion_objects: usize,
    /// Stable ranges, indexed like the sampled representations in `T`.
    pub ranges: Vec<StableRange>,
    #[serde(skip)]
    pub reps: Vec<QuiverRep>,
    /// Positive endpoints of nonempty stable ranges, where the semistable set changes.
    #[serde(serialize_with = "ser_rational_vec")]
    pub walls: Vec<Rational>,
}

impl ObjectWalls {
    /// Indices of the objects that are `μ_t†`-semistable at `t`.
    pub fn semistable_at(&self, t: &Rational) -> Vec<usize> {
        (0..self.ranges.len())
            .filter(|&i| self.ranges[i].contains(t))
            .collect()
    }
}

pub fn object_walls(z: &VWCharge, sample: &ObjectSample) -> Result<ObjectWalls> {
    check_model(z)?;
    let Some(first) = sample.reps.first() else {
        return Err(Error::Invalid("no representations to examine".into()));
    };
    let v = first.dim_vector();
    let found: Vec<Option<StableRange>> = par::map_slice(&sample.reps, |rep| {
        let view = ObjectView::new(rep, z, EnumCaps::default())?;
        Ok(stable_range_in(&view, z))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut reps = Vec::new();
    let mut ranges = Vec::new();
    for (rep, r) in sample.reps.iter().zip(found) {
        if let Some(r) = r {
            reps.push(rep.clone());
            ranges.push(r);
        }
    }
    let mut walls: Vec<Rational> = ranges
        .iter()
        .filter(|r| !r.empty)
        .flat_map(|r| [r.lo.clone(), r.hi.clone()])
        .flatten()
        .collect();
    walls.sort();
    walls.dedup();
    Ok(ObjectWalls {
        v,
        exhaustive: sample.exhaustive,
        torsion_objects: ranges.len(),
        ranges,
        reps,
        walls,
    })
}

/// `λ`-semistability inside the slice `P₀†(φ)` containing `E ∈ T`; `None` when `E ∉ T`.
pub fn lambda_verdict(rep: &QuiverRep, z: &VWCharge) -> Result<Option<bool>> {
    check_model(z)?;
    let view = ObjectView::new(rep, z, EnumCaps::default())?;
    Ok(lambda_verdict_in(&view, z))
}

fn lambda_verdict_in(view: &ObjectView, z: &VWCharge) -> Option<bool> {
    let full = view.lat.full();
    if !view.in_t(full) {
        return None;
    }
    let v = &view.lat.dims[full];
    if z.re(v) == int(0) {
        return Some(true);
    }
    let zero = int(0);
    let mu0 = mu_dag(z, &zero, v).expect("t = 0");
    let lam = lambda(z, v);
    for j in view.t_subs() {
        let d = &view.lat.dims[j];
        let m = mu_dag(z, &zero, d).expect("t = 0");
        if m > mu0 || (m == mu0 && lambda(z, d) > lam) {
            return Some(false);
        }
    }
    Some(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallTReport {
    pub v: DimVector,
    pub t0: SmallT,
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    /// `μ₀†(v)`, which fixes the phase `φ` with `μ₀† = −1/tan(πφ)`.
    pub mu0: ExtSlope,
    /// Whether `Z_t†(v) = 0`, i.e. `v` is a class of `C†`.
    pub in_c_dag: bool,
    pub exhaustive: bool,
    pub torsion_objects: usize,
    pub mu_t_semistable: Vec<usize>,
    pub lambda_semistable: Vec<usize>,
    pub agree: bool,
    /// Some examined object of class `v` is semistable.
    pub class_semistable: bool,
}

/// Compares `μ_t†`-semistability at a small `t` with `λ`-semistability in the phase slice.
/// The `t` used is `t₀/2`, or half the first object wall when `t₀` is unbounded.
pub fn small_t_classes(z: &VWCharge, sample: &ObjectSample) -> Result<SmallTReport> {
    small_t_classes_at(z, sample, None)
}

/// [`small_t_classes`] at a chosen `t > 0`.
pub fn small_t_classes_at(
    z: &VWCharge,
    sample: &ObjectSample,
    t: Option<&Rational>,
) -> Result<SmallTReport> {
    check_model(z)?;
    let walls = object_walls(z, sample)?;
    let v = walls.v.clone();
    let t0 = small_t_bound(z, &v)?;
    let t = match (t, t0.value()) {
        (Some(t), _) if t.is_positive() => t.clone(),
        (Some(_), _) => return Err(Error::Invalid("t must be positive".into())),
        (None, Some(t0)) => t0 / int(2),
        (None, None) => walls.walls.first().map_or(int(1), |w| w / int(2)),
    };
    let in_c_dag = super::tilt::tilt_charge(z, &t, &v)?.is_zero();
    let mu_t_semistable = walls.semistable_at(&t);
    let lambdas: Vec<Option<bool>> = par::map_slice(&walls.reps, |rep| {
        ObjectView::new(rep, z, EnumCaps::default()).map(|view| lambda_verdict_in(&view, z))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let lambda_semistable: Vec<usize> = (0..lambdas.len())
        .filter(|&i| lambdas[i] == Some(true))
        .collect();
    Ok(SmallTReport {
        mu0: mu_dag(z, &int(0), &v)?,
        agree: mu_t_semistable == lambda_semistable,
        class_semistable: !mu_t_semistable.is_empty(),
        v,
        t0,
        t,
        in_c_dag,
        exhaustive: walls.exhaustive,
        torsion_objects: walls.torsion_objects,
        mu_t_semistable,
        lambda_semistable,
    })
}
