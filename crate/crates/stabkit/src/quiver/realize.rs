//! Tables of dimension vectors realized by semistable representations, and the BG audit.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::charge::{bg_form_violations, in_c, validate_vw, VWCharge};
use super::field::Fp;
use super::hn::is_semistable_with;
use super::lattice::EnumCaps;
use super::rep::{DimVector, Quiver, QuiverRep, RepSpace};
use crate::arith::{ser_rational, ExtSlope, Rational};
use crate::error::{Error, Result};
use crate::par;

/// How semistable representations of a fixed dimension vector are searched for.
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub field: Fp,
    /// Representation spaces with at most this many points are scanned completely.
    pub exhaustive_limit: u64,
    /// Number of random representations tried otherwise.
    pub samples: u64,
    pub seed: u64,
    pub caps: EnumCaps,
}

impl SearchConfig {
    pub fn new(field: Fp) -> Self {
        Self {
            field,
            exhaustive_limit: 1 << 16,
            samples: 2048,
            seed: 0x5eed,
            caps: EnumCaps::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// A semistable representation was found.
    Found,
    /// The whole representation space was scanned without success.
    NoneExists,
    /// Random search found nothing; the class may or may not be realizable.
    Unknown,
}

#[derive(Clone, Debug)]
pub enum Realizability {
    Found(QuiverRep),
    NoneExists,
    Unknown { samples: u64 },
}

impl Realizability {
    pub fn status(&self) -> Status {
        match self {
            Self::Found(_) => Status::Found,
            Self::NoneExists => Status::NoneExists,
            Self::Unknown { .. } => Status::Unknown,
        }
    }
}

/// Looks for a semistable representation of dimension vector `d`.
pub fn find_semistable(
    q: &Arc<Quiver>,
    z: &VWCharge,
    d: &DimVector,
    cfg: &SearchConfig,
) -> Result<Realizability> {
    let space = RepSpace::new(q.clone(), cfg.field, d)?;
    let test = |rep: QuiverRep| -> Option<Result<QuiverRep>> {
        match is_semistable_with(&rep, z, cfg.caps) {
            Ok(true) => Some(Ok(rep)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    };
    match space.len() {
        Some(n) if n <= cfg.exhaustive_limit => {
            match par::find_first(n as usize, |i| test(space.rep(i as u64))) {
                Some((_, r)) => Ok(Realizability::Found(r?)),
                None => Ok(Realizability::NoneExists),
            }
        }
        _ => {
            let p = cfg.field.p();
            let entries = space.entries();
            let found = par::find_first(cfg.samples as usize, |i| {
                let mut rng = ChaCha8Rng::seed_from_u64(
                    cfg.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
                );
                let mut rep = space.rep(0);
                for m in rep.maps.iter_mut() {
                    for x in m.data.iter_mut() {
                        *x = rng.gen_range(0..p) as u8;
                    }
                }
                debug_assert_eq!(
                    rep.maps.iter().map(|m| m.data.len()).sum::<usize>(),
                    entries
                );
                test(rep)
            });
            match found {
                Some((_, r)) => Ok(Realizability::Found(r?)),
                None => Ok(Realizability::Unknown {
                    samples: cfg.samples,
                }),
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub dims: DimVector,
    pub status: Status,
    pub slope: ExtSlope,
    pub in_c: bool,
    #[serde(skip)]
    pub witness: Option<QuiverRep>,
}

/// Realizability of every nonzero dimension vector in the box `0 ≤ d ≤ bound`.
pub fn realizable_classes(
    q: &Arc<Quiver>,
    z: &VWCharge,
    bound: &DimVector,
    cfg: &SearchConfig,
) -> Result<Vec<ClassEntry>> {
    let v = validate_vw(q, z);
    if !v.is_empty() {
        return Err(Error::Invalid(v.join("; ")));
    }
    if bound.len() != q.vertices() || !bound.is_nonnegative() {
        return Err(Error::Invalid(format!("bad dimension bound {bound}")));
    }
    let classes: Vec<DimVector> = DimVector::box_below(bound)
        .into_iter()
        .filter(|d| !d.is_zero())
        .collect();
    par::map_slice(&classes, |d| {
        let r = find_semistable(q, z, d, cfg)?;
        Ok(ClassEntry {
            dims: d.clone(),
            status: r.status(),
            slope: z.slope(d),
            in_c: in_c(z, d),
            witness: match r {
                Realizability::Found(rep) => Some(rep),
                _ => None,
            },
        })
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BgCheck {
    pub dims: DimVector,
    #[serde(serialize_with = "ser_rational")]
    pub delta: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BgAudit {
    pub form_violations: Vec<String>,
    pub checked: Vec<BgCheck>,
    pub violations: Vec<BgCheck>,
    /// Classes whose realizability could not be decided.
    pub undecided: Vec<DimVector>,
}

impl BgAudit {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `Δ ≥ 0` on every class in the box realized by a semistable representation.
pub fn bg_audit(
    q: &Arc<Quiver>,
    z: &VWCharge,
    bound: &DimVector,
    cfg: &SearchConfig,
) -> Result<BgAudit> {
    let table = realizable_classes(q, z, bound, cfg)?;
    Ok(bg_audit_from_table(z, &table))
}

pub fn bg_audit_from_table(z: &VWCharge, table: &[ClassEntry]) -> BgAudit {
    let mut checked = Vec::new();
    let mut undecided = Vec::new();
    for e in table {
        match e.status {
            Status::Found => {
                let delta = z.delta(&e.dims);
                let holds = delta >= Rational::from_integer(0.into());
                checked.push(BgCheck {
                    dims: e.dims.clone(),
                    delta,
                    holds,
                });
            }
            Status::Unknown => undecided.push(e.dims.clone()),
            Status::NoneExists => {}
        }
    }
    let violations = checked.iter().filter(|c| !c.holds).cloned().collect();
    BgAudit {
        form_violations: bg_form_violations(z),
        checked,
        violations,
        undecided,
    }
}
