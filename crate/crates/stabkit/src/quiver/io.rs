//! Text format for quivers, charges and representations.
//!
//! ```toml
//! [quiver]
//! vertices = 2
//! arrows = [[1, 2], [1, 2]]      # 1-based (source, target)
//!
//! [charge]
//! z = [["0", "0"], ["0", "1"]]   # (Re, Im) per vertex, integers or "p/q"
//! delta_r = [0, 0]
//! delta_i = [-1, 2]
//!
//! [rep]
//! field = 2
//! dims = [2, 1]
//! maps = [[[1, 0]], [[0, 1]]]    # one d_target x d_source grid per arrow
//! ```
//!
//! An optional `[shifted]` table with the same keys as `[rep]` describes the part placed in
//! degree −1 for heart membership; `extension = true` there marks glued data, which is refused.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::charge::VWCharge;
use super::rep::{Quiver, QuiverRep};
use crate::arith::{fmt_rational, parse_rational, ComplexExact, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> Result<Rational> {
        match self {
            Self::Int(k) => Ok(Rational::from_integer((*k).into())),
            Self::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ChargeSpec {
    pub z: Vec<[Number; 2]>,
    pub delta_r: Vec<i64>,
    pub delta_i: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub field: u32,
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub extension: bool,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub quiver: QuiverSpec,
    pub charge: Option<ChargeSpec>,
    pub rep: Option<RepSpec>,
    pub shifted: Option<RepSpec>,
}

impl QuiverFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn quiver(&self) -> Result<Arc<Quiver>> {
        let n = self.quiver.vertices;
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|&[s, t]| {
                if s == 0 || t == 0 || s > n || t > n {
                    Err(Error::Invalid(format!("arrow ({s}, {t}) outside 1..={n}")))
                } else {
                    Ok((s - 1, t - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(Quiver::new(n, arrows)?))
    }

    pub fn charge(&self) -> Result<VWCharge> {
        let c = self
            .charge
            .as_ref()
            .ok_or_else(|| Error::Invalid("missing [charge]".into()))?;
        let z =
            c.z.iter()
                .map(|[re, im]| Ok(ComplexExact::new(re.value()?, im.value()?)))
                .collect::<Result<Vec<_>>>()?;
        if z.len() != self.quiver.vertices {
            return Err(Error::Invalid(
                "charge length differs from vertex count".into(),
            ));
        }
        VWCharge::new(z, c.delta_r.clone(), c.delta_i.clone())
    }

    pub fn rep(&self, q: &Arc<Quiver>) -> Result<QuiverRep> {
        let r = self
            .rep
            .as_ref()
            .ok_or_else(|| Error::Invalid("missing [rep]".into()))?;
        build_rep(q, r)
    }

    pub fn shifted(&self, q: &Arc<Quiver>) -> Result<Option<(QuiverRep, bool)>> {
        self.shifted
            .as_ref()
            .map(|r| Ok((build_rep(q, r)?, r.extension)))
            .transpose()
    }

    pub fn from_parts(q: &Quiver, z: Option<&VWCharge>, rep: Option<&QuiverRep>) -> Self {
        Self {
            quiver: QuiverSpec {
                vertices: q.vertices(),
                arrows: q.arrows().iter().map(|&(s, t)| [s + 1, t + 1]).collect(),
            },
            charge: z.map(|z| ChargeSpec {
                z: z.z
                    .iter()
                    .map(|c| {
                        [
                            Number::Text(fmt_rational(&c.re)),
                            Number::Text(fmt_rational(&c.im)),
                        ]
                    })
                    .collect(),
                delta_r: z.delta_r.clone(),
                delta_i: z.delta_i.clone(),
            }),
            rep: rep.map(rep_spec),
            shifted: None,
        }
    }
}

fn build_rep(q: &Arc<Quiver>, r: &RepSpec) -> Result<QuiverRep> {
    if r.dims.len() != q.vertices() || r.maps.len() != q.arrows().len() {
        return Err(Error::Invalid("[rep] does not match the quiver".into()));
    }
    QuiverRep::from_ints(q, r.field, &r.dims, &r.maps)
}

fn rep_spec(rep: &QuiverRep) -> RepSpec {
    RepSpec {
        field: rep.field.p(),
        dims: rep.dims.clone(),
        maps: rep
            .maps
            .iter()
            .map(|m| {
                (0..m.rows)
                    .map(|r| (0..m.cols).map(|c| m.get(r, c) as i64).collect())
                    .collect()
            })
            .collect(),
        extension: false,
    }
}
