//! Elements of the Hall algebra over a finite field, stored as invariant functions on
//! representation spaces.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::par;
use crate::quiver::{
    gl_order, is_semistable_with, DimVector, EnumCaps, Fp, Quiver, QuiverRep, RepSpace, SubLattice,
    VWCharge,
};

/// Largest representation space a Hall element may be tabulated on.
pub const MAX_POINTS: u64 = 1 << 20;

fn space(q: &Arc<Quiver>, field: Fp, d: &DimVector) -> Result<(RepSpace, u64)> {
    let s = RepSpace::new(q.clone(), field, d)?;
    match s.len() {
        Some(n) if n <= MAX_POINTS => Ok((s, n)),
        _ => Err(Error::CapExceeded {
            what: "points of a representation space",
            value: (field.p() as u128).saturating_pow(s.entries() as u32),
            cap: MAX_POINTS as u128,
        }),
    }
}

/// A finitely supported function on representations, constant on isomorphism classes.
/// `values[d][x]` is the value at the point with index `x` of `Rep_d(𝔽_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    pub quiver: Arc<Quiver>,
    pub field: Fp,
    pub values: BTreeMap<DimVector, Vec<Rational>>,
}

impl HallElement {
    pub fn zero(quiver: &Arc<Quiver>, field: Fp) -> Self {
        Self {
            quiver: quiver.clone(),
            field,
            values: BTreeMap::new(),
        }
    }

    /// The class of the zero object.
    pub fn unit(quiver: &Arc<Quiver>, field: Fp) -> Self {
        let mut e = Self::zero(quiver, field);
        e.values
            .insert(DimVector::zeros(quiver.vertices()), vec![int(1)]);
        e
    }

    /// Indicator of the `μ`-semistable representations of dimension vector `d`.
    pub fn delta(quiver: &Arc<Quiver>, field: Fp, z: &VWCharge, d: &DimVector) -> Result<Self> {
        Self::tabulate(quiver, field, d, |rep| {
            Ok(if is_semistable_with(rep, z, EnumCaps::default())? {
                int(1)
            } else {
                int(0)
            })
        })
    }

    /// Tabulates `f` on every point of `Rep_d`.
    pub fn tabulate<F>(quiver: &Arc<Quiver>, field: Fp, d: &DimVector, f: F) -> Result<Self>
    where
        F: Fn(&QuiverRep) -> Result<Rational> + Sync + Send,
    {
        let (s, n) = space(quiver, field, d)?;
        let vals = par::map_range(n as usize, |x| f(&s.rep(x as u64)))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let mut e = Self::zero(quiver, field);
        if vals.iter().any(|v| !v.is_zero()) {
            e.values.insert(d.clone(), vals);
        }
        Ok(e)
    }

    pub fn support(&self) -> Vec<DimVector> {
        self.values.keys().cloned().collect()
    }

    pub fn value(&self, rep: &QuiverRep) -> Rational {
        let d = rep.dim_vector();
        match self.values.get(&d) {
            None => int(0),
            Some(vals) => {
                let s = RepSpace::new(self.quiver.clone(), self.field, &d).expect("valid dims");
                vals[s.index_of(rep) as usize].clone()
            }
        }
    }

    /// Stacky count at `d`: `Σ_x f(x) / |GL_d|`.
    pub fn count(&self, d: &DimVector) -> Rational {
        match self.values.get(d) {
            None => int(0),
            Some(vals) => {
                let dims: Vec<usize> = d.0.iter().map(|&x| x as usize).collect();
                let g = gl_order(self.field.p(), &dims);
                vals.iter().sum::<Rational>() / Rational::from_integer(g.into())
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.quiver != other.quiver || self.field != other.field {
            return Err(Error::Invalid(
                "Hall elements over different quivers or fields".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (d, vals) in &other.values {
            match out.values.get_mut(d) {
                Some(mine) => mine.iter_mut().zip(vals).for_each(|(a, b)| *a += b),
                None => {
                    out.values.insert(d.clone(), vals.clone());
                }
            }
        }
        out.values.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for vals in out.values.values_mut() {
            vals.iter_mut().for_each(|x| *x *= c);
        }
        out.values.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        out
    }

    /// `(a * b)(E) = Σ_{F ⊂ E} a(F) b(E/F)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut targets: Vec<DimVector> = Vec::new();
        for da in self.values.keys() {
            for db in other.values.keys() {
                let d = da + db;
                if !targets.contains(&d) {
                    targets.push(d);
                }
            }
        }
        targets.sort();
        let mut out = Self::zero(&self.quiver, self.field);
        for d in targets {
            let part = Self::tabulate(&self.quiver, self.field, &d, |rep| {
                let lat = SubLattice::enumerate(rep, EnumCaps::default())?;
                let mut acc = int(0);
                for i in 0..lat.len() {
                    let da = &lat.dims[i];
                    let db = &d - da;
                    if !self.values.contains_key(da) || !other.values.contains_key(&db) {
                        continue;
                    }
                    let a = self.value(&lat.sub_rep(rep, i));
                    if a.is_zero() {
                        continue;
                    }
                    acc += a * other.value(&lat.quotient_rep(rep, i));
                }
                Ok(acc)
            })?;
            out.values.extend(part.values);
        }
        Ok(out)
    }
}
