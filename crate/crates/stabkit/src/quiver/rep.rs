use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::field::{Fp, Matrix};
use crate::error::{Error, Result};

/// A finite acyclic quiver with vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= n || t >= n) {
            return Err(Error::Invalid(format!(
                "arrow {s}->{t} leaves the {n} vertices"
            )));
        }
        let q = Self { n, arrows };
        if q.topological_order().is_none() {
            return Err(Error::Invalid("quiver has an oriented cycle".into()));
        }
        Ok(q)
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (0..self.n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(i) = ready.pop() {
            order.push(i);
            for &(s, t) in &self.arrows {
                if s == i {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// `⟨d, e⟩ = Σ_i d_i e_i − Σ_{a: i→j} d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> i64 {
        let diag: i64 = (0..self.n).map(|i| d[i] * e[i]).sum();
        let arrows: i64 = self.arrows.iter().map(|&(i, j)| d[i] * e[j]).sum();
        diag - arrows
    }

    /// Number of matrix entries of a representation with dimension vector `d`.
    pub fn rep_space_dim(&self, d: &DimVector) -> u64 {
        self.arrows.iter().map(|&(s, t)| (d[s] * d[t]) as u64).sum()
    }

    /// Dimension vector of the simple at vertex `i`.
    pub fn simple(&self, i: usize) -> DimVector {
        DimVector::unit(self.n, i)
    }
}

/// Element of `ℤ^n`: a dimension vector, or a signed class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// All `d` with `0 ≤ d ≤ bound` componentwise, in lexicographic order.
    pub fn box_below(bound: &DimVector) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &b in &bound.0 {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (0..=b.max(0)).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }

    /// Greatest common divisor of the entries.
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| num_integer::gcd(g, x))
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimVector {
    type Output = DimVector;
    fn add(self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVector {
    type Output = DimVector;
    fn sub(self, o: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DimVector {
    type Output = DimVector;
    fn neg(self) -> DimVector {
        DimVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for DimVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A representation: a vector space `𝔽_p^{d_i}` per vertex and a `d_t × d_s` matrix per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub quiver: Arc<Quiver>,
    pub field: Fp,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl QuiverRep {
    pub fn new(
        quiver: Arc<Quiver>,
        field: Fp,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if dims.len() != quiver.vertices() || maps.len() != quiver.arrows().len() {
            return Err(Error::Invalid(
                "representation does not match the quiver".into(),
            ));
        }
        for (k, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.rows != dims[t] || m.cols != dims[s] {
                return Err(Error::Invalid(format!(
                    "arrow {k}: matrix is {}x{}, expected {}x{}",
                    m.rows, m.cols, dims[t], dims[s]
                )));
            }
            if m.data.iter().any(|&x| x as u32 >= field.p()) {
                return Err(Error::Invalid(format!(
                    "arrow {k}: entry outside F_{}",
                    field.p()
                )));
            }
        }
        Ok(Self {
            quiver,
            field,
            dims,
            maps,
        })
    }

    /// Builds a representation from small integer matrices, reducing entries mod p.
    pub fn from_ints(
        quiver: &Arc<Quiver>,
        p: u32,
        dims: &[usize],
        maps: &[Vec<Vec<i64>>],
    ) -> Result<Self> {
        let field = Fp::new(p)?;
        let mats = maps
            .iter()
            .zip(quiver.arrows())
            .map(|(rows, &(s, t))| {
                let data: Vec<u8> = rows
                    .iter()
                    .flat_map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u8))
                    .collect();
                if rows.len() != dims[t] || rows.iter().any(|r| r.len() != dims[s]) {
                    return Err(Error::Invalid(
                        "matrix shape does not match dimensions".into(),
                    ));
                }
                Ok(Matrix::from_rows(dims[t], dims[s], data))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(quiver.clone(), field, dims.to_vec(), mats)
    }

    pub fn zero_maps(quiver: &Arc<Quiver>, field: Fp, dims: &[usize]) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(dims[t], dims[s]))
            .collect();
        Self {
            quiver: quiver.clone(),
            field,
            dims: dims.to_vec(),
            maps,
        }
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The combined map `V_s → ⊕ V_t` over all arrows leaving `s`, as a stacked matrix.
    pub fn outgoing(&self, s: usize) -> Matrix {
        let ms: Vec<&Matrix> = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .filter(|((a, _), _)| *a == s)
            .map(|(_, m)| m)
            .collect();
        if ms.is_empty() {
            Matrix::zeros(0, self.dims[s])
        } else {
            Matrix::vstack(&ms)
        }
    }
}

/// The affine space of all representations with a fixed dimension vector, enumerated by
/// reading matrix entries as base-`p` digits (arrows in order, entries row-major).
#[derive(Clone, Debug)]
pub struct RepSpace {
    pub quiver: Arc<Quiver>,
    pub field: Fp,
    pub dims: Vec<usize>,
    entries: usize,
}

impl RepSpace {
    pub fn new(quiver: Arc<Quiver>, field: Fp, d: &DimVector) -> Result<Self> {
        if !d.is_nonnegative() || d.len() != quiver.vertices() {
            return Err(Error::Invalid(format!("{d} is not a dimension vector")));
        }
        let dims: Vec<usize> = d.0.iter().map(|&x| x as usize).collect();
        let entries = quiver.rep_space_dim(d) as usize;
        Ok(Self {
            quiver,
            field,
            dims,
            entries,
        })
    }

    /// Number of matrix entries `N`; the space has `p^N` points.
    pub fn entries(&self) -> usize {
        self.entries
    }

    /// `p^N`, or `None` on overflow.
    pub fn len(&self) -> Option<u64> {
        (self.field.p() as u64).checked_pow(self.entries as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rep(&self, mut index: u64) -> QuiverRep {
        let p = self.field.p() as u64;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let mut m = Matrix::zeros(self.dims[t], self.dims[s]);
                for x in m.data.iter_mut() {
                    *x = (index % p) as u8;
                    index /= p;
                }
                m
            })
            .collect();
        QuiverRep {
            quiver: self.quiver.clone(),
            field: self.field,
            dims: self.dims.clone(),
            maps,
        }
    }

    pub fn index_of(&self, rep: &QuiverRep) -> u64 {
        let p = self.field.p() as u64;
        let mut index = 0u64;
        let mut scale = 1u64;
        for m in &rep.maps {
            for &x in &m.data {
                index += x as u64 * scale;
                scale *= p;
            }
        }
        index
    }

    /// `|GL_d(𝔽_p)| = Π_i Π_{k<d_i} (p^{d_i} − p^k)`.
    pub fn group_order(&self) -> u128 {
        gl_order(self.field.p(), &self.dims)
    }
}

pub fn gl_order(p: u32, dims: &[usize]) -> u128 {
    let p = p as u128;
    dims.iter()
        .map(|&n| {
            (0..n)
                .map(|k| p.pow(n as u32) - p.pow(k as u32))
                .product::<u128>()
        })
        .product()
}
