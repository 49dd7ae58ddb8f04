//! Enumeration of all subrepresentations over a finite field.

use std::sync::Arc;

use super::charge::IntCharge;
use super::field::{subspace_table, Matrix, SubspaceTable};
use super::rep::{DimVector, QuiverRep};
use crate::error::{Error, Result};

/// Limits on exhaustive subrepresentation enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumCaps {
    pub max_total_dim: usize,
    pub max_tuples: u128,
}

impl Default for EnumCaps {
    fn default() -> Self {
        Self {
            max_total_dim: 8,
            max_tuples: 2_000_000,
        }
    }
}

/// All subrepresentations of a representation, each a tuple of subspace ids per vertex.
/// The zero subrepresentation comes first and the whole representation last.
#[derive(Clone, Debug)]
pub struct SubLattice {
    pub tables: Vec<Arc<SubspaceTable>>,
    pub subs: Vec<Vec<u32>>,
    pub dims: Vec<DimVector>,
}

impl SubLattice {
    pub fn enumerate(rep: &QuiverRep, caps: EnumCaps) -> Result<Self> {
        let total = rep.total_dim();
        if total > caps.max_total_dim {
            return Err(Error::CapExceeded {
                what: "total dimension for subrepresentation enumeration",
                value: total as u128,
                cap: caps.max_total_dim as u128,
            });
        }
        let tables = rep
            .dims
            .iter()
            .map(|&n| subspace_table(rep.field, n))
            .collect::<Result<Vec<_>>>()?;
        let tuples = tables
            .iter()
            .fold(1u128, |acc, t| acc.saturating_mul(t.len() as u128));
        if tuples > caps.max_tuples {
            return Err(Error::CapExceeded {
                what: "subspace tuples",
                value: tuples,
                cap: caps.max_tuples,
            });
        }
        let arrows = rep.quiver.arrows();
        // image[a][id] = id of A_a(U) for every subspace U of the source.
        let image: Vec<Vec<u32>> = arrows
            .iter()
            .zip(&rep.maps)
            .map(|(&(s, t), m)| image_ids(rep, m, &tables[s], &tables[t]))
            .collect();
        let n = rep.dims.len();
        // Arrows checked once both endpoints are fixed, i.e. at the larger vertex index.
        let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, &(s, t)) in arrows.iter().enumerate() {
            checks[s.max(t)].push(a);
        }
        let mut subs = Vec::new();
        let mut current = vec![0u32; n];
        dfs(0, &mut current, &tables, &image, arrows, &checks, &mut subs);
        let dims = subs
            .iter()
            .map(|ids| {
                DimVector(
                    ids.iter()
                        .zip(&tables)
                        .map(|(&id, t)| t.spaces[id as usize].dim() as i64)
                        .collect(),
                )
            })
            .collect();
        Ok(Self { tables, subs, dims })
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn full(&self) -> usize {
        self.subs.len() - 1
    }

    /// Whether subrepresentation `i` is contained in subrepresentation `j`.
    #[inline]
    pub fn is_sub(&self, i: usize, j: usize) -> bool {
        self.subs[i]
            .iter()
            .zip(&self.subs[j])
            .zip(&self.tables)
            .all(|((&a, &b), t)| t.is_sub(a, b))
    }

    /// Integer charges `(Re, Im)` of every subrepresentation.
    pub fn charges(&self, z: &IntCharge) -> Vec<(i128, i128)> {
        self.dims.iter().map(|d| z.of(&d.0)).collect()
    }

    /// The subrepresentation with index `i` as a representation in its own right.
    pub fn sub_rep(&self, rep: &QuiverRep, i: usize) -> QuiverRep {
        sub_rep(rep, &self.spaces(i))
    }

    /// The quotient of the whole representation by subrepresentation `i`.
    pub fn quotient_rep(&self, rep: &QuiverRep, i: usize) -> QuiverRep {
        quotient_rep(rep, &self.spaces(i))
    }

    fn spaces(&self, i: usize) -> Vec<&super::field::Subspace> {
        self.subs[i]
            .iter()
            .zip(&self.tables)
            .map(|(&id, t)| &t.spaces[id as usize])
            .collect()
    }
}

fn image_ids(rep: &QuiverRep, m: &Matrix, src: &SubspaceTable, dst: &SubspaceTable) -> Vec<u32> {
    src.spaces
        .iter()
        .map(|u| {
            let imgs: Vec<Vec<u8>> = u.basis.iter().map(|b| m.apply(rep.field, b)).collect();
            dst.span_id(&imgs)
        })
        .collect()
}

fn dfs(
    v: usize,
    current: &mut Vec<u32>,
    tables: &[Arc<SubspaceTable>],
    image: &[Vec<u32>],
    arrows: &[(usize, usize)],
    checks: &[Vec<usize>],
    out: &mut Vec<Vec<u32>>,
) {
    if v == current.len() {
        out.push(current.clone());
        return;
    }
    for id in 0..tables[v].len() as u32 {
        current[v] = id;
        let ok = checks[v].iter().all(|&a| {
            let (s, t) = arrows[a];
            tables[t].is_sub(image[a][current[s] as usize], current[t])
        });
        if ok {
            dfs(v + 1, current, tables, image, arrows, checks, out);
        }
    }
}

/// Restriction to invariant subspaces, with maps written in the echelon bases.
pub fn sub_rep(rep: &QuiverRep, spaces: &[&super::field::Subspace]) -> QuiverRep {
    let f = rep.field;
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
    let maps = rep
        .quiver
        .arrows()
        .iter()
        .zip(&rep.maps)
        .map(|(&(s, t), m)| {
            let mut out = Matrix::zeros(dims[t], dims[s]);
            for (c, b) in spaces[s].basis.iter().enumerate() {
                let coords = spaces[t].coords(&m.apply(f, b));
                for (r, x) in coords.into_iter().enumerate() {
                    out.set(r, c, x);
                }
            }
            out
        })
        .collect();
    QuiverRep {
        quiver: rep.quiver.clone(),
        field: f,
        dims,
        maps,
    }
}

/// Quotient by invariant subspaces; the complement basis is given by the non-pivot positions.
pub fn quotient_rep(rep: &QuiverRep, spaces: &[&super::field::Subspace]) -> QuiverRep {
    let f = rep.field;
    let free: Vec<Vec<usize>> = spaces.iter().map(|s| s.free_positions()).collect();
    let dims: Vec<usize> = free.iter().map(|x| x.len()).collect();
    let maps = rep
        .quiver
        .arrows()
        .iter()
        .zip(&rep.maps)
        .map(|(&(s, t), m)| {
            let mut out = Matrix::zeros(dims[t], dims[s]);
            for (c, &pos) in free[s].iter().enumerate() {
                let e = super::field::unit(rep.dims[s], pos);
                let coords = spaces[t].quotient_coords(f, &m.apply(f, &e));
                for (r, x) in coords.into_iter().enumerate() {
                    out.set(r, c, x);
                }
            }
            out
        })
        .collect();
    QuiverRep {
        quiver: rep.quiver.clone(),
        field: f,
        dims,
        maps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::fixtures;

    #[test]
    fn kronecker_simple_sub_count() {
        let (q, _) = fixtures::kronecker(2);
        // V1 = F_2, V2 = F_2, maps (1,0)^T and (0,1)^T: no proper sub avoids V2 except those
        // containing the whole image.
        let rep = QuiverRep::from_ints(
            &q,
            2,
            &[1, 2],
            &[vec![vec![1], vec![0]], vec![vec![0], vec![1]]],
        )
        .unwrap();
        let lat = SubLattice::enumerate(&rep, EnumCaps::default()).unwrap();
        // Subs with V1' = 0: any subspace of F_2^2 (5 of them); with V1' = F_2: only V2' = F_2^2.
        assert_eq!(lat.len(), 6);
        assert!(lat.dims[lat.zero()].is_zero());
        assert_eq!(lat.dims[lat.full()], DimVector(vec![1, 2]));
        for i in 0..lat.len() {
            assert!(lat.is_sub(lat.zero(), i));
            assert!(lat.is_sub(i, lat.full()));
        }
    }

    #[test]
    fn semisimple_subs_are_all_tuples() {
        let (q, _) = fixtures::kronecker(2);
        let rep = QuiverRep::from_ints(&q, 3, &[1, 1], &[vec![vec![0]], vec![vec![0]]]).unwrap();
        let lat = SubLattice::enumerate(&rep, EnumCaps::default()).unwrap();
        assert_eq!(lat.len(), 4);
    }

    #[test]
    fn sub_and_quotient_dimensions() {
        let (q, _) = fixtures::three_vertex();
        let rep = QuiverRep::from_ints(
            &q,
            2,
            &[1, 1, 1],
            &[vec![vec![1]], vec![vec![1]], vec![vec![1]]],
        )
        .unwrap();
        let lat = SubLattice::enumerate(&rep, EnumCaps::default()).unwrap();
        for i in 0..lat.len() {
            let s = lat.sub_rep(&rep, i);
            let qt = lat.quotient_rep(&rep, i);
            assert_eq!(&s.dim_vector() + &qt.dim_vector(), rep.dim_vector());
        }
    }

    #[test]
    fn caps_enforced() {
        let (q, _) = fixtures::kronecker(2);
        let rep = QuiverRep::zero_maps(&q, super::super::field::Fp::new(2).unwrap(), &[5, 5]);
        assert!(matches!(
            SubLattice::enumerate(&rep, EnumCaps::default()),
            Err(Error::CapExceeded { .. })
        ));
    }
}
