//! Linear algebra over a prime field `𝔽_p`, and cached tables of all subspaces of `𝔽_p^n`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Largest number of subspaces of a single `𝔽_p^n` that is tabulated.
pub const MAX_SUBSPACES: usize = 5_000;

/// The prime field `𝔽_p`, `p < 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2
            && (2..p)
                .take_while(|k| k * k <= p)
                .all(|k| !p.is_multiple_of(k));
        if !prime || p > 251 {
            return Err(Error::Invalid(format!(
                "field size {p} must be a prime below 256"
            )));
        }
        Ok(Self { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.p - b as u32) % self.p) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p) as u8
    }

    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0);
        // a^(p-2)
        let (mut base, mut e, mut acc) = (a as u32, self.p - 2, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc as u8
    }
}

/// Dense row-major matrix over `𝔽_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.cols + c] = x;
    }

    pub fn apply(&self, f: Fp, x: &[u8]) -> Vec<u8> {
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter()
                    .zip(x)
                    .fold(0u8, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self, f: Fp) -> usize {
        let rows: Vec<Vec<u8>> = (0..self.rows)
            .map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect();
        Subspace::span(f, self.cols, &rows).dim()
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(ms: &[&Matrix]) -> Matrix {
        let cols = ms.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        for m in ms {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
        }
        Matrix {
            rows: data.len() / cols.max(1),
            cols,
            data,
        }
    }
}

/// A subspace of `𝔽_p^n`, stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub n: usize,
    pub basis: Vec<Vec<u8>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        let basis = (0..n).map(|i| unit(n, i)).collect();
        Self {
            n,
            basis,
            pivots: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduced row echelon basis of the span of `vectors`.
    pub fn span(f: Fp, n: usize, vectors: &[Vec<u8>]) -> Self {
        let mut rows: Vec<Vec<u8>> = vectors.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let inv = f.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let m = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = f.sub(*x, f.mul(m, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Self {
            n,
            basis: rows,
            pivots,
        }
    }

    /// Subtracts the basis components; the result vanishes at every pivot.
    pub fn reduce(&self, f: Fp, x: &[u8]) -> Vec<u8> {
        let mut y = x.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let m = y[c];
            if m != 0 {
                for (a, &b) in y.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(m, b));
                }
            }
        }
        y
    }

    pub fn contains(&self, f: Fp, x: &[u8]) -> bool {
        self.reduce(f, x).iter().all(|&a| a == 0)
    }

    pub fn contains_space(&self, f: Fp, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.basis.iter().all(|v| self.contains(f, v))
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coords(&self, x: &[u8]) -> Vec<u8> {
        self.pivots.iter().map(|&c| x[c]).collect()
    }

    /// Positions not occupied by pivots: a basis of a complement, used for quotients.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Image of `x` in `𝔽_p^n / self`, in the coordinates of [`Self::free_positions`].
    pub fn quotient_coords(&self, f: Fp, x: &[u8]) -> Vec<u8> {
        let y = self.reduce(f, x);
        self.free_positions().into_iter().map(|c| y[c]).collect()
    }

    fn key(&self) -> Vec<u8> {
        self.basis.concat()
    }
}

pub fn unit(n: usize, i: usize) -> Vec<u8> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Kernel of `m` as a subspace of the domain.
pub fn kernel(f: Fp, m: &Matrix) -> Subspace {
    let rows: Vec<Vec<u8>> = (0..m.rows)
        .map(|r| m.data[r * m.cols..(r + 1) * m.cols].to_vec())
        .collect();
    let ech = Subspace::span(f, m.cols, &rows);
    let free = ech.free_positions();
    let basis: Vec<Vec<u8>> = free
        .iter()
        .map(|&j| {
            let mut v = unit(m.cols, j);
            for (row, &c) in ech.basis.iter().zip(&ech.pivots) {
                v[c] = f.sub(0, row[j]);
            }
            v
        })
        .collect();
    Subspace::span(f, m.cols, &basis)
}

/// Every subspace of `𝔽_p^n` with containment relations, indexed by id.
#[derive(Debug)]
pub struct SubspaceTable {
    pub field: Fp,
    pub n: usize,
    pub spaces: Vec<Subspace>,
    index: HashMap<Vec<u8>, u32>,
    /// `contains[i]` is a bitset of the ids `j` with `spaces[j] ⊆ spaces[i]`.
    contains: Vec<Vec<u64>>,
}

impl SubspaceTable {
    fn build(field: Fp, n: usize) -> Result<Self> {
        let mut spaces = Vec::new();
        for k in 0..=n {
            for pivots in combinations(n, k) {
                enumerate_echelon(field, n, &pivots, &mut spaces);
                if spaces.len() > MAX_SUBSPACES {
                    return Err(Error::CapExceeded {
                        what: "subspaces of one vertex space",
                        value: spaces.len() as u128,
                        cap: MAX_SUBSPACES as u128,
                    });
                }
            }
        }
        let index = spaces
            .iter()
            .enumerate()
            .map(|(i, s)| (s.key(), i as u32))
            .collect();
        let words = spaces.len().div_ceil(64);
        let contains = spaces
            .iter()
            .map(|big| {
                let mut bits = vec![0u64; words];
                for (j, small) in spaces.iter().enumerate() {
                    if big.contains_space(field, small) {
                        bits[j / 64] |= 1 << (j % 64);
                    }
                }
                bits
            })
            .collect();
        Ok(Self {
            field,
            n,
            spaces,
            index,
            contains,
        })
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn id_of(&self, s: &Subspace) -> u32 {
        self.index[&s.key()]
    }

    /// Id of the span of `vectors`.
    pub fn span_id(&self, vectors: &[Vec<u8>]) -> u32 {
        self.id_of(&Subspace::span(self.field, self.n, vectors))
    }

    #[inline]
    pub fn is_sub(&self, small: u32, big: u32) -> bool {
        self.contains[big as usize][small as usize / 64] >> (small % 64) & 1 == 1
    }

    pub fn zero_id(&self) -> u32 {
        0
    }

    pub fn full_id(&self) -> u32 {
        (self.spaces.len() - 1) as u32
    }
}

type TableKey = (u32, usize);

fn tables() -> &'static RwLock<HashMap<TableKey, Arc<SubspaceTable>>> {
    static TABLES: OnceLock<RwLock<HashMap<TableKey, Arc<SubspaceTable>>>> = OnceLock::new();
    TABLES.get_or_init(Default::default)
}

/// Shared table of all subspaces of `𝔽_p^n`, built on first use.
pub fn subspace_table(field: Fp, n: usize) -> Result<Arc<SubspaceTable>> {
    let key = (field.p(), n);
    if let Some(t) = tables().read().expect("table lock").get(&key) {
        return Ok(t.clone());
    }
    let built = Arc::new(SubspaceTable::build(field, n)?);
    let mut w = tables().write().expect("table lock");
    Ok(w.entry(key).or_insert(built).clone())
}

/// Number of subspaces of `𝔽_p^n` (sum of Gaussian binomials), saturating.
pub fn subspace_count(p: u32, n: usize) -> u128 {
    let p = p as u128;
    let mut total: u128 = 0;
    for k in 0..=n {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..k {
            num = num.saturating_mul(p.saturating_pow((n - i) as u32).saturating_sub(1));
            den = den.saturating_mul(p.saturating_pow((i + 1) as u32) - 1);
        }
        total = total.saturating_add(num / den);
    }
    total
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All echelon bases with the given pivot columns.
fn enumerate_echelon(f: Fp, n: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &c)| {
            ((c + 1)..n)
                .filter(|j| !pivots.contains(j))
                .map(move |j| (r, j))
        })
        .collect();
    let total = (f.p() as u64).pow(free.len() as u32);
    for mut code in 0..total {
        let mut basis: Vec<Vec<u8>> = pivots.iter().map(|&c| unit(n, c)).collect();
        for &(r, j) in &free {
            basis[r][j] = (code % f.p() as u64) as u8;
            code /= f.p() as u64;
        }
        out.push(Subspace {
            n,
            basis,
            pivots: pivots.to_vec(),
        });
    }
}
