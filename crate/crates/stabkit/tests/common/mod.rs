//! Brute-force oracles and random generators shared by the integration tests.
//! Nothing here calls the library's enumeration, slope or wall code.

#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabkit::arith::{int, rat};
use stabkit::quiver::{DimVector, Fp, Matrix, Quiver, QuiverRep, VWCharge};
use stabkit::{ChernVector, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-20..=20), r.gen_range(1..=12))
}

pub fn positive_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(1..=20), r.gen_range(1..=12))
}

pub fn chern(r: &mut ChaCha8Rng) -> ChernVector {
    loop {
        let v = ChernVector::new(
            small_rational(r),
            small_rational(r),
            small_rational(r),
            small_rational(r),
        );
        if !v.is_zero() {
            return v;
        }
    }
}

// ---------------------------------------------------------------------------
// Slopes with the `μ = ∞ when Im Z = 0` convention, from the raw vertex charges.

/// `(Re Z(d), Im Z(d))`.
pub fn z_of(z: &VWCharge, d: &DimVector) -> (Rational, Rational) {
    let mut re = int(0);
    let mut im = int(0);
    for (c, &k) in z.z.iter().zip(&d.0) {
        re += &c.re * int(k);
        im += &c.im * int(k);
    }
    (re, im)
}

/// `None` stands for `+∞`.
pub fn mu(z: &VWCharge, d: &DimVector) -> Option<Rational> {
    let (re, im) = z_of(z, d);
    if im.is_zero() {
        None
    } else {
        Some(-re / im)
    }
}

pub fn mu_le(a: &Option<Rational>, b: &Option<Rational>) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

pub fn mu_lt(a: &Option<Rational>, b: &Option<Rational>) -> bool {
    !mu_le(b, a)
}

pub fn sub(a: &DimVector, b: &DimVector) -> DimVector {
    DimVector(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
}

// ---------------------------------------------------------------------------
// Subrepresentations as sets of vectors.

/// Vectors of `𝔽_p^d` are indexed by reading coordinates as base-`p` digits.
fn decode(mut idx: usize, d: usize, p: usize) -> Vec<usize> {
    (0..d)
        .map(|_| {
            let x = idx % p;
            idx /= p;
            x
        })
        .collect()
}

fn encode(x: &[usize], p: usize) -> usize {
    x.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn add_scaled(a: usize, b: usize, c: usize, d: usize, p: usize) -> usize {
    let (x, y) = (decode(a, d, p), decode(b, d, p));
    encode(
        &x.iter()
            .zip(&y)
            .map(|(u, v)| (u + c * v) % p)
            .collect::<Vec<_>>(),
        p,
    )
}

type SubspaceCache = RefCell<HashMap<(usize, usize), Rc<Vec<u128>>>>;

thread_local! {
    static SUBSPACES: SubspaceCache = RefCell::new(HashMap::new());
}

/// Every subspace of `𝔽_p^d` as a bitmask over vector indices, memoized per thread.
pub fn subspaces(d: usize, p: usize) -> Rc<Vec<u128>> {
    SUBSPACES.with(|m| {
        m.borrow_mut()
            .entry((d, p))
            .or_insert_with(|| Rc::new(subspaces_uncached(d, p)))
            .clone()
    })
}

fn subspaces_uncached(d: usize, p: usize) -> Vec<u128> {
    let n = p.pow(d as u32);
    assert!(n <= 128, "vector space too large for the oracle");
    let mut seen: HashSet<u128> = HashSet::new();
    let mut frontier = vec![1u128];
    seen.insert(1);
    while let Some(s) = frontier.pop() {
        for v in 0..n {
            if s >> v & 1 == 1 {
                continue;
            }
            let mut t = 0u128;
            for a in (0..n).filter(|&a| s >> a & 1 == 1) {
                for c in 0..p {
                    t |= 1 << add_scaled(a, v, c, d, p);
                }
            }
            if seen.insert(t) {
                frontier.push(t);
            }
        }
    }
    let mut out: Vec<u128> = seen.into_iter().collect();
    out.sort_by_key(|m| (m.count_ones(), *m));
    out
}

fn log_p(count: u32, p: usize) -> i64 {
    let mut k = 0;
    let mut x = 1u32;
    while x < count {
        x *= p as u32;
        k += 1;
    }
    k
}

/// Image table of a matrix: vector index in the source to vector index in the target.
fn image_table(m: &Matrix, p: usize, ds: usize, dt: usize) -> Vec<usize> {
    (0..p.pow(ds as u32))
        .map(|i| {
            let x = decode(i, ds, p);
            let y: Vec<usize> = (0..dt)
                .map(|r| (0..ds).map(|c| m.get(r, c) as usize * x[c]).sum::<usize>() % p)
                .collect();
            encode(&y, p)
        })
        .collect()
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

/// All subrepresentations of a representation, found by testing every tuple of subspaces.
pub struct Brute {
    pub p: usize,
    pub subs: Vec<Vec<u128>>,
    pub dims: Vec<DimVector>,
    images: Vec<Vec<usize>>,
}

impl Brute {
    pub fn new(rep: &QuiverRep) -> Self {
        let p = rep.field.p() as usize;
        let arrows = rep.quiver.arrows().to_vec();
        let images: Vec<Vec<usize>> = arrows
            .iter()
            .zip(&rep.maps)
            .map(|(&(s, t), m)| image_table(m, p, rep.dims[s], rep.dims[t]))
            .collect();
        let per_vertex: Vec<Rc<Vec<u128>>> = rep.dims.iter().map(|&d| subspaces(d, p)).collect();
        let mut subs = Vec::new();
        let mut tuple = vec![0u128; rep.dims.len()];
        fn rec(
            k: usize,
            tuple: &mut Vec<u128>,
            per: &[Rc<Vec<u128>>],
            arrows: &[(usize, usize)],
            images: &[Vec<usize>],
            out: &mut Vec<Vec<u128>>,
        ) {
            if k == per.len() {
                let closed = arrows
                    .iter()
                    .zip(images)
                    .all(|(&(s, t), img)| bits(tuple[s]).all(|i| tuple[t] >> img[i] & 1 == 1));
                if closed {
                    out.push(tuple.clone());
                }
                return;
            }
            for &s in per[k].iter() {
                tuple[k] = s;
                rec(k + 1, tuple, per, arrows, images, out);
            }
        }
        rec(0, &mut tuple, &per_vertex, &arrows, &images, &mut subs);
        let dims = subs
            .iter()
            .map(|t| DimVector(t.iter().map(|m| log_p(m.count_ones(), p)).collect()))
            .collect();
        Self {
            p,
            subs,
            dims,
            images,
        }
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn contains(&self, outer: usize, inner: usize) -> bool {
        self.subs[outer]
            .iter()
            .zip(&self.subs[inner])
            .all(|(a, b)| b & !a == 0)
    }

    pub fn zero(&self) -> usize {
        self.subs
            .iter()
            .position(|t| t.iter().all(|&m| m == 1))
            .expect("zero sub")
    }

    pub fn full(&self) -> usize {
        (0..self.len())
            .max_by_key(|&i| self.dims[i].0.iter().sum::<i64>())
            .expect("nonempty")
    }

    /// Dimension of the kernel of the combined map leaving vertex `s`.
    pub fn kernel_dim(&self, rep: &QuiverRep, s: usize) -> i64 {
        let n = self.p.pow(rep.dims[s] as u32);
        let count = (0..n)
            .filter(|&i| {
                rep.quiver
                    .arrows()
                    .iter()
                    .zip(&self.images)
                    .all(|(&(a, _), img)| a != s || img[i] == 0)
            })
            .count();
        log_p(count as u32, self.p)
    }
}

/// The HN filtration by full enumeration: from `E_{i−1}`, take among all subrepresentations
/// strictly containing it the ones maximizing the slope of `G/E_{i−1}`, and of those the
/// largest. Returns the dimension vectors of `E_1, …, E_n` and checks the defining
/// properties along the way.
pub fn hn_oracle(rep: &QuiverRep, z: &VWCharge) -> Vec<DimVector> {
    let b = Brute::new(rep);
    let total = |d: &DimVector| d.0.iter().sum::<i64>();
    let full = b.full();
    let mut cur = b.zero();
    let mut steps = Vec::new();
    let mut last: Option<Option<Rational>> = None;
    while cur != full {
        let above: Vec<usize> = (0..b.len())
            .filter(|&g| g != cur && b.contains(g, cur))
            .collect();
        let slopes: HashMap<usize, Option<Rational>> = above
            .iter()
            .map(|&g| (g, mu(z, &sub(&b.dims[g], &b.dims[cur]))))
            .collect();
        let slope = |g: usize| &slopes[&g];
        let best = above
            .iter()
            .map(|&g| slope(g))
            .reduce(|a, c| if mu_lt(a, c) { c } else { a })
            .expect("proper sub")
            .clone();
        let top: Vec<usize> = above
            .iter()
            .copied()
            .filter(|&g| *slope(g) == best)
            .collect();
        let biggest = top.iter().map(|&g| total(&b.dims[g])).max().unwrap();
        let chosen: Vec<usize> = top
            .into_iter()
            .filter(|&g| total(&b.dims[g]) == biggest)
            .collect();
        assert_eq!(chosen.len(), 1, "maximal destabilizer must be unique");
        let next = chosen[0];
        // The factor is semistable: nothing between cur and next beats its slope.
        for &g in &above {
            if b.contains(next, g) {
                assert!(mu_le(slope(g), &best));
            }
        }
        if let Some(prev) = &last {
            assert!(mu_lt(&best, prev), "HN slopes must strictly decrease");
        }
        last = Some(best);
        steps.push(b.dims[next].clone());
        cur = next;
    }
    steps
}

/// Semistability by brute force: `μ(F) ≤ μ(E)` for every nonzero subrepresentation.
pub fn semistable_oracle(rep: &QuiverRep, z: &VWCharge) -> bool {
    let b = Brute::new(rep);
    let me = mu(z, &rep.dim_vector());
    let zero = b.zero();
    (0..b.len())
        .filter(|&i| i != zero)
        .all(|i| mu_le(&mu(z, &b.dims[i]), &me))
}

// ---------------------------------------------------------------------------
// Tilted slopes.

/// `μ_t† = (Im Z + t·Δ_I)/Re Z`, `None` for `Re Z = 0`.
pub fn mu_t(z: &VWCharge, t: &Rational, d: &DimVector) -> Option<Rational> {
    let (re, im) = z_of(z, d);
    let di: i64 = z.delta_i.iter().zip(&d.0).map(|(a, b)| a * b).sum();
    if re.is_zero() {
        None
    } else {
        Some((im + t * int(di)) / re)
    }
}

/// Indices (in `reps`) of the objects of `T`, and for each the `t`-verdict function.
pub struct TiltOracle {
    pub in_t: Vec<usize>,
    data: Vec<(DimVector, Vec<DimVector>)>,
}

impl TiltOracle {
    pub fn new(reps: &[QuiverRep], z: &VWCharge) -> Self {
        let mut in_t = Vec::new();
        let mut data = Vec::new();
        for (k, rep) in reps.iter().enumerate() {
            let b = Brute::new(rep);
            let quotient_ok = |g: usize| {
                (0..b.len())
                    .filter(|&h| h != g && b.contains(g, h))
                    .all(|h| {
                        let (re, im) = z_of(z, &sub(&b.dims[g], &b.dims[h]));
                        im.is_zero() || re.is_negative()
                    })
            };
            let full = b.full();
            if !quotient_ok(full) {
                continue;
            }
            let zero = b.zero();
            let t_subs: Vec<DimVector> = (0..b.len())
                .filter(|&g| g != zero && g != full && quotient_ok(g))
                .map(|g| b.dims[g].clone())
                .collect();
            in_t.push(k);
            data.push((rep.dim_vector(), t_subs));
        }
        Self { in_t, data }
    }

    /// Positions (among the objects of `T`) that are `μ_t†`-semistable.
    pub fn semistable_at(&self, z: &VWCharge, t: &Rational) -> Vec<usize> {
        (0..self.data.len())
            .filter(|&i| {
                let (v, subs) = &self.data[i];
                let me = mu_t(z, t, v);
                subs.iter().all(|d| mu_le(&mu_t(z, t, d), &me))
            })
            .collect()
    }
}

/// Points where the sampled verdict set changes, as `(t_k, t_{k+1})` brackets.
pub fn sampled_changes(
    oracle: &TiltOracle,
    z: &VWCharge,
    step: &Rational,
    samples: usize,
) -> Vec<(Rational, Rational)> {
    let ts: Vec<Rational> = (1..=samples as i64).map(|k| step * int(k)).collect();
    let sets: Vec<Vec<usize>> = ts.iter().map(|t| oracle.semistable_at(z, t)).collect();
    (1..ts.len())
        .filter(|&k| sets[k] != sets[k - 1])
        .map(|k| (ts[k - 1].clone(), ts[k].clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// Kronecker representations up to the action of GL on the first arrow.

/// Representations of the `l`-Kronecker quiver of dimension `(a, b)` whose first map is in
/// rank normal form. Every isomorphism class appears at least once.
pub fn kronecker_normal_reps(q: &Arc<Quiver>, p: u32, a: usize, b: usize) -> Vec<QuiverRep> {
    let field = Fp::new(p).unwrap();
    let l = q.arrows().len();
    let cell = a * b;
    let rest = (p as u64).pow((cell * (l - 1)) as u32);
    let mut out = Vec::new();
    for r in 0..=a.min(b) {
        let mut first = Matrix::zeros(b, a);
        for i in 0..r {
            first.set(i, i, 1);
        }
        for mut idx in 0..rest {
            let mut maps = vec![first.clone()];
            for _ in 1..l {
                let mut m = Matrix::zeros(b, a);
                for x in m.data.iter_mut() {
                    *x = (idx % p as u64) as u8;
                    idx /= p as u64;
                }
                maps.push(m);
            }
            out.push(QuiverRep::new(q.clone(), field, vec![a, b], maps).unwrap());
        }
    }
    out
}

/// Number of representations of a dimension vector.
pub fn rep_count(q: &Quiver, p: u32, d: &[usize]) -> u64 {
    let entries: usize = q.arrows().iter().map(|&(s, t)| d[s] * d[t]).sum();
    (p as u64).pow(entries as u32)
}

/// The representation with index `idx`, reading matrix entries as base-`p` digits.
pub fn rep_at(q: &Arc<Quiver>, p: u32, d: &[usize], mut idx: u64) -> QuiverRep {
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let mut m = Matrix::zeros(d[t], d[s]);
            for x in m.data.iter_mut() {
                *x = (idx % p as u64) as u8;
                idx /= p as u64;
            }
            m
        })
        .collect();
    QuiverRep::new(q.clone(), Fp::new(p).unwrap(), d.to_vec(), maps).unwrap()
}

/// All representations of a dimension vector.
pub fn all_reps(q: &Arc<Quiver>, p: u32, d: &[usize]) -> Vec<QuiverRep> {
    (0..rep_count(q, p, d))
        .map(|i| rep_at(q, p, d, i))
        .collect()
}

/// Dimension vectors with entries in `0..=max` and total dimension in `1..=total`.
pub fn dims_up_to(n: usize, max: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut cur = vec![0usize; n];
    loop {
        let s: usize = cur.iter().sum();
        if s >= 1 && s <= total {
            out.insert(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out.into_iter().collect();
            }
            cur[i] += 1;
            if cur[i] <= max {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Tilt-stability walls sampled on a grid.

/// `ν` numerator difference at `(α, β)`: `(v2^β − α²v0/6)·w1^β − (w2^β − α²w0/6)·v1^β`.
pub fn wall_function(v: &ChernVector, w: &ChernVector, alpha: f64, beta: f64) -> f64 {
    let f = |x: &Rational| {
        x.numer().to_string().parse::<f64>().unwrap()
            / x.denom().to_string().parse::<f64>().unwrap()
    };
    let twisted = |u: &ChernVector| {
        let (u0, u1, u2) = (f(&u.v0), f(&u.v1), f(&u.v2));
        (u0, u1 - beta * u0, u2 - beta * u1 + beta * beta * u0 / 2.0)
    };
    let (v0, v1, v2) = twisted(v);
    let (w0, w1, w2) = twisted(w);
    (v2 - alpha * alpha * v0 / 6.0) * w1 - (w2 - alpha * alpha * w0 / 6.0) * v1
}

/// Whether the zero set of [`wall_function`] is seen on an `n × n` grid over
/// `α ∈ (0, α_max]`, `β ∈ [β_lo, β_hi)`: a sign change between neighbours or an exact zero.
/// A function vanishing on the whole grid is treated as no wall.
pub fn grid_sees_wall(
    v: &ChernVector,
    w: &ChernVector,
    n: usize,
    alpha_max: f64,
    beta: (f64, f64),
) -> bool {
    let a = |i: usize| alpha_max * (i + 1) as f64 / n as f64;
    let b = |j: usize| beta.0 + (beta.1 - beta.0) * j as f64 / n as f64;
    let vals: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| wall_function(v, w, a(i), b(j))).collect())
        .collect();
    if vals.iter().flatten().all(|&x| x == 0.0) {
        // Equal ν everywhere: no wall.
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let x = vals[i][j];
            if x == 0.0 {
                return true;
            }
            if i + 1 < n && x * vals[i + 1][j] < 0.0 {
                return true;
            }
            if j + 1 < n && x * vals[i][j + 1] < 0.0 {
                return true;
            }
        }
    }
    false
}

pub fn delta_bar(v: &ChernVector) -> Rational {
    &v.v1 * &v.v1 - int(2) * &v.v0 * &v.v2
}

pub fn proportional(v: &ChernVector, w: &ChernVector) -> bool {
    let (a, b) = (v.to_array(), w.to_array());
    (0..4).all(|i| (0..4).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}
