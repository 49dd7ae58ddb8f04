//! Counts over several primes, rational-function reconstruction in `q`, and naive DT invariants.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::element::MAX_POINTS;
use super::epsilon::epsilon_count;
use crate::arith::linalg::nullspace;
use crate::arith::{int, ser_rational, ser_rational_vec, Rational};
use crate::error::{Error, Result};
use crate::quiver::{subspace_count, DimVector, Fp, Quiver, VWCharge, MAX_SUBSPACES};

pub const SAMPLE_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Exact stacky counts indexed by the field size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountSeries {
    pub samples: BTreeMap<u32, Rational>,
}

/// `P(q)/Q(q)` with coefficients listed from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalFunction {
    #[serde(serialize_with = "ser_rational_vec")]
    pub numerator: Vec<Rational>,
    #[serde(serialize_with = "ser_rational_vec")]
    pub denominator: Vec<Rational>,
}

fn eval(poly: &[Rational], q: &Rational) -> Rational {
    poly.iter().rev().fold(int(0), |acc, c| acc * q + c)
}

/// Divides by `(q − 1)` when `1` is a root; returns `None` otherwise.
fn divide_by_q_minus_one(poly: &[Rational]) -> Option<Vec<Rational>> {
    if !eval(poly, &int(1)).is_zero() || poly.len() < 2 {
        return None;
    }
    // Synthetic division from the top coefficient.
    let n = poly.len() - 1;
    let mut out = vec![int(0); n];
    let mut carry = int(0);
    for k in (1..=n).rev() {
        carry = &poly[k] + carry;
        out[k - 1] = carry.clone();
    }
    Some(out)
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

impl RationalFunction {
    pub fn eval(&self, q: &Rational) -> Option<Rational> {
        let den = eval(&self.denominator, q);
        (!den.is_zero()).then(|| eval(&self.numerator, q) / den)
    }

    /// Value at `q = 1` after cancelling common factors of `q − 1`.
    pub fn limit_at_one(&self) -> Result<Rational> {
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        loop {
            let d1 = eval(&den, &int(1));
            if !d1.is_zero() {
                return Ok(eval(&num, &int(1)) / d1);
            }
            match (divide_by_q_minus_one(&num), divide_by_q_minus_one(&den)) {
                (Some(n), Some(d)) => {
                    num = n;
                    den = d;
                }
                _ if num.iter().all(|c| c.is_zero()) => return Ok(int(0)),
                _ => return Err(Error::Reconstruction("pole at q = 1".into())),
            }
        }
    }

    /// Smallest-degree `P/Q` with `deg P ≤ max_num`, `deg Q ≤ max_den` matching every sample,
    /// fitted with at least one equation to spare.
    pub fn fit(samples: &BTreeMap<u32, Rational>, max_num: usize, max_den: usize) -> Result<Self> {
        let pts: Vec<(Rational, &Rational)> =
            samples.iter().map(|(&p, y)| (int(p as i64), y)).collect();
        for total in 0..=(max_num + max_den) {
            for n in 0..=total.min(max_den) {
                let m = total - n;
                if m > max_num || m + n + 2 > pts.len() {
                    continue;
                }
                // Unknowns: P coefficients then Q coefficients; rows P(q) − y·Q(q) = 0.
                let rows: Vec<Vec<Rational>> = pts
                    .iter()
                    .map(|(q, y)| {
                        let mut row = Vec::with_capacity(m + n + 2);
                        let mut pw = int(1);
                        for _ in 0..=m {
                            row.push(pw.clone());
                            pw *= q;
                        }
                        let mut pw = int(1);
                        for _ in 0..=n {
                            row.push(-(*y) * &pw);
                            pw *= q;
                        }
                        row
                    })
                    .collect();
                for sol in nullspace(&rows, m + n + 2) {
                    let f = RationalFunction {
                        numerator: trim(sol[..=m].to_vec()),
                        denominator: trim(sol[m + 1..].to_vec()),
                    };
                    if f.denominator.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    if pts.iter().all(|(q, y)| f.eval(q).is_some_and(|v| v == **y)) {
                        return Ok(f.normalized());
                    }
                }
            }
        }
        Err(Error::Reconstruction(format!(
            "no rational function with degrees <= ({max_num}, {max_den}) fits {} samples",
            pts.len()
        )))
    }

    fn normalized(mut self) -> Self {
        let lead = self
            .denominator
            .last()
            .cloned()
            .unwrap_or_else(Rational::one);
        for c in self.numerator.iter_mut().chain(self.denominator.iter_mut()) {
            *c /= &lead;
        }
        self
    }
}

/// Primes from the sample set for which the counting stays within the enumeration budget.
pub fn usable_primes(q: &Quiver, v: &DimVector) -> Vec<u32> {
    let n = q.rep_space_dim(v) as u32;
    let max_dim = v.0.iter().copied().max().unwrap_or(0) as usize;
    SAMPLE_PRIMES
        .iter()
        .copied()
        .filter(|&p| (p as u64).checked_pow(n).is_some_and(|x| x <= MAX_POINTS))
        .filter(|&p| subspace_count(p, max_dim) <= MAX_SUBSPACES as u128)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DtSample {
    pub prime: u32,
    #[serde(serialize_with = "ser_rational")]
    pub count: Rational,
    /// `(q − 1)` times the count.
    #[serde(serialize_with = "ser_rational")]
    pub scaled: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct DtReport {
    pub dims: DimVector,
    pub samples: Vec<DtSample>,
    pub reconstructed: RationalFunction,
    /// Coefficient of `c_v` under the point-count integration map.
    #[serde(serialize_with = "ser_rational")]
    pub integral: Rational,
    /// Naive DT invariant: Euler-characteristic specialization without Behrend weights.
    #[serde(serialize_with = "ser_rational")]
    pub naive_dt: Rational,
}

/// Counts of `ε(v)` at the given primes.
pub fn epsilon_series(
    q: &Arc<Quiver>,
    z: &VWCharge,
    v: &DimVector,
    primes: &[u32],
) -> Result<CountSeries> {
    let mut samples = BTreeMap::new();
    for &p in primes {
        samples.insert(p, epsilon_count(q, z, v, Fp::new(p)?)?);
    }
    Ok(CountSeries { samples })
}

/// `DT(v) = lim_{q→1} (q − 1)·#ε(v)(𝔽_q)`; the integration map sends `ε(v)` to `−DT(v)·c_v`.
pub fn dt_invariant(q: &Arc<Quiver>, z: &VWCharge, v: &DimVector) -> Result<DtReport> {
    let primes = usable_primes(q, v);
    if primes.len() < 2 {
        return Err(Error::Reconstruction(format!(
            "only {} prime(s) fit the enumeration budget for {v}",
            primes.len()
        )));
    }
    let series = epsilon_series(q, z, v, &primes)?;
    let scaled: BTreeMap<u32, Rational> = series
        .samples
        .iter()
        .map(|(&p, c)| (p, c * int(p as i64 - 1)))
        .collect();
    let group_degree: usize = v.0.iter().map(|&d| (d * d) as usize).sum();
    let max_num = q.rep_space_dim(v) as usize + group_degree;
    let reconstructed = RationalFunction::fit(&scaled, max_num, group_degree)?;
    let naive_dt = reconstructed.limit_at_one()?;
    Ok(DtReport {
        dims: v.clone(),
        samples: series
            .samples
            .iter()
            .map(|(&p, c)| DtSample {
                prime: p,
                count: c.clone(),
                scaled: scaled[&p].clone(),
            })
            .collect(),
        integral: -naive_dt.clone(),
        reconstructed,
        naive_dt,
    })
}
