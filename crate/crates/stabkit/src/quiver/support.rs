//! Support property data and the quadratic forms `Δ_{k,t} = kQ + tΔ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::charge::VWCharge;
use super::realize::{ClassEntry, Status};
use super::rep::DimVector;
use crate::arith::linalg::{self, QMatrix};
use crate::arith::{int, rat, ser_rational, ser_rational_vec, QuadExt, Rational};
use crate::error::{Error, Result};

/// Support-property constant and quadratic form read off a table of semistable classes.
#[derive(Clone, Debug, Serialize)]
pub struct SupportData {
    /// Vertices `i` with `Z(S_i) = 0`; the unit vectors `e_i` span `Γ₀`.
    pub gamma0: Vec<usize>,
    /// A basis of `Γ₀† = Γ₀ ∩ ker Δ_I`.
    #[serde(skip)]
    pub gamma0_dag: Vec<Vec<Rational>>,
    pub gamma0_dag_rank: usize,
    /// `C = max ‖v̄‖_∞ / |Z(v)|` over semistable classes outside `C`.
    pub c: QuadExt,
    #[serde(serialize_with = "ser_rational")]
    pub c_sq: Rational,
    /// Rank of `Γ/Γ₀`.
    pub quotient_rank: usize,
    /// `Q(v) = rank·C²·|Z(v)|² − ‖v̄‖₂²`, as `q_integer / q_scale`.
    #[serde(skip)]
    pub q_matrix: QMatrix,
    #[serde(serialize_with = "ser_bigint_matrix")]
    pub q_integer: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "ser_bigint")]
    pub q_scale: BigInt,
    /// `Q` is negative definite on `ker Z̄ ⊂ Γ/Γ₀`.
    pub negative_definite_on_ker: bool,
    /// Semistable classes in the table with `Q < 0`.
    pub q_violations: Vec<DimVector>,
    pub classes_used: usize,
    pub undecided: Vec<DimVector>,
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_bigint_matrix<S: serde::Serializer>(
    m: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        seq.serialize_element(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

fn vec_of(d: &DimVector) -> Vec<Rational> {
    d.0.iter().map(|&x| int(x)).collect()
}

/// Symmetric matrix of `Δ(v) = Re Z(v)·Δ_R(v) + Im Z(v)·Δ_I(v)`.
pub fn delta_matrix(z: &VWCharge) -> QMatrix {
    let n = z.len();
    let half = rat(1, 2);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let re = &z.z[i].re * int(z.delta_r[j]) + &z.z[j].re * int(z.delta_r[i]);
                    let im = &z.z[i].im * int(z.delta_i[j]) + &z.z[j].im * int(z.delta_i[i]);
                    (re + im) * &half
                })
                .collect()
        })
        .collect()
}

impl SupportData {
    pub fn from_table(z: &VWCharge, table: &[ClassEntry]) -> Result<Self> {
        let n = z.len();
        let gamma0 = z.kernel_vertices();
        let outside: Vec<usize> = (0..n).filter(|i| !gamma0.contains(i)).collect();
        let mut c_sq = int(0);
        let mut used = 0;
        for e in table.iter().filter(|e| e.status == Status::Found) {
            let abs_sq = z.charge(&e.dims).abs_sq();
            if abs_sq.is_zero() {
                continue;
            }
            used += 1;
            let sup = outside.iter().map(|&i| e.dims[i].abs()).max().unwrap_or(0);
            let ratio = int(sup * sup) / abs_sq;
            if ratio > c_sq {
                c_sq = ratio;
            }
        }
        let c = QuadExt::sqrt(&c_sq)?;
        let quotient_rank = outside.len();
        let scale = int(quotient_rank as i64) * &c_sq;
        let q_matrix: QMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let zz = &z.z[i].re * &z.z[j].re + &z.z[i].im * &z.z[j].im;
                        let diag = if i == j && outside.contains(&i) {
                            int(1)
                        } else {
                            int(0)
                        };
                        &scale * zz - diag
                    })
                    .collect()
            })
            .collect();
        let q_scale = q_matrix
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let q_integer = q_matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x * Rational::from_integer(q_scale.clone())).to_integer())
                    .collect()
            })
            .collect();
        // Γ₀† inside the coordinate sublattice spanned by the kernel vertices.
        let dag_rows = vec![gamma0
            .iter()
            .map(|&i| int(z.delta_i[i]))
            .collect::<Vec<_>>()];
        let gamma0_dag: Vec<Vec<Rational>> = linalg::nullspace(&dag_rows, gamma0.len())
            .into_iter()
            .map(|x| {
                let mut full = vec![int(0); n];
                for (k, &i) in gamma0.iter().enumerate() {
                    full[i] = x[k].clone();
                }
                full
            })
            .collect();
        // ker Z̄ inside Γ/Γ₀, realized as vectors vanishing on the kernel vertices.
        let mut rows = vec![
            z.z.iter().map(|c| c.re.clone()).collect::<Vec<_>>(),
            z.z.iter().map(|c| c.im.clone()).collect(),
        ];
        for &i in &gamma0 {
            let mut r = vec![int(0); n];
            r[i] = int(1);
            rows.push(r);
        }
        let ker = linalg::nullspace(&rows, n);
        let negative_definite_on_ker =
            linalg::negative_definite(&linalg::leading_minors(&linalg::gram(&q_matrix, &ker)))
                .is_ok();
        let mut data = Self {
            gamma0_dag_rank: gamma0_dag.len(),
            gamma0,
            gamma0_dag,
            c,
            c_sq,
            quotient_rank,
            q_matrix,
            q_integer,
            q_scale,
            negative_definite_on_ker,
            q_violations: Vec::new(),
            classes_used: used,
            undecided: table
                .iter()
                .filter(|e| e.status == Status::Unknown)
                .map(|e| e.dims.clone())
                .collect(),
        };
        data.q_violations = table
            .iter()
            .filter(|e| e.status == Status::Found && !z.in_kernel(&e.dims))
            .filter(|e| data.q(&e.dims).is_negative())
            .map(|e| e.dims.clone())
            .collect();
        Ok(data)
    }

    pub fn q(&self, d: &DimVector) -> Rational {
        let v = vec_of(d);
        linalg::bilinear(&self.q_matrix, &v, &v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaKtReport {
    #[serde(serialize_with = "ser_rational")]
    pub k: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub t: Rational,
    /// Dimension of `ker Z̄_t†` in `Γ/Γ₀†`.
    pub kernel_dim: usize,
    #[serde(serialize_with = "ser_rational_vec")]
    pub minors: Vec<Rational>,
    pub negative_definite: bool,
    /// 1-based index of the first leading principal minor with the wrong sign.
    pub failing_minor: Option<usize>,
    /// Semistable classes `v` (and their shifts `−v`) with `Δ_{k,t}(v) < 0`.
    pub audit_violations: Vec<DimVector>,
}

impl DeltaKtReport {
    pub fn passes(&self) -> bool {
        self.negative_definite && self.audit_violations.is_empty()
    }
}

/// `Δ_{k,t}` as a symmetric matrix on `Γ`.
pub fn delta_kt_matrix(support: &SupportData, z: &VWCharge, k: &Rational, t: &Rational) -> QMatrix {
    let d = delta_matrix(z);
    support
        .q_matrix
        .iter()
        .zip(&d)
        .map(|(qr, dr)| qr.iter().zip(dr).map(|(q, x)| k * q + t * x).collect())
        .collect()
}

/// Basis of `ker Z̄_t† ∩ (Γ₀†)^⊥`, a complement of `Γ₀†` in the kernel.
pub fn tilt_kernel(support: &SupportData, z: &VWCharge, t: &Rational) -> Vec<Vec<Rational>> {
    let n = z.len();
    let mut rows = vec![
        z.z.iter().map(|c| c.re.clone()).collect::<Vec<_>>(),
        (0..n).map(|i| &z.z[i].im + t * int(z.delta_i[i])).collect(),
    ];
    rows.extend(support.gamma0_dag.iter().cloned());
    linalg::nullspace(&rows, n)
}

pub fn check_delta_kt_support(
    support: &SupportData,
    z: &VWCharge,
    table: &[ClassEntry],
    k: &Rational,
    t: &Rational,
) -> Result<DeltaKtReport> {
    if !k.is_positive() || !t.is_positive() {
        return Err(Error::Invalid("k and t must be positive".into()));
    }
    let m = delta_kt_matrix(support, z, k, t);
    let ker = tilt_kernel(support, z, t);
    let minors = linalg::leading_minors(&linalg::gram(&m, &ker));
    let failing_minor = linalg::negative_definite(&minors).err();
    let audit_violations = table
        .iter()
        .filter(|e| e.status == Status::Found)
        .filter(|e| {
            let v = vec_of(&e.dims);
            linalg::bilinear(&m, &v, &v).is_negative()
        })
        .map(|e| e.dims.clone())
        .collect();
    Ok(DeltaKtReport {
        k: k.clone(),
        t: t.clone(),
        kernel_dim: ker.len(),
        minors,
        negative_definite: failing_minor.is_none(),
        failing_minor,
        audit_violations,
    })
}

/// Result of searching for `k` with `Δ_{k,t}` negative definite on the tilted kernel.
#[derive(Clone, Debug, Serialize)]
pub struct KSearch {
    /// Largest passing value found.
    #[serde(serialize_with = "ser_rational")]
    pub passing: Rational,
    /// Smallest failing value found; `None` if every tried `k` passed.
    #[serde(serialize_with = "crate::arith::ser_opt_rational")]
    pub failing: Option<Rational>,
}

/// Bisection for the definiteness threshold in `k`; the passing set is an interval `(0, k*)`.
pub fn search_k(support: &SupportData, z: &VWCharge, t: &Rational, steps: u32) -> Result<KSearch> {
    let passes = |k: &Rational| -> bool {
        let m = delta_kt_matrix(support, z, k, t);
        let ker = tilt_kernel(support, z, t);
        linalg::negative_definite(&linalg::leading_minors(&linalg::gram(&m, &ker))).is_ok()
    };
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut k = int(1);
    for _ in 0..64 {
        if passes(&k) {
            lo = Some(k.clone());
            if hi.is_some() {
                break;
            }
            k *= int(2);
        } else {
            hi = Some(k.clone());
            if lo.is_some() {
                break;
            }
            k /= int(2);
        }
    }
    let Some(mut lo) = lo else {
        return Err(Error::NotApplicable(
            "no k > 2^-64 is negative definite".into(),
        ));
    };
    if let Some(mut h) = hi.clone() {
        for _ in 0..steps {
            let mid = (&lo + &h) / int(2);
            if passes(&mid) {
                lo = mid;
            } else {
                h = mid;
            }
        }
        hi = Some(h);
    }
    Ok(KSearch {
        passing: lo,
        failing: hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::fixtures;
    use crate::quiver::realize::{realizable_classes, SearchConfig};
    use crate::quiver::Fp;

    fn table(
        z: &VWCharge,
        q: &std::sync::Arc<crate::quiver::Quiver>,
        b: &[i64],
    ) -> Vec<ClassEntry> {
        realizable_classes(
            q,
            z,
            &DimVector(b.to_vec()),
            &SearchConfig::new(Fp::new(2).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn kronecker_constant() {
        let (q, z) = fixtures::kronecker(2);
        let t = table(&z, &q, &[3, 3]);
        let s = SupportData::from_table(&z, &t).unwrap();
        assert_eq!(s.c_sq, int(1));
        assert_eq!(s.gamma0, vec![0]);
        assert_eq!(s.gamma0_dag_rank, 0);
        assert!(s.q_violations.is_empty());
        assert!(s.negative_definite_on_ker);
        for k in [rat(1, 2), int(1), int(1000)] {
            let r = check_delta_kt_support(&s, &z, &t, &k, &int(1)).unwrap();
            assert!(r.passes(), "{k}");
        }
    }

    #[test]
    fn one_vertex_constant() {
        let (q, z) = fixtures::one_vertex();
        let s = SupportData::from_table(&z, &table(&z, &q, &[4])).unwrap();
        assert_eq!(s.c, QuadExt::rational(int(1)));
    }

    #[test]
    fn three_vertex_threshold() {
        let (q, z) = fixtures::three_vertex();
        let t = table(&z, &q, &[2, 2, 2]);
        let s = SupportData::from_table(&z, &t).unwrap();
        assert_eq!(s.c_sq, int(1));
        let ok = check_delta_kt_support(&s, &z, &t, &rat(1, 2), &int(1)).unwrap();
        assert!(ok.passes());
        let bad = check_delta_kt_support(&s, &z, &t, &int(3), &int(1)).unwrap();
        assert_eq!(bad.failing_minor, Some(1));
        let search = search_k(&s, &z, &int(1), 20).unwrap();
        assert!(search.passing < int(1));
        assert!(search.failing.unwrap() >= int(1));
    }
}
