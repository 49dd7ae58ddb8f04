use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::rep::{DimVector, Quiver};
use crate::arith::{int, ComplexExact, ExtSlope, Rational, Scalar};
use crate::error::{Error, Result};

/// Very weak stability data: `Z(S_i)` per vertex and the integer linear forms `Δ_R`, `Δ_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VWCharge {
    pub z: Vec<ComplexExact>,
    pub delta_r: Vec<i64>,
    pub delta_i: Vec<i64>,
}

impl VWCharge {
    pub fn new(z: Vec<ComplexExact>, delta_r: Vec<i64>, delta_i: Vec<i64>) -> Result<Self> {
        if delta_r.len() != z.len() || delta_i.len() != z.len() {
            return Err(Error::Invalid(
                "charge vectors have different lengths".into(),
            ));
        }
        Ok(Self {
            z,
            delta_r,
            delta_i,
        })
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn re(&self, d: &DimVector) -> Rational {
        self.z
            .iter()
            .zip(&d.0)
            .fold(int(0), |acc, (z, &k)| acc + &z.re * int(k))
    }

    pub fn im(&self, d: &DimVector) -> Rational {
        self.z
            .iter()
            .zip(&d.0)
            .fold(int(0), |acc, (z, &k)| acc + &z.im * int(k))
    }

    pub fn charge(&self, d: &DimVector) -> ComplexExact {
        ComplexExact::new(self.re(d), self.im(d))
    }

    pub fn delta_r_of(&self, d: &DimVector) -> i64 {
        dot(&self.delta_r, d)
    }

    pub fn delta_i_of(&self, d: &DimVector) -> i64 {
        dot(&self.delta_i, d)
    }

    /// `Δ = Re Z·Δ_R + Im Z·Δ_I`.
    pub fn delta(&self, d: &DimVector) -> Rational {
        self.re(d) * int(self.delta_r_of(d)) + self.im(d) * int(self.delta_i_of(d))
    }

    /// `μ = −Re Z/Im Z`, with `μ = +∞` when `Im Z = 0`.
    pub fn slope(&self, d: &DimVector) -> ExtSlope {
        ExtSlope::ratio(-self.re(d), self.im(d))
    }

    /// Whether `Z(d) = 0`.
    pub fn in_kernel(&self, d: &DimVector) -> bool {
        self.charge(d).is_zero()
    }

    /// Vertices whose simple has `Z = 0`; they span the classes of the subcategory `C`.
    pub fn kernel_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.z[i].is_zero()).collect()
    }

    /// Integer rescaling used for fast slope comparisons.
    pub fn integral(&self) -> IntCharge {
        let lcm = self
            .z
            .iter()
            .flat_map(|z| [z.re.denom().clone(), z.im.denom().clone()])
            .fold(num_bigint::BigInt::from(1), |a, b| a.lcm(&b));
        let scale = Rational::from_integer(lcm);
        let conv = |x: &Rational| -> i128 {
            (x * &scale)
                .to_integer()
                .to_i128()
                .expect("charge fits in i128")
        };
        IntCharge {
            re: self.z.iter().map(|z| conv(&z.re)).collect(),
            im: self.z.iter().map(|z| conv(&z.im)).collect(),
        }
    }
}

fn dot(form: &[i64], d: &DimVector) -> i64 {
    form.iter().zip(&d.0).map(|(a, b)| a * b).sum()
}

/// A positive integer multiple of a charge; slopes are compared by cross-multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntCharge {
    pub re: Vec<i128>,
    pub im: Vec<i128>,
}

impl IntCharge {
    pub fn of(&self, d: &[i64]) -> (i128, i128) {
        let re = self.re.iter().zip(d).map(|(a, &b)| a * b as i128).sum();
        let im = self.im.iter().zip(d).map(|(a, &b)| a * b as i128).sum();
        (re, im)
    }
}

/// Compares `−r/i` slopes of effective classes (`i ≥ 0`), with `i = 0` meaning `+∞`.
#[inline]
pub fn cmp_slope(a: (i128, i128), b: (i128, i128)) -> Ordering {
    match (a.1 == 0, b.1 == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => (-a.0 * b.1).cmp(&(-b.0 * a.1)),
    }
}

/// Checks `Z(S_i) ∈ ℍ ∪ ℝ_{≤0}` for every vertex; returns the violations.
pub fn validate_vw(q: &Quiver, z: &VWCharge) -> Vec<String> {
    if z.len() != q.vertices() {
        return vec![format!(
            "charge has {} entries for {} vertices",
            z.len(),
            q.vertices()
        )];
    }
    z.z.iter()
        .enumerate()
        .filter(|(_, c)| !c.in_closed_half_plane())
        .map(|(i, c)| format!("Z(S{}) = {} lies outside H ∪ R<=0", i + 1, c))
        .collect()
}

/// Conditions on the forms: `Δ_R` vanishes on the simples in `C`, `Δ_I` is non-positive
/// there and negative on at least one of them.
pub fn bg_form_violations(z: &VWCharge) -> Vec<String> {
    let c = z.kernel_vertices();
    let mut out = Vec::new();
    for &i in &c {
        if z.delta_r[i] != 0 {
            out.push(format!("Delta_R(S{}) = {} != 0", i + 1, z.delta_r[i]));
        }
        if z.delta_i[i] > 0 {
            out.push(format!("Delta_I(S{}) = {} > 0", i + 1, z.delta_i[i]));
        }
    }
    if !c.is_empty() && c.iter().all(|&i| z.delta_i[i] == 0) {
        out.push("Delta_I vanishes on every simple with Z = 0".into());
    }
    out
}

/// Whether a class lies in the image of the zero locus: all entries ≥ 0 and supported on
/// vertices with `Z(S_i) = 0`.
pub fn in_c(z: &VWCharge, d: &DimVector) -> bool {
    d.is_nonnegative() && (0..z.len()).all(|i| d[i] == 0 || z.z[i].is_zero())
}

/// Effective class with `Im Z = 0`, hence infinite slope.
pub fn has_infinite_slope(z: &VWCharge, d: &DimVector) -> bool {
    Scalar::is_zero(&z.im(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::quiver::fixtures;

    #[test]
    fn slope_comparison() {
        assert_eq!(cmp_slope((0, 0), (5, 0)), Ordering::Equal);
        assert_eq!(cmp_slope((0, 0), (-1, 1)), Ordering::Greater);
        assert_eq!(cmp_slope((-1, 2), (-1, 1)), Ordering::Less);
        assert_eq!(cmp_slope((-2, 2), (-1, 1)), Ordering::Equal);
    }

    #[test]
    fn validation() {
        let (q, z) = fixtures::kronecker(2);
        assert!(validate_vw(&q, &z).is_empty());
        assert!(bg_form_violations(&z).is_empty());
        let mut bad = z.clone();
        bad.z[0] = ComplexExact::new(int(1), int(0));
        assert_eq!(validate_vw(&q, &bad).len(), 1);
        bad.z[0] = ComplexExact::new(int(-1), int(0));
        assert!(validate_vw(&q, &bad).is_empty());
    }

    #[test]
    fn fixture_values() {
        let (_, z) = fixtures::three_vertex();
        let d = DimVector(vec![1, 1, 1]);
        assert_eq!(z.charge(&d), ComplexExact::new(int(-1), int(2)));
        assert_eq!(z.delta(&d), int(3));
        assert_eq!(z.slope(&d), ExtSlope::Finite(rat(1, 2)));
        let int_z = z.integral();
        assert_eq!(int_z.of(&d.0), (-1, 2));
    }
}
