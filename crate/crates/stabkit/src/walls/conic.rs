use std::cmp::Ordering;

use serde::Serialize;

use num_traits::Signed;

use crate::arith::{int, parse_rational, rat, ser_rational, QuadExt, Rational, Scalar};
use crate::chern::ChernVector;
use crate::error::{Error, Result};

/// Shape of a wall inside the half-plane `α > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WallClass {
    /// Upper half of an ellipse centred on the `β`-axis.
    Ellipse,
    /// A vertical line `β = const`.
    Line,
    /// No point with `α > 0`.
    Empty,
    /// Every coefficient vanishes (proportional classes).
    Degenerate,
}

/// The quadric `p·a + q·β² + r·β + s = 0` in the variables `a = α²` and `β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallConic {
    #[serde(serialize_with = "ser_rational")]
    pub p: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub q: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub r: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
    pub class: WallClass,
}

impl WallConic {
    pub fn new(p: Rational, q: Rational, r: Rational, s: Rational) -> Self {
        let class = classify(&p, &q, &r, &s);
        Self { p, q, r, s, class }
    }

    /// `p·α² + q·β² + r·β + s`.
    pub fn eval(&self, alpha: &QuadExt, beta: &QuadExt) -> QuadExt {
        let c = |x: &Rational| QuadExt::from(x.clone());
        c(&self.p) * alpha.square()
            + c(&self.q) * beta.square()
            + c(&self.r) * beta.clone()
            + c(&self.s)
    }

    pub fn eval_f64(&self, alpha: f64, beta: f64) -> f64 {
        let f = |x: &Rational| QuadExt::from(x.clone()).to_f64();
        f(&self.p) * alpha * alpha + f(&self.q) * beta * beta + f(&self.r) * beta + f(&self.s)
    }

    pub fn contains(&self, alpha: &QuadExt, beta: &QuadExt) -> bool {
        self.eval(alpha, beta).is_zero()
    }

    /// For a conic with `p ≠ 0`, `α² = g(β) = −(qβ² + rβ + s)/p`.
    fn alpha_sq_at(&self, beta: &Rational) -> Rational {
        -(&self.q * beta * beta + &self.r * beta + &self.s) / &self.p
    }

    /// `β` of the ellipse centre or of the vertical line.
    pub fn center_beta(&self) -> Option<Rational> {
        match self.class {
            WallClass::Ellipse => Some(-&self.r / (int(2) * &self.q)),
            WallClass::Line => Some(-&self.s / &self.r),
            _ => None,
        }
    }

    /// Largest `α²` on the ellipse, reached at the centre.
    pub fn apex_alpha_sq(&self) -> Option<Rational> {
        let c = self.center_beta()?;
        (self.class == WallClass::Ellipse).then(|| self.alpha_sq_at(&c))
    }

    /// Whether the wall has a point with `α > 0` inside `region`.
    pub fn meets(&self, region: &Region) -> bool {
        let alpha_sq = region.alpha_sq_range();
        match self.class {
            WallClass::Empty | WallClass::Degenerate => false,
            WallClass::Line => {
                let b = self.center_beta().expect("line");
                region.beta.contains(&b) && !alpha_sq.is_empty()
            }
            WallClass::Ellipse => match self.image_over(&region.beta) {
                Some(img) => !img.intersect(&alpha_sq).is_empty(),
                None => false,
            },
        }
    }

    /// The set `{g(β) : β ∈ iv}` for the concave parabola `g`, intersected with `a > 0`.
    fn image_over(&self, iv: &Interval) -> Option<Interval> {
        if iv.is_empty() {
            return None;
        }
        let v = self.center_beta().expect("ellipse");
        let g = |x: &Rational| self.alpha_sq_at(x);
        let dist = |x: &Rational| (x - &v).abs();
        let (sup, sup_closed) = if iv.contains(&v) {
            (g(&v), true)
        } else if v <= iv.lo {
            (g(&iv.lo), iv.lo_closed)
        } else {
            (g(&iv.hi), iv.hi_closed)
        };
        let (dl, dh) = (dist(&iv.lo), dist(&iv.hi));
        let (inf, inf_closed) = match dl.cmp(&dh) {
            Ordering::Greater => (g(&iv.lo), iv.lo_closed),
            Ordering::Less => (g(&iv.hi), iv.hi_closed),
            Ordering::Equal => (g(&iv.lo), iv.lo_closed || iv.hi_closed),
        };
        let img = Interval {
            lo: inf,
            lo_closed: inf_closed,
            hi: sup,
            hi_closed: sup_closed,
        };
        Some(img.intersect(&Interval::open(int(0), None)))
    }
}

fn classify(p: &Rational, q: &Rational, r: &Rational, s: &Rational) -> WallClass {
    if p.is_zero() && q.is_zero() {
        return if !r.is_zero() {
            WallClass::Line
        } else if !s.is_zero() {
            WallClass::Empty
        } else {
            WallClass::Degenerate
        };
    }
    if p.is_zero() || q.is_zero() || Scalar::sign(p) != Scalar::sign(q) {
        // The walls produced here always have q = 3p; other shapes are not tilt walls.
        return WallClass::Degenerate;
    }
    // p·a = −q(β + r/2q)² + r²/4q − s, so a point with a > 0 exists iff r²/4q − s has p's sign.
    let k = r * r / (int(4) * q) - s;
    if Scalar::sign(&k) == Scalar::sign(p) {
        WallClass::Ellipse
    } else {
        WallClass::Empty
    }
}

/// The wall of `v` with itself: `α² + 3(β − ν)² = 3ν² + 1`.
pub fn self_wall(v: &ChernVector) -> Result<WallConic> {
    let nu = v.nu_finite()?;
    Ok(WallConic::new(int(1), int(3), int(-6) * nu, int(-1)))
}

/// Rational points of the self wall: the line through `(α, β) = (1, 0)` with slope
/// `β/(1−α) = m` meets the conic again at `α = 1 − u, β = m·u`, `u = (2 + 6νm)/(1 + 3m²)`.
/// Points with `α ≤ 0` or with vanishing transformed rank are skipped.
pub fn self_wall_points(v: &ChernVector, count: usize) -> Result<Vec<(Rational, Rational)>> {
    let nu = v.nu_finite()?;
    let mut out = Vec::with_capacity(count);
    let mut k: i64 = 0;
    while out.len() < count {
        k += 1;
        if k > 100_000 {
            return Err(Error::Invalid(
                "self wall sampling did not find enough points".into(),
            ));
        }
        let m = if k % 2 == 1 {
            rat(k / 2 + 1, 5)
        } else {
            rat(-(k / 2), 5)
        };
        let u = (int(2) + int(6) * &nu * &m) / (int(1) + int(3) * &m * &m);
        let alpha = int(1) - &u;
        let beta = &m * &u;
        if !Scalar::is_positive(&alpha) || Scalar::is_zero(&(&v.v1 - &beta * &v.v0)) {
            continue;
        }
        out.push((alpha, beta));
    }
    Ok(out)
}

/// The locus where `ν_{αω,B+βω}(v) = ν_{αω,B+βω}(w)`, after clearing the common factor `α`:
/// `p = (w0v1 − v0w1)/6`, `q = 3p`, `r = v0w2 − v2w0`, `s = v2w1 − w2v1`.
pub fn numerical_wall(v: &ChernVector, w: &ChernVector) -> WallConic {
    let p = (&w.v0 * &v.v1 - &v.v0 * &w.v1) / int(6);
    let q = &p * int(3);
    let r = &v.v0 * &w.v2 - &v.v2 * &w.v0;
    let s = &v.v2 * &w.v1 - &w.v2 * &v.v1;
    WallConic::new(p, q, r, s)
}

/// An interval of rationals; `hi = None` means unbounded above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self {
            lo,
            lo_closed: true,
            hi,
            hi_closed: true,
        }
    }

    /// `(lo, hi)`, or `(lo, ∞)` encoded with a huge upper end when `hi` is `None`.
    pub fn open(lo: Rational, hi: Option<Rational>) -> Self {
        match hi {
            Some(hi) => Self {
                lo,
                lo_closed: false,
                hi,
                hi_closed: false,
            },
            None => {
                let hi = Rational::from_integer(num_bigint::BigInt::from(1u8) << 4096);
                Self {
                    lo,
                    lo_closed: false,
                    hi,
                    hi_closed: true,
                }
            }
        }
    }

    pub fn half_open(lo: Rational, hi: Rational) -> Self {
        Self {
            lo,
            lo_closed: false,
            hi,
            hi_closed: true,
        }
    }

    /// Parses interval notation such as `(0,2]`, `[-2,0)` or `(-inf,inf)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::Parse(format!("bad interval {text:?}"));
        let lo_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let inner = &t[1..t.len() - 1];
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let lo = if a.trim() == "-inf" {
            if lo_closed {
                return Err(bad());
            }
            -Rational::from_integer(num_bigint::BigInt::from(1u8) << 4096)
        } else {
            parse_rational(a)?
        };
        if b.trim() == "inf" {
            if hi_closed {
                return Err(bad());
            }
            let mut i = Self::open(lo, None);
            i.lo_closed = lo_closed;
            return Ok(i);
        }
        Ok(Self {
            lo,
            lo_closed,
            hi: parse_rational(b)?,
            hi_closed,
        })
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed {
            x >= &self.lo
        } else {
            x > &self.lo
        };
        let below = if self.hi_closed {
            x <= &self.hi
        } else {
            x < &self.hi
        };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        }
    }

    pub fn intersect(&self, o: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.cmp(&o.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (o.lo.clone(), o.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && o.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&o.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (o.hi.clone(), o.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && o.hi_closed),
        };
        Interval {
            lo,
            lo_closed,
            hi,
            hi_closed,
        }
    }
}

/// A rectangle in the `(α, β)` half-plane. Only `α > 0` is ever considered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub alpha: Interval,
    pub beta: Interval,
}

impl Region {
    pub fn new(alpha: Interval, beta: Interval) -> Self {
        Self { alpha, beta }
    }

    /// Range of `α²` over the region, restricted to `α > 0`.
    fn alpha_sq_range(&self) -> Interval {
        let a = self.alpha.intersect(&Interval::open(int(0), None));
        if a.is_empty() {
            return Interval::open(int(1), Some(int(0)));
        }
        Interval {
            lo: &a.lo * &a.lo,
            lo_closed: a.lo_closed,
            hi: &a.hi * &a.hi,
            hi_closed: a.hi_closed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ExtSlope;
    use crate::walls::{eta, TiltParams};

    fn cv(s: &str) -> ChernVector {
        ChernVector::parse(s).unwrap()
    }

    #[test]
    fn interval_notation() {
        let i = Interval::parse("(0,2]").unwrap();
        assert_eq!(i, Interval::half_open(int(0), int(2)));
        let j = Interval::parse("[-1/2, 3)").unwrap();
        assert!(j.contains(&rat(-1, 2)) && !j.contains(&int(3)));
        let k = Interval::parse("(-inf,inf)").unwrap();
        assert!(k.contains(&int(-1000)) && k.contains(&int(1000)));
        for bad in ["0,2", "(0,2", "[-inf,0)", "(0,inf]", "(a,1)"] {
            assert!(Interval::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn self_wall_examples() {
        let v = cv("1,1,1/2,1/6");
        let w = self_wall(&v).unwrap();
        assert_eq!(
            (w.p.clone(), w.q.clone(), w.r.clone(), w.s.clone()),
            (int(1), int(3), int(-2), int(-1))
        );
        assert_eq!(w.class, WallClass::Ellipse);
        assert!(w.contains(&QuadExt::from(int(1)), &QuadExt::from(int(0))));
        assert_eq!(w.apex_alpha_sq().unwrap(), rat(4, 3));
        assert!(self_wall(&cv("1,0,2,2")).is_err());
    }

    #[test]
    fn self_wall_law() {
        let v = cv("3,2,-1,5");
        let nu = v.nu_finite().unwrap();
        let wall = self_wall(&v).unwrap();
        for (a, b) in self_wall_points(&v, 16).unwrap() {
            let (aq, bq) = (QuadExt::from(a.clone()), QuadExt::from(b.clone()));
            assert!(wall.contains(&aq, &bq));
            let tau = (&nu - &b) / &a;
            let got = TiltParams::new(aq, bq).unwrap().nu(&v).unwrap();
            assert_eq!(got, ExtSlope::Finite(QuadExt::from(tau.clone())));
            assert_eq!(eta(&nu), QuadExt::from(a) * eta(&tau));
        }
    }

    #[test]
    fn numerical_wall_examples() {
        let (v, w) = (cv("1,0,-1,0"), cv("0,1,0,0"));
        let c = numerical_wall(&v, &w);
        assert_eq!(
            (c.p.clone(), c.q.clone(), c.r.clone(), c.s.clone()),
            (rat(-1, 6), rat(-1, 2), int(0), int(-1))
        );
        assert_eq!(c.class, WallClass::Empty);
        assert_eq!(numerical_wall(&v, &v).class, WallClass::Degenerate);
        assert_eq!(
            numerical_wall(&v, &v.scale(&int(3))).class,
            WallClass::Degenerate
        );
        let u = cv("2,1,-3,1");
        let (a, b) = (numerical_wall(&v, &u), numerical_wall(&u, &v));
        assert_eq!((a.p, a.q, a.r, a.s), (-b.p, -b.q, -b.r, -b.s));
    }

    #[test]
    fn line_walls() {
        // equal ranks-to-degree ratio gives p = q = 0
        let c = numerical_wall(&cv("1,1,0,0"), &cv("2,2,1,0"));
        assert_eq!(c.class, WallClass::Line);
        assert_eq!(c.center_beta().unwrap(), int(1));
    }

    #[test]
    fn region_intersection() {
        let wall = self_wall(&cv("1,1,1/2,1/6")).unwrap();
        let region = |a: (i64, i64), b: (i64, i64)| {
            Region::new(
                Interval::half_open(int(a.0), int(a.1)),
                Interval::closed(int(b.0), int(b.1)),
            )
        };
        assert!(wall.meets(&region((0, 2), (-2, 2))));
        assert!(!wall.meets(&region((0, 2), (2, 3))));
        assert!(!wall.meets(&region((2, 3), (-2, 2))));
        // touches (1, 0) exactly when β ranges over [0, 0]
        assert!(wall.meets(&region((0, 1), (0, 0))));
        let open_beta = Region::new(
            Interval::half_open(int(0), int(1)),
            Interval::open(int(-1), Some(int(0))),
        );
        assert!(wall.meets(&open_beta));
    }

    #[test]
    fn interval_ops() {
        let a = Interval::closed(int(0), int(2));
        let b = Interval::open(int(2), Some(int(3)));
        assert!(a.intersect(&b).is_empty());
        assert!(!a.intersect(&Interval::closed(int(2), int(5))).is_empty());
        assert!(Interval::open(int(0), None).contains(&int(1_000_000)));
    }
}
