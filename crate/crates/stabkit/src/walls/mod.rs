//! Tilt-stability walls: the `(α, β)` parameter space, the identity suite behind the
//! `ν → 0` reduction, exact wall conics, the limit parameter `β̄` and the disk it lives in.

mod conic;
mod enumerate;
mod plot;

pub use conic::{
    numerical_wall, self_wall, self_wall_points, Interval, Region, WallClass, WallConic,
};
pub use enumerate::{
    check_filters, enumerate_wall_decompositions, Decomposition, DecompositionFilters, LatticeBox,
};
pub use plot::{emit_plot_csv, sample_conic};

use serde::Serialize;

use crate::arith::{int, rat, ExtSlope, QuadExt, Rational, Scalar};
use crate::chern::ChernVector;
use crate::error::{Error, Result};

/// A point `(α, β)` of the tilt parameter space, acting as `ω → αω`, `B → B + βω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TiltParams {
    pub alpha: QuadExt,
    pub beta: QuadExt,
}

impl TiltParams {
    pub fn new(alpha: QuadExt, beta: QuadExt) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::Invalid("alpha must be positive".into()));
        }
        Ok(Self { alpha, beta })
    }

    pub fn rational(alpha: Rational, beta: Rational) -> Result<Self> {
        Self::new(alpha.into(), beta.into())
    }

    /// The class seen from these parameters: `scale_omega(twist(v, β), α)`.
    pub fn transform(&self, v: &ChernVector) -> Result<ChernVector<QuadExt>> {
        v.to_quad().twist(&self.beta).scale_omega(&self.alpha)
    }

    /// `ν_{αω, B+βω}(v)`.
    pub fn nu(&self, v: &ChernVector) -> Result<ExtSlope<QuadExt>> {
        self.transform(v)?.nu()
    }
}

/// `η = √(3ϑ² + 1)`.
pub fn eta(theta: &Rational) -> QuadExt {
    QuadExt::sqrt(&(int(3) * theta * theta + int(1))).expect("positive radicand")
}

/// `√(ϑ² + 1/3) = η/√3`.
fn half_width(theta: &Rational) -> Result<QuadExt> {
    QuadExt::sqrt(&(theta * theta + rat(1, 3)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub lhs: QuadExt,
    pub rhs: QuadExt,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(lhs: QuadExt, rhs: QuadExt) -> Self {
        let holds = lhs == rhs;
        Self { lhs, rhs, holds }
    }
}

/// Both sides of the three identities relating `ν`, `Im Z_{ω,B}` and twisted ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// `Im Z_{ω,B}(v) − ϑ·v1 = η^{-1}·Im Z_{ηω, B+ϑω}(v)`.
    pub duid1: IdentityCheck,
    /// `v0·Im Z_{ω,B}(v) = −Δ̄/2 + v1^{B−ω/√3}·v1^{B+ω/√3}/2`.
    pub duid2: IdentityCheck,
    /// `ν(v) − ϑ = (−Δ̄ + v1^{B+(ϑ−s)ω}·v1^{B+(ϑ+s)ω}) / (2·v0·v1)` with `s = η/√3`;
    /// `None` when `v0·v1 = 0`.
    pub eq1: Option<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.duid1.holds && self.duid2.holds && self.eq1.as_ref().is_none_or(|c| c.holds)
    }
}

pub fn verify_identities(v: &ChernVector, theta: &Rational) -> Result<IdentityReport> {
    let vq = v.to_quad();
    let im = QuadExt::from(v.im_bridgeland());

    let e = eta(theta);
    let moved = vq.twist(&theta.clone().into()).scale_omega(&e)?;
    let duid1 = IdentityCheck::new(
        im.clone() - QuadExt::from(theta * &v.v1),
        moved.im_bridgeland().try_div(&e)?,
    );

    let r3 = QuadExt::sqrt(&rat(1, 3))?;
    let lo = vq.twist(&-r3.clone()).v1;
    let hi = vq.twist(&r3).v1;
    let half = QuadExt::from(rat(1, 2));
    let duid2 = IdentityCheck::new(
        QuadExt::from(v.v0.clone()) * im,
        -half.clone() * QuadExt::from(v.delta_bar()) + half * lo.try_mul(&hi)?,
    );

    let eq1 = if Scalar::is_zero(&(&v.v0 * &v.v1)) {
        None
    } else {
        let s = half_width(theta)?;
        let t = QuadExt::from(theta.clone());
        let lo = vq.twist(&(t.clone() - s.clone())).v1;
        let hi = vq.twist(&(t + s)).v1;
        let den = QuadExt::from(int(2) * &v.v0 * &v.v1);
        let rhs = (lo.try_mul(&hi)? - QuadExt::from(v.delta_bar())).try_div(&den)?;
        Some(IdentityCheck::new(
            QuadExt::from(v.nu_finite()? - theta),
            rhs,
        ))
    };
    Ok(IdentityReport { duid1, duid2, eq1 })
}

/// Output of the reduction to parameters at which `ν` vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuZeroReduction {
    #[serde(serialize_with = "crate::arith::ser_rational")]
    pub theta: Rational,
    pub eta: QuadExt,
    pub v_prime: ChernVector<QuadExt>,
    /// `Im Z_{ω,B}(v′)`, zero by construction.
    pub im_z_prime: QuadExt,
}

pub fn reduce_to_nu_zero(v: &ChernVector) -> Result<NuZeroReduction> {
    let theta = v.nu_finite()?;
    let eta = eta(&theta);
    let v_prime = v.twist(&theta).to_quad().scale_omega(&eta)?;
    let im_z_prime = v_prime.im_bridgeland();
    Ok(NuZeroReduction {
        theta,
        eta,
        v_prime,
        im_z_prime,
    })
}

/// The polynomial identity `18v1v3 − 12v2² + 2v0v2 − v1² = −(Δ̄ + 6∇̄)`, plus the same
/// quantity recomputed from the third-order inequality at the `ν = 0` parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceCertificate {
    #[serde(serialize_with = "crate::arith::ser_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "crate::arith::ser_rational")]
    pub rhs: Rational,
    pub equal: bool,
    pub reduced: Option<ReducedRoute>,
}

/// `18·v1·(v3′ − v1′/18)` at the parameters where `ν(v′) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedRoute {
    #[serde(serialize_with = "crate::arith::ser_rational")]
    pub theta: Rational,
    pub margin: QuadExt,
    pub scaled: QuadExt,
    pub agrees: bool,
}

pub fn equivalence_certificate(v: &ChernVector) -> Result<EquivalenceCertificate> {
    let (v0, v1, v2, v3) = (&v.v0, &v.v1, &v.v2, &v.v3);
    let lhs = int(18) * v1 * v3 - int(12) * v2 * v2 + int(2) * v0 * v2 - v1 * v1;
    let rhs = -v.bms_discrepancy();
    let reduced = match reduce_to_nu_zero(v) {
        Ok(r) => {
            let margin = r.v_prime.v3.clone() - r.v_prime.v1.clone() / QuadExt::from(int(18));
            let scaled = QuadExt::from(int(18) * v1) * margin.clone();
            let agrees = scaled == QuadExt::from(lhs.clone());
            Some(ReducedRoute {
                theta: r.theta,
                margin,
                scaled,
                agrees,
            })
        }
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(EquivalenceCertificate {
        equal: lhs == rhs,
        lhs,
        rhs,
        reduced,
    })
}

/// `(ϑ − √(ϑ²+1/3), ϑ + √(ϑ²+1/3))`.
pub fn slope_bound_interval(theta: &Rational) -> (QuadExt, QuadExt) {
    let s = half_width(theta).expect("positive radicand");
    let t = QuadExt::from(theta.clone());
    (t.clone() - s.clone(), t + s)
}

/// The open region `α² + 3(β − ν)² < 3ν² + 1` bounded by the self wall.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disk {
    #[serde(serialize_with = "crate::arith::ser_rational")]
    pub center: Rational,
    #[serde(serialize_with = "crate::arith::ser_rational")]
    pub radius_sq: Rational,
}

/// Membership verdict; `exact` is false when it was decided through interval enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub inside: bool,
    pub exact: bool,
}

impl Disk {
    pub fn of(v: &ChernVector) -> Result<Self> {
        let nu = v.nu_finite()?;
        let radius_sq = int(3) * &nu * &nu + int(1);
        Ok(Self {
            center: nu,
            radius_sq,
        })
    }

    /// Half-width of the disk along the `β`-axis, squared: `ν² + 1/3`.
    pub fn beta_semi_axis_sq(&self) -> Rational {
        &self.radius_sq / int(3)
    }

    pub fn contains(&self, alpha: &QuadExt, beta: &QuadExt) -> Result<Membership> {
        if alpha.is_negative() {
            return Err(Error::Invalid("alpha must be non-negative".into()));
        }
        let a2 = alpha.square();
        let db = beta.clone() - QuadExt::from(self.center.clone());
        let room = QuadExt::from(self.radius_sq.clone()) - QuadExt::from(int(3)) * db.square();
        let c = a2.compare(&room);
        Ok(Membership {
            inside: c.ordering.is_lt(),
            exact: c.exact,
        })
    }
}

pub fn disk_contains(v: &ChernVector, alpha: &QuadExt, beta: &QuadExt) -> Result<Membership> {
    Disk::of(v)?.contains(alpha, beta)
}

/// `β̄ = 2v2/(v1 + √Δ̄)`, a root of `v0x² − 2v1x + 2v2`. When that denominator vanishes
/// but `v0 ≠ 0` the same root is taken in the form `(v1 − √Δ̄)/v0`.
pub fn limit_beta(v: &ChernVector) -> Result<QuadExt> {
    let db = v.delta_bar();
    if Scalar::is_negative(&db) {
        return Err(Error::NotApplicable("delta_bar < 0: no real root".into()));
    }
    let root = QuadExt::sqrt(&db)?;
    let v1 = QuadExt::from(v.v1.clone());
    let den = v1.clone() + root.clone();
    if !den.is_zero() {
        return QuadExt::from(int(2) * &v.v2).try_div(&den);
    }
    if Scalar::is_zero(&v.v0) {
        return Err(Error::NotApplicable(
            "v1 + sqrt(delta_bar) = 0 and v0 = 0".into(),
        ));
    }
    (v1 - root).try_div(&QuadExt::from(v.v0.clone()))
}

/// `v0·x² − 2v1·x + 2v2`.
pub fn limit_beta_residual(v: &ChernVector, x: &QuadExt) -> QuadExt {
    QuadExt::from(v.v0.clone()) * x.square() - QuadExt::from(int(2) * &v.v1) * x.clone()
        + QuadExt::from(int(2) * &v.v2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitBgCheck {
    pub beta_bar: QuadExt,
    pub value: QuadExt,
    pub holds: bool,
}

/// `ch_3` twisted by `β̄` must be non-positive.
pub fn check_limit_bg(v: &ChernVector) -> Result<LimitBgCheck> {
    let beta_bar = limit_beta(v)?;
    let value = v.to_quad().twist(&beta_bar).v3;
    let holds = !value.is_positive();
    Ok(LimitBgCheck {
        beta_bar,
        value,
        holds,
    })
}

/// Whether `ϑ − √(ϑ²+1/3) < β̄ < ϑ + √(ϑ²+1/3)` with `ϑ = ν(v)`, decided exactly as
/// `(β̄ − ϑ)² < ϑ² + 1/3` inside `ℚ(√Δ̄)`.
pub fn beta_bar_membership(v: &ChernVector) -> Result<bool> {
    let (theta, bb) = membership_inputs(v)?;
    let d = bb - QuadExt::from(theta.clone());
    Ok(d.square()
        .try_cmp(&QuadExt::from(&theta * &theta + rat(1, 3)))?
        .is_lt())
}

/// The same test evaluated against the endpoints of [`slope_bound_interval`], which live in
/// a different radical field; also returns the widest enclosure used.
pub fn beta_bar_membership_interval(v: &ChernVector) -> Result<(Membership, Rational)> {
    let (theta, bb) = membership_inputs(v)?;
    let (lo, hi) = slope_bound_interval(&theta);
    let c_lo = lo.compare(&bb);
    let c_hi = bb.compare(&hi);
    let inside = c_lo.ordering.is_lt() && c_hi.ordering.is_lt();
    let width = [&lo, &hi, &bb]
        .iter()
        .map(|x| {
            let (a, b) = x.enclosure(128);
            b - a
        })
        .max()
        .expect("three values");
    Ok((
        Membership {
            inside,
            exact: c_lo.exact && c_hi.exact,
        },
        width,
    ))
}

fn membership_inputs(v: &ChernVector) -> Result<(Rational, QuadExt)> {
    let theta = v.nu_finite()?;
    if !Scalar::is_positive(&v.delta_bar()) {
        return Err(Error::NotApplicable(
            "membership needs delta_bar > 0".into(),
        ));
    }
    if !Scalar::is_positive(&v.v1) {
        return Err(Error::NotApplicable("membership needs v1 > 0".into()));
    }
    Ok((theta, limit_beta(v)?))
}
