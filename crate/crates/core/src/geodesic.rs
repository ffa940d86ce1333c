//! Oriented geodesics of the upper half-plane.
//!
//! Most operations move the geodesic onto the imaginary axis with its
//! [`Geodesic::frame`], work there in closed form, and map back.

use std::f64::consts::PI;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use crate::error::{check_length, Error, Result};
use crate::isometry::{Isometry, DEFAULT_TOL};
use crate::point::{BoundaryPoint, HPoint};

/// Maximum hyperbolic distance at which a point counts as lying on a
/// geodesic.
pub const ON_GEODESIC_TOL: f64 = 1e-9;

/// Forward angles within this of 0 or π are treated as tangential.
const TRANSVERSE_EPS: f64 = 1e-12;

/// A complete geodesic oriented from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Geodesic {
    from: BoundaryPoint,
    to: BoundaryPoint,
}

/// A transverse crossing of two oriented geodesics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub point: HPoint,
    /// Forward angle in `(0, π)`.
    pub angle: f64,
}

impl Geodesic {
    pub fn new(from: BoundaryPoint, to: BoundaryPoint) -> Result<Self> {
        let finite_ok = |p: &BoundaryPoint| p.finite().is_none_or(f64::is_finite);
        if from == to || !finite_ok(&from) || !finite_ok(&to) {
            return Err(Error::DegenerateGeodesic);
        }
        Ok(Geodesic { from, to })
    }

    /// `0 → ∞`.
    pub fn imaginary_axis() -> Self {
        Geodesic { from: BoundaryPoint::Finite(0.0), to: BoundaryPoint::Infinity }
    }

    pub fn from(&self) -> BoundaryPoint {
        self.from
    }

    pub fn to(&self) -> BoundaryPoint {
        self.to
    }

    pub fn reversed(&self) -> Self {
        Geodesic { from: self.to, to: self.from }
    }

    /// `(center, radius)` of the semicircle, or `None` for a vertical line.
    pub fn center_radius(&self) -> Option<(f64, f64)> {
        match (self.from, self.to) {
            (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
                Some(((p + q) / 2.0, (q - p).abs() / 2.0))
            }
            _ => None,
        }
    }

    /// Orientation-preserving isometry carrying the upward imaginary axis
    /// onto this geodesic, with `i` going to the top of the semicircle (or
    /// to height 1 on a vertical line).
    pub fn frame(&self) -> Isometry {
        let m = match (self.from, self.to) {
            (BoundaryPoint::Finite(x), BoundaryPoint::Infinity) => [[1.0, x], [0.0, 1.0]],
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(x)) => [[x, -1.0], [1.0, 0.0]],
            // Built from the endpoints themselves rather than from center
            // and radius, which would lose a small endpoint next to a large
            // one.
            (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
                if q > p {
                    // z ↦ (q z + p)/(z + 1)
                    [[q, p], [1.0, 1.0]]
                } else {
                    // same after z ↦ -1/z
                    [[q, -p], [1.0, -1.0]]
                }
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => unreachable!("degenerate geodesic"),
        };
        Isometry::normalize(m).expect("frame matrix has positive determinant")
    }

    /// Hyperbolic distance from `p` to the trace.
    pub fn distance_to(&self, p: &HPoint) -> f64 {
        let q = self.frame().inverse().apply(p);
        (q.x.abs() / q.y).asinh()
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        self.distance_to(p) <= ON_GEODESIC_TOL
    }

    /// Nearest point of the trace to `p`.
    pub fn foot(&self, p: &HPoint) -> HPoint {
        let m = self.frame();
        let q = m.inverse().apply(p);
        m.apply(&HPoint { x: 0.0, y: q.x.hypot(q.y) })
    }

    /// Height of `p` in the frame, after checking that it lies on the trace.
    fn frame_height(&self, p: &HPoint) -> Result<(Isometry, f64)> {
        let m = self.frame();
        let q = m.inverse().apply(p);
        if (q.x.abs() / q.y).asinh() > ON_GEODESIC_TOL {
            return Err(Error::PointNotOnGeodesic);
        }
        Ok((m, q.x.hypot(q.y)))
    }

    /// Unit Euclidean tangent at `p` pointing along the orientation.
    pub fn tangent_at(&self, p: &HPoint) -> Result<(f64, f64)> {
        let (m, y) = self.frame_height(p)?;
        // Pushforward of the upward direction i at iy by z ↦ (az+b)/(cz+d)
        // is i / (cz + d)², i.e. proportional to (2uv, u² − v²).
        let (u, v) = (m.d(), m.c() * y);
        let (tx, ty) = (2.0 * u * v, u * u - v * v);
        let n = tx.hypot(ty);
        Ok((tx / n, ty / n))
    }

    /// The point at signed arc length `s` from `start` along the orientation.
    pub fn point_along(&self, start: &HPoint, s: f64) -> Result<HPoint> {
        let (m, y) = self.frame_height(start)?;
        Ok(m.apply(&HPoint { x: 0.0, y: y * s.exp() }))
    }

    /// The geodesic through `p ∈ self` whose forward angle with `self` is
    /// `theta`, turning clockwise from the forward tangent.
    pub fn rotated_at(&self, p: &HPoint, theta: f64) -> Result<Geodesic> {
        let theta = crate::error::check_angle(theta)?;
        let (m, y) = self.frame_height(p)?;
        // In the frame: through iy with tangent (sin θ, cos θ), endpoints
        // -y tan(θ/2) → y cot(θ/2).
        let half = theta / 2.0;
        let from = BoundaryPoint::Finite(-y * half.tan());
        let to = BoundaryPoint::Finite(y / half.tan());
        Geodesic::new(m.apply_boundary(&from), m.apply_boundary(&to))
    }

    /// Image under an isometry, orientation carried along.
    pub fn image(&self, g: &Isometry) -> Geodesic {
        Geodesic { from: g.apply_boundary(&self.from), to: g.apply_boundary(&self.to) }
    }

    /// Points spaced evenly in arc length, starting at the top of the
    /// frame; used for axis sampling and plotting.
    pub fn sample(&self, half_extent: f64, n: usize) -> Vec<HPoint> {
        let m = self.frame();
        let n = n.max(2);
        (0..n)
            .map(|k| {
                let s = -half_extent + 2.0 * half_extent * k as f64 / (n - 1) as f64;
                m.apply(&HPoint { x: 0.0, y: s.exp() })
            })
            .collect()
    }
}

impl<'de> Deserialize<'de> for Geodesic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            from: BoundaryPoint,
            to: BoundaryPoint,
        }
        let raw = Raw::deserialize(deserializer)?;
        Geodesic::new(raw.from, raw.to).map_err(de::Error::custom)
    }
}

/// Axis of a hyperbolic element or glide-reflection, oriented from the
/// repelling to the attracting fixed point.
pub fn axis(g: &Isometry) -> Result<Geodesic> {
    let (rep, att) = g.fixed_boundary_points()?;
    Geodesic::new(rep, att)
}

/// Fixed geodesic of a reflection (`det = -1`, `|Tr| ≤ tol`). The
/// orientation is arbitrary but deterministic.
pub fn mirror(g: &Isometry, tol: f64) -> Result<Geodesic> {
    let class = g.classify(tol);
    if g.preserves_orientation() || class.is_positive_translation() {
        return Err(Error::NotPositiveTranslation(class.name()));
    }
    let (r1, r2) = g.boundary_fixed_roots();
    Geodesic::new(r1, r2)
}

/// Unique geodesic through `p` and `q`, oriented from `p` toward `q`.
pub fn geodesic_through(p: &HPoint, q: &HPoint) -> Result<Geodesic> {
    let dx = q.x - p.x;
    if dx == 0.0 && q.y == p.y {
        return Err(Error::CoincidentPoints);
    }
    let scale = p.x.abs().max(q.x.abs()).max(p.y).max(q.y);
    if dx.abs() <= 1e-14 * scale {
        let x = BoundaryPoint::Finite((p.x + q.x) / 2.0);
        return if q.y > p.y {
            Geodesic::new(x, BoundaryPoint::Infinity)
        } else {
            Geodesic::new(BoundaryPoint::Infinity, x)
        };
    }
    // Center on the real axis equidistant from p and q.
    let c = ((q.x * q.x + q.y * q.y) - (p.x * p.x + p.y * p.y)) / (2.0 * dx);
    let r = (p.x - c).hypot(p.y);
    let (lo, hi) = (BoundaryPoint::Finite(c - r), BoundaryPoint::Finite(c + r));
    if dx > 0.0 {
        Geodesic::new(lo, hi)
    } else {
        Geodesic::new(hi, lo)
    }
}

/// Transverse crossing of two geodesics, if any. Disjoint, asymptotic and
/// identical geodesics give `None`.
pub fn intersect(a: &Geodesic, b: &Geodesic) -> Option<Crossing> {
    let m = a.frame();
    let inv = m.inverse();
    let (b1, b2) = match (inv.apply_boundary(&b.from), inv.apply_boundary(&b.to)) {
        (BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => (x, y),
        _ => return None,
    };
    if (b1 * b2).is_nan() || b1 * b2 >= 0.0 {
        return None;
    }
    // b meets the imaginary axis at i sqrt(-b1 b2); its center is c.
    let y = (-b1 * b2).sqrt();
    let c = (b1 + b2) / 2.0;
    let dot = if b2 > b1 { c } else { -c };
    let angle = y.atan2(dot);
    if angle <= TRANSVERSE_EPS || angle >= PI - TRANSVERSE_EPS {
        return None;
    }
    Some(Crossing { point: m.apply(&HPoint { x: 0.0, y }), angle })
}

/// Angle in `(0, π)` between the forward tangents of `a` and `b` at `at`.
pub fn forward_angle(a: &Geodesic, b: &Geodesic, at: &HPoint) -> Result<f64> {
    let ta = a.tangent_at(at).map_err(|_| Error::PointNotOnBoth)?;
    let tb = b.tangent_at(at).map_err(|_| Error::PointNotOnBoth)?;
    let dot = ta.0 * tb.0 + ta.1 * tb.1;
    let cross = ta.0 * tb.1 - ta.1 * tb.0;
    let angle = cross.abs().atan2(dot);
    if angle <= TRANSVERSE_EPS || angle >= PI - TRANSVERSE_EPS {
        return Err(Error::NotTransverse);
    }
    Ok(angle)
}

/// Reflection fixing `l` pointwise.
pub fn reflection_in(l: &Geodesic) -> Isometry {
    Isometry::standard_reflection().conjugate_by(&l.frame())
}

/// Order-two rotation about `p`.
pub fn half_turn(p: &HPoint) -> Isometry {
    // Conjugate of z ↦ -1/z by z ↦ x + yz.
    Isometry::normalize([[-p.x, p.x * p.x + p.y * p.y], [-1.0, p.x]])
        .expect("half-turn determinant is y² > 0")
}

/// Hyperbolic element with axis `l` (same orientation) and length `t`.
pub fn make_hyperbolic(l: &Geodesic, t: f64) -> Result<Isometry> {
    let t = check_length(t)?;
    Ok(Isometry::standard_hyperbolic(t).conjugate_by(&l.frame()))
}

/// Glide-reflection with axis `l` (same orientation) and length `t`.
pub fn make_glide(l: &Geodesic, t: f64) -> Result<Isometry> {
    let t = check_length(t)?;
    Ok(Isometry::standard_glide(t).conjugate_by(&l.frame()))
}

/// The common perpendicular of two disjoint geodesics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommonPerpendicular {
    /// Oriented from the first geodesic toward the second.
    pub geodesic: Geodesic,
    pub foot_first: HPoint,
    pub foot_second: HPoint,
    pub distance: f64,
}

/// Common perpendicular of `l1` and `l2`, or `None` if they cross or share
/// an endpoint.
pub fn common_perpendicular(l1: &Geodesic, l2: &Geodesic) -> Option<CommonPerpendicular> {
    let m = l1.frame();
    let inv = m.inverse();
    let (b1, b2) = match (inv.apply_boundary(&l2.from), inv.apply_boundary(&l2.to)) {
        (BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => (x, y),
        _ => return None,
    };
    if (b1 * b2).is_nan() || b1 * b2 <= 0.0 {
        return None;
    }
    // In the frame: l1 is the imaginary axis, l2 lies over [p, q] on one
    // side, and the perpendicular is the circle |z| = sqrt(pq).
    let side = b1.signum();
    let (p, q) = {
        let (u, v) = (b1.abs(), b2.abs());
        (u.min(v), u.max(v))
    };
    let rho = (p * q).sqrt();
    let foot1 = HPoint { x: 0.0, y: rho };
    let foot2 = HPoint {
        x: side * 2.0 * p * q / (p + q),
        y: rho * (q - p) / (p + q),
    };
    let distance = foot1.distance(&foot2);
    let geodesic = Geodesic {
        from: m.apply_boundary(&BoundaryPoint::Finite(-side * rho)),
        to: m.apply_boundary(&BoundaryPoint::Finite(side * rho)),
    };
    Some(CommonPerpendicular {
        geodesic,
        foot_first: m.apply(&foot1),
        foot_second: m.apply(&foot2),
        distance,
    })
}

/// Distance between two disjoint geodesics.
pub fn geodesic_distance(l1: &Geodesic, l2: &Geodesic) -> Option<f64> {
    common_perpendicular(l1, l2).map(|c| c.distance)
}

/// Points on the axis of a positive-translation isometry, spaced in arc
/// length; every one realizes the translation length as displacement.
pub fn axis_samples(g: &Isometry, half_extent: f64, n: usize) -> Result<Vec<HPoint>> {
    let _ = g.translation_length_tol(DEFAULT_TOL)?;
    Ok(axis(g)?.sample(half_extent, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::IsometryClass;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, LN_2, SQRT_2};

    fn fin(x: f64) -> BoundaryPoint {
        BoundaryPoint::Finite(x)
    }

    fn pt(x: f64, y: f64) -> HPoint {
        HPoint::new(x, y).unwrap()
    }

    fn close(p: &HPoint, q: &HPoint, tol: f64) -> bool {
        p.distance(q) <= tol
    }

    /// Geodesic through i with endpoints cot θ ± csc θ, oriented toward
    /// cot θ + csc θ (the attracting point of the matrix form with
    /// p = cosh + sinh cos θ).
    fn tilted(theta: f64) -> Geodesic {
        let cot = 1.0 / theta.tan();
        let csc = 1.0 / theta.sin();
        Geodesic::new(fin(cot - csc), fin(cot + csc)).unwrap()
    }

    #[test]
    fn axis_examples() {
        let g = Isometry::new(2.0, 0.0, 0.0, 0.5).unwrap();
        assert_eq!(axis(&g).unwrap(), Geodesic::imaginary_axis());
        assert_eq!(axis(&Isometry::standard_glide(1.0)).unwrap(), Geodesic::imaginary_axis());

        let u = Isometry::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let conj = g.conjugate_by(&u);
        let a = axis(&conj).unwrap();
        assert!(a.from().approx_eq(&fin(1.0), 1e-14));
        assert_eq!(a.to(), BoundaryPoint::Infinity);

        assert!(axis(&Isometry::new(1.0, 1.0, 0.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn geodesic_through_examples() {
        let g = geodesic_through(&pt(0.0, 1.0), &pt(0.0, 2.0)).unwrap();
        assert_eq!(g, Geodesic::imaginary_axis());

        let g = geodesic_through(&pt(-1.0, 1.0), &pt(1.0, 1.0)).unwrap();
        assert!(g.from().approx_eq(&fin(-SQRT_2), 1e-15));
        assert!(g.to().approx_eq(&fin(SQRT_2), 1e-15));

        let (p, q) = (pt(0.0, 1.0), pt(1.0, 1.0));
        let g = geodesic_through(&p, &q).unwrap();
        let (c, r) = g.center_radius().unwrap();
        assert!((c - 0.5).abs() < 1e-15);
        // oracle: both points at radius r from c
        assert!(((p.x - c).hypot(p.y) - r).abs() < 1e-15);
        assert!(((q.x - c).hypot(q.y) - r).abs() < 1e-15);
        assert!(g.contains(&p) && g.contains(&q));

        let down = geodesic_through(&pt(0.0, 2.0), &pt(0.0, 1.0)).unwrap();
        assert_eq!(down, Geodesic::imaginary_axis().reversed());
        assert_eq!(geodesic_through(&p, &p), Err(Error::CoincidentPoints));
    }

    #[test]
    fn intersect_examples() {
        let semi = Geodesic::new(fin(-1.0), fin(1.0)).unwrap();
        let c = intersect(&Geodesic::imaginary_axis(), &semi).unwrap();
        assert!(close(&c.point, &HPoint::I, 1e-15));
        assert!((c.angle - FRAC_PI_2).abs() < 1e-15);

        let c = intersect(&Geodesic::imaginary_axis(), &tilted(FRAC_PI_3)).unwrap();
        assert!(close(&c.point, &HPoint::I, 1e-14));
        assert!((c.angle - FRAC_PI_3).abs() < 1e-14);

        let v1 = Geodesic::imaginary_axis();
        let v2 = Geodesic::new(fin(1.0), BoundaryPoint::Infinity).unwrap();
        assert!(intersect(&v1, &v2).is_none());
        // asymptotic and identical
        let shared = Geodesic::new(fin(0.0), fin(3.0)).unwrap();
        assert!(intersect(&v1, &shared).is_none());
        assert!(intersect(&v1, &v1).is_none());
        assert!(intersect(&v1, &v1.reversed()).is_none());
    }

    #[test]
    fn forward_angle_examples() {
        let semi = Geodesic::new(fin(-1.0), fin(1.0)).unwrap();
        let a = Geodesic::imaginary_axis();
        assert!((forward_angle(&a, &semi, &HPoint::I).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(forward_angle(&a, &a.reversed(), &pt(0.0, 3.0)), Err(Error::NotTransverse));
        assert_eq!(forward_angle(&a, &semi, &pt(0.5, 1.0)), Err(Error::PointNotOnBoth));

        // roundtrip through the constructors
        let theta = 1.1;
        let g = make_glide(&a, 0.8).unwrap();
        let h = make_hyperbolic(&tilted(theta), 1.7).unwrap();
        let ag = axis(&g).unwrap();
        let ah = axis(&h).unwrap();
        let c = intersect(&ag, &ah).unwrap();
        assert!((forward_angle(&ag, &ah, &c.point).unwrap() - theta).abs() < 1e-13);
    }

    #[test]
    fn reversing_one_side_gives_supplement() {
        let a = Geodesic::new(fin(-2.0), fin(0.5)).unwrap();
        let b = Geodesic::new(fin(-0.3), fin(4.0)).unwrap();
        let c = intersect(&a, &b).unwrap();
        let t1 = forward_angle(&a, &b, &c.point).unwrap();
        let t2 = forward_angle(&a, &b.reversed(), &c.point).unwrap();
        assert!((t1 + t2 - PI).abs() < 1e-13);
        assert!((t1 - c.angle).abs() < 1e-13);
    }

    #[test]
    fn reflection_examples() {
        let r = reflection_in(&Geodesic::imaginary_axis());
        assert!(r.approx_eq(&Isometry::standard_reflection(), 1e-15));

        let theta = 0.9;
        let r = reflection_in(&tilted(theta));
        let expected =
            Isometry::new(-theta.cos(), -theta.sin(), -theta.sin(), theta.cos()).unwrap();
        assert!(r.approx_eq(&expected, 1e-14), "{r} vs {expected}");
        assert!(r.compose(&r).approx_eq(&Isometry::identity(), 1e-14));
        assert_eq!(r.classify(DEFAULT_TOL), IsometryClass::Reflection);
        let on = tilted(theta).point_along(&HPoint::I, 0.7).unwrap();
        assert!(close(&r.apply(&on), &on, 1e-14));
    }

    #[test]
    fn half_turn_examples() {
        let e = half_turn(&HPoint::I);
        assert!(e.approx_eq(&Isometry::new(0.0, 1.0, -1.0, 0.0).unwrap(), 1e-15));
        let p = pt(0.3, 2.0);
        let e = half_turn(&p);
        assert!(e.compose(&e).approx_eq(&Isometry::identity(), 1e-14));
        assert!(close(&e.apply(&p), &p, 1e-14));
        assert!(e.abs_trace() < 1e-15);

        let q = pt(-1.0, 0.5);
        let g = half_turn(&q).compose(&half_turn(&p));
        let len = g.translation_length().unwrap();
        assert!((len - 2.0 * p.distance(&q)).abs() < 1e-12);
        let ax = axis(&g).unwrap();
        assert!(ax.contains(&p) && ax.contains(&q));
        // oriented from p to q
        assert!(same_geodesic(&ax, &geodesic_through(&p, &q).unwrap(), 1e-12));
    }

    fn same_geodesic(a: &Geodesic, b: &Geodesic, tol: f64) -> bool {
        a.from().approx_eq(&b.from(), tol) && a.to().approx_eq(&b.to(), tol)
    }

    #[test]
    fn make_hyperbolic_examples() {
        let g = make_hyperbolic(&Geodesic::imaginary_axis(), 2.0 * LN_2).unwrap();
        assert!(g.approx_eq(&Isometry::new(2.0, 0.0, 0.0, 0.5).unwrap(), 1e-15));

        let l = Geodesic::new(fin(-0.7), fin(2.2)).unwrap();
        let g = make_hyperbolic(&l, 1.3).unwrap();
        let a = axis(&g).unwrap();
        assert!(a.from().approx_eq(&l.from(), 1e-13) && a.to().approx_eq(&l.to(), 1e-13));
        assert!((g.translation_length().unwrap() - 1.3).abs() < 1e-13);

        let back = make_hyperbolic(&l.reversed(), 1.3).unwrap();
        assert!(back.approx_eq(&g.inverse(), 1e-13));

        assert_eq!(make_hyperbolic(&l, 0.0), Err(Error::InvalidLength(0.0)));
        assert!(make_glide(&l, -1.0).is_err());
    }

    #[test]
    fn make_glide_examples() {
        let g = make_glide(&Geodesic::imaginary_axis(), 1.0).unwrap();
        let e = 0.5f64.exp();
        assert!(g.approx_eq(&Isometry::new(e, 0.0, 0.0, -1.0 / e).unwrap(), 1e-15));

        let l = Geodesic::new(BoundaryPoint::Infinity, fin(0.4)).unwrap();
        let g = make_glide(&l, 0.9).unwrap();
        let sq = g.compose(&g);
        assert!(sq.approx_eq(&make_hyperbolic(&l, 1.8).unwrap(), 1e-13));
        let a = axis(&g).unwrap();
        assert!(a.from().approx_eq(&l.from(), 1e-13) && a.to().approx_eq(&l.to(), 1e-13));
        assert!(matches!(g.classify(DEFAULT_TOL), IsometryClass::GlideReflection { .. }));
    }

    #[test]
    fn glide_is_reflection_after_translation() {
        let l = Geodesic::new(fin(1.5), fin(-3.0)).unwrap();
        let lhs = make_glide(&l, 2.1).unwrap();
        let rhs = reflection_in(&l).compose(&make_hyperbolic(&l, 2.1).unwrap());
        assert!(lhs.approx_eq(&rhs, 1e-13));
    }

    #[test]
    fn point_along_examples() {
        let a = Geodesic::imaginary_axis();
        let p = a.point_along(&HPoint::I, 1.0).unwrap();
        assert!(close(&p, &pt(0.0, std::f64::consts::E), 1e-15));
        assert_eq!(a.point_along(&HPoint::I, 0.0).unwrap(), HPoint::I);

        let l = Geodesic::new(fin(-1.0), fin(3.0)).unwrap();
        let start = l.point_along(&l.foot(&HPoint::I), 0.3).unwrap();
        let fwd = l.point_along(&start, 1.7).unwrap();
        assert!((start.distance(&fwd) - 1.7).abs() < 1e-13);
        let back = l.point_along(&fwd, -1.7).unwrap();
        assert!(close(&back, &start, 1e-13));
        // positive s moves toward `to`
        assert!(fwd.x > start.x);

        assert_eq!(a.point_along(&pt(1.0, 1.0), 1.0), Err(Error::PointNotOnGeodesic));
    }

    #[test]
    fn rotated_at_has_requested_angle() {
        let l = Geodesic::new(fin(-2.0), fin(1.0)).unwrap();
        let p = l.point_along(&l.foot(&HPoint::I), -0.4).unwrap();
        for &theta in &[0.2, 1.0, FRAC_PI_2, 2.5] {
            let m = l.rotated_at(&p, theta).unwrap();
            assert!(m.contains(&p));
            assert!((forward_angle(&l, &m, &p).unwrap() - theta).abs() < 1e-12);
        }
        let m = Geodesic::imaginary_axis().rotated_at(&HPoint::I, FRAC_PI_3).unwrap();
        assert!(same_geodesic(&m, &tilted(FRAC_PI_3), 1e-14));
    }

    #[test]
    fn common_perpendicular_of_disjoint_pair() {
        let l1 = Geodesic::imaginary_axis();
        let l2 = Geodesic::new(fin(1.0), fin(4.0)).unwrap();
        let cp = common_perpendicular(&l1, &l2).unwrap();
        // closed form for the axis and [p, q]: cosh d = (q + p) / (q - p)
        assert!((cp.distance - (5.0f64 / 3.0).acosh()).abs() < 1e-14);
        assert!(l1.contains(&cp.foot_first) && l2.contains(&cp.foot_second));
        assert!(cp.geodesic.contains(&cp.foot_first) && cp.geodesic.contains(&cp.foot_second));
        let a1 = forward_angle(&cp.geodesic, &l1, &cp.foot_first).unwrap();
        let a2 = forward_angle(&cp.geodesic, &l2, &cp.foot_second).unwrap();
        assert!((a1 - FRAC_PI_2).abs() < 1e-13 && (a2 - FRAC_PI_2).abs() < 1e-13);
        // crossing and asymptotic pairs have none
        assert!(common_perpendicular(&l1, &Geodesic::new(fin(-1.0), fin(1.0)).unwrap()).is_none());
        assert!(common_perpendicular(&l1, &Geodesic::new(fin(0.0), fin(1.0)).unwrap()).is_none());
    }

    #[test]
    fn mirror_of_reflection() {
        let l = Geodesic::new(fin(-0.5), fin(2.0)).unwrap();
        let m = mirror(&reflection_in(&l), DEFAULT_TOL).unwrap();
        let same = (m.from().approx_eq(&l.from(), 1e-13) && m.to().approx_eq(&l.to(), 1e-13))
            || (m.from().approx_eq(&l.to(), 1e-13) && m.to().approx_eq(&l.from(), 1e-13));
        assert!(same, "{m:?}");
        assert!(mirror(&Isometry::standard_glide(1.0), DEFAULT_TOL).is_err());
    }

    #[test]
    fn tangent_direction_follows_orientation() {
        let l = Geodesic::new(fin(-1.0), fin(1.0)).unwrap();
        let (tx, ty) = l.tangent_at(&HPoint::I).unwrap();
        assert!((tx - 1.0).abs() < 1e-15 && ty.abs() < 1e-15);
        let (tx, _) = l.reversed().tangent_at(&HPoint::I).unwrap();
        assert!((tx + 1.0).abs() < 1e-15);
        let (_, ty) = Geodesic::imaginary_axis().reversed().tangent_at(&pt(0.0, 2.0)).unwrap();
        assert!((ty + 1.0).abs() < 1e-15);
    }

    #[test]
    fn json_forms() {
        let g: Geodesic = serde_json::from_str(r#"{"from": 0, "to": "inf"}"#).unwrap();
        assert_eq!(g, Geodesic::imaginary_axis());
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"from":0.0,"to":"inf"}"#);
        assert!(serde_json::from_str::<Geodesic>(r#"{"from": 1, "to": 1}"#).is_err());
        assert!(serde_json::from_str::<Geodesic>(r#"{"from": "inf", "to": "inf"}"#).is_err());
    }
}
