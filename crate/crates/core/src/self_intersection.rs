//! Lower bounds on the self-intersection number of a closed geodesic `α`
//! that crosses a one-sided closed geodesic `β`.
//!
//! If the forward angle at a crossing satisfies
//! `|cos θ| > tanh((2m - 1) l_β / 2)`, then `α` has at least `m`
//! self-intersection points. The lift construction behind this bound is
//! available as a numerical cross-check.

use serde::Serialize;

use crate::error::{check_angle, check_length, Error, Result};
use crate::geodesic::{forward_angle, intersect, make_glide, reflection_in, Geodesic};
use crate::point::{BoundaryPoint, HPoint};

/// Longest `threshold_satisfied` list materialized by [`bound`].
pub const MAX_THRESHOLD_LIST: usize = 4096;

/// Minimum gap between consecutive lift angles for them to count as
/// strictly increasing.
pub const ANGLE_MARGIN: f64 = 1e-8;

/// Tolerance for matching geodesic endpoints and crossing points in the
/// lift construction.
const LIFT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfIntersectionBound {
    /// Largest `m ≥ 0` whose threshold inequality holds.
    pub m_lower: u64,
    /// The inequality for `m = 1, 2, …` (truncated to
    /// [`MAX_THRESHOLD_LIST`] entries).
    pub threshold_satisfied: Vec<bool>,
    /// `m_lower ≥ 1`: `α` cannot be simple.
    pub not_simple: bool,
}

/// `tanh((2m - 1) l_β / 2) < |cos θ|`.
pub fn threshold_holds(m: u64, l_beta: f64, abs_cos: f64) -> bool {
    ((2.0 * m as f64 - 1.0) * l_beta / 2.0).tanh() < abs_cos
}

/// The bound for a given `|cos θ| ∈ [0, 1)`.
pub fn bound_from_abs_cos(l_beta: f64, abs_cos: f64) -> Result<SelfIntersectionBound> {
    let l = check_length(l_beta)?;
    if !(abs_cos.is_finite() && (0.0..1.0).contains(&abs_cos)) {
        return Err(Error::InvalidAngle(abs_cos));
    }
    // Largest integer strictly below (2 artanh|cos θ| / l + 1) / 2.
    let x = (2.0 * abs_cos.atanh() / l + 1.0) / 2.0;
    let mut m = (x.ceil() - 1.0).max(0.0);
    if m < 2f64.powi(52) {
        while m > 0.0 && !threshold_holds(m as u64, l, abs_cos) {
            m -= 1.0;
        }
        while threshold_holds(m as u64 + 1, l, abs_cos) {
            m += 1.0;
        }
    }
    let m_lower = m as u64;
    let listed = m_lower.min(MAX_THRESHOLD_LIST as u64);
    let threshold_satisfied = (1..=listed).map(|k| threshold_holds(k, l, abs_cos)).collect();
    Ok(SelfIntersectionBound { m_lower, threshold_satisfied, not_simple: m_lower >= 1 })
}

/// The self-intersection lower bound for a crossing with forward angle
/// `theta` against a one-sided geodesic of length `l_beta`.
///
/// Fails with `InvalidAngle` when `|cos θ|` rounds to 1, where the bound
/// is unbounded.
pub fn bound(l_beta: f64, theta: f64) -> Result<SelfIntersectionBound> {
    let theta = check_angle(theta)?;
    let abs_cos = theta.cos().abs();
    if abs_cos >= 1.0 {
        return Err(Error::InvalidAngle(theta));
    }
    bound_from_abs_cos(l_beta, abs_cos)
}

/// `|cos θ| > tanh(l_β / 2)`: the crossing forces a self-intersection.
pub fn is_simple_excluded(l_beta: f64, theta: f64) -> Result<bool> {
    let l = check_length(l_beta)?;
    let theta = check_angle(theta)?;
    Ok(threshold_holds(1, l, theta.cos().abs()))
}

/// One stage `i` of the lift construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftStep {
    pub i: u64,
    /// The perpendicular to `β̃` at distance `(2i - 1) l_β / 2` below `P̃₀`.
    pub perpendicular: Geodesic,
    /// The lift `α̃_{2i-1}`, the image of `α̃₀` under the inverse deck
    /// transformation of `β` to the power `2i - 1`.
    pub lift: Geodesic,
    /// `S_i`, where `α̃₀` crosses the perpendicular.
    pub crossing: Option<HPoint>,
    /// The lift equals the mirror image of `α̃₀` in the perpendicular
    /// (with orientation reversed).
    pub mirror_matches: bool,
    /// `α̃₀` and the lift cross transversely at `S_i`.
    pub lift_crosses_at_crossing: bool,
    /// Forward angle `φ_i` between `α̃₀` and the lift at `S_i`.
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftReport {
    pub m: u64,
    pub l_beta: f64,
    /// The angle used for the construction: `θ` or `π - θ`, whichever has
    /// nonnegative cosine.
    pub theta: f64,
    /// `β̃`, the imaginary axis oriented upward.
    pub beta: Geodesic,
    /// `α̃₀`, through `P̃₀ = i`.
    pub alpha: Geodesic,
    pub steps: Vec<LiftStep>,
    /// Check (a): `α̃₀` crosses every perpendicular.
    pub crosses_perpendiculars: bool,
    /// Check (b): each reflected lift crosses `α̃₀` transversely at `S_i`.
    pub reflected_lifts_cross: bool,
    /// Check (c): `φ₁ < φ₂ < … < φ_m`, each step larger than
    /// [`ANGLE_MARGIN`].
    pub angles_increasing: bool,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.crosses_perpendiculars && self.reflected_lifts_cross && self.angles_increasing
    }
}

fn same_oriented(a: &Geodesic, b: &Geodesic) -> bool {
    a.from().approx_eq(&b.from(), LIFT_TOL) && a.to().approx_eq(&b.to(), LIFT_TOL)
}

/// Builds the lifts for `i = 1..=m` and evaluates all three checks,
/// without requiring the threshold inequality.
pub fn lift_construction(l_beta: f64, theta: f64, m: u64) -> Result<LiftReport> {
    let l = check_length(l_beta)?;
    let theta = check_angle(theta)?;
    let theta = if theta.cos() < 0.0 { std::f64::consts::PI - theta } else { theta };
    let beta = Geodesic::imaginary_axis();
    let alpha = beta.rotated_at(&HPoint::I, theta)?;
    let deck = make_glide(&beta, l)?;

    let mut steps = Vec::with_capacity(m as usize);
    for i in 1..=m {
        let depth = (2 * i - 1) as f64 * l / 2.0;
        let foot = HPoint::new(0.0, (-depth).exp())?;
        // The perpendicular through `foot`, crossing `β̃` at a right angle.
        let r = foot.y;
        let perpendicular = Geodesic::new(BoundaryPoint::Finite(r), BoundaryPoint::Finite(-r))?;
        let lift = alpha.image(&deck.pow(-(2 * i as i64 - 1)));
        let mirrored = alpha.image(&reflection_in(&perpendicular)).reversed();
        let crossing = intersect(&alpha, &perpendicular).map(|c| c.point);
        let (lift_crosses_at_crossing, phi) = match (crossing, intersect(&alpha, &lift)) {
            (Some(s), Some(c)) if s.distance(&c.point) <= LIFT_TOL => (true, forward_angle(&alpha, &lift, &s).ok()),
            _ => (false, None),
        };
        steps.push(LiftStep {
            i,
            perpendicular,
            lift,
            crossing,
            mirror_matches: same_oriented(&lift, &mirrored),
            lift_crosses_at_crossing,
            phi,
        });
    }

    let crosses_perpendiculars = steps.iter().all(|s| s.crossing.is_some());
    let reflected_lifts_cross = steps.iter().all(|s| s.mirror_matches && s.lift_crosses_at_crossing);
    let phis: Option<Vec<f64>> = steps.iter().map(|s| s.phi).collect();
    let angles_increasing = phis.is_some_and(|p| p.windows(2).all(|w| w[1] - w[0] > ANGLE_MARGIN));
    Ok(LiftReport {
        m,
        l_beta: l,
        theta,
        beta,
        alpha,
        steps,
        crosses_perpendiculars,
        reflected_lifts_cross,
        angles_increasing,
    })
}

/// The lift construction for an `m` whose threshold inequality holds.
pub fn lift_crosscheck(l_beta: f64, theta: f64, m: u64) -> Result<LiftReport> {
    let l = check_length(l_beta)?;
    let theta = check_angle(theta)?;
    if m == 0 || !threshold_holds(m, l, theta.cos().abs()) {
        return Err(Error::ConditionNotSatisfied(m as u32));
    }
    lift_construction(l, theta, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn right_angle_gives_nothing() {
        let b = bound(1.0, FRAC_PI_2).unwrap();
        assert_eq!(b.m_lower, 0);
        assert!(b.threshold_satisfied.is_empty());
        assert!(!b.not_simple);
        assert!(!is_simple_excluded(1.0, FRAC_PI_2).unwrap());
    }

    #[test]
    fn boundary_equality_is_excluded() {
        let b = bound_from_abs_cos(2.0, 1.0f64.tanh()).unwrap();
        assert_eq!(b.m_lower, 0);
    }

    #[test]
    fn worked_example() {
        let b = bound_from_abs_cos(2.0, 0.999).unwrap();
        assert!((0.999f64.atanh() - 3.8002).abs() < 1e-4);
        assert_eq!(b.m_lower, 2);
        assert_eq!(b.threshold_satisfied, vec![true, true]);
        assert!(threshold_holds(2, 2.0, 0.999));
        assert!(!threshold_holds(3, 2.0, 0.999));
        assert!(is_simple_excluded(2.0, 0.999f64.acos()).unwrap());
        assert!(is_simple_excluded(2.0, PI - 0.999f64.acos()).unwrap());
    }

    #[test]
    fn short_beta_excludes_simplicity() {
        assert!(is_simple_excluded(1e-6, 1.5).unwrap());
        assert!(is_simple_excluded(1e-6, 1.6).unwrap());
    }

    #[test]
    fn bad_input() {
        assert_eq!(bound(0.0, 1.0), Err(Error::InvalidLength(0.0)));
        assert_eq!(bound(1.0, 0.0), Err(Error::InvalidAngle(0.0)));
        assert!(bound(1.0, 1e-10).is_err());
        assert!(bound_from_abs_cos(1.0, 1.0).is_err());
    }

    #[test]
    fn threshold_list_is_truncated() {
        let b = bound_from_abs_cos(1e-5, 0.9).unwrap();
        assert!(b.m_lower > MAX_THRESHOLD_LIST as u64);
        assert_eq!(b.threshold_satisfied.len(), MAX_THRESHOLD_LIST);
    }

    #[test]
    fn lift_single_step() {
        let theta = 0.9f64.acos();
        let report = lift_crosscheck(2.0, theta, 1).unwrap();
        assert!(report.passed(), "{report:?}");
        let step = &report.steps[0];
        assert!(step.mirror_matches);
        let s = step.crossing.unwrap();
        assert!(step.perpendicular.contains(&s));
        // Obtuse angles use the mirrored construction.
        assert!(lift_crosscheck(2.0, PI - theta, 1).unwrap().passed());
    }

    #[test]
    fn lift_worked_example_and_threshold() {
        let theta = 0.999f64.acos();
        let report = lift_crosscheck(2.0, theta, 2).unwrap();
        assert!(report.passed(), "{report:?}");
        let phis: Vec<f64> = report.steps.iter().map(|s| s.phi.unwrap()).collect();
        assert!(phis[0] < phis[1]);
        assert_eq!(lift_crosscheck(2.0, theta, 3), Err(Error::ConditionNotSatisfied(3)));
        let beyond = lift_construction(2.0, theta, 3).unwrap();
        assert!(!beyond.crosses_perpendiculars);
        assert!(!beyond.passed());
    }

    #[test]
    fn crosscheck_rejects_zero() {
        assert_eq!(lift_crosscheck(1.0, 0.3, 0), Err(Error::ConditionNotSatisfied(0)));
    }
}
