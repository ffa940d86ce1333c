//! Smoothing a transverse crossing of two closed geodesics, and the search
//! for odd powers `m` that turn the smoothed class `|α^m_P β_P|` into a
//! puncture loop.
//!
//! With `β` one-sided, `r = sinh(l_β/2)` and `s = cosh(l_β/2) cos θ`, the
//! class `|α^m_P β_P|` (for odd `m`, so that `α^m` is one-sided) is a
//! puncture loop exactly when `f(m l_α / 2) = 1`, where
//! `f(t) = |r sinh t + s cosh t|`. Negative `m` reverse the direction of
//! `α`, which is the same as evaluating `f` at negative `t`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_angle, check_length, Error, Result};
use crate::trace::{half_trace_glide_glide, half_trace_glide_hyp, half_trace_hyp_hyp, sinh_cosh};

/// Largest `|m|` reported by [`find_puncture_m`] unless overridden.
pub const DEFAULT_M_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

/// Length and sidedness of a closed geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveData {
    pub length: f64,
    pub sided: Sidedness,
}

impl CurveData {
    pub fn new(length: f64, sided: Sidedness) -> Result<Self> {
        Ok(CurveData { length: check_length(length)?, sided })
    }

    pub fn one_sided(length: f64) -> Result<Self> {
        CurveData::new(length, Sidedness::OneSided)
    }

    pub fn two_sided(length: f64) -> Result<Self> {
        CurveData::new(length, Sidedness::TwoSided)
    }
}

impl<'de> Deserialize<'de> for CurveData {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            length: f64,
            sided: Sidedness,
        }
        let raw = Raw::deserialize(deserializer)?;
        CurveData::new(raw.length, raw.sided).map_err(serde::de::Error::custom)
    }
}

/// The free homotopy class obtained by smoothing a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SmoothingOutcome {
    /// An essential class with a geodesic representative of this length.
    ///
    /// `reflection_degenerate` marks the mixed-sidedness boundary case in
    /// which the product of the two isometries is a pure reflection; the
    /// reported length is then (numerically) zero.
    Essential { length: f64, reflection_degenerate: bool },
    PunctureLoop,
    /// The one-sided/one-sided quantity is below 1: the product would be
    /// elliptic, which no torsion-free surface group realizes.
    SubUnit,
}

impl SmoothingOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            SmoothingOutcome::Essential { .. } => "essential",
            SmoothingOutcome::PunctureLoop => "puncture-loop",
            SmoothingOutcome::SubUnit => "sub-unit",
        }
    }

    pub fn length(&self) -> Option<f64> {
        match *self {
            SmoothingOutcome::Essential { length, .. } => Some(length),
            _ => None,
        }
    }
}

/// `|sinh(l_α/2) sinh(l_β/2) + cosh(l_α/2) cosh(l_β/2) cos θ|`, half the
/// trace of the product of two glide-reflections with these lengths whose
/// axes cross at forward angle `θ`.
pub fn puncture_quantity(l_alpha: f64, l_beta: f64, theta: f64) -> f64 {
    half_trace_glide_glide(l_alpha, l_beta, theta)
}

/// Classifies the class `|α_P β_P|` obtained by smoothing the crossing `P`
/// of `α` and `β`, where `θ` is the forward angle at `P`.
pub fn smooth(alpha: &CurveData, beta: &CurveData, theta: f64, tol: f64) -> Result<SmoothingOutcome> {
    let la = check_length(alpha.length)?;
    let lb = check_length(beta.length)?;
    let theta = check_angle(theta)?;
    use Sidedness::{OneSided, TwoSided};
    let outcome = match (alpha.sided, beta.sided) {
        (TwoSided, TwoSided) => SmoothingOutcome::Essential {
            length: 2.0 * half_trace_hyp_hyp(la, lb, theta).acosh(),
            reflection_degenerate: false,
        },
        (OneSided, TwoSided) | (TwoSided, OneSided) => {
            let (glide, hyp) = if alpha.sided == OneSided { (la, lb) } else { (lb, la) };
            let q = half_trace_glide_hyp(glide, hyp, theta);
            SmoothingOutcome::Essential { length: 2.0 * q.asinh(), reflection_degenerate: q <= tol }
        }
        (OneSided, OneSided) => {
            let q = puncture_quantity(la, lb, theta);
            if (q - 1.0).abs() <= tol {
                SmoothingOutcome::PunctureLoop
            } else if q > 1.0 {
                SmoothingOutcome::Essential { length: 2.0 * q.acosh(), reflection_degenerate: false }
            } else {
                SmoothingOutcome::SubUnit
            }
        }
    };
    Ok(outcome)
}

/// The five shapes of the graph of `f(t) = |r sinh t + s cosh t|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FCase {
    /// `s > r`: `f` is bounded below by `sqrt(s² - r²)`.
    #[serde(rename = "i")]
    I,
    /// `s = r`: `f(t) = r e^t`.
    #[serde(rename = "ii")]
    Ii,
    /// `-r < s < r`: `f` vanishes once and is unbounded on both sides.
    #[serde(rename = "iii")]
    Iii,
    /// `s = -r`: `f(t) = r e^{-t}`.
    #[serde(rename = "iv")]
    Iv,
    /// `s < -r`: mirror image of case (i).
    #[serde(rename = "v")]
    V,
}

impl FCase {
    pub fn name(self) -> &'static str {
        match self {
            FCase::I => "i",
            FCase::Ii => "ii",
            FCase::Iii => "iii",
            FCase::Iv => "iv",
            FCase::V => "v",
        }
    }
}

impl fmt::Display for FCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.name())
    }
}

/// Compares `s` with `±r`, treating values within `tol` as equal.
pub fn classify_f_case(r: f64, s: f64, tol: f64) -> FCase {
    if (s - r).abs() <= tol {
        FCase::Ii
    } else if (s + r).abs() <= tol {
        FCase::Iv
    } else if s > r {
        FCase::I
    } else if s < -r {
        FCase::V
    } else {
        FCase::Iii
    }
}

/// `(r, s) = (sinh(l_β/2), cosh(l_β/2) cos θ)`.
pub fn f_coefficients(l_beta: f64, theta: f64) -> (f64, f64) {
    let (sh, ch) = sinh_cosh(l_beta / 2.0);
    (sh, ch * theta.cos())
}

/// `f(t) = |r sinh t + s cosh t|`.
pub fn f_value(r: f64, s: f64, t: f64) -> f64 {
    let (sh, ch) = sinh_cosh(t);
    (r * sh + s * ch).abs()
}

/// All real `t` with `f(t) = 1`, in increasing order.
///
/// Writing `u = e^t`, `A = (s + r)/2` and `B = (s - r)/2`, the equation
/// `r sinh t + s cosh t = σ` becomes `A u² - σ u + B = 0` for `σ = ±1`.
/// A discriminant within `tol` below zero is treated as a tangency.
pub fn f_crossings(r: f64, s: f64, tol: f64) -> Vec<f64> {
    let a = (s + r) / 2.0;
    let b = (s - r) / 2.0;
    let mut ts = Vec::with_capacity(4);
    for sigma in [1.0, -1.0] {
        let mut roots = Vec::with_capacity(2);
        if a == 0.0 {
            roots.push(sigma * b);
        } else {
            let mut disc = 1.0 - 4.0 * a * b;
            if disc < 0.0 {
                if disc < -tol {
                    continue;
                }
                disc = 0.0;
            }
            // Numerically stable pair: q = σ(1 + √disc)/2 never vanishes.
            let q = sigma * (1.0 + disc.sqrt()) / 2.0;
            roots.push(q / a);
            roots.push(b / q);
        }
        ts.extend(roots.into_iter().filter(|u| u.is_finite() && *u > 0.0).map(f64::ln));
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|x, y| (*x - *y).abs() <= tol * (1.0 + y.abs()));
    ts
}

/// How the forward angle compares with `π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngleRelation {
    Greater,
    Equal,
    Less,
    NotApplicable,
}

fn compare_with_right_angle(theta: f64, tol: f64) -> AngleRelation {
    if (theta - FRAC_PI_2).abs() <= tol {
        AngleRelation::Equal
    } else if theta > FRAC_PI_2 {
        AngleRelation::Greater
    } else {
        AngleRelation::Less
    }
}

/// The odd `m` for which `|α^m_P β_P|` is a puncture loop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PunctureSearchResult {
    /// Sorted; at most two entries, and two entries differ by 2.
    pub ms: Vec<i64>,
    pub f_case: FCase,
    pub r: f64,
    pub s: f64,
    /// Every `t` with `f(t) = 1`, whether or not it falls on an odd `m`.
    pub crossings: Vec<f64>,
    /// When `ms = [m - 1, m + 1]`, how `θ` compares with `π/2`.
    pub angle_relation: AngleRelation,
}

/// Nearest odd integer to `x`.
fn nearest_odd(x: f64) -> f64 {
    2.0 * ((x - 1.0) / 2.0).round() + 1.0
}

/// Solves `f(m l_α / 2) = 1` over odd `m` with `|m| ≤ m_cap`.
///
/// A crossing `t` is accepted when `t / (l_α/2)` lies within
/// `tol · (1 + |m|)` of an odd integer `m`.
pub fn find_puncture_m(l_alpha: f64, l_beta: f64, theta: f64, tol: f64, m_cap: u64) -> Result<PunctureSearchResult> {
    let la = check_length(l_alpha)?;
    let lb = check_length(l_beta)?;
    if !theta.is_finite() {
        return Err(Error::InvalidAngle(theta));
    }
    let (r, s) = f_coefficients(lb, theta);
    let crossings = f_crossings(r, s, tol);
    let half = la / 2.0;
    let mut ms: Vec<i64> = Vec::with_capacity(2);
    for t in &crossings {
        let ratio = t / half;
        let m = nearest_odd(ratio);
        if m.abs() <= m_cap as f64 && (ratio - m).abs() <= tol * (1.0 + m.abs()) {
            ms.push(m as i64);
        }
    }
    ms.sort_unstable();
    ms.dedup();
    let angle_relation = match ms.as_slice() {
        [lo, hi] if hi - lo == 2 => compare_with_right_angle(theta, tol),
        _ => AngleRelation::NotApplicable,
    };
    Ok(PunctureSearchResult { ms, f_case: classify_f_case(r, s, tol), r, s, crossings, angle_relation })
}

/// For even `m`: when the puncture powers are exactly `{m - 1, m + 1}`,
/// how `θ` compares with `π/2` (greater for `m > 0`, equal for `m = 0`,
/// less for `m < 0`); `NotApplicable` otherwise.
pub fn consecutive_angle_relation(m: i64, l_alpha: f64, l_beta: f64, theta: f64, tol: f64) -> AngleRelation {
    if m % 2 != 0 {
        return AngleRelation::NotApplicable;
    }
    match find_puncture_m(l_alpha, l_beta, theta, tol, DEFAULT_M_CAP) {
        Ok(found) if found.ms == [m - 1, m + 1] => found.angle_relation,
        _ => AngleRelation::NotApplicable,
    }
}

/// Finds `(l_β, θ)` for which the puncture powers are exactly
/// `{m - 1, m + 1}`, for even `m` and the given `l_α`.
///
/// With `t₁ = (m-1) l_α/2` and `t₂ = (m+1) l_α/2`, each choice of signs
/// `σᵢ` turns `f(tᵢ) = 1` into the linear system
/// `r sinh tᵢ + s cosh tᵢ = σᵢ` (determinant `-sinh l_α`). A solution is
/// usable when `r > 0` and `|s| < sqrt(1 + r²)`, and is returned only
/// after [`find_puncture_m`] confirms it.
pub fn solve_consecutive_pair(m: i64, l_alpha: f64) -> Option<(f64, f64)> {
    if m % 2 != 0 || !(l_alpha.is_finite() && l_alpha > 0.0) {
        return None;
    }
    let (s1, c1) = sinh_cosh((m - 1) as f64 * l_alpha / 2.0);
    let (s2, c2) = sinh_cosh((m + 1) as f64 * l_alpha / 2.0);
    let det = s1 * c2 - c1 * s2;
    for (sigma1, sigma2) in [(-1.0, 1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, -1.0)] {
        let r = (sigma1 * c2 - sigma2 * c1) / det;
        let s = (s1 * sigma2 - s2 * sigma1) / det;
        if !(r.is_finite() && s.is_finite() && r > 0.0) {
            continue;
        }
        let ch = r.hypot(1.0);
        let cos_theta = s / ch;
        if cos_theta.abs() >= 1.0 {
            continue;
        }
        let l_beta = 2.0 * r.asinh();
        let theta = cos_theta.acos();
        if check_angle(theta).is_err() {
            continue;
        }
        let confirmed = find_puncture_m(l_alpha, l_beta, theta, crate::DEFAULT_TOL, DEFAULT_M_CAP)
            .map(|found| found.ms == [m - 1, m + 1])
            .unwrap_or(false);
        if confirmed {
            return Some((l_beta, theta));
        }
    }
    None
}
