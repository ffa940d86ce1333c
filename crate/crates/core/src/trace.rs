//! Composition identities for pairs of positive-translation isometries
//! whose axes cross, and where the axis of the product lands.
//!
//! For `g`, `h` with axes meeting at `P` at forward angle `θ`, and
//! `(c_x, s_x) = (cosh(t_x/2), sinh(t_x/2))`:
//!
//! | g, h           | `½|Tr gh|`                 | product            |
//! |----------------|----------------------------|--------------------|
//! | hyp, hyp       | `c_g c_h + s_g s_h cos θ`  | hyperbolic         |
//! | glide, hyp     | `|s_g c_h + c_g s_h cos θ|`| glide / reflection |
//! | glide, glide   | `|s_g s_h + c_g c_h cos θ|`| by value vs 1      |
//!
//! The mixed case is symmetric: `hyp, glide` uses the same expression with
//! the glide length in the `sinh · cosh` slot.

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{check_angle, check_length, Error, Result};
use crate::geodesic::{axis, intersect, make_glide, make_hyperbolic, mirror, Geodesic};
use crate::isometry::{Isometry, IsometryClass};
use crate::point::HPoint;

/// The two kinds of positive-translation isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Translation {
    #[serde(alias = "hyp")]
    Hyperbolic,
    #[serde(alias = "glide-reflection")]
    Glide,
}

impl Translation {
    pub fn of(class: &IsometryClass) -> Option<Translation> {
        match class {
            IsometryClass::Hyperbolic { .. } => Some(Translation::Hyperbolic),
            IsometryClass::GlideReflection { .. } => Some(Translation::Glide),
            _ => None,
        }
    }

    /// Isometry with this kind, the given axis and length.
    pub fn make(self, axis: &Geodesic, t: f64) -> Result<Isometry> {
        match self {
            Translation::Hyperbolic => make_hyperbolic(axis, t),
            Translation::Glide => make_glide(axis, t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaCase {
    HypHyp,
    GlideHyp,
    HypGlide,
    GlideGlide,
}

impl FormulaCase {
    pub fn new(g: Translation, h: Translation) -> Self {
        match (g, h) {
            (Translation::Hyperbolic, Translation::Hyperbolic) => FormulaCase::HypHyp,
            (Translation::Glide, Translation::Hyperbolic) => FormulaCase::GlideHyp,
            (Translation::Hyperbolic, Translation::Glide) => FormulaCase::HypGlide,
            (Translation::Glide, Translation::Glide) => FormulaCase::GlideGlide,
        }
    }

    pub fn kinds(self) -> (Translation, Translation) {
        match self {
            FormulaCase::HypHyp => (Translation::Hyperbolic, Translation::Hyperbolic),
            FormulaCase::GlideHyp => (Translation::Glide, Translation::Hyperbolic),
            FormulaCase::HypGlide => (Translation::Hyperbolic, Translation::Glide),
            FormulaCase::GlideGlide => (Translation::Glide, Translation::Glide),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FormulaCase::HypHyp => "hyp-hyp",
            FormulaCase::GlideHyp => "glide-hyp",
            FormulaCase::HypGlide => "hyp-glide",
            FormulaCase::GlideGlide => "glide-glide",
        }
    }
}

impl fmt::Display for FormulaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositionPrediction {
    /// `½|Tr gh|`.
    pub half_trace: f64,
    pub predicted_class: IsometryClass,
    pub formula_case: FormulaCase,
}

impl Serialize for CompositionPrediction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let len = self.predicted_class.length();
        let mut st = serializer.serialize_struct("CompositionPrediction", 3 + usize::from(len.is_some()))?;
        st.serialize_field("half_trace", &self.half_trace)?;
        st.serialize_field("class", self.predicted_class.name())?;
        if let Some(t) = len {
            st.serialize_field("length", &t)?;
        }
        st.serialize_field("formula_case", &self.formula_case)?;
        st.end()
    }
}

pub(crate) fn sinh_cosh(x: f64) -> (f64, f64) {
    (x.sinh(), x.cosh())
}

/// Hyperbolic-hyperbolic value `c_g c_h + s_g s_h cos θ`.
pub fn half_trace_hyp_hyp(t_g: f64, t_h: f64, theta: f64) -> f64 {
    let (sg, cg) = sinh_cosh(t_g / 2.0);
    let (sh, ch) = sinh_cosh(t_h / 2.0);
    cg * ch + sg * sh * theta.cos()
}

/// Mixed value `|s_glide c_hyp + c_glide s_hyp cos θ|`.
pub fn half_trace_glide_hyp(t_glide: f64, t_hyp: f64, theta: f64) -> f64 {
    let (sg, cg) = sinh_cosh(t_glide / 2.0);
    let (sh, ch) = sinh_cosh(t_hyp / 2.0);
    (sg * ch + cg * sh * theta.cos()).abs()
}

/// Glide-glide value `|s_g s_h + c_g c_h cos θ|`.
pub fn half_trace_glide_glide(t_g: f64, t_h: f64, theta: f64) -> f64 {
    let (sg, cg) = sinh_cosh(t_g / 2.0);
    let (sh, ch) = sinh_cosh(t_h / 2.0);
    (sg * sh + cg * ch * theta.cos()).abs()
}

/// Class of an orientation-preserving product with the given `½|Tr|`.
pub(crate) fn class_from_half_trace(half_trace: f64, tol: f64) -> IsometryClass {
    if half_trace > 1.0 + tol {
        IsometryClass::Hyperbolic { length: 2.0 * half_trace.acosh() }
    } else if half_trace >= 1.0 - tol {
        IsometryClass::Parabolic
    } else {
        IsometryClass::Elliptic
    }
}

/// Class of an orientation-reversing product with the given `½|Tr|`.
pub(crate) fn reversing_class_from_half_trace(half_trace: f64, tol: f64) -> IsometryClass {
    if half_trace > tol {
        IsometryClass::GlideReflection { length: 2.0 * half_trace.asinh() }
    } else {
        IsometryClass::Reflection
    }
}

pub fn predict_half_trace(
    kind_g: Translation,
    t_g: f64,
    kind_h: Translation,
    t_h: f64,
    theta: f64,
    tol: f64,
) -> Result<CompositionPrediction> {
    let t_g = check_length(t_g)?;
    let t_h = check_length(t_h)?;
    let theta = check_angle(theta)?;
    let formula_case = FormulaCase::new(kind_g, kind_h);
    let (half_trace, predicted_class) = match formula_case {
        FormulaCase::HypHyp => {
            let v = half_trace_hyp_hyp(t_g, t_h, theta);
            (v, class_from_half_trace(v, tol))
        }
        FormulaCase::GlideHyp => {
            let v = half_trace_glide_hyp(t_g, t_h, theta);
            (v, reversing_class_from_half_trace(v, tol))
        }
        FormulaCase::HypGlide => {
            let v = half_trace_glide_hyp(t_h, t_g, theta);
            (v, reversing_class_from_half_trace(v, tol))
        }
        FormulaCase::GlideGlide => {
            let v = half_trace_glide_glide(t_g, t_h, theta);
            (v, class_from_half_trace(v, tol))
        }
    };
    Ok(CompositionPrediction { half_trace, predicted_class, formula_case })
}

/// A pair with `g` translating up the imaginary axis and the axis of `h`
/// crossing it at `i` at forward angle `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Configuration {
    pub g: Isometry,
    pub h: Isometry,
    pub axis_g: Geodesic,
    pub axis_h: Geodesic,
    pub crossing: HPoint,
}

impl Configuration {
    pub fn standard(
        kind_g: Translation,
        t_g: f64,
        kind_h: Translation,
        t_h: f64,
        theta: f64,
    ) -> Result<Self> {
        let axis_g = Geodesic::imaginary_axis();
        let axis_h = axis_g.rotated_at(&HPoint::I, theta)?;
        Ok(Configuration {
            g: kind_g.make(&axis_g, t_g)?,
            h: kind_h.make(&axis_h, t_h)?,
            axis_g,
            axis_h,
            crossing: HPoint::I,
        })
    }

    /// The same configuration moved by an isometry `m`.
    pub fn transported(&self, m: &Isometry) -> Self {
        Configuration {
            g: self.g.conjugate_by(m),
            h: self.h.conjugate_by(m),
            axis_g: self.axis_g.image(m),
            axis_h: self.axis_h.image(m),
            crossing: m.apply(&self.crossing),
        }
    }

    pub fn product(&self) -> Isometry {
        self.g.compose(&self.h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleReport {
    pub predicted: f64,
    pub actual: f64,
    pub abs_error: f64,
    pub formula_case: FormulaCase,
    /// Forward angle measured from the computed axes.
    pub theta: f64,
}

fn translation_kind(g: &Isometry, tol: f64) -> Result<(Translation, f64)> {
    let class = g.classify(tol);
    match (Translation::of(&class), class.length()) {
        (Some(kind), Some(t)) => Ok((kind, t)),
        _ => Err(Error::NotPositiveTranslation(class.name())),
    }
}

/// Compares the closed-form `½|Tr gh|` (from the classes, lengths and
/// measured forward angle) with the matrix product.
pub fn verify_against_oracle(g: &Isometry, h: &Isometry, tol: f64) -> Result<OracleReport> {
    let (kind_g, t_g) = translation_kind(g, tol)?;
    let (kind_h, t_h) = translation_kind(h, tol)?;
    let crossing = intersect(&axis(g)?, &axis(h)?).ok_or(Error::AxesDoNotCross)?;
    let prediction = predict_half_trace(kind_g, t_g, kind_h, t_h, crossing.angle, tol)?;
    let actual = g.compose(h).abs_trace() / 2.0;
    Ok(OracleReport {
        predicted: prediction.half_trace,
        actual,
        abs_error: (prediction.half_trace - actual).abs(),
        formula_case: prediction.formula_case,
        theta: crossing.angle,
    })
}

/// Axis of a positive-translation isometry, or the mirror of a reflection.
pub fn product_line(product: &Isometry, tol: f64) -> Result<Geodesic> {
    match product.classify(tol) {
        IsometryClass::Reflection => mirror(product, tol),
        _ => axis(product),
    }
}

fn expect_kind(g: &Isometry, kind: Translation, tol: f64) -> Result<(Geodesic, f64)> {
    let class = g.classify(tol);
    match (Translation::of(&class), class.length()) {
        (Some(k), Some(t)) if k == kind => Ok((axis(g)?, t)),
        (Some(_), Some(_)) => Err(Error::UnexpectedClass(class.name())),
        _ => Err(Error::NotPositiveTranslation(class.name())),
    }
}

fn check_crossing_at(a: &Geodesic, b: &Geodesic, p: &HPoint) -> Result<()> {
    if intersect(a, b).is_none() || !a.contains(p) || !b.contains(p) {
        return Err(Error::AxesDoNotCross);
    }
    Ok(())
}

/// For `g` hyperbolic and `h` a glide-reflection with axes crossing at
/// `p`: the point at distance `t_g/2` from `p` along the axis of `g`, in
/// its direction, where the axis of `gh` crosses it.
pub fn predicted_axis_crossing_hyp_glide(g: &Isometry, h: &Isometry, p: &HPoint, tol: f64) -> Result<HPoint> {
    let (axis_g, t_g) = expect_kind(g, Translation::Hyperbolic, tol)?;
    let (axis_h, _) = expect_kind(h, Translation::Glide, tol)?;
    check_crossing_at(&axis_g, &axis_h, p)?;
    axis_g.point_along(p, t_g / 2.0)
}

/// For `g` a glide-reflection and `h` hyperbolic with axes crossing at
/// `p`: the point at distance `t_h/2` from `p` along the axis of `h`,
/// against its direction, where the axis of `gh` crosses it.
pub fn predicted_axis_crossing_glide_hyp(g: &Isometry, h: &Isometry, p: &HPoint, tol: f64) -> Result<HPoint> {
    let (axis_g, _) = expect_kind(g, Translation::Glide, tol)?;
    let (axis_h, t_h) = expect_kind(h, Translation::Hyperbolic, tol)?;
    check_crossing_at(&axis_g, &axis_h, p)?;
    axis_h.point_along(p, -t_h / 2.0)
}
