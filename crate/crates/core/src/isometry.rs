//! Elements of `PSL₂±(R)` acting on the upper half-plane.
//!
//! An [`Isometry`] is a real 2×2 matrix scaled to `|det| = 1`, stored with a
//! canonical projective sign: among `M` and `-M` we keep the one whose first
//! non-negligible entry in the order `(a + d, a, b, c)` is positive. Matrices
//! with `det = -1` act antiholomorphically, `z ↦ (a z̄ + b) / (c z̄ + d)`, so
//! the matrix product is composition of maps in both orientations.

use std::fmt;
use std::ops::Mul;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{BoundaryPoint, HPoint};

/// Default tolerance for every trace comparison that feeds a decision.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Matrices with `|det|` at or below this are rejected.
const SINGULAR_DET: f64 = 1e-12;

/// Entries below this fraction of the largest entry count as zero when
/// choosing the projective sign.
const SIGN_EPS: f64 = 1e-12;

/// `a·b + c·d`, recovering the rounding error of `c·d` with a fused
/// multiply-add so that entries which cancel keep their relative accuracy.
fn dot2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let w = c * d;
    let err = c.mul_add(d, -w);
    a.mul_add(b, w) + err
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: [[f64; 2]; 2],
    det: i8,
}

/// Wire form, `{"matrix": [[a, b], [c, d]]}`. Not normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub matrix: [[f64; 2]; 2],
}

impl Isometry {
    /// Normalizes a raw matrix to `|det| = 1` with the canonical sign.
    pub fn normalize(raw: [[f64; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = raw;
        let det = a * d - b * c;
        if !det.is_finite() || det.abs() <= SINGULAR_DET || !raw.iter().flatten().all(|v| v.is_finite()) {
            return Err(Error::SingularMatrix(det));
        }
        let k = 1.0 / det.abs().sqrt();
        Ok(Self::canonical([[a * k, b * k], [c * k, d * k]], if det > 0.0 { 1 } else { -1 }))
    }

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::normalize([[a, b], [c, d]])
    }

    fn canonical(m: [[f64; 2]; 2], det: i8) -> Self {
        let [[a, b], [c, d]] = m;
        let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
        let eps = SIGN_EPS * scale;
        let lead = [a + d, a, b, c]
            .into_iter()
            .find(|v| v.abs() > eps)
            .unwrap_or(0.0);
        let m = if lead < 0.0 { [[-a, -b], [-c, -d]] } else { m };
        // Adding +0.0 turns -0.0 into 0.0 so equal maps print identically.
        Isometry { m: m.map(|row| row.map(|v| v + 0.0)), det }
    }

    pub fn identity() -> Self {
        Isometry { m: [[1.0, 0.0], [0.0, 1.0]], det: 1 }
    }

    /// `diag(e^{t/2}, e^{-t/2})`: translation by `t` up the imaginary axis.
    pub fn standard_hyperbolic(t: f64) -> Self {
        let e = (t / 2.0).exp();
        Self::canonical([[e, 0.0], [0.0, 1.0 / e]], 1)
    }

    /// `diag(e^{t/2}, -e^{-t/2})`: glide of length `t` up the imaginary axis.
    pub fn standard_glide(t: f64) -> Self {
        let e = (t / 2.0).exp();
        Self::canonical([[e, 0.0], [0.0, -1.0 / e]], -1)
    }

    /// `z ↦ -z̄`, the reflection in the imaginary axis.
    pub fn standard_reflection() -> Self {
        Isometry { m: [[1.0, 0.0], [0.0, -1.0]], det: -1 }
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.m
    }

    pub fn a(&self) -> f64 {
        self.m[0][0]
    }
    pub fn b(&self) -> f64 {
        self.m[0][1]
    }
    pub fn c(&self) -> f64 {
        self.m[1][0]
    }
    pub fn d(&self) -> f64 {
        self.m[1][1]
    }

    /// `+1` or `-1`.
    pub fn det(&self) -> f64 {
        f64::from(self.det)
    }

    pub fn preserves_orientation(&self) -> bool {
        self.det > 0
    }

    pub fn trace(&self) -> f64 {
        self.a() + self.d()
    }

    pub fn abs_trace(&self) -> f64 {
        self.trace().abs()
    }

    /// Matrix product `self · other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let [[a, b], [c, d]] = self.m;
        let [[p, q], [r, s]] = other.m;
        let prod = [[dot2(a, p, b, r), dot2(a, q, b, s)], [dot2(c, p, d, r), dot2(c, q, d, s)]];
        // Both factors are normalized, so the product has |det| = 1 up to
        // rounding. Rescaling by the computed determinant would reintroduce
        // the cancellation error of `ad - bc` for ill-conditioned products.
        Self::canonical(prod, self.det * other.det)
    }

    pub fn inverse(&self) -> Isometry {
        let [[a, b], [c, d]] = self.m;
        Self::canonical([[d, -b], [-c, a]], self.det)
    }

    /// `self^n` for `n ≥ 0`; negative powers use the inverse.
    pub fn pow(&self, n: i64) -> Isometry {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = Isometry::identity();
        let mut sq = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            k >>= 1;
        }
        acc
    }

    /// Conjugate `m · self · m⁻¹`.
    pub fn conjugate_by(&self, m: &Isometry) -> Isometry {
        m.compose(self).compose(&m.inverse())
    }

    /// Largest entrywise difference, minimized over the projective sign.
    pub fn projective_distance(&self, other: &Isometry) -> f64 {
        let plus = self
            .m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        let minus = self
            .m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(x, y)| (x + y).abs())
            .fold(0.0, f64::max);
        plus.min(minus)
    }

    /// Same map up to `tol` in every entry, with matching orientation.
    pub fn approx_eq(&self, other: &Isometry, tol: f64) -> bool {
        self.det == other.det && self.projective_distance(other) <= tol
    }

    pub fn classify(&self, tol: f64) -> IsometryClass {
        let tr = self.abs_trace();
        if self.det > 0 {
            let [[a, b], [c, d]] = self.m;
            let near_identity = (a - 1.0).abs() <= tol
                && (d - 1.0).abs() <= tol
                && b.abs() <= tol
                && c.abs() <= tol;
            if near_identity {
                IsometryClass::Identity
            } else if tr < 2.0 - tol {
                IsometryClass::Elliptic
            } else if tr <= 2.0 + tol {
                IsometryClass::Parabolic
            } else {
                IsometryClass::Hyperbolic { length: self.hyperbolic_length() }
            }
        } else if tr <= tol {
            IsometryClass::Reflection
        } else {
            IsometryClass::GlideReflection { length: 2.0 * (tr / 2.0).asinh() }
        }
    }

    /// `t` with `|Tr| = 2 cosh(t/2)`.
    ///
    /// Near `|Tr| = 2` the discriminant `(a - d)² + 4bc = Tr² - 4` gives
    /// `2 sinh(t/2)` without the cancellation in `|Tr| - 2`.
    fn hyperbolic_length(&self) -> f64 {
        let half = self.abs_trace() / 2.0;
        if half < 2.0 {
            let [[a, b], [c, d]] = self.m;
            let disc = (a - d) * (a - d) + 4.0 * b * c;
            if disc > 0.0 {
                return 2.0 * (disc.sqrt() / 2.0).asinh();
            }
        }
        2.0 * half.acosh()
    }

    /// Translation length `inf_z d(z, g z)`, using the default tolerance.
    pub fn translation_length(&self) -> Result<f64> {
        self.translation_length_tol(DEFAULT_TOL)
    }

    pub fn translation_length_tol(&self, tol: f64) -> Result<f64> {
        let class = self.classify(tol);
        class.length().ok_or(Error::NotPositiveTranslation(class.name()))
    }

    /// Boundary fixed points `(repelling, attracting)` of a hyperbolic
    /// element or glide-reflection.
    pub fn fixed_boundary_points(&self) -> Result<(BoundaryPoint, BoundaryPoint)> {
        let class = self.classify(DEFAULT_TOL);
        if class.length().is_none() {
            return Err(Error::NotPositiveTranslation(class.name()));
        }
        let (x1, x2) = self.boundary_fixed_roots();
        // Multiplier of the boundary action at each fixed point: the
        // attracting one is contracted.
        if self.boundary_multiplier(&x1) < self.boundary_multiplier(&x2) {
            Ok((x2, x1))
        } else {
            Ok((x1, x2))
        }
    }

    /// The two roots of `c x² + (d - a) x - b = 0` on `R ∪ {∞}`. Defined
    /// whenever `Tr² - 4 det > 0`, which covers hyperbolic elements,
    /// glide-reflections and reflections.
    pub(crate) fn boundary_fixed_roots(&self) -> (BoundaryPoint, BoundaryPoint) {
        let [[a, b], [c, d]] = self.m;
        let lin = d - a;
        let disc = (lin * lin + 4.0 * b * c).max(0.0);
        let q = -0.5 * (lin + lin.signum() * disc.sqrt());
        let q = if q == 0.0 { -0.5 * disc.sqrt() } else { q };
        let r1 = if c == 0.0 {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(q / c)
        };
        let r2 = if q == 0.0 {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(-b / q)
        };
        (r1, r2)
    }

    /// |derivative| of the boundary action at a fixed point.
    fn boundary_multiplier(&self, x: &BoundaryPoint) -> f64 {
        let [[a, _], [c, d]] = self.m;
        match *x {
            BoundaryPoint::Finite(x) => 1.0 / (c * x + d).powi(2),
            // Chart w = 1/z around ∞; only reachable with c = 0.
            BoundaryPoint::Infinity => (d / a).abs(),
        }
    }

    /// Image of a boundary point; the action on `R` is the same for both
    /// determinant signs.
    pub fn apply_boundary(&self, x: &BoundaryPoint) -> BoundaryPoint {
        let [[a, b], [c, d]] = self.m;
        match *x {
            BoundaryPoint::Infinity => {
                if c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(a / c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = c * x + d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((a * x + b) / den)
                }
            }
        }
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        let [[a, b], [c, d]] = self.m;
        // z or z̄; Im of the image is y / |cz + d|² in both cases.
        let y_in = if self.det > 0 { p.y } else { -p.y };
        let den_re = c * p.x + d;
        let den_im = c * y_in;
        let den2 = den_re * den_re + den_im * den_im;
        let num_re = a * p.x + b;
        let num_im = a * y_in;
        HPoint {
            x: (num_re * den_re + num_im * den_im) / den2,
            y: p.y / den2,
        }
    }

    /// `d(p, g p)`.
    pub fn displacement(&self, p: &HPoint) -> f64 {
        p.distance(&self.apply(p))
    }
}

impl Mul for Isometry {
    type Output = Isometry;

    fn mul(self, rhs: Isometry) -> Isometry {
        self.compose(&rhs)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl Serialize for Isometry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { matrix: self.m }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Isometry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        Isometry::normalize(raw.matrix).map_err(de::Error::custom)
    }
}

impl TryFrom<MatrixJson> for Isometry {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        Isometry::normalize(raw.matrix)
    }
}

/// Classification by determinant and `|Tr|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsometryClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic { length: f64 },
    Reflection,
    GlideReflection { length: f64 },
}

impl IsometryClass {
    pub fn name(&self) -> &'static str {
        match self {
            IsometryClass::Identity => "identity",
            IsometryClass::Elliptic => "elliptic",
            IsometryClass::Parabolic => "parabolic",
            IsometryClass::Hyperbolic { .. } => "hyperbolic",
            IsometryClass::Reflection => "reflection",
            IsometryClass::GlideReflection { .. } => "glide-reflection",
        }
    }

    /// Translation length, for hyperbolic elements and glide-reflections.
    pub fn length(&self) -> Option<f64> {
        match *self {
            IsometryClass::Hyperbolic { length } | IsometryClass::GlideReflection { length } => {
                Some(length)
            }
            _ => None,
        }
    }

    pub fn is_positive_translation(&self) -> bool {
        self.length().is_some()
    }
}

impl fmt::Display for IsometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.length() {
            Some(t) => write!(f, "{} (length {t})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl Serialize for IsometryClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let len = self.length();
        let mut st = serializer.serialize_struct("IsometryClass", 1 + usize::from(len.is_some()))?;
        st.serialize_field("class", self.name())?;
        if let Some(t) = len {
            st.serialize_field("length", &t)?;
        }
        st.end()
    }
}
