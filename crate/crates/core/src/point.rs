//! Points of the upper half-plane and of its boundary `R ∪ {∞}`.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point `x + iy` of the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && y > 0.0 {
            Ok(HPoint { x, y })
        } else {
            Err(Error::NotInUpperHalfPlane(x, y))
        }
    }

    /// The point `i`.
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    /// Hyperbolic distance, `2 asinh(|p - q| / (2 sqrt(p_y q_y)))`.
    ///
    /// Equivalent to `cosh d = 1 + |p - q|^2 / (2 p_y q_y)` but keeps full
    /// relative precision for nearby points.
    pub fn distance(&self, other: &HPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let chord = dx.hypot(dy);
        2.0 * (chord / (2.0 * (self.y * other.y).sqrt())).asinh()
    }
}

/// Hyperbolic distance between two points of the upper half-plane.
pub fn hyp_distance(p: &HPoint, q: &HPoint) -> f64 {
    p.distance(q)
}

impl Serialize for HPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        // Adding +0.0 prints -0.0 as 0.0.
        let mut st = serializer.serialize_struct("HPoint", 2)?;
        st.serialize_field("x", &(self.x + 0.0))?;
        st.serialize_field("y", &self.y)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for HPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            x: f64,
            y: f64,
        }
        let raw = Raw::deserialize(deserializer)?;
        HPoint::new(raw.x, raw.y).map_err(de::Error::custom)
    }
}

/// A point of `R ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    /// Equality with a relative tolerance on finite values.
    pub fn approx_eq(&self, other: &BoundaryPoint, tol: f64) -> bool {
        match (*self, *other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => {
                (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
            }
            _ => false,
        }
    }
}

impl From<f64> for BoundaryPoint {
    fn from(x: f64) -> Self {
        if x.is_infinite() {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(x)
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for BoundaryPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            BoundaryPoint::Finite(x) => serializer.serialize_f64(x + 0.0),
            BoundaryPoint::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for BoundaryPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct BoundaryVisitor;

        impl Visitor<'_> for BoundaryVisitor {
            type Value = BoundaryPoint;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<BoundaryPoint, E> {
                if v.is_finite() {
                    Ok(BoundaryPoint::Finite(v))
                } else {
                    Err(E::custom("boundary coordinate must be finite or \"inf\""))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<BoundaryPoint, E> {
                Ok(BoundaryPoint::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<BoundaryPoint, E> {
                Ok(BoundaryPoint::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BoundaryPoint, E> {
                match v {
                    "inf" | "infinity" | "∞" => Ok(BoundaryPoint::Infinity),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        deserializer.deserialize_any(BoundaryVisitor)
    }
}
