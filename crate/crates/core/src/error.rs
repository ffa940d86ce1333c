use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular (|det| = {0:e})")]
    SingularMatrix(f64),
    #[error("isometry has no positive translation length ({0})")]
    NotPositiveTranslation(&'static str),
    #[error("isometry has the wrong kind for this operation ({0})")]
    UnexpectedClass(&'static str),
    #[error("points coincide")]
    CoincidentPoints,
    #[error("point does not lie on both geodesics")]
    PointNotOnBoth,
    #[error("point does not lie on the geodesic")]
    PointNotOnGeodesic,
    #[error("geodesics do not cross transversely")]
    NotTransverse,
    #[error("axes do not cross transversely")]
    AxesDoNotCross,
    #[error("angle {0} is outside the open interval (0, pi)")]
    InvalidAngle(f64),
    #[error("length {0} is not a positive finite number")]
    InvalidLength(f64),
    #[error("self-intersection condition fails for m = {0}")]
    ConditionNotSatisfied(u32),
    #[error("point ({0}, {1}) is not in the open upper half-plane")]
    NotInUpperHalfPlane(f64, f64),
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error("invalid plot: {0}")]
    InvalidPlot(&'static str),
}

impl Error {
    /// Stable machine-readable code, used in CLI error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SingularMatrix(_) => "singular_matrix",
            Error::NotPositiveTranslation(_) => "not_positive_translation",
            Error::UnexpectedClass(_) => "unexpected_class",
            Error::CoincidentPoints => "coincident_points",
            Error::PointNotOnBoth => "point_not_on_both",
            Error::PointNotOnGeodesic => "point_not_on_geodesic",
            Error::NotTransverse => "not_transverse",
            Error::AxesDoNotCross => "axes_do_not_cross",
            Error::InvalidAngle(_) => "invalid_angle",
            Error::InvalidLength(_) => "invalid_length",
            Error::ConditionNotSatisfied(_) => "condition_not_satisfied",
            Error::NotInUpperHalfPlane(..) => "not_in_upper_half_plane",
            Error::DegenerateGeodesic => "degenerate_geodesic",
            Error::InvalidPlot(_) => "invalid_plot",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_length(t: f64) -> Result<f64> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(Error::InvalidLength(t))
    }
}

pub(crate) fn check_angle(theta: f64) -> Result<f64> {
    if theta.is_finite() && theta > 0.0 && theta < std::f64::consts::PI {
        Ok(theta)
    } else {
        Err(Error::InvalidAngle(theta))
    }
}
