//! Trace and length identities for compositions of hyperbolic isometries
//! and glide-reflections of the upper half-plane, and the decision
//! procedures built on them for smoothing intersections of closed
//! geodesics on non-orientable hyperbolic surfaces.

pub mod error;
pub mod geodesic;
pub mod isometry;
pub mod plot;
pub mod point;
pub mod self_intersection;
pub mod smoothing;
pub mod trace;

pub use error::{Error, Result};
pub use geodesic::{
    axis, common_perpendicular, forward_angle, geodesic_through, half_turn, intersect,
    make_glide, make_hyperbolic, reflection_in, Crossing, Geodesic,
};
pub use isometry::{Isometry, IsometryClass, DEFAULT_TOL};
pub use plot::{render_svg, Drawable, PlotSpec, Style, Window};
pub use point::{hyp_distance, BoundaryPoint, HPoint};
pub use self_intersection::{
    bound, bound_from_abs_cos, is_simple_excluded, lift_construction, lift_crosscheck, LiftReport,
    SelfIntersectionBound,
};
pub use smoothing::{
    classify_f_case, consecutive_angle_relation, find_puncture_m, puncture_quantity, smooth,
    solve_consecutive_pair, AngleRelation, CurveData, FCase, PunctureSearchResult, Sidedness,
    SmoothingOutcome, DEFAULT_M_CAP,
};
pub use trace::{
    predict_half_trace, predicted_axis_crossing_glide_hyp, predicted_axis_crossing_hyp_glide,
    verify_against_oracle, CompositionPrediction, Configuration, FormulaCase, OracleReport,
    Translation,
};
