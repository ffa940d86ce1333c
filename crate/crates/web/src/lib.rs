//! Browser bindings for the three demo views. Each view is a plain Rust
//! function returning a serializable result (tested natively) plus a
//! `#[wasm_bindgen]` wrapper that hands JSON text to the page.

use hypsmooth::plot::{configuration_plot, f_plot, lift_plot, Window};
use hypsmooth::smoothing::f_coefficients;
use hypsmooth::{
    bound, find_puncture_m, lift_construction, predicted_axis_crossing_glide_hyp,
    predicted_axis_crossing_hyp_glide, render_svg, verify_against_oracle, Configuration, Error,
    IsometryClass, Result, Translation, DEFAULT_M_CAP, DEFAULT_TOL,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const F_WINDOW: Window = Window { x_min: -4.0, x_max: 4.0, y_max: 4.0 };
const F_SAMPLES: usize = 400;

/// The f(t) plot for `β` and the odd powers of `α` that smooth with it to
/// a puncture loop.
#[derive(Debug, Serialize)]
pub struct PunctureView {
    pub svg: String,
    pub ms: Vec<i64>,
    pub f_case: String,
    pub r: f64,
    pub s: f64,
}

pub fn puncture_view(l_alpha: f64, l_beta: f64, theta: f64) -> Result<PunctureView> {
    let found = find_puncture_m(l_alpha, l_beta, theta, DEFAULT_TOL, DEFAULT_M_CAP)?;
    let (r, s) = f_coefficients(l_beta, theta);
    let svg = render_svg(&f_plot(r, s, F_WINDOW, F_SAMPLES, DEFAULT_TOL), false)?;
    Ok(PunctureView { svg, ms: found.ms, f_case: found.f_case.to_string(), r, s })
}

/// Axes of `g`, `h` and `gh` with the closed-form and matrix half traces.
#[derive(Debug, Serialize)]
pub struct ConfigurationView {
    pub svg: String,
    pub predicted: f64,
    pub actual: f64,
    pub class: IsometryClass,
}

fn kind(name: &str) -> Result<Translation> {
    match name {
        "hyperbolic" => Ok(Translation::Hyperbolic),
        "glide" => Ok(Translation::Glide),
        _ => Err(Error::UnexpectedClass("unknown kind")),
    }
}

pub fn configuration_view(kind_g: &str, t_g: f64, kind_h: &str, t_h: f64, theta: f64, disk: bool) -> Result<ConfigurationView> {
    let (kg, kh) = (kind(kind_g)?, kind(kind_h)?);
    let cfg = Configuration::standard(kg, t_g, kh, t_h, theta)?;
    let predicted_point = match (kg, kh) {
        (Translation::Hyperbolic, Translation::Glide) => {
            Some(predicted_axis_crossing_hyp_glide(&cfg.g, &cfg.h, &cfg.crossing, DEFAULT_TOL)?)
        }
        (Translation::Glide, Translation::Hyperbolic) => {
            Some(predicted_axis_crossing_glide_hyp(&cfg.g, &cfg.h, &cfg.crossing, DEFAULT_TOL)?)
        }
        _ => None,
    };
    let report = verify_against_oracle(&cfg.g, &cfg.h, DEFAULT_TOL)?;
    let spec = configuration_plot(&cfg, predicted_point, Window::default(), DEFAULT_TOL)?;
    Ok(ConfigurationView {
        svg: render_svg(&spec, disk)?,
        predicted: report.predicted,
        actual: report.actual,
        class: cfg.product().classify(DEFAULT_TOL),
    })
}

/// The universal-cover construction behind the self-intersection bound.
#[derive(Debug, Serialize)]
pub struct LiftView {
    pub svg: String,
    pub m_lower: u64,
    pub m: u64,
    pub passed: bool,
}

pub fn lift_view(l_beta: f64, theta: f64, m: u64) -> Result<LiftView> {
    let m_lower = bound(l_beta, theta)?.m_lower;
    let report = lift_construction(l_beta, theta, m)?;
    Ok(LiftView { svg: render_svg(&lift_plot(&report), true)?, m_lower, m, passed: report.passed() })
}

fn to_js<T: Serialize>(result: Result<T>) -> std::result::Result<String, JsError> {
    let value = result.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn puncture(l_alpha: f64, l_beta: f64, theta: f64) -> std::result::Result<String, JsError> {
    to_js(puncture_view(l_alpha, l_beta, theta))
}

#[wasm_bindgen]
pub fn configuration(kind_g: &str, t_g: f64, kind_h: &str, t_h: f64, theta: f64, disk: bool) -> std::result::Result<String, JsError> {
    to_js(configuration_view(kind_g, t_g, kind_h, t_h, theta, disk))
}

#[wasm_bindgen]
pub fn lifts(l_beta: f64, theta: f64, m: u32) -> std::result::Result<String, JsError> {
    to_js(lift_view(l_beta, theta, u64::from(m)))
}
