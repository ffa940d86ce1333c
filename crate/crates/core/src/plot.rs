//! SVG pictures of half-plane configurations and of `f(t)`.
//!
//! A [`PlotSpec`] is a window plus a list of drawables in model
//! coordinates. [`render_svg`] draws it either in the upper half-plane
//! (geodesics as arcs and vertical lines) or, with `disk = true`, in the
//! Poincaré disk via `z ↦ (z - i)/(z + i)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesic::Geodesic;
use crate::point::{BoundaryPoint, HPoint};
use crate::self_intersection::LiftReport;
use crate::smoothing::{f_crossings, f_value};
use crate::trace::{product_line, Configuration};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const DISK_SIZE: f64 = 600.0;
/// Pixel coordinates are clamped to this magnitude.
const PIXEL_LIMIT: f64 = 1e6;
/// Arc-length half-extent used when sampling geodesics for the disk view.
const DISK_SAMPLE_EXTENT: f64 = 9.0;
const DISK_SAMPLES: usize = 97;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl Default for Window {
    fn default() -> Self {
        Window { x_min: -3.0, x_max: 3.0, y_max: 3.0 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Style {
    #[default]
    Primary,
    Secondary,
    Accent,
    Muted,
    /// Markers where a curve meets a level line.
    Crossing,
}

impl Style {
    fn class(self) -> &'static str {
        match self {
            Style::Primary => "primary",
            Style::Secondary => "secondary",
            Style::Accent => "accent",
            Style::Muted => "muted",
            Style::Crossing => "accent crossing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Drawable {
    Geodesic {
        #[serde(flatten)]
        geodesic: Geodesic,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(default)]
        style: Style,
    },
    Point {
        x: f64,
        y: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        #[serde(default)]
        style: Style,
    },
    Label {
        x: f64,
        y: f64,
        text: String,
    },
    /// Graph of `|r sinh t + s cosh t|` across the window.
    FCurve {
        r: f64,
        s: f64,
        samples: usize,
    },
    Polyline {
        points: Vec<[f64; 2]>,
        #[serde(default)]
        style: Style,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSpec {
    pub window: Window,
    pub items: Vec<Drawable>,
}

impl PlotSpec {
    pub fn new(window: Window) -> Self {
        PlotSpec { window, items: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        let w = &self.window;
        if ![w.x_min, w.x_max, w.y_max].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidPlot("window values must be finite"));
        }
        if w.x_min >= w.x_max {
            return Err(Error::InvalidPlot("x_min must be below x_max"));
        }
        if w.y_max <= 0.0 {
            return Err(Error::InvalidPlot("y_max must be positive"));
        }
        for item in &self.items {
            let finite = match item {
                Drawable::Geodesic { .. } => true,
                Drawable::Point { x, y, .. } | Drawable::Label { x, y, .. } => x.is_finite() && y.is_finite(),
                Drawable::FCurve { r, s, samples } => {
                    if *samples < 2 {
                        return Err(Error::InvalidPlot("a curve needs at least 2 samples"));
                    }
                    r.is_finite() && s.is_finite()
                }
                Drawable::Polyline { points, .. } => points.iter().flatten().all(|v| v.is_finite()),
            };
            if !finite {
                return Err(Error::InvalidPlot("coordinates must be finite"));
            }
        }
        Ok(())
    }

    fn push_geodesic(&mut self, geodesic: Geodesic, label: &str, style: Style) {
        self.items.push(Drawable::Geodesic { geodesic, label: Some(label.to_string()), style });
    }

    fn push_point(&mut self, p: &HPoint, label: &str, style: Style) {
        self.items.push(Drawable::Point { x: p.x, y: p.y, label: Some(label.to_string()), style });
    }
}

/// `f(t) = |r sinh t + s cosh t|` across the window's `x` range, with the line
/// `y = 1` and a marker at every crossing inside the window.
pub fn f_plot(r: f64, s: f64, window: Window, samples: usize, tol: f64) -> PlotSpec {
    let mut spec = PlotSpec::new(window);
    spec.items.push(Drawable::Polyline {
        points: vec![[window.x_min, 1.0], [window.x_max, 1.0]],
        style: Style::Muted,
    });
    spec.items.push(Drawable::Label { x: window.x_min, y: 1.0, text: "y = 1".into() });
    spec.items.push(Drawable::FCurve { r, s, samples });
    for t in f_crossings(r, s, tol) {
        if (window.x_min..=window.x_max).contains(&t) {
            spec.items.push(Drawable::Point {
                x: t,
                y: 1.0,
                label: Some(format!("t = {t:.4}")),
                style: Style::Crossing,
            });
        }
    }
    spec
}

/// The axes of `g`, `h` and `gh`, the crossing `P`, and for mixed pairs
/// the predicted point `Q` where the axis of `gh` crosses. An elliptic or
/// parabolic product has no axis and is left out.
pub fn configuration_plot(cfg: &Configuration, predicted: Option<HPoint>, window: Window, tol: f64) -> Result<PlotSpec> {
    let mut spec = PlotSpec::new(window);
    spec.push_geodesic(cfg.axis_g, "A_g", Style::Primary);
    spec.push_geodesic(cfg.axis_h, "A_h", Style::Secondary);
    match product_line(&cfg.product(), tol) {
        Ok(line) => spec.push_geodesic(line, "A_gh", Style::Accent),
        Err(Error::NotPositiveTranslation(_)) => {}
        Err(e) => return Err(e),
    }
    spec.push_point(&cfg.crossing, "P", Style::Primary);
    if let Some(q) = predicted {
        spec.push_point(&q, "Q", Style::Accent);
    }
    Ok(spec)
}

/// The lifts `β̃`, `α̃₀`, the perpendiculars and the reflected lifts of
/// the self-intersection construction, best viewed in the disk.
pub fn lift_plot(report: &LiftReport) -> PlotSpec {
    let mut spec = PlotSpec::new(Window::default());
    spec.push_geodesic(report.beta, "β", Style::Primary);
    spec.push_geodesic(report.alpha, "α₀", Style::Secondary);
    spec.push_point(&HPoint::I, "P₀", Style::Primary);
    for step in &report.steps {
        spec.items.push(Drawable::Geodesic { geodesic: step.perpendicular, label: None, style: Style::Muted });
        spec.push_geodesic(step.lift, &format!("α{}", 2 * step.i - 1), Style::Accent);
        if let Some(s) = step.crossing {
            spec.push_point(&s, &format!("S{}", step.i), Style::Accent);
        }
    }
    spec
}

/// Escapes text for use in SVG character data and attribute values.
fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c if c.is_control() => {}
            c => out.push(c),
        }
    }
    out
}

/// Fixed-precision pixel coordinate; never NaN or infinite.
fn num(v: f64) -> String {
    let v = if v.is_nan() { 0.0 } else { v.clamp(-PIXEL_LIMIT, PIXEL_LIMIT) };
    let s = format!("{v:.2}");
    if s == "-0.00" { "0.00".to_string() } else { s }
}

/// Maps model coordinates to pixels.
trait Projection {
    fn map(&self, x: f64, y: f64) -> (f64, f64);
    fn geodesic(&self, g: &Geodesic, out: &mut String, class: &str);
}

struct HalfPlane {
    window: Window,
}

impl HalfPlane {
    fn sx(&self) -> f64 {
        WIDTH / (self.window.x_max - self.window.x_min)
    }

    fn sy(&self) -> f64 {
        HEIGHT / self.window.y_max
    }
}

impl Projection for HalfPlane {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.window.x_min) * self.sx(), HEIGHT - y * self.sy())
    }

    fn geodesic(&self, g: &Geodesic, out: &mut String, class: &str) {
        match (g.from(), g.to()) {
            (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
                let (x1, y1) = self.map(p, 0.0);
                let (x2, y2) = self.map(q, 0.0);
                let r = (q - p).abs() / 2.0;
                let sweep = u8::from(q > p);
                let _ = writeln!(
                    out,
                    r#"<path class="{class}" d="M {} {} A {} {} 0 0 {sweep} {} {}"/>"#,
                    num(x1),
                    num(y1),
                    num(r * self.sx()),
                    num(r * self.sy()),
                    num(x2),
                    num(y2)
                );
            }
            (BoundaryPoint::Finite(x), BoundaryPoint::Infinity) | (BoundaryPoint::Infinity, BoundaryPoint::Finite(x)) => {
                let (px, py) = self.map(x, 0.0);
                let _ = writeln!(out, r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="0.00"/>"#, num(px), num(py), num(px));
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => {}
        }
    }
}

struct Disk;

impl Disk {
    /// `z ↦ (z - i)/(z + i)`.
    fn cayley(x: f64, y: f64) -> (f64, f64) {
        let den = x * x + (y + 1.0) * (y + 1.0);
        ((x * x + y * y - 1.0) / den, -2.0 * x / den)
    }

    fn boundary(p: BoundaryPoint) -> (f64, f64) {
        match p {
            BoundaryPoint::Finite(x) => Disk::cayley(x, 0.0),
            BoundaryPoint::Infinity => (1.0, 0.0),
        }
    }

    fn pixel(u: f64, v: f64) -> (f64, f64) {
        let half = DISK_SIZE / 2.0;
        let scale = half / 1.05;
        (half + u * scale, half - v * scale)
    }
}

impl Projection for Disk {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let (u, v) = Disk::cayley(x, y);
        Disk::pixel(u, v)
    }

    fn geodesic(&self, g: &Geodesic, out: &mut String, class: &str) {
        // Samples run from `from` toward `to`; the exact endpoints close
        // the curve onto the boundary circle.
        let mut pts = vec![Disk::boundary(g.from())];
        pts.extend(g.sample(DISK_SAMPLE_EXTENT, DISK_SAMPLES).iter().map(|p| Disk::cayley(p.x, p.y)));
        pts.push(Disk::boundary(g.to()));
        let path: Vec<String> = pts
            .iter()
            .map(|&(u, v)| {
                let (x, y) = Disk::pixel(u, v);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(out, r#"<polyline class="{class}" points="{}"/>"#, path.join(" "));
    }
}

/// Where to write a geodesic's label in the half-plane: the highest sampled
/// point of the geodesic that is comfortably inside the window, falling back
/// to the top of the semicircle.
fn geodesic_label_anchor(g: &Geodesic, window: &Window) -> (f64, f64) {
    let inside = |p: &HPoint| {
        (window.x_min..=window.x_max).contains(&p.x) && p.y > 0.05 * window.y_max && p.y <= 0.9 * window.y_max
    };
    let best = g.sample(8.0, 161).into_iter().filter(inside).max_by(|a, b| a.y.total_cmp(&b.y));
    match (best, g.from(), g.to()) {
        (Some(p), _, _) => (p.x, p.y),
        (None, BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => ((p + q) / 2.0, (q - p).abs() / 2.0),
        (None, BoundaryPoint::Finite(x), _) | (None, _, BoundaryPoint::Finite(x)) => (x, window.y_max * 0.9),
        _ => (0.0, 1.0),
    }
}

/// Disk label position: a fixed arc length ahead of the frame's center, so
/// labels of geodesics through a common point do not pile up there.
const DISK_LABEL_OFFSET: f64 = 1.5;

const STYLE: &str = "path,line,polyline{fill:none;stroke-width:2}\
.primary{stroke:#1f4e9c;fill:#1f4e9c}.secondary{stroke:#b0432b;fill:#b0432b}\
.accent{stroke:#2b8a3e;fill:#2b8a3e}.muted{stroke:#999;fill:#999;stroke-dasharray:4 3}\
path.primary,path.secondary,path.accent,path.muted,line.primary,line.secondary,line.accent,line.muted,\
polyline.primary,polyline.secondary,polyline.accent,polyline.muted{fill:none}\
.frame{stroke:#333;fill:none;stroke-width:1}text{font:14px sans-serif;fill:#222;stroke:none}";

/// Renders the spec as a standalone SVG 1.1 document.
pub fn render_svg(spec: &PlotSpec, disk: bool) -> Result<String> {
    spec.validate()?;
    let (w, h) = if disk { (DISK_SIZE, DISK_SIZE) } else { (WIDTH, HEIGHT) };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    let half_plane = HalfPlane { window: spec.window };
    let projection: &dyn Projection = if disk { &Disk } else { &half_plane };
    if disk {
        let (cx, cy) = Disk::pixel(0.0, 0.0);
        let r = DISK_SIZE / 2.0 / 1.05;
        let _ = writeln!(out, r#"<circle class="frame" cx="{}" cy="{}" r="{}"/>"#, num(cx), num(cy), num(r));
    } else {
        let _ = writeln!(out, r#"<line class="frame" x1="0.00" y1="{}" x2="{}" y2="{}"/>"#, num(h), num(w), num(h));
    }
    for item in &spec.items {
        match item {
            Drawable::Geodesic { geodesic, label, style } => {
                projection.geodesic(geodesic, &mut out, style.class());
                if let Some(text) = label {
                    let (x, y) = if disk {
                        let ahead = geodesic.sample(DISK_LABEL_OFFSET, 2)[1];
                        (ahead.x, ahead.y)
                    } else {
                        geodesic_label_anchor(geodesic, &spec.window)
                    };
                    let (px, py) = projection.map(x, y);
                    text_at(&mut out, px + 4.0, py - 4.0, text);
                }
            }
            Drawable::Point { x, y, label, style } => {
                if disk && *y <= 0.0 {
                    return Err(Error::InvalidPlot("disk points must lie in the upper half-plane"));
                }
                let (px, py) = projection.map(*x, *y);
                let _ = writeln!(out, r#"<circle class="{}" cx="{}" cy="{}" r="4"/>"#, style.class(), num(px), num(py));
                if let Some(text) = label {
                    text_at(&mut out, px + 6.0, py - 6.0, text);
                }
            }
            Drawable::Label { x, y, text } => {
                if disk && *y <= 0.0 {
                    return Err(Error::InvalidPlot("disk labels must lie in the upper half-plane"));
                }
                let (px, py) = projection.map(*x, *y);
                text_at(&mut out, px + 2.0, py - 4.0, text);
            }
            Drawable::FCurve { r, s, samples } => {
                if disk {
                    return Err(Error::InvalidPlot("function curves have no disk view"));
                }
                let (a, b) = (spec.window.x_min, spec.window.x_max);
                let pts: Vec<String> = (0..*samples)
                    .map(|k| {
                        let t = a + (b - a) * k as f64 / (*samples - 1) as f64;
                        let (px, py) = half_plane.map(t, f_value(*r, *s, t));
                        format!("{},{}", num(px), num(py))
                    })
                    .collect();
                let _ = writeln!(out, r#"<polyline class="primary" points="{}"/>"#, pts.join(" "));
            }
            Drawable::Polyline { points, style } => {
                if points.is_empty() {
                    continue;
                }
                let mut pts = Vec::with_capacity(points.len());
                for &[x, y] in points {
                    if disk && y < 0.0 {
                        return Err(Error::InvalidPlot("disk polylines must lie in the closed upper half-plane"));
                    }
                    let (px, py) = projection.map(x, y);
                    pts.push(format!("{},{}", num(px), num(py)));
                }
                let _ = writeln!(out, r#"<polyline class="{}" points="{}"/>"#, style.class(), pts.join(" "));
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn text_at(out: &mut String, x: f64, y: f64, text: &str) {
    let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, num(x), num(y), escape(text));
}
