//! The `hypsmooth` command line: JSON in, JSON (or SVG) out.
//!
//! Input is a JSON document given as the positional argument, as `@path`,
//! or on standard input. Exit status is 0 on success, 1 on domain errors
//! (with an `{"error", "detail"}` payload on stdout) and 2 on malformed
//! input.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use hypsmooth::isometry::MatrixJson;
use hypsmooth::plot::{f_plot, render_svg, PlotSpec, Window};
use hypsmooth::smoothing::f_coefficients;
use hypsmooth::{
    bound, find_puncture_m, predict_half_trace, smooth, verify_against_oracle, CurveData, Error,
    FormulaCase, Isometry, Sidedness, SmoothingOutcome, DEFAULT_M_CAP,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "hypsmooth", version, about = "Trace identities, smoothing and puncture loops for hyperbolic isometries")]
pub struct Cli {
    /// Tolerance for every classification decision.
    #[arg(long, global = true, default_value_t = hypsmooth::DEFAULT_TOL)]
    tol: f64,
    /// Machine-readable JSON output (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Read `theta` inputs in degrees.
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// JSON text, `@path` to read a file, or `-` / omitted for stdin.
    input: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify an isometry: {"matrix": [[a, b], [c, d]]}.
    Classify(Input),
    /// Matrix product g·h (h applied first): {"g": ..., "h": ...}.
    Compose(Input),
    /// Oriented axis of a hyperbolic element or glide-reflection.
    Axis(Input),
    /// Closed-form ½|Tr gh|: {"case", "t_g", "t_h", "theta"}.
    Predict(Input),
    /// Closed form against the matrix product: {"g": ..., "h": ...}.
    Verify(Input),
    /// Smooth a crossing: {"alpha": curve, "beta": curve, "theta"}.
    Smooth(Input),
    /// Odd m making |α^m β| a puncture loop: {"l_alpha", "l_beta", "theta"}.
    FindM(Input),
    /// Self-intersection lower bound: {"l_beta", "theta"}.
    Bound(Input),
    /// Render a plot spec as SVG.
    Plot {
        #[command(flatten)]
        input: Input,
        /// Draw in the Poincaré disk instead of the upper half-plane.
        #[arg(long)]
        disk: bool,
    },
    /// SVG of f(t) = |r sinh t + s cosh t| with the line y = 1.
    PlotF(Input),
}

/// How a command failed.
#[derive(Debug)]
enum Failure {
    /// Input that is not JSON or does not have the expected shape.
    Malformed(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

enum Output {
    Json(String),
    Svg(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    g: MatrixJson,
    h: MatrixJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PredictInput {
    case: FormulaCase,
    t_g: f64,
    t_h: f64,
    theta: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    length: f64,
    sided: Sidedness,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SmoothInput {
    alpha: RawCurve,
    beta: RawCurve,
    theta: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FindMInput {
    l_alpha: f64,
    l_beta: f64,
    theta: f64,
    #[serde(default)]
    m_cap: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundInput {
    l_beta: f64,
    theta: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PlotFInput {
    #[serde(default)]
    r: Option<f64>,
    #[serde(default)]
    s: Option<f64>,
    #[serde(default)]
    l_beta: Option<f64>,
    #[serde(default)]
    theta: Option<f64>,
    #[serde(default)]
    window: Option<Window>,
    #[serde(default)]
    samples: Option<usize>,
}

#[derive(Serialize)]
struct Composed {
    matrix: [[f64; 2]; 2],
    #[serde(flatten)]
    class: hypsmooth::IsometryClass,
}

#[derive(Serialize)]
struct Smoothed {
    #[serde(flatten)]
    outcome: SmoothingOutcome,
    /// False for the sub-unit case, which no surface group realizes.
    realizable: bool,
}

#[derive(Serialize)]
struct ErrorPayload<'a> {
    error: &'a str,
    detail: String,
}

const F_PLOT_WINDOW: Window = Window { x_min: -4.0, x_max: 4.0, y_max: 4.0 };
const F_PLOT_SAMPLES: usize = 400;

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, Failure> {
    match input.input.as_deref() {
        None | Some("-") => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(|e| Failure::Io(e.to_string()))?;
            Ok(text)
        }
        Some(arg) => match arg.strip_prefix('@') {
            Some(path) => fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}"))),
            None => Ok(arg.to_string()),
        },
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Malformed(e.to_string()))
}

fn json_text<T: Serialize>(value: &T, pretty: bool) -> String {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    text.expect("outputs are plain data")
}

fn isometry(raw: MatrixJson) -> Result<Isometry, Failure> {
    Ok(Isometry::normalize(raw.matrix)?)
}

fn curve(raw: RawCurve) -> Result<CurveData, Failure> {
    Ok(CurveData::new(raw.length, raw.sided)?)
}

struct Context {
    tol: f64,
    degrees: bool,
    pretty: bool,
}

impl Context {
    fn json<T: Serialize>(&self, value: &T) -> Output {
        Output::Json(json_text(value, self.pretty))
    }

    fn angle(&self, theta: f64) -> f64 {
        if self.degrees {
            theta.to_radians()
        } else {
            theta
        }
    }
}

fn execute(command: &Command, ctx: &Context, stdin: &mut dyn Read) -> Result<Output, Failure> {
    let tol = ctx.tol;
    let output = match command {
        Command::Classify(input) => {
            let g = isometry(parse(&read_input(input, stdin)?)?)?;
            ctx.json(&g.classify(tol))
        }
        Command::Compose(input) => {
            let pair: PairInput = parse(&read_input(input, stdin)?)?;
            let product = isometry(pair.g)?.compose(&isometry(pair.h)?);
            ctx.json(&Composed { matrix: product.matrix(), class: product.classify(tol) })
        }
        Command::Axis(input) => {
            let g = isometry(parse(&read_input(input, stdin)?)?)?;
            ctx.json(&hypsmooth::axis(&g)?)
        }
        Command::Predict(input) => {
            let p: PredictInput = parse(&read_input(input, stdin)?)?;
            let (kg, kh) = p.case.kinds();
            ctx.json(&predict_half_trace(kg, p.t_g, kh, p.t_h, ctx.angle(p.theta), tol)?)
        }
        Command::Verify(input) => {
            let pair: PairInput = parse(&read_input(input, stdin)?)?;
            ctx.json(&verify_against_oracle(&isometry(pair.g)?, &isometry(pair.h)?, tol)?)
        }
        Command::Smooth(input) => {
            let s: SmoothInput = parse(&read_input(input, stdin)?)?;
            let outcome = smooth(&curve(s.alpha)?, &curve(s.beta)?, ctx.angle(s.theta), tol)?;
            let realizable = outcome != SmoothingOutcome::SubUnit;
            ctx.json(&Smoothed { outcome, realizable })
        }
        Command::FindM(input) => {
            let f: FindMInput = parse(&read_input(input, stdin)?)?;
            let m_cap = f.m_cap.unwrap_or(DEFAULT_M_CAP);
            ctx.json(&find_puncture_m(f.l_alpha, f.l_beta, ctx.angle(f.theta), tol, m_cap)?)
        }
        Command::Bound(input) => {
            let b: BoundInput = parse(&read_input(input, stdin)?)?;
            ctx.json(&bound(b.l_beta, ctx.angle(b.theta))?)
        }
        Command::Plot { input, disk } => {
            let spec: PlotSpec = parse(&read_input(input, stdin)?)?;
            Output::Svg(render_svg(&spec, *disk)?)
        }
        Command::PlotF(input) => {
            let p: PlotFInput = parse(&read_input(input, stdin)?)?;
            let (r, s) = match (p.r, p.s, p.l_beta, p.theta) {
                (Some(r), Some(s), None, None) => (r, s),
                (None, None, Some(l), Some(theta)) => f_coefficients(l, ctx.angle(theta)),
                _ => return Err(Failure::Malformed("give either \"r\" and \"s\" or \"l_beta\" and \"theta\"".into())),
            };
            let spec = f_plot(r, s, p.window.unwrap_or(F_PLOT_WINDOW), p.samples.unwrap_or(F_PLOT_SAMPLES), tol);
            Output::Svg(render_svg(&spec, false)?)
        }
    };
    Ok(output)
}

fn emit_json(stdout: &mut dyn Write, value: &impl Serialize, pretty: bool) -> std::io::Result<()> {
    writeln!(stdout, "{}", json_text(value, pretty))
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        let _ = writeln!(stderr, "--tol must be a positive number");
        return 2;
    }
    let ctx = Context { tol: cli.tol, degrees: cli.degrees, pretty: cli.pretty };
    let written = match execute(&cli.command, &ctx, stdin) {
        Ok(Output::Json(text)) => writeln!(stdout, "{text}").map(|_| 0),
        Ok(Output::Svg(svg)) => stdout.write_all(svg.as_bytes()).map(|_| 0),
        Err(Failure::Domain(e)) => {
            emit_json(stdout, &ErrorPayload { error: e.code(), detail: e.to_string() }, cli.pretty).map(|_| 1)
        }
        Err(Failure::Malformed(detail)) => {
            let _ = writeln!(stderr, "malformed input: {detail}");
            emit_json(stdout, &ErrorPayload { error: "malformed_input", detail }, cli.pretty).map(|_| 2)
        }
        Err(Failure::Io(detail)) => {
            let _ = writeln!(stderr, "cannot read input: {detail}");
            Ok(2)
        }
    };
    written.unwrap_or(1)
}
