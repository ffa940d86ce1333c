//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Tolerances and sample counts are the published ones.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use hypsmooth::self_intersection::threshold_holds;
use hypsmooth::trace::product_line;
use hypsmooth::{
    bound, common_perpendicular, consecutive_angle_relation, find_puncture_m, forward_angle,
    geodesic_through, half_turn, lift_construction, lift_crosscheck, make_glide,
    make_hyperbolic, predicted_axis_crossing_glide_hyp, predicted_axis_crossing_hyp_glide,
    puncture_quantity, reflection_in, solve_consecutive_pair, verify_against_oracle, AngleRelation,
    BoundaryPoint, Configuration, Geodesic, HPoint, Isometry, Translation, DEFAULT_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use Translation::{Glide, Hyperbolic};

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict { passed, detail: detail.into() }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn geodesic(rng: &mut impl Rng) -> Geodesic {
    if rng.gen_bool(0.2) {
        let x = BoundaryPoint::Finite(rng.gen_range(-3.0..3.0));
        return if rng.gen_bool(0.5) {
            Geodesic::new(x, BoundaryPoint::Infinity).unwrap()
        } else {
            Geodesic::new(BoundaryPoint::Infinity, x).unwrap()
        };
    }
    loop {
        let p: f64 = rng.gen_range(-3.0..3.0);
        let q: f64 = rng.gen_range(-3.0..3.0);
        if (p - q).abs() >= 0.5 {
            return Geodesic::new(BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)).unwrap();
        }
    }
}

fn point(rng: &mut impl Rng) -> HPoint {
    HPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0)).unwrap()
}

fn point_on(rng: &mut impl Rng, g: &Geodesic) -> HPoint {
    g.frame().apply(&HPoint::new(0.0, rng.gen_range(-1.0f64..1.0).exp()).unwrap())
}

fn mover(rng: &mut impl Rng) -> Isometry {
    let t: f64 = rng.gen_range(-1.0..1.0);
    let shift = Isometry::normalize([[t.exp(), 0.0], [0.0, 1.0]]).unwrap();
    geodesic(rng).frame().compose(&shift)
}

fn length(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0.05..10.0)
}

fn angle(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0.05..PI - 0.05)
}

fn timed(limit: Option<Duration>, check: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut verdict = check();
    let elapsed = start.elapsed();
    verdict.detail = format!("{} [{:.2} s", verdict.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        verdict.detail = format!("{}, limit {:.0} s", verdict.detail, limit.as_secs_f64());
        verdict.passed &= elapsed < limit;
    }
    verdict.detail.push(']');
    verdict
}

fn trace_formulas() -> Verdict {
    let mut rng = rng(1);
    let mut worst = 0.0f64;
    for (kg, kh) in [(Hyperbolic, Hyperbolic), (Glide, Hyperbolic), (Hyperbolic, Glide), (Glide, Glide)] {
        for _ in 0..10_000 {
            let (tg, th, theta) = (length(&mut rng), length(&mut rng), angle(&mut rng));
            let cfg = Configuration::standard(kg, tg, kh, th, theta).unwrap().transported(&mover(&mut rng));
            match verify_against_oracle(&cfg.g, &cfg.h, DEFAULT_TOL) {
                Ok(r) => worst = worst.max(r.abs_error / r.actual.max(1.0)),
                Err(e) => return Verdict::new(false, format!("oracle error: {e}")),
            }
        }
    }
    Verdict::new(worst < 1e-9, format!("4 cases x 10000, max scaled error {worst:.2e} (< 1e-9)"))
}

fn length_roundtrip() -> Verdict {
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    let mut wrong_class = 0;
    for _ in 0..10_000 {
        let line = geodesic(&mut rng);
        let t = 10f64.powf(rng.gen_range(0.05f64.log10()..20f64.log10()));
        for (g, name) in [(make_hyperbolic(&line, t).unwrap(), "hyperbolic"), (make_glide(&line, t).unwrap(), "glide-reflection")] {
            let class = g.classify(DEFAULT_TOL);
            if class.name() != name {
                wrong_class += 1;
                continue;
            }
            worst = worst.max((class.length().unwrap() - t).abs() / t);
        }
    }
    Verdict::new(
        wrong_class == 0 && worst <= 1e-12,
        format!("10000 axes x 2 kinds, t in [0.05, 20], {wrong_class} misclassified, max relative error {worst:.2e} (<= 1e-12)"),
    )
}

fn factorization() -> Verdict {
    let mut rng = rng(3);
    let mut failures = 0;
    let mut done = 0;
    while done < 1000 {
        let (v1, v2) = (point(&mut rng), point(&mut rng));
        let (l1, l2) = (geodesic(&mut rng), geodesic(&mut rng));
        let Some(perp) = common_perpendicular(&l1, &l2) else { continue };
        if v1.distance(&v2) < 0.05 || perp.distance < 0.05 {
            continue;
        }
        done += 1;
        let turns = half_turn(&v2).compose(&half_turn(&v1));
        let expected = make_hyperbolic(&geodesic_through(&v1, &v2).unwrap(), 2.0 * v1.distance(&v2)).unwrap();
        failures += usize::from(!turns.approx_eq(&expected, 1e-10));

        let mirrors = reflection_in(&l2).compose(&reflection_in(&l1));
        let expected = make_hyperbolic(&perp.geodesic, 2.0 * perp.distance).unwrap();
        failures += usize::from(!mirrors.approx_eq(&expected, 1e-10));
        for (line, foot) in [(&l1, perp.foot_first), (&l2, perp.foot_second)] {
            let right = forward_angle(&perp.geodesic, line, &foot).map(|a| (a - FRAC_PI_2).abs() <= 1e-10);
            failures += usize::from(right != Ok(true));
        }

        let p = point_on(&mut rng, &l1);
        let (e, r) = (half_turn(&p), reflection_in(&l1));
        failures += usize::from(!e.compose(&r).approx_eq(&r.compose(&e), 1e-10));
    }
    Verdict::new(failures == 0, format!("1000 instances of each identity, {failures} violations at 1e-10"))
}

fn axis_location() -> Verdict {
    let mut rng = rng(4);
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let (kg, kh) = if i % 2 == 0 { (Hyperbolic, Glide) } else { (Glide, Hyperbolic) };
        let (tg, th, theta) = (length(&mut rng), length(&mut rng), angle(&mut rng));
        let cfg = Configuration::standard(kg, tg, kh, th, theta).unwrap().transported(&mover(&mut rng));
        let q = if kg == Hyperbolic {
            predicted_axis_crossing_hyp_glide(&cfg.g, &cfg.h, &cfg.crossing, DEFAULT_TOL)
        } else {
            predicted_axis_crossing_glide_hyp(&cfg.g, &cfg.h, &cfg.crossing, DEFAULT_TOL)
        };
        match (q, product_line(&cfg.product(), DEFAULT_TOL)) {
            (Ok(q), Ok(line)) => worst = worst.max(line.distance_to(&q)),
            (Err(e), _) | (_, Err(e)) => return Verdict::new(false, format!("instance {i}: {e}")),
        }
    }
    Verdict::new(worst < 1e-9, format!("10000 instances, max distance to product axis {worst:.2e} (< 1e-9)"))
}

fn scan_odd(la: f64, lb: f64, theta: f64) -> Vec<i64> {
    (-99..=99i64)
        .filter(|m| m % 2 != 0)
        .filter(|&m| {
            let angle = if m > 0 { theta } else { PI - theta };
            (puncture_quantity(m.unsigned_abs() as f64 * la, lb, angle) - 1.0).abs() <= DEFAULT_TOL
        })
        .collect()
}

fn puncture_sample(rng: &mut impl Rng, i: usize) -> (f64, f64, f64) {
    match i % 3 {
        0 => (rng.gen_range(0.05..3.0), rng.gen_range(0.05..4.0), angle(rng)),
        1 => loop {
            let la: f64 = rng.gen_range(0.05..3.0);
            let lb: f64 = rng.gen_range(0.05..4.0);
            let max_k = (((10.0 / la - 1.0) / 2.0).floor().max(0.0) as i64).min(49);
            let m = 2 * rng.gen_range(-max_k - 1..=max_k) + 1;
            let t = m as f64 * la / 2.0;
            let sigma = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let cos = (sigma - (lb / 2.0).sinh() * t.sinh()) / t.cosh() / (lb / 2.0).cosh();
            if cos.abs() < 0.999 {
                break (la, lb, cos.acos());
            }
        },
        _ => loop {
            let la: f64 = rng.gen_range(0.2..2.0);
            if let Some((lb, theta)) = solve_consecutive_pair(2 * rng.gen_range(-3..=3i64), la) {
                break (la, lb, theta);
            }
        },
    }
}

fn puncture_m() -> Verdict {
    let mut rng = rng(5);
    let (mut mismatches, mut shape) = (0, 0);
    for i in 0..10_000 {
        let (la, lb, theta) = puncture_sample(&mut rng, i);
        let found = match find_puncture_m(la, lb, theta, DEFAULT_TOL, 99) {
            Ok(f) => f.ms,
            Err(e) => return Verdict::new(false, format!("instance {i}: {e}")),
        };
        mismatches += usize::from(found != scan_odd(la, lb, theta));
        let consecutive = match found[..] {
            [lo, hi] => hi - lo == 2,
            _ => true,
        };
        shape += usize::from(found.len() > 2 || !consecutive);
    }
    let l = 2.0 * 1f64.asinh();
    let example = find_puncture_m(l, l, FRAC_PI_2, DEFAULT_TOL, hypsmooth::DEFAULT_M_CAP).map(|f| f.ms);
    let example_ok = example == Ok(vec![-1, 1]);
    Verdict::new(
        mismatches == 0 && shape == 0 && example_ok,
        format!("10000 inputs, {mismatches} scan mismatches, {shape} shape violations, example -> {example:?}"),
    )
}

fn trichotomy() -> Verdict {
    let mut failures = Vec::new();
    for m in (-6..=6i64).step_by(2) {
        for k in 1..=10 {
            let la = 0.2 * k as f64;
            let Some((lb, theta)) = solve_consecutive_pair(m, la) else {
                failures.push(format!("no witness m={m} l={la}"));
                continue;
            };
            let expected = match m.signum() {
                1 => AngleRelation::Greater,
                0 => AngleRelation::Equal,
                _ => AngleRelation::Less,
            };
            let relation = consecutive_angle_relation(m, la, lb, theta, DEFAULT_TOL);
            if relation != expected || (m == 0 && (theta - FRAC_PI_2).abs() > 1e-6) {
                failures.push(format!("m={m} l={la}: {relation:?}"));
            }
        }
    }
    Verdict::new(failures.is_empty(), format!("7 values of m x 10 lengths, failures: {failures:?}"))
}

fn self_intersection() -> Verdict {
    let mut rng = rng(7);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let (l, theta) = (rng.gen_range(0.05..5.0), angle(&mut rng));
        let c = theta.cos().abs();
        let scanned = (1..=10_000u64).take_while(|&m| threshold_holds(m, l, c)).last().unwrap_or(0);
        mismatches += usize::from(bound(l, theta).map(|b| b.m_lower) != Ok(scanned));
    }
    let (mut lift_failures, mut lifts) = (0, 0);
    for _ in 0..100 {
        let (l, theta) = (rng.gen_range(0.05..1.5), angle(&mut rng));
        let m_lower = bound(l, theta).unwrap().m_lower;
        for m in 1..=m_lower {
            lifts += 1;
            lift_failures += usize::from(!lift_crosscheck(l, theta, m).is_ok_and(|r| r.passed()));
        }
        let beyond = m_lower + 1;
        let rejected = lift_crosscheck(l, theta, beyond).is_err()
            && !lift_construction(l, theta, beyond).is_ok_and(|r| r.crosses_perpendiculars);
        lift_failures += usize::from(!rejected);
    }
    Verdict::new(
        mismatches == 0 && lift_failures == 0,
        format!("1000 bounds, {mismatches} scan mismatches; 100 lift samples ({lifts} lifts), {lift_failures} failures"),
    )
}

fn run_golden(input: &Path) -> String {
    let text = fs::read_to_string(input).unwrap();
    let (args, payload) = text.split_once('\n').unwrap_or((&text, ""));
    let mut child = Command::new(env!("CARGO_BIN_EXE_hypsmooth"))
        .args(args.split_whitespace())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(payload.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    format!("exit: {}\n{}", out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout))
}

fn goldens() -> Verdict {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden");
    let mut inputs: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "in"))
        .collect();
    inputs.sort();
    let subcommand = |p: &PathBuf| {
        let args = fs::read_to_string(p).unwrap();
        args.split_whitespace().find(|w| !w.starts_with("--")).unwrap_or("").to_string()
    };
    let subcommands = ["classify", "compose", "axis", "predict", "verify", "smooth", "find-m", "bound", "plot", "plot-f"];
    let thin: Vec<&str> =
        subcommands.iter().copied().filter(|s| inputs.iter().filter(|p| subcommand(p) == *s).count() < 3).collect();
    let mut differing = Vec::new();
    for input in &inputs {
        let first = run_golden(input);
        let stored = fs::read_to_string(input.with_extension("out")).unwrap_or_default();
        if first != stored || first != run_golden(input) {
            differing.push(input.file_stem().unwrap().to_string_lossy().into_owned());
        }
    }
    Verdict::new(
        thin.is_empty() && differing.is_empty(),
        format!("{} cases, subcommands with < 3: {thin:?}, differing: {differing:?}", inputs.len()),
    )
}

/// Number, name, runtime limit in seconds, and the check itself.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "trace-formula oracle", Some(5), trace_formulas),
        (2, "classification/length roundtrip", Some(2), length_roundtrip),
        (3, "factorization identities", None, factorization),
        (4, "axis-location predictions", None, axis_location),
        (5, "puncture-m closed form vs scan", Some(5), puncture_m),
        (6, "consecutive-pair trichotomy", None, trichotomy),
        (7, "self-intersection bound and lifts", None, self_intersection),
        (8, "CLI golden files", None, goldens),
    ];
    let mut all = true;
    for (n, name, limit, check) in criteria {
        let verdict = timed(limit.map(Duration::from_secs), check);
        all &= verdict.passed;
        println!("criterion {n}: {} {name}: {}", if verdict.passed { "PASS" } else { "FAIL" }, verdict.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
