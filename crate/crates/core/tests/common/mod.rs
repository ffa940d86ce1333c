#![allow(dead_code)]

use hypsmooth::{BoundaryPoint, Geodesic, HPoint, Isometry};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A geodesic with endpoints in [-3, 3] at least 0.5 apart, or (one time
/// in five) a vertical line.
pub fn geodesic(rng: &mut impl Rng) -> Geodesic {
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

/// A point of the geodesic within arc length 1 of the top of its frame.
pub fn point_on(rng: &mut impl Rng, g: &Geodesic) -> HPoint {
    g.frame().apply(&HPoint::new(0.0, rng.gen_range(-1.0f64..1.0).exp()).unwrap())
}

pub fn point(rng: &mut impl Rng) -> HPoint {
    HPoint::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0)).unwrap()
}

/// A moderate isometry: the frame of a random geodesic composed with a
/// translation along the imaginary axis.
pub fn mover(rng: &mut impl Rng) -> Isometry {
    let t: f64 = rng.gen_range(-1.0..1.0);
    let shift = Isometry::normalize([[t.exp(), 0.0], [0.0, 1.0]]).unwrap();
    geodesic(rng).frame().compose(&shift)
}

pub fn length(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0.05..10.0)
}

pub fn angle(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0.05..std::f64::consts::PI - 0.05)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
