#![allow(dead_code)]

use curve_reflexive::algebra::{is_irreducible, Poly};
use curve_reflexive::curve::{validate_curve, Divisor, HyperellipticCurve, Place};
use curve_reflexive::function_field::FunctionElement;
use rand::Rng;

pub fn genus_two() -> HyperellipticCurve {
    validate_curve(101, &[1, 1, 0, 0, 0, 1]).unwrap()
}

pub fn genus_three() -> HyperellipticCurve {
    validate_curve(101, &[1, 1, 0, 0, 0, 0, 0, 1]).unwrap()
}

/// A random place of degree at most two, occasionally the one at infinity.
pub fn random_place<R: Rng>(curve: &HyperellipticCurve, rng: &mut R) -> Place {
    if rng.gen_ratio(1, 8) {
        return Place::Infinity;
    }
    let fp = curve.field();
    loop {
        let deg = rng.gen_range(1..=2);
        let u = Poly::random_monic(fp, deg, rng);
        if !is_irreducible(&u) {
            continue;
        }
        let places = curve.places_over(&u);
        return places[rng.gen_range(0..places.len())].clone();
    }
}

pub fn random_divisor<R: Rng>(
    curve: &HyperellipticCurve,
    rng: &mut R,
    terms: usize,
    span: i64,
) -> Divisor {
    curve.divisor((0..terms).map(|_| (random_place(curve, rng), rng.gen_range(-span..=span))))
}

pub fn random_element<R: Rng>(curve: &HyperellipticCurve, rng: &mut R) -> FunctionElement {
    let fp = curve.field();
    loop {
        let a = Poly::random(fp, rng.gen_range(0..5), rng);
        let b = Poly::random(fp, rng.gen_range(0..4), rng);
        let d = Poly::random_monic(fp, rng.gen_range(0..4), rng);
        let e = curve.element(a, b, d);
        if !e.is_zero() {
            return e;
        }
    }
}
