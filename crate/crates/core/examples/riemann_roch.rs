//! Bases of Riemann–Roch spaces, h⁰ and h¹, and base loci.
//!
//!     cargo run --example riemann_roch

use curve_reflexive::curve::{validate_curve, Place};
use curve_reflexive::riemann_roch::{base_locus, rr_space};

fn main() -> curve_reflexive::Result<()> {
    let curve = validate_curve(101, &[1, 1, 0, 0, 0, 1])?;
    let pts = curve.rational_points();
    let divisors = [
        curve.zero_divisor(),
        curve.canonical_divisor(),
        curve.place_divisor(&Place::Infinity, 3),
        curve.place_divisor(&Place::Infinity, 4),
        curve.divisor([
            (pts[0].clone(), 1),
            (pts[5].clone(), 1),
            (pts[9].clone(), 1),
        ]),
        curve.divisor([(pts[2].clone(), 2), (Place::Infinity, -1)]),
    ];
    for d in &divisors {
        let space = rr_space(&curve, d)?;
        let locus = base_locus(&curve, &space)?;
        println!("D = {d}");
        println!(
            "  deg {}  h0 {}  h1 {}  base locus {}",
            d.degree(),
            space.h0,
            space.h1,
            locus.0
        );
        for s in &space.basis {
            println!("    {:?}", s.repr());
        }
    }
    Ok(())
}
