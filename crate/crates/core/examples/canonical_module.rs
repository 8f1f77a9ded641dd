//! Generation of the canonical module in degree zero and the type of R.
//!
//!     cargo run --example canonical_module

use curve_reflexive::curve::validate_curve;
use curve_reflexive::divisor_search::find_good_divisor;
use curve_reflexive::reflexivity::canonical_and_type;
use curve_reflexive::section_ring::build_graded_model;

fn main() -> curve_reflexive::Result<()> {
    for f in [vec![1, 1, 0, 0, 0, 1], vec![1, 1, 0, 0, 0, 0, 0, 1]] {
        let curve = validate_curve(101, &f)?;
        let cert = find_good_divisor(&curve, 0, 100)?;
        let model = build_graded_model(&curve, &cert, 6)?;
        let t = canonical_and_type(&model)?;
        println!(
            "genus {}: dim K_0 = {}, rank R_1 K_(n-1) = {:?}, type {}, Gorenstein {}",
            curve.genus(),
            t.k0_dim,
            t.linear_generation,
            t.type_of_r,
            t.gorenstein
        );
    }
    Ok(())
}
