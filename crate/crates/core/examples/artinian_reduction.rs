//! Cutting down by a system of parameters: the artinian quotient, its socle and
//! a complete total-reflexivity certificate, plus a ring where it must fail.
//!
//!     cargo run --example artinian_reduction

use curve_reflexive::algebra::Fp;
use curve_reflexive::artinian::{
    build_artinian, find_sop, periodic_exactness, socle_and_type,
    verify_total_reflexivity_artinian, GradedArtinianAlgebra,
};
use curve_reflexive::curve::validate_curve;
use curve_reflexive::divisor_search::find_good_divisor;
use curve_reflexive::reflexivity::syzygy_matrix;
use curve_reflexive::section_ring::build_graded_model;

fn main() -> curve_reflexive::Result<()> {
    for f in [vec![1, 1, 0, 0, 0, 1], vec![1, 1, 0, 0, 0, 0, 0, 1]] {
        let curve = validate_curve(101, &f)?;
        let cert = find_good_divisor(&curve, 0, 100)?;
        let model = build_graded_model(&curve, &cert, 6)?;
        let a = syzygy_matrix(&model)?;
        let sop = find_sop(&model, 0, 100)?;
        let am = build_artinian(&model, &sop, &a)?;
        let c = verify_total_reflexivity_artinian(&am)?;
        let s = socle_and_type(&am)?;
        println!(
            "genus {}: quotient Hilbert function {:?}",
            curve.genus(),
            am.algebra.hilbert()
        );
        println!(
            "  rank A = {}, dim ker A = {}, same for the transpose: {}",
            c.abar.rank, c.abar.kernel_dim, c.abar_transpose.exact
        );
        println!(
            "  dim of reduced module {} vs free of rank two {}",
            c.mbar_total,
            2 * c.rbar_total
        );
        println!(
            "  socle dimension {}, Loewy length {}",
            s.socle_dim, s.loewy_length
        );
    }

    let fp = Fp::new(101)?;
    let ring = GradedArtinianAlgebra::square_zero_ideal(fp, 2);
    let entries = [
        [vec![0, 1, 2], vec![0, 3, 4]],
        [vec![0, 5, 6], vec![0, 7, 8]],
    ];
    let e = periodic_exactness(&ring.matrix_on_pairs(&entries));
    println!(
        "k[s,t]/(s,t)^2 control: rank {}, kernel {}, exact {}",
        e.rank, e.kernel_dim, e.exact
    );
    Ok(())
}
