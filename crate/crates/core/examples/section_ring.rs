//! The graded ring R, module M and canonical module K with their shape checks.
//!
//!     cargo run --example section_ring

use curve_reflexive::curve::validate_curve;
use curve_reflexive::divisor_search::find_good_divisor;
use curve_reflexive::section_ring::{
    build_graded_model, check_exact_sequences, check_standard_graded, hilbert_check, PieceKind,
};

fn main() -> curve_reflexive::Result<()> {
    let curve = validate_curve(101, &[1, 1, 0, 0, 0, 1])?;
    let cert = find_good_divisor(&curve, 0, 100)?;
    let model = build_graded_model(&curve, &cert, 6)?;
    println!("dim R_n: {:?}", model.dims(PieceKind::R));
    println!("dim M_n: {:?}", model.dims(PieceKind::M));
    println!("dim K_n: {:?}", model.dims(PieceKind::K));

    let h = hilbert_check(&model)?;
    println!("(1-t)^2 H_R(t) coefficients: {:?}", h.numerator);

    let sg = check_standard_graded(&model)?;
    println!("rank R_1 R_n: {:?}", sg.linear_products);
    println!(
        "alpha^2, alpha beta, beta^2 span {} dimensions of R_1",
        sg.quadric_span_in_degree_one
    );

    let seq = check_exact_sequences(&model)?;
    for r in &seq.ring_to_module {
        println!(
            "R_{0}^2 -> M_{0}: rank {1}, kernel {2}",
            r.degree, r.rank, r.kernel_dim
        );
    }
    Ok(())
}
