//! The 2x2 matrix A, exactness of the periodic complex and its dual, Hom, Ext
//! and Betti numbers, plus the corrupted-matrix control.
//!
//!     cargo run --example resolution

use curve_reflexive::curve::validate_curve;
use curve_reflexive::divisor_search::find_good_divisor;
use curve_reflexive::reflexivity::{
    betti_numbers, ext_table, ext_vanishing, syzygy_matrix, verify_complex_window,
    verify_dual_and_hom, Resolution,
};
use curve_reflexive::section_ring::build_graded_model;

fn main() -> curve_reflexive::Result<()> {
    let curve = validate_curve(101, &[1, 1, 0, 0, 0, 1])?;
    let cert = find_good_divisor(&curve, 0, 100)?;
    let model = build_graded_model(&curve, &cert, 6)?;

    let a = syzygy_matrix(&model)?;
    println!("A in R_1 coordinates: {:?}", a.coords);

    for r in verify_complex_window(&model, &a)? {
        println!(
            "degree {}: ker {} im {} exact {}",
            r.degree, r.kernel_dim, r.image_dim, r.exact
        );
    }
    let hom = verify_dual_and_hom(&model, &a)?;
    println!("dim Hom(M,R)_d: {:?}", hom.hom_dims);

    let ext = ext_vanishing(&model, Resolution::Periodic(&a), 4)?;
    println!(
        "Ext table entries: {}, all zero: {}",
        ext.entries.len(),
        ext.all_zero
    );
    println!(
        "Betti numbers: {:?}",
        betti_numbers(&model, Resolution::Periodic(&a), 4)?
    );
    println!(
        "free control Betti numbers: {:?}",
        betti_numbers(&model, Resolution::Free, 4)?
    );

    let bad = a.with_entry_zeroed(&model, 0, 0);
    let table = ext_table(&model, Resolution::Periodic(&bad), 4)?;
    let first = table
        .entries
        .iter()
        .find(|e| e.value != 0 || !e.contained)
        .expect("control fails");
    println!(
        "corrupted A: Ext^{} in degree {} has defect {}",
        first.i, first.degree, first.value
    );
    Ok(())
}
