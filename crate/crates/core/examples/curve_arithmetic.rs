//! Places, function-field arithmetic and principal divisors on y² = x⁵ + x + 1.
//!
//!     cargo run --example curve_arithmetic

use curve_reflexive::algebra::Poly;
use curve_reflexive::curve::{validate_curve, Place};

fn main() -> curve_reflexive::Result<()> {
    let curve = validate_curve(101, &[1, 1, 0, 0, 0, 1])?;
    let fp = curve.field();
    println!(
        "curve y^2 = {:?} over F_101, genus {}",
        curve.f(),
        curve.genus()
    );

    let points = curve.rational_points();
    println!("{} rational places, first few:", points.len());
    for p in points.iter().take(4) {
        println!("  {p}");
    }

    let x = curve.ff_x();
    let y = curve.ff_y();
    let y2 = curve.ff_mul(&y, &y)?;
    assert_eq!(y2, curve.ff_poly(curve.f().clone()));
    println!("y*y = f(x) holds");

    println!(
        "v_inf(x) = {:?}, v_inf(y) = {:?}",
        curve.valuation(&x, &Place::Infinity),
        curve.valuation(&y, &Place::Infinity)
    );

    // (x - 3 + y) / (x^2 + 1) and its divisor of zeros and poles
    let e = curve.element(
        Poly::from_i64(fp, &[-3, 1]),
        Poly::one(fp),
        Poly::from_i64(fp, &[1, 0, 1]),
    );
    let div = curve.principal_divisor(&e)?;
    println!("div((x - 3 + y)/(x^2 + 1)) = {div}");
    println!("degree {}", div.degree());
    Ok(())
}
