//! Independent checks of derived values: each test recomputes a quantity by a
//! route that shares no code path with the implementation under test.

mod common;

use curve_reflexive::algebra::{poly_factor, poly_gcd, Fp, FpMatrix, Poly};
use curve_reflexive::curve::{validate_curve, validate_curve_over, Place};
use curve_reflexive::divisor_search::find_good_divisor;
use curve_reflexive::reflexivity::syzygy_matrix;
use curve_reflexive::riemann_roch::rr_space;
use curve_reflexive::section_ring::{build_graded_model, PieceKind};

fn from_roots(fp: Fp, roots: &[u64]) -> Poly {
    roots
        .iter()
        .fold(Poly::one(fp), |acc, &r| &acc * &Poly::linear(fp, r))
}

#[test]
fn gcd_of_split_polynomials_is_product_over_common_roots() {
    let fp = Fp::new(101).unwrap();
    let a = from_roots(fp, &[1, 2, 3, 5, 8]);
    let b = from_roots(fp, &[2, 5, 13, 21]);
    assert_eq!(poly_gcd(&a, &b), from_roots(fp, &[2, 5]));
    let c = from_roots(fp, &[40, 41]);
    assert!(poly_gcd(&a, &c).is_one());
}

/// Sylvester matrix of `f` and `f'`: full rank iff the resultant is nonzero.
fn sylvester_rank(f: &Poly, g: &Poly) -> (usize, usize) {
    let fp = f.field();
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    let mut rows = Vec::new();
    for shift in 0..n {
        let mut r = vec![0; size];
        for (i, &c) in f.coeffs().iter().enumerate() {
            r[size - 1 - (i + shift)] = c;
        }
        rows.push(r);
    }
    for shift in 0..m {
        let mut r = vec![0; size];
        for (i, &c) in g.coeffs().iter().enumerate() {
            r[size - 1 - (i + shift)] = c;
        }
        rows.push(r);
    }
    (FpMatrix::from_rows(fp, size, &rows).rank(), size)
}

#[test]
fn reference_curves_are_smooth_by_resultant() {
    for f in [vec![1, 1, 0, 0, 0, 1], vec![1, 1, 0, 0, 0, 0, 0, 1]] {
        let fp = Fp::new(101).unwrap();
        let poly = Poly::new(fp, f.clone());
        let (rank, size) = sylvester_rank(&poly, &poly.derivative());
        assert_eq!(rank, size);
        assert!(validate_curve(101, &f).is_ok());
    }
    // x^5 shares the root 0 with its derivative
    let fp = Fp::new(101).unwrap();
    let bad = Poly::monomial(fp, 1, 5);
    let (rank, size) = sylvester_rank(&bad, &bad.derivative());
    assert!(rank < size);
}

#[test]
fn linear_factors_match_brute_force_roots() {
    let fp = Fp::new(101).unwrap();
    let f = Poly::new(fp, vec![1, 1, 0, 0, 0, 0, 0, 1]);
    let roots = (0..101).filter(|&r| f.eval(r) == 0).count();
    let fac = poly_factor(&f).unwrap();
    let linear = fac
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .count();
    assert_eq!(roots, linear);
}

#[test]
fn rational_points_by_enumeration() {
    let curve = common::genus_two();
    let mut expected = Vec::new();
    for x in 0..101u64 {
        let fx = (x.pow(5) + x + 1) % 101;
        for y in 0..101u64 {
            if (y * y) % 101 == fx {
                expected.push((x, y));
            }
        }
    }
    let places = curve.rational_points();
    // one place per affine solution, plus infinity
    assert_eq!(places.len(), expected.len() + 1);
    assert!(places.len() <= 2 * 101 + 1);
    assert_eq!(places.last(), Some(&Place::Infinity));
    for (x, y) in expected {
        let p = curve.place_at(x, y).unwrap();
        assert!(places.contains(&p));
    }
}

/// Over `F_7` the same polynomial has the double root 4, so the model is singular.
#[test]
fn reference_polynomial_is_singular_mod_seven() {
    let fp = Fp::new_unchecked(7);
    let f = Poly::new(fp, vec![1, 1, 0, 0, 0, 1]);
    assert_eq!(f.eval(4), 0);
    assert_eq!(f.derivative().eval(4), 0);
    assert!(matches!(
        validate_curve_over(fp, &[1, 1, 0, 0, 0, 1]),
        Err(curve_reflexive::Error::NotSquarefree(1))
    ));
}

#[test]
fn divisor_of_vertical_line_by_enumeration() {
    let curve = common::genus_two();
    let fp = curve.field();
    for x0 in [0u64, 7, 50] {
        let e = curve.ff_poly(Poly::linear(fp, x0));
        let div = curve.principal_divisor(&e).unwrap();
        assert_eq!(div.coefficient(&Place::Infinity), -2);
        let affine: i64 = div
            .terms()
            .filter(|(p, _)| !p.is_infinite())
            .map(|(p, n)| n * p.degree() as i64)
            .sum();
        // x - x0 vanishes to total degree two over x0, whatever the splitting
        assert_eq!(affine, 2);
    }
}

/// `L(n·∞)` is spanned by `x^i` with `2i ≤ n` and `x^j·y` with `2j + 2g + 1 ≤ n`.
#[test]
fn pole_order_spaces_at_infinity() {
    for curve in [common::genus_two(), common::genus_three()] {
        let g = curve.genus() as i64;
        let fp = curve.field();
        for n in 0..=14i64 {
            let space = rr_space(&curve, &curve.place_divisor(&Place::Infinity, n)).unwrap();
            let mut expected = Vec::new();
            for i in 0..=n / 2 {
                expected.push(curve.ff_poly(Poly::monomial(fp, 1, i as usize)));
            }
            for j in 0..=n {
                if 2 * j + 2 * g < n {
                    expected.push(curve.element(
                        Poly::zero(fp),
                        Poly::monomial(fp, 1, j as usize),
                        Poly::one(fp),
                    ));
                }
            }
            assert_eq!(space.h0, expected.len(), "n = {n}");
            for e in &expected {
                assert!(space.coordinates_of(e).is_ok());
            }
        }
    }
}

#[test]
fn graded_dimensions_from_the_riemann_roch_formula() {
    for curve in [common::genus_two(), common::genus_three()] {
        let g = curve.genus();
        let cert = find_good_divisor(&curve, 0, 100).unwrap();
        let model = build_graded_model(&curve, &cert, 6).unwrap();
        let rr = |deg: usize| deg + 1 - g;
        for n in 0..=6 {
            if n > 0 {
                assert_eq!(model.r[n].dim(), rr(2 * n * (g + 1)));
            }
            assert_eq!(model.m[n].dim(), rr((2 * n + 1) * (g + 1)));
            if n > 0 {
                assert_eq!(
                    model.piece(PieceKind::K, n).dim(),
                    rr(2 * g - 2 + 2 * n * (g + 1))
                );
            }
        }
    }
}

/// Each column `(r, s)` of `A` satisfies `r·α + s·β = 0` in the function field.
#[test]
fn syzygy_columns_kill_the_generators() {
    let curve = common::genus_two();
    let cert = find_good_divisor(&curve, 0, 100).unwrap();
    let model = build_graded_model(&curve, &cert, 4).unwrap();
    let a = syzygy_matrix(&model).unwrap();
    for j in 0..2 {
        let r = a.entries[0][j].to_element(&curve);
        let s = a.entries[1][j].to_element(&curve);
        let sum = curve
            .ff_add(
                &curve.ff_mul(&r, &cert.alpha).unwrap(),
                &curve.ff_mul(&s, &cert.beta).unwrap(),
            )
            .unwrap();
        assert!(sum.is_zero());
    }
}
