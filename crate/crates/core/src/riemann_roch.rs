//! Riemann–Roch spaces `L(D) = H⁰(C, O(D))` and `h¹` via Serre duality.
//!
//! Every element of `L(D)` is written as `(a + b·y)/d` with a fixed
//! denominator `d` clearing the finite poles allowed by `D`. The pole order at
//! infinity bounds `deg a` and `deg b`; every other condition is a vanishing
//! condition on the local expansion of `a + b·y`, which is linear in the
//! coefficients of `a` and `b`.

use crate::algebra::{mat_solve, FpMatrix, FpScalar, Poly, Subspace};
use crate::curve::{Divisor, HyperellipticCurve, Place};
use crate::error::{Error, Result};
use crate::function_field::{FunctionElement, LocalChart};

/// Coordinates `(a_0, …, a_{A}, b_0, …, b_{B})` for numerators over `denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ansatz {
    pub denominator: Poly,
    pub a_len: usize,
    pub b_len: usize,
}

impl Ansatz {
    pub fn len(&self) -> usize {
        self.a_len + self.b_len
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Splits a coordinate vector into the numerators `(a, b)`.
    pub fn split(&self, v: &[FpScalar]) -> (Poly, Poly) {
        let fp = self.denominator.field();
        (
            Poly::new(fp, v[..self.a_len].to_vec()),
            Poly::new(fp, v[self.a_len..].to_vec()),
        )
    }

    /// Coordinates of `(a + b·y)/den`, if it fits this ansatz.
    pub fn vector_of(&self, a: &Poly, b: &Poly, den: &Poly) -> Option<Vec<FpScalar>> {
        let na = (a * &self.denominator).div_exact(den)?;
        let nb = (b * &self.denominator).div_exact(den)?;
        if na.coeffs().len() > self.a_len || nb.coeffs().len() > self.b_len {
            return None;
        }
        let mut v = vec![0; self.len()];
        for (i, &c) in na.coeffs().iter().enumerate() {
            v[i] = c;
        }
        for (i, &c) in nb.coeffs().iter().enumerate() {
            v[self.a_len + i] = c;
        }
        Some(v)
    }
}

/// Echelon basis of `L(D)` together with `h⁰` and `h¹`.
#[derive(Debug, Clone)]
pub struct RRSpace {
    pub divisor: Divisor,
    pub ansatz: Ansatz,
    /// Reduced echelon basis of the solution space in ansatz coordinates.
    pub space: Subspace,
    pub basis: Vec<FunctionElement>,
    pub h0: usize,
    pub h1: usize,
}

impl RRSpace {
    pub fn dim(&self) -> usize {
        self.h0
    }

    /// Numerators `(a, b)` of the `i`-th basis element over the ansatz denominator.
    pub fn numerators(&self, i: usize) -> (Poly, Poly) {
        self.ansatz.split(&self.space.basis()[i])
    }

    /// Coordinates of `(a + b·y)/den` in the echelon basis.
    pub fn coordinates(&self, a: &Poly, b: &Poly, den: &Poly) -> Result<Vec<FpScalar>> {
        let v = self.ansatz.vector_of(a, b, den).ok_or_else(|| {
            Error::GradingViolation(format!("pole orders exceed {}", self.divisor))
        })?;
        self.space
            .coordinates(&v)
            .ok_or_else(|| Error::GradingViolation(format!("not a section of {}", self.divisor)))
    }

    pub fn coordinates_of(&self, e: &FunctionElement) -> Result<Vec<FpScalar>> {
        self.coordinates(e.a(), e.b(), e.d())
    }

    /// Ansatz vector of the combination `Σ c_i s_i`.
    pub fn combine(&self, coords: &[FpScalar]) -> Vec<FpScalar> {
        let fp = self.ansatz.denominator.field();
        let mut out = vec![0; self.ansatz.len()];
        for (c, row) in coords.iter().zip(self.space.basis()) {
            if *c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = fp.add(*o, fp.mul(*c, r));
            }
        }
        out
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Denominator `Π u^{j_u}` with `v_P(d) ≥ n_P` at every finite place.
fn clearing_denominator(curve: &HyperellipticCurve, divisor: &Divisor) -> Poly {
    let fp = curve.field();
    let mut need: Vec<(Poly, i64)> = Vec::new();
    for (place, n) in divisor.terms() {
        let Some(u) = place.u() else { continue };
        if n <= 0 {
            continue;
        }
        let e = place.ramification() as i64;
        let j = (n + e - 1) / e;
        match need.iter_mut().find(|(w, _)| w == u) {
            Some((_, k)) => *k = (*k).max(j),
            None => need.push((u.clone(), j)),
        }
    }
    need.iter()
        .fold(Poly::one(fp), |acc, (u, j)| &acc * &u.pow(*j as usize))
}

fn ansatz_for(curve: &HyperellipticCurve, divisor: &Divisor) -> Ansatz {
    let g = curve.genus() as i64;
    let denominator = clearing_denominator(curve, divisor);
    let dd = denominator.degree_i64();
    let n_inf = divisor.coefficient(&Place::Infinity);
    let a_max = dd + floor_div(n_inf, 2);
    let b_max = dd + floor_div(n_inf - 2 * g - 1, 2);
    Ansatz {
        denominator,
        a_len: (a_max + 1).max(0) as usize,
        b_len: (b_max + 1).max(0) as usize,
    }
}

/// Linear conditions `v_P(a + b·y) ≥ k` in ansatz coordinates.
fn vanishing_rows(
    curve: &HyperellipticCurve,
    ansatz: &Ansatz,
    place: &Place,
    k: usize,
) -> Vec<Vec<FpScalar>> {
    let chart = LocalChart::new(curve, place, k);
    let ring = chart.ring();
    let field = &chart.field;
    let fdeg = field.degree();
    // columns[c] = expansion of the c-th ansatz monomial
    let mut columns = Vec::with_capacity(ansatz.len());
    let mut xpow = ring.constant(field.one());
    let mut powers = Vec::with_capacity(ansatz.a_len.max(ansatz.b_len));
    for _ in 0..ansatz.a_len.max(ansatz.b_len) {
        powers.push(xpow.clone());
        xpow = ring.mul(&xpow, &chart.x_series);
    }
    for p in powers.iter().take(ansatz.a_len) {
        columns.push(p.clone());
    }
    for p in powers.iter().take(ansatz.b_len) {
        columns.push(ring.mul(p, &chart.y_series));
    }
    let mut rows = vec![vec![0; ansatz.len()]; k * fdeg];
    for (c, series) in columns.iter().enumerate() {
        for (j, coeff) in series.iter().enumerate().take(k) {
            for (i, v) in field.to_fp_vec(coeff).into_iter().enumerate() {
                rows[j * fdeg + i][c] = v;
            }
        }
    }
    rows
}

/// Echelon basis of `L(D)` without the duality cross-check.
pub fn rr_basis(curve: &HyperellipticCurve, divisor: &Divisor) -> Result<(Ansatz, Subspace)> {
    if divisor.curve_id() != curve.id() {
        return Err(Error::CurveMismatch);
    }
    let fp = curve.field();
    let ansatz = ansatz_for(curve, divisor);
    if divisor.degree() < 0 || ansatz.is_empty() {
        return Ok((ansatz, Subspace::spanned_by(fp, 0, &[])));
    }
    // places where a condition may bind: supp(D) and everything over u | d
    let mut places: Vec<Place> = divisor
        .support()
        .filter(|p| !p.is_infinite())
        .cloned()
        .collect();
    if let Ok(fac) = crate::algebra::poly_factor(&ansatz.denominator) {
        for (u, _) in fac.factors {
            places.extend(curve.places_over(&u));
        }
    }
    places.sort();
    places.dedup();

    let mut rows = Vec::new();
    for place in &places {
        let u = place.u().expect("finite place");
        let vd = place.ramification() as i64 * ansatz.denominator.order_at(u) as i64;
        let k = vd - divisor.coefficient(place);
        if k > 0 {
            rows.extend(vanishing_rows(curve, &ansatz, place, k as usize));
        }
    }
    let n = ansatz.len();
    let kernel = if rows.is_empty() {
        FpMatrix::identity(fp, n).row_space()
    } else {
        mat_solve(&FpMatrix::from_rows(fp, n, &rows)).kernel
    };
    Ok((ansatz, Subspace::spanned_by(fp, n, &kernel)))
}

fn h0_only(curve: &HyperellipticCurve, divisor: &Divisor) -> Result<usize> {
    Ok(rr_basis(curve, divisor)?.1.dim())
}

/// `L(D)` with `h⁰`, `h¹ = h⁰(K - D)` and the Riemann–Roch identity enforced.
pub fn rr_space(curve: &HyperellipticCurve, divisor: &Divisor) -> Result<RRSpace> {
    let (ansatz, space) = rr_basis(curve, divisor)?;
    let h0 = space.dim();
    let h1 = h1(curve, divisor)?;
    let g = curve.genus() as i64;
    if h0 as i64 - h1 as i64 != divisor.degree() + 1 - g {
        return Err(Error::RiemannRochMismatch {
            degree: divisor.degree(),
            h0,
            h1,
            genus: curve.genus(),
        });
    }
    let basis = space
        .basis()
        .iter()
        .map(|v| {
            let (a, b) = ansatz.split(v);
            curve.element(a, b, ansatz.denominator.clone())
        })
        .collect();
    Ok(RRSpace {
        divisor: divisor.clone(),
        ansatz,
        space,
        basis,
        h0,
        h1,
    })
}

/// `h¹(D) = h⁰(K_C - D)`; zero without computation once `deg D ≥ 2g - 1`.
pub fn h1(curve: &HyperellipticCurve, divisor: &Divisor) -> Result<usize> {
    let dual = curve.canonical_divisor().sub(divisor)?;
    let g = curve.genus() as i64;
    if divisor.degree() >= 2 * g - 1 {
        debug_assert_eq!(h0_only(curve, &dual)?, 0);
        return Ok(0);
    }
    h0_only(curve, &dual)
}

/// `h⁰(D) - h¹(D) = deg D + 1 - g`, with both sides computed from scratch.
pub fn euler_check(curve: &HyperellipticCurve, divisor: &Divisor) -> Result<bool> {
    let h0 = h0_only(curve, divisor)? as i64;
    let dual = curve.canonical_divisor().sub(divisor)?;
    let h1 = h0_only(curve, &dual)? as i64;
    Ok(h0 - h1 == divisor.degree() + 1 - curve.genus() as i64)
}

/// Common zeros of the sections of `L(D)`; empty means base-point-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseLocus(pub Divisor);

impl BaseLocus {
    pub fn is_empty(&self) -> bool {
        self.0.is_zero()
    }
}

/// Place-wise minimum of `div(s) + D` over the basis sections.
pub fn base_locus(curve: &HyperellipticCurve, space: &RRSpace) -> Result<BaseLocus> {
    let mut locus: Option<Divisor> = None;
    for s in &space.basis {
        let z = curve.principal_divisor(s)?.add(&space.divisor)?;
        debug_assert!(z.is_effective());
        locus = Some(match locus {
            None => z,
            Some(l) => l.min(&z)?,
        });
    }
    Ok(BaseLocus(locus.unwrap_or_else(|| space.divisor.clone())))
}

pub fn is_base_point_free(curve: &HyperellipticCurve, space: &RRSpace) -> Result<bool> {
    Ok(base_locus(curve, space)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::validate_curve;

    fn g2() -> HyperellipticCurve {
        validate_curve(101, &[1, 1, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn constants_only_for_zero_divisor() {
        let c = g2();
        let s = rr_space(&c, &c.zero_divisor()).unwrap();
        assert_eq!(s.h0, 1);
        assert_eq!(s.h1, 2);
        assert_eq!(s.basis, vec![c.ff_constant(1)]);
        assert!(is_base_point_free(&c, &s).unwrap());
    }

    #[test]
    fn negative_degree_is_empty() {
        let c = g2();
        let p = c.rational_points()[0].clone();
        let s = rr_space(&c, &c.place_divisor(&p, -1)).unwrap();
        assert_eq!(s.h0, 0);
        assert!(s.basis.is_empty());
    }

    #[test]
    fn four_infinity_is_span_of_powers_of_x() {
        let c = g2();
        let s = rr_space(&c, &c.place_divisor(&Place::Infinity, 4)).unwrap();
        assert_eq!(s.h0, 3);
        assert_eq!(s.h1, 0);
        let fp = c.field();
        let expected: Vec<_> = (0..3)
            .map(|i| c.ff_poly(Poly::monomial(fp, 1, i)))
            .collect();
        assert_eq!(s.basis, expected);
    }

    #[test]
    fn canonical_divisor_dimensions() {
        for (f, g) in [
            (vec![1, 1, 0, 0, 0, 1], 2),
            (vec![1, 1, 0, 0, 0, 0, 0, 1], 3),
        ] {
            let c = validate_curve(101, &f).unwrap();
            let k = c.canonical_divisor();
            assert_eq!(k.degree(), 2 * g as i64 - 2);
            let s = rr_space(&c, &k).unwrap();
            assert_eq!(s.h0, g);
            assert_eq!(s.h1, 1);
        }
    }

    #[test]
    fn base_point_at_infinity_for_three_infinity() {
        let c = g2();
        let d = c.place_divisor(&Place::Infinity, 3);
        let s = rr_space(&c, &d).unwrap();
        assert_eq!(s.h0, 2);
        assert_eq!(s.basis, vec![c.ff_constant(1), c.ff_x()]);
        let locus = base_locus(&c, &s).unwrap();
        assert_eq!(locus.0, c.place_divisor(&Place::Infinity, 1));
    }

    #[test]
    fn single_section_base_locus_is_divisor() {
        let c = g2();
        let p = c.rational_points()[3].clone();
        let d = c.place_divisor(&p, 1);
        let s = rr_space(&c, &d).unwrap();
        assert_eq!(s.h0, 1);
        assert_eq!(base_locus(&c, &s).unwrap().0, d);
    }

    #[test]
    fn sections_satisfy_pole_bounds() {
        let c = g2();
        let pts = c.rational_points();
        let d = c.divisor([
            (pts[0].clone(), 3),
            (pts[5].clone(), 2),
            (Place::Infinity, 1),
        ]);
        let s = rr_space(&c, &d).unwrap();
        assert_eq!(s.h0 as i64, d.degree() + 1 - 2);
        for e in &s.basis {
            assert!(c
                .principal_divisor(e)
                .unwrap()
                .add(&d)
                .unwrap()
                .is_effective());
            assert_eq!(
                s.coordinates_of(e)
                    .unwrap()
                    .iter()
                    .filter(|&&x| x != 0)
                    .count(),
                1
            );
        }
    }

    #[test]
    fn degree_vanishing_shortcut_agrees() {
        let c = validate_curve(101, &[1, 1, 0, 0, 0, 0, 0, 1]).unwrap();
        let pts = c.rational_points();
        let d = c.divisor(pts.iter().take(5).map(|p| (p.clone(), 1)));
        assert_eq!(h1(&c, &d).unwrap(), 0);
        let dual = c.canonical_divisor().sub(&d).unwrap();
        assert_eq!(rr_basis(&c, &dual).unwrap().1.dim(), 0);
    }
}
