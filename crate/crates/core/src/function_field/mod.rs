//! Arithmetic in `k(C) = F_p(x)[y]/(y² - f)`.
//!
//! Elements are kept as `(a + b·y)/d` in lowest terms. Valuations are
//! computed exactly from `u`-adic orders and the norm `a² - b²f`; the
//! power-series route in [`expansion`] gives an independent check.

pub mod expansion;

use serde::{Deserialize, Serialize};

pub use expansion::{local_expansion, LocalChart, LocalExpansion};

use crate::algebra::{poly_factor, poly_gcd, FpScalar, Poly};
use crate::curve::{CurveId, Divisor, HyperellipticCurve, Place};
use crate::error::{Error, Result};

/// `(a + b·y)/d` with `d` monic and `gcd(a, b, d) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionElement {
    curve: CurveId,
    a: Poly,
    b: Poly,
    d: Poly,
}

/// Coefficient triple `(a, b, d)`, ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRepr {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub d: Vec<u64>,
}

impl FunctionElement {
    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    pub fn curve_id(&self) -> CurveId {
        self.curve
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a² - b²f`, the norm of the numerator down to `F_p(x)`.
    pub fn numerator_norm(&self, curve: &HyperellipticCurve) -> Poly {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * curve.f())
    }

    pub fn repr(&self) -> ElementRepr {
        ElementRepr {
            a: self.a.coeffs().to_vec(),
            b: self.b.coeffs().to_vec(),
            d: self.d.coeffs().to_vec(),
        }
    }
}

impl HyperellipticCurve {
    /// Builds `(a + b·y)/d` in canonical form; `d` must be nonzero.
    pub fn element(&self, a: Poly, b: Poly, d: Poly) -> FunctionElement {
        assert!(!d.is_zero(), "zero denominator");
        let fp = self.field();
        if a.is_zero() && b.is_zero() {
            return FunctionElement {
                curve: self.id(),
                a,
                b,
                d: Poly::one(fp),
            };
        }
        let g = poly_gcd(&poly_gcd(&a, &b), &d);
        let (mut a, mut b, mut d) = if g.is_one() {
            (a, b, d)
        } else {
            (
                a.div_exact(&g).expect("gcd divides"),
                b.div_exact(&g).expect("gcd divides"),
                d.div_exact(&g).expect("gcd divides"),
            )
        };
        if !d.is_monic() {
            let inv = fp.inv(d.lead());
            a = a.scale(inv);
            b = b.scale(inv);
            d = d.scale(inv);
        }
        FunctionElement {
            curve: self.id(),
            a,
            b,
            d,
        }
    }

    pub fn element_from_repr(&self, r: &ElementRepr) -> Result<FunctionElement> {
        let fp = self.field();
        let d = Poly::new(fp, r.d.clone());
        if d.is_zero() {
            return Err(Error::Config("element with zero denominator".into()));
        }
        Ok(self.element(Poly::new(fp, r.a.clone()), Poly::new(fp, r.b.clone()), d))
    }

    pub fn ff_constant(&self, c: FpScalar) -> FunctionElement {
        let fp = self.field();
        self.element(Poly::constant(fp, c), Poly::zero(fp), Poly::one(fp))
    }

    pub fn ff_poly(&self, a: Poly) -> FunctionElement {
        let fp = self.field();
        self.element(a, Poly::zero(fp), Poly::one(fp))
    }

    pub fn ff_x(&self) -> FunctionElement {
        self.ff_poly(Poly::x(self.field()))
    }

    pub fn ff_y(&self) -> FunctionElement {
        let fp = self.field();
        self.element(Poly::zero(fp), Poly::one(fp), Poly::one(fp))
    }

    fn check(&self, e: &FunctionElement) -> Result<()> {
        if e.curve != self.id() {
            return Err(Error::CurveMismatch);
        }
        Ok(())
    }

    pub fn ff_add(&self, e1: &FunctionElement, e2: &FunctionElement) -> Result<FunctionElement> {
        self.check(e1)?;
        self.check(e2)?;
        let a = &(&e1.a * &e2.d) + &(&e2.a * &e1.d);
        let b = &(&e1.b * &e2.d) + &(&e2.b * &e1.d);
        Ok(self.element(a, b, &e1.d * &e2.d))
    }

    pub fn ff_neg(&self, e: &FunctionElement) -> FunctionElement {
        FunctionElement {
            curve: e.curve,
            a: -&e.a,
            b: -&e.b,
            d: e.d.clone(),
        }
    }

    pub fn ff_sub(&self, e1: &FunctionElement, e2: &FunctionElement) -> Result<FunctionElement> {
        self.ff_add(e1, &self.ff_neg(e2))
    }

    pub fn ff_scale(&self, e: &FunctionElement, c: FpScalar) -> FunctionElement {
        self.element(e.a.scale(c), e.b.scale(c), e.d.clone())
    }

    /// Product with `y²` reduced to `f`.
    pub fn ff_mul(&self, e1: &FunctionElement, e2: &FunctionElement) -> Result<FunctionElement> {
        self.check(e1)?;
        self.check(e2)?;
        let a = &(&e1.a * &e2.a) + &(&(&e1.b * &e2.b) * self.f());
        let b = &(&e1.a * &e2.b) + &(&e1.b * &e2.a);
        Ok(self.element(a, b, &e1.d * &e2.d))
    }

    /// `1/e = d·(a - b·y)/(a² - b²f)`.
    pub fn ff_inv(&self, e: &FunctionElement) -> Result<FunctionElement> {
        self.check(e)?;
        if e.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = e.numerator_norm(self);
        Ok(self.element(&e.a * &e.d, -&(&e.b * &e.d), n))
    }

    /// `v_P(e)`, or `None` for the zero element (valuation `+∞`).
    pub fn valuation(&self, e: &FunctionElement, place: &Place) -> Option<i64> {
        if e.is_zero() {
            return None;
        }
        let g = self.genus() as i64;
        let Some(u) = place.u() else {
            let va = e.a.degree().map(|n| -2 * n as i64);
            let vb = e.b.degree().map(|n| -2 * n as i64 - (2 * g + 1));
            // parities differ, so the two terms never cancel
            let num = match (va, vb) {
                (Some(x), Some(y)) => x.min(y),
                (Some(x), None) | (None, Some(x)) => x,
                (None, None) => unreachable!(),
            };
            return Some(num + 2 * e.d.degree_i64());
        };
        let ord = |p: &Poly| {
            if p.is_zero() {
                usize::MAX
            } else {
                p.order_at(u)
            }
        };
        let vd = e.d.order_at(u) as i64;
        let num = match place {
            Place::Finite { v, .. } if v.is_zero() => {
                // ramified: v(u) = 2, v(y) = 1
                let oa = ord(&e.a);
                let ob = ord(&e.b);
                let va = if oa == usize::MAX {
                    i64::MAX
                } else {
                    2 * oa as i64
                };
                let vb = if ob == usize::MAX {
                    i64::MAX
                } else {
                    2 * ob as i64 + 1
                };
                return Some(va.min(vb) - 2 * vd);
            }
            Place::Finite { v, .. } => {
                let m = ord(&e.a).min(ord(&e.b));
                let um = u.pow(m);
                let a1 = e.a.div_exact(&um).expect("u^m divides a");
                let b1 = e.b.div_exact(&um).expect("u^m divides b");
                let branch = (&a1 + &(&b1 * v)).rem(u);
                if branch.is_zero() {
                    // this branch carries the whole u-part of the norm
                    let n1 = &(&a1 * &a1) - &(&(&b1 * &b1) * self.f());
                    m as i64 + n1.order_at(u) as i64
                } else {
                    m as i64
                }
            }
            Place::Inert { .. } => {
                // single unramified place: v(a + by) = ord_u(N)/2
                (e.numerator_norm(self).order_at(u) / 2) as i64
            }
            Place::Infinity => unreachable!(),
        };
        Some(num - vd)
    }

    /// `div(e) = Σ v_P(e)·P`, locating zeros and poles by factoring the norm and `d`.
    pub fn principal_divisor(&self, e: &FunctionElement) -> Result<Divisor> {
        self.check(e)?;
        if e.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut candidates: Vec<Poly> = Vec::new();
        for poly in [e.numerator_norm(self), e.d.clone()] {
            if poly.degree().unwrap_or(0) > 0 {
                candidates.extend(poly_factor(&poly)?.factors.into_iter().map(|(u, _)| u));
            }
        }
        candidates.sort();
        candidates.dedup();
        let mut div = self.zero_divisor();
        for u in &candidates {
            for place in self.places_over(u) {
                let v = self.valuation(e, &place).expect("nonzero element");
                div.add_place(place, v);
            }
        }
        let v_inf = self
            .valuation(e, &Place::Infinity)
            .expect("nonzero element");
        div.add_place(Place::Infinity, v_inf);
        Ok(div)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::validate_curve;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn curve() -> HyperellipticCurve {
        validate_curve(101, &[1, 1, 0, 0, 0, 1]).unwrap()
    }

    fn random_element(c: &HyperellipticCurve, rng: &mut ChaCha8Rng) -> FunctionElement {
        let fp = c.field();
        loop {
            let a = Poly::random(fp, 4, rng);
            let b = Poly::random(fp, 3, rng);
            let d = Poly::random_monic(fp, rand::Rng::gen_range(rng, 0..4), rng);
            let e = c.element(a, b, d);
            if !e.is_zero() {
                return e;
            }
        }
    }

    #[test]
    fn y_squared_is_f() {
        let c = curve();
        let y = c.ff_y();
        assert_eq!(c.ff_mul(&y, &y).unwrap(), c.ff_poly(c.f().clone()));
    }

    #[test]
    fn one_is_neutral_and_inverse_works() {
        let c = curve();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let one = c.ff_constant(1);
        for _ in 0..20 {
            let e = random_element(&c, &mut rng);
            assert_eq!(c.ff_mul(&one, &e).unwrap(), e);
            let inv = c.ff_inv(&e).unwrap();
            assert_eq!(c.ff_mul(&e, &inv).unwrap(), one);
        }
    }

    #[test]
    fn associativity() {
        let c = curve();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let (e1, e2, e3) = (
                random_element(&c, &mut rng),
                random_element(&c, &mut rng),
                random_element(&c, &mut rng),
            );
            let l = c.ff_mul(&c.ff_mul(&e1, &e2).unwrap(), &e3).unwrap();
            let r = c.ff_mul(&e1, &c.ff_mul(&e2, &e3).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn valuations_at_infinity() {
        let c = curve();
        assert_eq!(c.valuation(&c.ff_x(), &Place::Infinity), Some(-2));
        assert_eq!(c.valuation(&c.ff_y(), &Place::Infinity), Some(-5));
        assert_eq!(c.valuation(&c.ff_constant(0), &Place::Infinity), None);
    }

    #[test]
    fn ramified_place_valuations() {
        // y^2 = x^5 - x over F_101 has the rational ramification point x = 0
        let c = validate_curve(101, &[0, 100, 0, 0, 0, 1]).unwrap();
        let fp = c.field();
        let p = Place::Finite {
            u: Poly::x(fp),
            v: Poly::zero(fp),
        };
        c.check_place(&p).unwrap();
        assert_eq!(c.valuation(&c.ff_x(), &p), Some(2));
        assert_eq!(c.valuation(&c.ff_y(), &p), Some(1));
    }

    #[test]
    fn divisor_of_x() {
        let c = curve();
        let fp = c.field();
        let div = c.principal_divisor(&c.ff_x()).unwrap();
        assert_eq!(div.degree(), 0);
        assert_eq!(div.coefficient(&Place::Infinity), -2);
        // f(0) = 1, so the places over x = 0 are (0, ±1)
        let p1 = c.place_at(0, 1).unwrap();
        let p2 = c.place_at(0, fp.neg(1)).unwrap();
        assert_eq!(div.coefficient(&p1), 1);
        assert_eq!(div.coefficient(&p2), 1);
        assert_eq!(div.terms().count(), 3);
    }

    #[test]
    fn constants_have_trivial_divisor() {
        let c = curve();
        assert!(c.principal_divisor(&c.ff_constant(7)).unwrap().is_zero());
        assert!(matches!(
            c.principal_divisor(&c.ff_constant(0)),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn divisor_is_multiplicative() {
        let c = curve();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..25 {
            let e1 = random_element(&c, &mut rng);
            let e2 = random_element(&c, &mut rng);
            let prod = c.ff_mul(&e1, &e2).unwrap();
            let lhs = c.principal_divisor(&prod).unwrap();
            let rhs = c
                .principal_divisor(&e1)
                .unwrap()
                .add(&c.principal_divisor(&e2).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
