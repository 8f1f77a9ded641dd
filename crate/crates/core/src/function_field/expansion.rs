//! Local power-series expansions at places.
//!
//! At a finite place the completed local ring is `K[[t]]`, with `K` the
//! residue field and `t` a uniformizer: `u(x)` at unramified places, `y` at
//! ramified ones. A [`LocalChart`] stores the images of `x` and `y` in that
//! ring. At infinity `t = x^g / y`, and `x`, `y` become Laurent series with
//! leading exponents `-2` and `-(2g+1)`.

use crate::algebra::{FpScalar, Poly, ResElem, ResidueField};
use crate::curve::{HyperellipticCurve, Place};
use crate::error::{Error, Result};

use super::FunctionElement;

const MAX_PRECISION: usize = 1 << 14;

/// Truncated power series over a residue field; arithmetic truncates at `prec`.
#[derive(Debug, Clone)]
pub struct SeriesRing<'a> {
    pub k: &'a ResidueField,
    pub prec: usize,
}

pub type Series = Vec<ResElem>;

impl<'a> SeriesRing<'a> {
    pub fn new(k: &'a ResidueField, prec: usize) -> Self {
        SeriesRing { k, prec }
    }

    pub fn zero(&self) -> Series {
        vec![self.k.zero(); self.prec]
    }

    pub fn constant(&self, c: ResElem) -> Series {
        let mut s = self.zero();
        if self.prec > 0 {
            s[0] = c;
        }
        s
    }

    /// `t^k`
    pub fn monomial(&self, k: usize) -> Series {
        let mut s = self.zero();
        if k < self.prec {
            s[k] = self.k.one();
        }
        s
    }

    pub fn add(&self, a: &Series, b: &Series) -> Series {
        a.iter().zip(b).map(|(x, y)| self.k.add(x, y)).collect()
    }

    pub fn sub(&self, a: &Series, b: &Series) -> Series {
        a.iter().zip(b).map(|(x, y)| self.k.sub(x, y)).collect()
    }

    pub fn scale(&self, a: &Series, c: &ResElem) -> Series {
        a.iter().map(|x| self.k.mul(x, c)).collect()
    }

    pub fn mul(&self, a: &Series, b: &Series) -> Series {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.prec - i) {
                out[i + j] = self.k.add(&out[i + j], &self.k.mul(x, y));
            }
        }
        out
    }

    /// Inverse of a series with invertible constant term (Newton iteration).
    pub fn inv(&self, a: &Series) -> Series {
        let c0 = self.k.inv(&a[0]);
        let mut x = self.constant(c0);
        let two = self.constant(self.k.scalar(2));
        let mut correct = 1;
        while correct < self.prec {
            // x <- x (2 - a x)
            x = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
            correct *= 2;
        }
        x
    }

    /// Evaluates `p(s)` for a polynomial with `F_p` coefficients.
    pub fn eval_poly(&self, p: &Poly, s: &Series) -> Series {
        let mut acc = self.zero();
        for &c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, s);
            acc[0] = self.k.add(&acc[0], &self.k.scalar(c));
        }
        acc
    }

    /// `Σ c_i · s^i · t^{2(n-i)}` for `p = Σ c_i x^i` of degree `n`.
    fn eval_homogeneous(&self, p: &Poly, s: &Series) -> Series {
        let mut acc = self.zero();
        let Some(n) = p.degree() else {
            return acc;
        };
        for j in 0..=n {
            acc = self.mul(&acc, s);
            let idx = 2 * j;
            if idx < self.prec {
                acc[idx] = self.k.add(&acc[idx], &self.k.scalar(p.coeff(n - j)));
            }
        }
        acc
    }

    fn shift_down(&self, a: &Series, by: usize) -> Series {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().skip(by) {
            out[i - by] = x.clone();
        }
        out
    }
}

/// Images of `x` and `y` in the completion at a place.
///
/// For finite places `x_offset = y_offset = 0`. At infinity
/// `x = t^{-2}·x_series` and `y = t^{-(2g+1)}·y_series`.
#[derive(Debug, Clone)]
pub struct LocalChart {
    pub place: Place,
    pub field: ResidueField,
    pub prec: usize,
    pub x_series: Series,
    pub y_series: Series,
    pub x_offset: i64,
    pub y_offset: i64,
}

impl LocalChart {
    pub fn new(curve: &HyperellipticCurve, place: &Place, prec: usize) -> LocalChart {
        let fp = curve.field();
        let f = curve.f();
        let prec = prec.max(1);
        let steps = usize::BITS - prec.leading_zeros() + 1;
        match place {
            Place::Infinity => {
                let k = ResidueField::prime_field(fp);
                let ring = SeriesRing::new(&k, prec);
                // F(w) = w^{2g+1} f(1/w); w = 1/x satisfies w = t² F(w)
                let rev = Poly::new(fp, f.coeffs().iter().rev().copied().collect());
                let t2 = ring.monomial(2);
                let mut w = ring.zero();
                for _ in 0..prec / 2 + 2 {
                    w = ring.mul(&t2, &ring.eval_poly(&rev, &w));
                }
                let x_series = ring.inv(&ring.eval_poly(&rev, &w));
                let g = curve.genus();
                let mut y_series = ring.constant(k.one());
                for _ in 0..g {
                    y_series = ring.mul(&y_series, &x_series);
                }
                LocalChart {
                    place: place.clone(),
                    field: k.clone(),
                    prec,
                    x_series,
                    y_series,
                    x_offset: -2,
                    y_offset: -(2 * g as i64 + 1),
                }
            }
            Place::Finite { u, v } if v.is_zero() => {
                // uniformizer y: solve f(X) = t² with X(0) = θ
                let k = ResidueField::new(u.clone());
                let ring = SeriesRing::new(&k, prec);
                let df = f.derivative();
                let t2 = ring.monomial(2);
                let mut x = ring.constant(k.theta());
                for _ in 0..steps {
                    let resid = ring.sub(&ring.eval_poly(f, &x), &t2);
                    let step = ring.mul(&resid, &ring.inv(&ring.eval_poly(&df, &x)));
                    x = ring.sub(&x, &step);
                }
                let y = ring.monomial(1);
                LocalChart {
                    place: place.clone(),
                    field: k.clone(),
                    prec,
                    x_series: x,
                    y_series: y,
                    x_offset: 0,
                    y_offset: 0,
                }
            }
            Place::Finite { u, .. } | Place::Inert { u } => {
                let k = match place {
                    Place::Inert { .. } => ResidueField::with_sqrt_of(u.clone(), f),
                    _ => ResidueField::new(u.clone()),
                };
                let ring = SeriesRing::new(&k, prec);
                // uniformizer u(x): solve u(X) = t with X(0) = θ
                let du = u.derivative();
                let t = ring.monomial(1);
                let mut x = ring.constant(k.theta());
                for _ in 0..steps {
                    let resid = ring.sub(&ring.eval_poly(u, &x), &t);
                    let step = ring.mul(&resid, &ring.inv(&ring.eval_poly(&du, &x)));
                    x = ring.sub(&x, &step);
                }
                let y0 = match place {
                    Place::Finite { v, .. } => k.from_poly(v),
                    _ => k.eta(),
                };
                // y² = f(X), y(0) = y0
                let fx = ring.eval_poly(f, &x);
                let half = k.inv(&k.scalar(2));
                let mut y = ring.constant(y0);
                for _ in 0..steps {
                    y = ring.scale(&ring.add(&y, &ring.mul(&fx, &ring.inv(&y))), &half);
                }
                LocalChart {
                    place: place.clone(),
                    field: k.clone(),
                    prec,
                    x_series: x,
                    y_series: y,
                    x_offset: 0,
                    y_offset: 0,
                }
            }
        }
    }

    pub fn ring(&self) -> SeriesRing<'_> {
        SeriesRing::new(&self.field, self.prec)
    }

    /// Expansion of a polynomial `a(x)`; finite places only.
    pub fn poly_series(&self, a: &Poly) -> Series {
        assert_eq!(self.x_offset, 0, "finite places only");
        self.ring().eval_poly(a, &self.x_series)
    }
}

/// Expansion of a function element in the uniformizer of a place.
#[derive(Debug, Clone)]
pub struct LocalExpansion {
    pub place: Place,
    pub field: ResidueField,
    /// Exponent of the first coefficient; equals the valuation for nonzero elements.
    pub start: i64,
    pub coeffs: Vec<ResElem>,
    /// Set only for the zero element.
    pub vanishes: bool,
}

impl LocalExpansion {
    /// Coefficients as `F_p` coordinate vectors (length `deg` of the residue field).
    pub fn coeff_vectors(&self) -> Vec<Vec<FpScalar>> {
        self.coeffs
            .iter()
            .map(|c| self.field.to_fp_vec(c))
            .collect()
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Product of two expansions at the same place, truncated to the shorter precision.
    pub fn mul(&self, other: &LocalExpansion) -> LocalExpansion {
        assert_eq!(self.place, other.place, "expansions at different places");
        let prec = self.precision().min(other.precision());
        let ring = SeriesRing::new(&self.field, prec);
        let a: Series = self.coeffs[..prec].to_vec();
        let b: Series = other.coeffs[..prec].to_vec();
        LocalExpansion {
            place: self.place.clone(),
            field: self.field.clone(),
            start: self.start + other.start,
            coeffs: ring.mul(&a, &b),
            vanishes: self.vanishes || other.vanishes,
        }
    }
}

fn first_nonzero(k: &ResidueField, s: &Series) -> Option<usize> {
    s.iter().position(|c| !k.is_zero(c))
}

/// Expansion of `e` at `place` with `prec` coefficients from the leading term on.
///
/// The working precision starts at `prec + 2g + 2` beyond the denominator's
/// order and doubles while the numerator still looks zero, up to a bound
/// derived from the degree of its norm.
pub fn local_expansion(
    curve: &HyperellipticCurve,
    e: &FunctionElement,
    place: &Place,
    prec: usize,
) -> Result<LocalExpansion> {
    if prec < 1 {
        return Err(Error::PrecisionTooSmall);
    }
    if e.is_zero() {
        let field = LocalChart::new(curve, place, 1).field;
        return Ok(LocalExpansion {
            place: place.clone(),
            coeffs: vec![field.zero(); prec],
            field,
            start: 0,
            vanishes: true,
        });
    }
    let g = curve.genus();
    if place.is_infinite() {
        return Ok(expansion_at_infinity(curve, e, prec));
    }
    let norm_deg = e.numerator_norm(curve).degree().unwrap_or(0);
    let d_deg = e.d().degree().unwrap_or(0);
    let cap = 2 * norm_deg.max(d_deg) + prec + 2;
    let mut work = prec + 2 * g + 2 + 2 * d_deg;
    loop {
        if work > MAX_PRECISION {
            return Err(Error::PrecisionEscalationFailed(work));
        }
        let chart = LocalChart::new(curve, place, work);
        let ring = chart.ring();
        let k = &chart.field;
        let num = ring.add(
            &chart.poly_series(e.a()),
            &ring.mul(&chart.poly_series(e.b()), &chart.y_series),
        );
        let den = chart.poly_series(e.d());
        let (Some(s), Some(vd)) = (first_nonzero(k, &num), first_nonzero(k, &den)) else {
            if work >= cap {
                return Err(Error::PrecisionEscalationFailed(work));
            }
            work = (2 * work).min(cap);
            continue;
        };
        if s + prec > work || vd + prec > work {
            work = s.max(vd) + prec;
            continue;
        }
        let out = SeriesRing::new(k, prec);
        let num_unit: Series = ring.shift_down(&num, s)[..prec].to_vec();
        let den_unit: Series = ring.shift_down(&den, vd)[..prec].to_vec();
        let coeffs = out.mul(&num_unit, &out.inv(&den_unit));
        return Ok(LocalExpansion {
            place: place.clone(),
            field: k.clone(),
            start: s as i64 - vd as i64,
            coeffs,
            vanishes: false,
        });
    }
}

fn expansion_at_infinity(
    curve: &HyperellipticCurve,
    e: &FunctionElement,
    prec: usize,
) -> LocalExpansion {
    let g = curve.genus() as i64;
    // every shift below is at most 2g+1 + 2 deg, so this precision is enough
    let work = prec + 2 * g as usize + 2;
    let chart = LocalChart::new(curve, &Place::Infinity, work);
    let ring = chart.ring();
    let k = &chart.field;
    let va = e.a().degree().map(|n| -2 * n as i64);
    let vb = e.b().degree().map(|n| -2 * n as i64 - (2 * g + 1));
    let lead = match (va, vb) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => unreachable!("nonzero element"),
    };
    let mut num = ring.zero();
    if let Some(va) = va {
        let s = ring.eval_homogeneous(e.a(), &chart.x_series);
        num = ring.add(&num, &shift_up(&ring, &s, (va - lead) as usize));
    }
    if let Some(vb) = vb {
        let s = ring.mul(
            &ring.eval_homogeneous(e.b(), &chart.x_series),
            &chart.y_series,
        );
        num = ring.add(&num, &shift_up(&ring, &s, (vb - lead) as usize));
    }
    let den = ring.eval_homogeneous(e.d(), &chart.x_series);
    let out = SeriesRing::new(k, prec);
    let coeffs = out.mul(&num[..prec].to_vec(), &out.inv(&den[..prec].to_vec()));
    LocalExpansion {
        place: Place::Infinity,
        field: k.clone(),
        start: lead + 2 * e.d().degree_i64(),
        coeffs,
        vanishes: false,
    }
}

fn shift_up(ring: &SeriesRing<'_>, a: &Series, by: usize) -> Series {
    let mut out = ring.zero();
    for (i, x) in a.iter().enumerate() {
        if i + by < ring.prec {
            out[i + by] = x.clone();
        }
    }
    out
}
