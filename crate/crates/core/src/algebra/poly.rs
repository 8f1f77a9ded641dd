//! Dense univariate polynomials over `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Fp, FpScalar};
use rand::Rng;

/// Dense polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    fp: Fp,
    coeffs: Vec<FpScalar>,
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Orders by degree first, then by coefficients from the top down.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(fp: Fp) -> Self {
        Poly {
            fp,
            coeffs: Vec::new(),
        }
    }

    pub fn one(fp: Fp) -> Self {
        Poly::constant(fp, 1)
    }

    pub fn constant(fp: Fp, c: FpScalar) -> Self {
        Poly::new(fp, vec![c])
    }

    pub fn x(fp: Fp) -> Self {
        Poly::new(fp, vec![0, 1])
    }

    /// `c * x^k`
    pub fn monomial(fp: Fp, c: FpScalar, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(fp, coeffs)
    }

    /// `x - r`
    pub fn linear(fp: Fp, r: FpScalar) -> Self {
        Poly::new(fp, vec![fp.neg(fp.reduce(r)), 1])
    }

    /// Builds a polynomial from ascending coefficients, reducing mod `p`.
    pub fn new(fp: Fp, coeffs: Vec<FpScalar>) -> Self {
        let mut coeffs: Vec<_> = coeffs.into_iter().map(|c| fp.reduce(c)).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { fp, coeffs }
    }

    pub fn from_i64(fp: Fp, coeffs: &[i64]) -> Self {
        Poly::new(fp, coeffs.iter().map(|&c| fp.from_i64(c)).collect())
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.fp
    }

    #[inline]
    pub fn coeffs(&self) -> &[FpScalar] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> FpScalar {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = -1`.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> FpScalar {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.fp.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, c: FpScalar) -> Poly {
        let fp = self.fp;
        Poly::new(fp, self.coeffs.iter().map(|&a| fp.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            fp: self.fp,
            coeffs,
        }
    }

    pub fn eval(&self, at: FpScalar) -> FpScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.fp.add(self.fp.mul(acc, at), c))
    }

    pub fn derivative(&self) -> Poly {
        let fp = self.fp;
        Poly::new(
            fp,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| fp.mul(fp.reduce(i as u64), c))
                .collect(),
        )
    }

    /// Long division; panics if `divisor` is zero.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let fp = self.fp;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(fp), self.clone());
        }
        let inv_lead = fp.inv(divisor.lead());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = fp.mul(rem[i + dd], inv_lead);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = fp.sub(rem[i + j], fp.mul(c, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(fp, quot), Poly::new(fp, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Multiplicity of `factor` (non-constant) in `self`; `self` must be nonzero.
    pub fn order_at(&self, factor: &Poly) -> usize {
        debug_assert!(factor.degree().unwrap_or(0) > 0);
        let mut k = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            match cur.div_exact(factor) {
                Some(q) => {
                    cur = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut acc = Poly::one(self.fp);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        (self * other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(self.fp).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// Inverse modulo `modulus`, if `gcd(self, modulus) = 1`.
    pub fn inv_mod(&self, modulus: &Poly) -> Option<Poly> {
        let (g, s, _) = ext_gcd(&self.rem(modulus), modulus);
        g.is_one().then(|| s.rem(modulus))
    }

    pub fn random<R: Rng + ?Sized>(fp: Fp, max_degree: usize, rng: &mut R) -> Poly {
        Poly::new(fp, (0..=max_degree).map(|_| fp.random(rng)).collect())
    }

    pub fn random_monic<R: Rng + ?Sized>(fp: Fp, degree: usize, rng: &mut R) -> Poly {
        let mut coeffs: Vec<_> = (0..degree).map(|_| fp.random(rng)).collect();
        coeffs.push(1);
        Poly::new(fp, coeffs)
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1);
        r0 = r1;
        r1 = r;
    }
    r0.monic()
}

/// Returns `(g, s, t)` with `g = s*a + t*b` monic.
pub fn ext_gcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let fp = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(fp), Poly::zero(fp));
    let (mut t0, mut t1) = (Poly::zero(fp), Poly::one(fp));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let inv = fp.inv(r0.lead());
    (r0.scale(inv), s0.scale(inv), t0.scale(inv))
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let fp = self.fp;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            fp,
            (0..n)
                .map(|i| fp.add(self.coeff(i), rhs.coeff(i)))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let fp = self.fp;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            fp,
            (0..n)
                .map(|i| fp.sub(self.coeff(i), rhs.coeff(i)))
                .collect(),
        )
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let fp = self.fp;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(fp);
        }
        let p = fp.modulus();
        // accumulate unreduced products; each is < 2^62 so reduce every few terms
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Poly::new(fp, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let fp = self.fp;
        Poly::new(fp, self.coeffs.iter().map(|&c| fp.neg(c)).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
