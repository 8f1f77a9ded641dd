//! Finite fields `F_p[x]/(u)`, optionally extended by a square root `η² = c`.
//!
//! These are the residue fields of places on the curve: a split or ramified
//! place over `u` has residue field `F_p[x]/(u)`, an inert place has the
//! quadratic extension obtained by adjoining `y` with `y² = f mod u`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Fp, FpScalar};
use super::poly::Poly;

/// `c0 + c1·η` with `c0, c1` reduced mod `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResElem {
    pub c0: Poly,
    pub c1: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueField {
    fp: Fp,
    u: Poly,
    eta_sq: Option<Poly>,
}

impl ResidueField {
    /// `F_p[x]/(u)`; `u` must be monic irreducible.
    pub fn new(u: Poly) -> Self {
        ResidueField {
            fp: u.field(),
            u,
            eta_sq: None,
        }
    }

    /// Adjoins `η` with `η² = c`. A field when `c` is a non-square.
    pub fn with_sqrt_of(u: Poly, c: &Poly) -> Self {
        let eta_sq = Some(c.rem(&u));
        ResidueField {
            fp: u.field(),
            u,
            eta_sq,
        }
    }

    pub fn prime_field(fp: Fp) -> Self {
        ResidueField::new(Poly::x(fp))
    }

    pub fn modulus(&self) -> &Poly {
        &self.u
    }

    pub fn fp(&self) -> Fp {
        self.fp
    }

    pub fn is_extended(&self) -> bool {
        self.eta_sq.is_some()
    }

    /// Dimension over `F_p`.
    pub fn degree(&self) -> usize {
        let d = self.u.degree().unwrap_or(0);
        if self.is_extended() {
            2 * d
        } else {
            d
        }
    }

    pub fn zero(&self) -> ResElem {
        ResElem {
            c0: Poly::zero(self.fp),
            c1: Poly::zero(self.fp),
        }
    }

    pub fn one(&self) -> ResElem {
        self.scalar(1)
    }

    pub fn scalar(&self, c: FpScalar) -> ResElem {
        self.from_poly(&Poly::constant(self.fp, c))
    }

    pub fn from_poly(&self, a: &Poly) -> ResElem {
        ResElem {
            c0: a.rem(&self.u),
            c1: Poly::zero(self.fp),
        }
    }

    /// Class of `x`.
    pub fn theta(&self) -> ResElem {
        self.from_poly(&Poly::x(self.fp))
    }

    /// The adjoined square root `η`.
    pub fn eta(&self) -> ResElem {
        assert!(self.is_extended(), "no square root adjoined");
        ResElem {
            c0: Poly::zero(self.fp),
            c1: Poly::one(self.fp),
        }
    }

    pub fn is_zero(&self, a: &ResElem) -> bool {
        a.c0.is_zero() && a.c1.is_zero()
    }

    pub fn add(&self, a: &ResElem, b: &ResElem) -> ResElem {
        ResElem {
            c0: &a.c0 + &b.c0,
            c1: &a.c1 + &b.c1,
        }
    }

    pub fn sub(&self, a: &ResElem, b: &ResElem) -> ResElem {
        ResElem {
            c0: &a.c0 - &b.c0,
            c1: &a.c1 - &b.c1,
        }
    }

    pub fn neg(&self, a: &ResElem) -> ResElem {
        ResElem {
            c0: -&a.c0,
            c1: -&a.c1,
        }
    }

    pub fn scale(&self, a: &ResElem, c: FpScalar) -> ResElem {
        ResElem {
            c0: a.c0.scale(c),
            c1: a.c1.scale(c),
        }
    }

    pub fn mul(&self, a: &ResElem, b: &ResElem) -> ResElem {
        let u = &self.u;
        match &self.eta_sq {
            None => ResElem {
                c0: a.c0.mul_mod(&b.c0, u),
                c1: Poly::zero(self.fp),
            },
            Some(c) => {
                let c0 = &a.c0.mul_mod(&b.c0, u) + &a.c1.mul_mod(&b.c1, u).mul_mod(c, u);
                let c1 = &a.c0.mul_mod(&b.c1, u) + &a.c1.mul_mod(&b.c0, u);
                ResElem {
                    c0: c0.rem(u),
                    c1: c1.rem(u),
                }
            }
        }
    }

    pub fn pow(&self, a: &ResElem, mut e: u64) -> ResElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Inverse of a nonzero element (only meaningful when this is a field).
    pub fn inv(&self, a: &ResElem) -> ResElem {
        assert!(!self.is_zero(a), "inverse of zero residue");
        let u = &self.u;
        match &self.eta_sq {
            None => ResElem {
                c0: a.c0.inv_mod(u).expect("residue ring is a field"),
                c1: Poly::zero(self.fp),
            },
            Some(c) => {
                // (c0 + c1 η)^{-1} = (c0 - c1 η) / (c0² - c1² c)
                let norm = (&a.c0.mul_mod(&a.c0, u) - &a.c1.mul_mod(&a.c1, u).mul_mod(c, u)).rem(u);
                let ninv = norm.inv_mod(u).expect("quadratic extension is a field");
                ResElem {
                    c0: a.c0.mul_mod(&ninv, u),
                    c1: (-&a.c1).mul_mod(&ninv, u),
                }
            }
        }
    }

    pub fn div(&self, a: &ResElem, b: &ResElem) -> ResElem {
        self.mul(a, &self.inv(b))
    }

    /// Coordinates over `F_p`: coefficients of `c0`, then of `c1` when extended.
    pub fn to_fp_vec(&self, a: &ResElem) -> Vec<FpScalar> {
        let d = self.u.degree().unwrap_or(0);
        let mut out: Vec<_> = (0..d).map(|i| a.c0.coeff(i)).collect();
        if self.is_extended() {
            out.extend((0..d).map(|i| a.c1.coeff(i)));
        }
        out
    }

    /// Norm down to `F_p` of an element of the base field `F_p[x]/(u)`.
    fn base_norm(&self, a: &ResElem) -> FpScalar {
        let base = ResidueField::new(self.u.clone());
        let p = self.fp.modulus();
        let k = self.u.degree().unwrap_or(0);
        let mut conj = base.from_poly(&a.c0);
        let mut prod = conj.clone();
        for _ in 1..k {
            conj = base.pow(&conj, p);
            prod = base.mul(&prod, &conj);
        }
        prod.c0.coeff(0)
    }

    /// Whether an element of the base field is a square there.
    pub fn is_square(&self, a: &ResElem) -> bool {
        debug_assert!(a.c1.is_zero());
        if a.c0.is_zero() {
            return true;
        }
        self.fp.is_square(self.base_norm(a))
    }

    /// Square root inside the base field `F_p[x]/(u)` (Cantor–Zassenhaus on `Y² - a`).
    pub fn sqrt(&self, a: &ResElem) -> Option<ResElem> {
        let base = ResidueField::new(self.u.clone());
        let a = base.from_poly(&a.c0);
        if a.c0.is_zero() {
            return Some(a);
        }
        if !base.is_square(&a) {
            return None;
        }
        let fp = self.fp;
        let p = fp.modulus();
        let k = self.u.degree().unwrap_or(0);
        let ring = ResidueField::with_sqrt_of(self.u.clone(), &a.c0);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5121);
        loop {
            let delta = Poly::random(fp, k.saturating_sub(1), &mut rng);
            let mut conj = ResElem {
                c0: delta.rem(&self.u),
                c1: Poly::one(fp),
            };
            let mut prod = conj.clone();
            for _ in 1..k {
                conj = ring.pow(&conj, p);
                prod = ring.mul(&prod, &conj);
            }
            let w = ring.pow(&prod, (p - 1) / 2);
            if w.c1.is_zero() {
                continue;
            }
            // the root of gcd(Y² - a, w - 1) is (1 - w0)/w1
            let num = base.sub(&base.one(), &base.from_poly(&w.c0));
            let Some(den_inv) = w.c1.inv_mod(&self.u) else {
                continue;
            };
            let r = base.mul(&num, &base.from_poly(&den_inv));
            if base.mul(&r, &r) == a {
                let neg = base.neg(&r);
                return Some(if neg.c0 < r.c0 { neg } else { r });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::factor::is_irreducible;
    use rand::SeedableRng;

    #[test]
    fn quadratic_extension_inverse() {
        let fp = Fp::new(101).unwrap();
        let u = Poly::linear(fp, 0);
        let k = ResidueField::with_sqrt_of(u, &Poly::constant(fp, 2));
        let a = ResElem {
            c0: Poly::constant(fp, 7),
            c1: Poly::constant(fp, 3),
        };
        assert_eq!(k.mul(&a, &k.inv(&a)), k.one());
        assert_eq!(k.mul(&k.eta(), &k.eta()), k.scalar(2));
    }

    #[test]
    fn sqrt_in_degree_three_field() {
        let fp = Fp::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = loop {
            let u = Poly::random_monic(fp, 3, &mut rng);
            if is_irreducible(&u) {
                break u;
            }
        };
        let k = ResidueField::new(u);
        let mut squares = 0;
        for _ in 0..40 {
            let a = k.from_poly(&Poly::random(fp, 2, &mut rng));
            let sq = k.mul(&a, &a);
            let r = k.sqrt(&sq).unwrap();
            assert_eq!(k.mul(&r, &r), sq);
            let b = k.from_poly(&Poly::random(fp, 2, &mut rng));
            match k.sqrt(&b) {
                Some(r) => {
                    squares += 1;
                    assert_eq!(k.mul(&r, &r), b);
                }
                None => assert!(!k.is_square(&b)),
            }
        }
        assert!(squares > 5 && squares < 35);
    }
}
