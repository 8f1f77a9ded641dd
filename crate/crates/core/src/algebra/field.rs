//! Arithmetic in the prime field `F_p`.
//!
//! Scalars are plain `u64` residues in `[0, p)`; the modulus lives in a small
//! copyable [`Fp`] context that polynomials and matrices carry around.

use crate::error::{Error, Result};
use rand::Rng;

/// Largest supported modulus. Products of two residues must fit in a `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// Smallest supported modulus.
pub const MIN_MODULUS: u64 = 11;

/// Scalar of the prime field, always reduced into `[0, p)`.
pub type FpScalar = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Fp {
    /// Field context for an odd prime `11 <= p < 2^31`.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(MIN_MODULUS..=MAX_MODULUS).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        Ok(Fp { p })
    }

    /// Context without validation; used by tests that need tiny fields like `F_5`.
    pub fn new_unchecked(p: u64) -> Self {
        debug_assert!(is_prime(p) && p > 2 && p <= MAX_MODULUS);
        Fp { p }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> FpScalar {
        v % self.p
    }

    #[inline]
    pub fn from_i64(&self, v: i64) -> FpScalar {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: FpScalar, b: FpScalar) -> FpScalar {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: FpScalar, b: FpScalar) -> FpScalar {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: FpScalar) -> FpScalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: FpScalar, b: FpScalar) -> FpScalar {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: FpScalar, mut exp: u64) -> FpScalar {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: FpScalar) -> FpScalar {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.from_i64(t0)
    }

    #[inline]
    pub fn div(&self, a: FpScalar, b: FpScalar) -> FpScalar {
        self.mul(a, self.inv(b))
    }

    pub fn is_square(&self, a: FpScalar) -> bool {
        a == 0 || self.pow(a, (self.p - 1) / 2) == 1
    }

    /// Tonelli–Shanks square root; returns the smaller of the two roots.
    pub fn sqrt(&self, a: FpScalar) -> Option<FpScalar> {
        let a = a % self.p;
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        let p = self.p;
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r.min(p - r))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FpScalar {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FpScalar {
        rng.gen_range(1..self.p)
    }
}
