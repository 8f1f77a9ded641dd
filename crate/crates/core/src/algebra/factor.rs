//! Factorization of polynomials over `F_p`: squarefree decomposition,
//! distinct-degree splitting and Cantor–Zassenhaus equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::FpScalar;
use super::poly::{poly_gcd, Poly};
use crate::error::{Error, Result};

const DEFAULT_SEED: u64 = 0x5eed_f00d;

/// `unit * prod(factor^mult)`, factors monic irreducible and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FpScalar,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self, like: &Poly) -> Poly {
        let fp = like.field();
        self.factors
            .iter()
            .fold(Poly::constant(fp, self.unit), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }
}

/// Factors a nonzero polynomial with the default splitting seed.
pub fn poly_factor(a: &Poly) -> Result<Factorization> {
    poly_factor_seeded(a, DEFAULT_SEED)
}

pub fn poly_factor_seeded(a: &Poly, seed: u64) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sqfree, mult) in squarefree_decomposition(&a.monic()) {
        for (block, d) in distinct_degree(&sqfree) {
            for f in equal_degree(&block, d, &mut rng) {
                factors.push((f, mult));
            }
        }
    }
    factors.sort();
    // merge equal factors that surfaced through different p-th-root levels
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (f, m) in factors {
        match merged.last_mut() {
            Some((g, n)) if *g == f => *n += m,
            _ => merged.push((f, m)),
        }
    }
    Ok(Factorization {
        unit: a.lead(),
        factors: merged,
    })
}

pub fn is_irreducible(a: &Poly) -> bool {
    match a.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(d) => {
            let monic = a.monic();
            if !poly_gcd(&monic, &monic.derivative()).is_one() {
                return false;
            }
            distinct_degree(&monic)
                .first()
                .map(|(_, k)| *k == d)
                .unwrap_or(false)
        }
    }
}

/// Monic squarefree parts with multiplicities (characteristic-p aware).
pub fn squarefree_decomposition(a: &Poly) -> Vec<(Poly, usize)> {
    let fp = a.field();
    let p = fp.modulus() as usize;
    let mut out = Vec::new();
    if a.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = poly_gcd(a, &a.derivative());
    let mut w = a.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = poly_gcd(&w, &c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.div_exact(&y).expect("gcd divides");
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        // c is a p-th power: its nonzero coefficients sit at multiples of p
        let root = Poly::new(fp, c.coeffs().iter().step_by(p).copied().collect());
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of equal degree.
pub fn distinct_degree(a: &Poly) -> Vec<(Poly, usize)> {
    let fp = a.field();
    let p = fp.modulus();
    let mut out = Vec::new();
    let mut rest = a.clone();
    let x = Poly::x(fp);
    let mut xp = x.clone();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        xp = xp.pow_mod(p, &rest);
        let g = poly_gcd(&rest, &(&xp - &x));
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            xp = xp.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    out
}

/// `r^((p^d - 1)/2) mod h`, via the norm-like product of Frobenius conjugates.
fn half_power(r: &Poly, d: usize, h: &Poly) -> Poly {
    let p = r.field().modulus();
    let mut conj = r.rem(h);
    let mut prod = conj.clone();
    for _ in 1..d {
        conj = conj.pow_mod(p, h);
        prod = prod.mul_mod(&conj, h);
    }
    prod.pow_mod((p - 1) / 2, h)
}

fn equal_degree(h: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = h.degree().unwrap_or(0);
    if n == d {
        return vec![h.clone()];
    }
    let fp = h.field();
    let one = Poly::one(fp);
    loop {
        let r = Poly::random(fp, n - 1, rng);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = half_power(&r, d, h);
        let g = poly_gcd(h, &(&b - &one));
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let other = h.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}
