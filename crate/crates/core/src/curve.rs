//! The hyperelliptic curve `y² = f(x)`, its places and Weil divisors.
//!
//! Only odd-degree models are handled, so there is exactly one place at
//! infinity, with `v(x) = -2` and `v(y) = -(2g+1)` there.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{poly_gcd, Fp, FpScalar, Poly, ResidueField};
use crate::error::{Error, Result};

/// Fingerprint of a curve, used to reject mixing objects from different curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveId(u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticCurve {
    fp: Fp,
    f: Poly,
    genus: usize,
    id: CurveId,
}

/// A closed point of the smooth projective model.
///
/// `Finite { u, v }` is the place over the irreducible `u` where `y ≡ v (mod u)`;
/// it is ramified exactly when `v = 0` (then `u | f`). `Inert { u }` is the
/// single place of degree `2 deg u` over a `u` at which `f` is a non-square.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite { u: Poly, v: Poly },
    Inert { u: Poly },
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite { u, .. } => u.degree().unwrap_or(0),
            Place::Inert { u } => 2 * u.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_ramified(&self) -> bool {
        matches!(self, Place::Finite { v, .. } if v.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    /// The irreducible polynomial below a finite place.
    pub fn u(&self) -> Option<&Poly> {
        match self {
            Place::Finite { u, .. } | Place::Inert { u } => Some(u),
            Place::Infinity => None,
        }
    }

    /// Ramification index over the `x`-line.
    pub fn ramification(&self) -> usize {
        if self.is_ramified() || self.is_infinite() {
            2
        } else {
            1
        }
    }

    /// The conjugate place `(u, -v)`; ramified, inert and infinite places are self-conjugate.
    pub fn conjugate(&self) -> Place {
        match self {
            Place::Finite { u, v } => Place::Finite {
                u: u.clone(),
                v: -v,
            },
            other => other.clone(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite { u, v } => write!(f, "({u:?}, y - ({v:?}))"),
            Place::Inert { u } => write!(f, "({u:?})"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Serialized form of a place; polynomial coefficients ascend.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PlaceRepr {
    Finite { u: Vec<u64>, v: Vec<u64> },
    Inert { u: Vec<u64> },
    Infinite,
}

impl From<&Place> for PlaceRepr {
    fn from(p: &Place) -> Self {
        match p {
            Place::Finite { u, v } => PlaceRepr::Finite {
                u: u.coeffs().to_vec(),
                v: v.coeffs().to_vec(),
            },
            Place::Inert { u } => PlaceRepr::Inert {
                u: u.coeffs().to_vec(),
            },
            Place::Infinity => PlaceRepr::Infinite,
        }
    }
}

/// Finite integer combination of places.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    curve: CurveId,
    coeffs: BTreeMap<Place, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTerm {
    pub place: PlaceRepr,
    pub coeff: i64,
}

impl Divisor {
    pub fn curve_id(&self) -> CurveId {
        self.curve
    }

    pub fn coefficient(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|(p, &n)| n * p.degree() as i64)
            .sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&n| n >= 0)
    }

    pub fn add_place(&mut self, place: Place, n: i64) {
        let e = self.coeffs.entry(place).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.retain(|_, n| *n != 0);
        }
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        if self.curve != other.curve {
            return Err(Error::CurveMismatch);
        }
        let mut out = self.clone();
        for (p, n) in other.terms() {
            out.add_place(p.clone(), n);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Divisor) -> Result<Divisor> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        let coeffs = if k == 0 {
            BTreeMap::new()
        } else {
            self.coeffs
                .iter()
                .map(|(p, &n)| (p.clone(), n * k))
                .collect()
        };
        Divisor {
            curve: self.curve,
            coeffs,
        }
    }

    /// Place-wise minimum (the gcd of two effective divisors).
    pub fn min(&self, other: &Divisor) -> Result<Divisor> {
        if self.curve != other.curve {
            return Err(Error::CurveMismatch);
        }
        let mut out = Divisor {
            curve: self.curve,
            coeffs: BTreeMap::new(),
        };
        for p in self.support().chain(other.support()) {
            let n = self.coefficient(p).min(other.coefficient(p));
            if n != 0 {
                out.coeffs.insert(p.clone(), n);
            }
        }
        Ok(out)
    }

    pub fn to_terms(&self) -> Vec<DivisorTerm> {
        self.terms()
            .map(|(p, n)| DivisorTerm {
                place: p.into(),
                coeff: n,
            })
            .collect()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(p, n)| format!("{n}*{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn fingerprint(p: u64, f: &Poly) -> CurveId {
    // FNV-1a over the modulus and coefficients
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in std::iter::once(p).chain(f.coeffs().iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    CurveId(h)
}

/// Checks the model `y² = f(x)` over `F_p` and builds the curve.
pub fn validate_curve(p: u64, f_coeffs: &[u64]) -> Result<HyperellipticCurve> {
    validate_curve_over(Fp::new(p)?, f_coeffs)
}

/// Same checks over an existing field context; lets tests use primes below 11.
pub fn validate_curve_over(fp: Fp, f_coeffs: &[u64]) -> Result<HyperellipticCurve> {
    let p = fp.modulus();
    let f = Poly::new(fp, f_coeffs.to_vec());
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    if deg % 2 == 0 {
        return Err(Error::EvenDegree(deg));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let genus = (deg - 1) / 2;
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let g = poly_gcd(&f, &f.derivative());
    if !g.is_one() {
        return Err(Error::NotSquarefree(g.degree().unwrap_or(0)));
    }
    Ok(HyperellipticCurve {
        fp,
        id: fingerprint(p, &f),
        f,
        genus,
    })
}

impl HyperellipticCurve {
    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn id(&self) -> CurveId {
        self.id
    }

    pub fn zero_divisor(&self) -> Divisor {
        Divisor {
            curve: self.id,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn divisor(&self, terms: impl IntoIterator<Item = (Place, i64)>) -> Divisor {
        let mut d = self.zero_divisor();
        for (p, n) in terms {
            d.add_place(p, n);
        }
        d
    }

    pub fn place_divisor(&self, place: &Place, n: i64) -> Divisor {
        self.divisor([(place.clone(), n)])
    }

    /// The canonical divisor `(2g-2)·∞`, the divisor of `dx/y`.
    pub fn canonical_divisor(&self) -> Divisor {
        self.place_divisor(&Place::Infinity, 2 * self.genus as i64 - 2)
    }

    /// Degree-1 place at the affine point `(x0, y0)`.
    pub fn place_at(&self, x0: FpScalar, y0: FpScalar) -> Result<Place> {
        let fp = self.fp;
        let (x0, y0) = (fp.reduce(x0), fp.reduce(y0));
        if fp.mul(y0, y0) != self.f.eval(x0) {
            return Err(Error::InvalidPlace(format!(
                "({x0}, {y0}) is not on the curve"
            )));
        }
        Ok(Place::Finite {
            u: Poly::linear(fp, x0),
            v: Poly::constant(fp, y0),
        })
    }

    /// Every degree-1 place: the affine points plus the place at infinity.
    pub fn rational_points(&self) -> Vec<Place> {
        let fp = self.fp;
        let mut out = Vec::new();
        for x0 in 0..fp.modulus() {
            let c = self.f.eval(x0);
            if let Some(r) = fp.sqrt(c) {
                out.push(self.place_at(x0, r).expect("root lies on curve"));
                if r != 0 {
                    out.push(self.place_at(x0, fp.neg(r)).expect("root lies on curve"));
                }
            }
        }
        out.push(Place::Infinity);
        out
    }

    /// All places lying over the monic irreducible `u`.
    pub fn places_over(&self, u: &Poly) -> Vec<Place> {
        let fp = self.fp;
        if u.divides(&self.f) {
            return vec![Place::Finite {
                u: u.clone(),
                v: Poly::zero(fp),
            }];
        }
        let k = ResidueField::new(u.clone());
        let c = k.from_poly(&self.f);
        match k.sqrt(&c) {
            Some(r) => {
                let v = r.c0;
                let w = (-&v).rem(u);
                let (a, b) = if v < w { (v, w) } else { (w, v) };
                vec![
                    Place::Finite { u: u.clone(), v: a },
                    Place::Finite { u: u.clone(), v: b },
                ]
            }
            None => vec![Place::Inert { u: u.clone() }],
        }
    }

    /// Rebuilds and checks a place from its serialized form.
    pub fn place_from_repr(&self, repr: &PlaceRepr) -> Result<Place> {
        let fp = self.fp;
        match repr {
            PlaceRepr::Infinite => Ok(Place::Infinity),
            PlaceRepr::Finite { u, v } => {
                let u = Poly::new(fp, u.clone());
                let v = Poly::new(fp, v.clone());
                let place = Place::Finite { u, v };
                self.check_place(&place)?;
                Ok(place)
            }
            PlaceRepr::Inert { u } => {
                let place = Place::Inert {
                    u: Poly::new(fp, u.clone()),
                };
                self.check_place(&place)?;
                Ok(place)
            }
        }
    }

    pub fn divisor_from_terms(&self, terms: &[DivisorTerm]) -> Result<Divisor> {
        let mut d = self.zero_divisor();
        for t in terms {
            d.add_place(self.place_from_repr(&t.place)?, t.coeff);
        }
        Ok(d)
    }

    /// Verifies `v² ≡ f (mod u)` with `u` monic irreducible, or inertness.
    pub fn check_place(&self, place: &Place) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidPlace(format!("{place}: {why}")));
        match place {
            Place::Infinity => Ok(()),
            Place::Finite { u, v } => {
                if !u.is_monic() || !crate::algebra::is_irreducible(u) {
                    return bad("u is not monic irreducible");
                }
                if v.degree_i64() >= u.degree_i64() {
                    return bad("deg v >= deg u");
                }
                if !(&v.mul_mod(v, u) - &self.f.rem(u)).rem(u).is_zero() {
                    return bad("v^2 != f mod u");
                }
                Ok(())
            }
            Place::Inert { u } => {
                if !u.is_monic() || !crate::algebra::is_irreducible(u) {
                    return bad("u is not monic irreducible");
                }
                if !matches!(self.places_over(u).as_slice(), [Place::Inert { .. }]) {
                    return bad("f is a square mod u");
                }
                Ok(())
            }
        }
    }
}
