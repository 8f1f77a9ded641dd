//! Seeded search for a divisor `D` of degree `g+1` with `h⁰(D) = 2`,
//! `h¹(D) = 0` and no base points.
//!
//! Candidates are sums of `g+1` distinct rational places. Try `i` draws from
//! its own ChaCha stream `(seed, i)`, so batches can run in parallel while the
//! first success in try order always wins.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{Divisor, DivisorTerm, HyperellipticCurve, Place};
use crate::error::{Error, Result};
use crate::function_field::{ElementRepr, FunctionElement};
use crate::riemann_roch::{h1, is_base_point_free, rr_space};

pub const DEFAULT_MAX_TRIES: usize = 100;
const BATCH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorCertificate {
    pub divisor: Divisor,
    pub h0: usize,
    pub h1: usize,
    pub base_point_free: bool,
    pub alpha: FunctionElement,
    pub beta: FunctionElement,
    /// `h¹(D - P) = 0` was checked at every rational place `P`.
    pub strong: bool,
    pub tries: usize,
    pub seed: u64,
}

/// Serialized form of a [`DivisorCertificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub divisor: Vec<DivisorTerm>,
    pub h0: usize,
    pub h1: usize,
    pub base_point_free: bool,
    pub alpha: ElementRepr,
    pub beta: ElementRepr,
    pub strong: bool,
    pub tries: usize,
    pub seed: u64,
}

impl DivisorCertificate {
    pub fn record(&self) -> CertificateRecord {
        CertificateRecord {
            divisor: self.divisor.to_terms(),
            h0: self.h0,
            h1: self.h1,
            base_point_free: self.base_point_free,
            alpha: self.alpha.repr(),
            beta: self.beta.repr(),
            strong: self.strong,
            tries: self.tries,
            seed: self.seed,
        }
    }
}

/// Outcome of checking one candidate.
enum Verdict {
    Good(Box<DivisorCertificate>),
    Failed(&'static str),
}

fn evaluate(curve: &HyperellipticCurve, divisor: &Divisor, strong: bool) -> Result<Verdict> {
    let g = curve.genus() as i64;
    if divisor.degree() != g + 1 {
        return Ok(Verdict::Failed("degree"));
    }
    let space = rr_space(curve, divisor)?;
    if space.h0 != 2 {
        return Ok(Verdict::Failed("h0"));
    }
    if space.h1 != 0 {
        return Ok(Verdict::Failed("h1"));
    }
    if !is_base_point_free(curve, &space)? {
        return Ok(Verdict::Failed("base_point_free"));
    }
    if strong {
        for p in curve.rational_points() {
            let lowered = divisor.sub(&curve.place_divisor(&p, 1))?;
            if h1(curve, &lowered)? != 0 {
                return Ok(Verdict::Failed("strong"));
            }
        }
    }
    Ok(Verdict::Good(Box::new(DivisorCertificate {
        divisor: divisor.clone(),
        h0: space.h0,
        h1: space.h1,
        base_point_free: true,
        alpha: space.basis[0].clone(),
        beta: space.basis[1].clone(),
        strong,
        tries: 0,
        seed: 0,
    })))
}

/// The candidate examined by try `index`.
pub fn candidate(curve: &HyperellipticCurve, pool: &[Place], seed: u64, index: usize) -> Divisor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let picks = sample(&mut rng, pool.len(), curve.genus() + 1);
    curve.divisor(picks.into_iter().map(|i| (pool[i].clone(), 1)))
}

pub fn find_good_divisor(
    curve: &HyperellipticCurve,
    seed: u64,
    max_tries: usize,
) -> Result<DivisorCertificate> {
    search(curve, seed, max_tries, false)
}

/// Like [`find_good_divisor`], optionally also requiring the strong condition.
pub fn search(
    curve: &HyperellipticCurve,
    seed: u64,
    max_tries: usize,
    strong: bool,
) -> Result<DivisorCertificate> {
    let pool = curve.rational_points();
    let needed = curve.genus() + 1;
    if pool.len() < needed {
        return Err(Error::TooFewPoints {
            needed,
            available: pool.len(),
        });
    }
    let mut start = 0;
    while start < max_tries {
        let end = (start + BATCH).min(max_tries);
        let outcomes: Vec<Result<Verdict>> = (start..end)
            .into_par_iter()
            .map(|i| evaluate(curve, &candidate(curve, &pool, seed, i), strong))
            .collect();
        for (i, outcome) in (start..end).zip(outcomes) {
            if let Verdict::Good(mut cert) = outcome? {
                cert.tries = i + 1;
                cert.seed = seed;
                return Ok(*cert);
            }
        }
        start = end;
    }
    Err(Error::ExhaustedTries(max_tries))
}

/// Recomputes every condition from scratch; `tries` and `seed` are left at 0.
pub fn verify_certificate(
    curve: &HyperellipticCurve,
    divisor: &Divisor,
    strong: bool,
) -> Result<DivisorCertificate> {
    if divisor.curve_id() != curve.id() {
        return Err(Error::CurveMismatch);
    }
    match evaluate(curve, divisor, strong)? {
        Verdict::Good(cert) => Ok(*cert),
        Verdict::Failed(what) => Err(Error::ConditionFailed(what.to_string())),
    }
}
