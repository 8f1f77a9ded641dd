//! Truncated section ring `R = ⊕ L(2nD)`, module `M = ⊕ L((2n+1)D)` and
//! canonical module `K = ⊕ L(K_C + 2nD)`, with exact multiplication maps
//! between their pieces.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{FpMatrix, FpScalar, Poly, Subspace};
use crate::curve::{Divisor, HyperellipticCurve};
use crate::divisor_search::DivisorCertificate;
use crate::error::{Error, Result};
use crate::function_field::FunctionElement;
use crate::riemann_roch::{rr_space, RRSpace};

pub const DEFAULT_DEGREE_BOUND: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PieceKind {
    R,
    M,
    K,
}

/// A function `(a + b·y)/d` kept unreduced, so products never need a gcd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    pub a: Poly,
    pub b: Poly,
    pub d: Poly,
}

impl Fraction {
    pub fn mul(&self, other: &Fraction, f: &Poly) -> Fraction {
        Fraction {
            a: &(&self.a * &other.a) + &(&(&self.b * &other.b) * f),
            b: &(&self.a * &other.b) + &(&self.b * &other.a),
            d: &self.d * &other.d,
        }
    }

    pub fn of(e: &FunctionElement) -> Fraction {
        Fraction {
            a: e.a().clone(),
            b: e.b().clone(),
            d: e.d().clone(),
        }
    }

    pub fn to_element(&self, curve: &HyperellipticCurve) -> FunctionElement {
        curve.element(self.a.clone(), self.b.clone(), self.d.clone())
    }
}

#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub twist: usize,
    pub kind: PieceKind,
    pub divisor: Divisor,
    pub space: RRSpace,
    fractions: Vec<Fraction>,
}

impl GradedPiece {
    fn new(
        curve: &HyperellipticCurve,
        kind: PieceKind,
        twist: usize,
        divisor: Divisor,
    ) -> Result<Self> {
        let space = rr_space(curve, &divisor)?;
        let fractions = (0..space.dim())
            .map(|i| {
                let (a, b) = space.numerators(i);
                Fraction {
                    a,
                    b,
                    d: space.ansatz.denominator.clone(),
                }
            })
            .collect();
        Ok(GradedPiece {
            twist,
            kind,
            divisor,
            space,
            fractions,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[FunctionElement] {
        &self.space.basis
    }

    pub fn fractions(&self) -> &[Fraction] {
        &self.fractions
    }

    /// Coordinates in this piece; a grading violation if the function is not a section.
    pub fn coords(&self, e: &Fraction) -> Result<Vec<FpScalar>> {
        self.space.coordinates(&e.a, &e.b, &e.d).map_err(|_| {
            Error::GradingViolation(format!(
                "{:?}_{} does not contain product",
                self.kind, self.twist
            ))
        })
    }

    /// The section with the given coordinates.
    pub fn element(&self, coords: &[FpScalar]) -> Fraction {
        let (a, b) = self.space.ansatz.split(&self.space.combine(coords));
        Fraction {
            a,
            b,
            d: self.space.ansatz.denominator.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GradedModel {
    pub curve: HyperellipticCurve,
    pub divisor: Divisor,
    pub bound: usize,
    pub r: Vec<GradedPiece>,
    pub m: Vec<GradedPiece>,
    pub k: Vec<GradedPiece>,
    pub alpha: FunctionElement,
    pub beta: FunctionElement,
}

pub fn build_graded_model(
    curve: &HyperellipticCurve,
    cert: &DivisorCertificate,
    bound: usize,
) -> Result<GradedModel> {
    if bound < 3 {
        return Err(Error::Config(format!(
            "degree bound must be at least 3, got {bound}"
        )));
    }
    let d = &cert.divisor;
    let canonical = curve.canonical_divisor();
    let jobs: Vec<(PieceKind, usize)> = [PieceKind::R, PieceKind::M, PieceKind::K]
        .into_iter()
        .flat_map(|k| (0..=bound).map(move |n| (k, n)))
        .collect();
    let pieces: Vec<GradedPiece> = jobs
        .par_iter()
        .map(|&(kind, n)| {
            let div = match kind {
                PieceKind::R => d.scale(2 * n as i64),
                PieceKind::M => d.scale(2 * n as i64 + 1),
                PieceKind::K => canonical.add(&d.scale(2 * n as i64))?,
            };
            GradedPiece::new(curve, kind, n, div)
        })
        .collect::<Result<_>>()?;
    let mut it = pieces.into_iter();
    let r: Vec<_> = it.by_ref().take(bound + 1).collect();
    let m: Vec<_> = it.by_ref().take(bound + 1).collect();
    let k: Vec<_> = it.collect();
    if r[0].dim() != 1 || m[0].basis() != [cert.alpha.clone(), cert.beta.clone()] {
        return Err(Error::GradingViolation(
            "degree-zero pieces disagree with the certificate".into(),
        ));
    }
    Ok(GradedModel {
        curve: curve.clone(),
        divisor: d.clone(),
        bound,
        r,
        m,
        k,
        alpha: cert.alpha.clone(),
        beta: cert.beta.clone(),
    })
}

impl GradedModel {
    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    pub fn field(&self) -> crate::algebra::Fp {
        self.curve.field()
    }

    pub fn piece(&self, kind: PieceKind, n: usize) -> &GradedPiece {
        match kind {
            PieceKind::R => &self.r[n],
            PieceKind::M => &self.m[n],
            PieceKind::K => &self.k[n],
        }
    }

    pub fn dims(&self, kind: PieceKind) -> Vec<usize> {
        (0..=self.bound)
            .map(|n| self.piece(kind, n).dim())
            .collect()
    }

    pub fn mul(&self, x: &Fraction, y: &Fraction) -> Fraction {
        x.mul(y, self.curve.f())
    }

    pub fn alpha_frac(&self) -> Fraction {
        self.m[0].fractions[0].clone()
    }

    pub fn beta_frac(&self) -> Fraction {
        self.m[0].fractions[1].clone()
    }

    /// Matrix of `s ↦ factor·s` from `src` to `dst`, one column per source basis vector.
    pub fn mul_map(
        &self,
        factor: &Fraction,
        src: &GradedPiece,
        dst: &GradedPiece,
    ) -> Result<FpMatrix> {
        let cols = src
            .fractions
            .iter()
            .map(|s| dst.coords(&self.mul(factor, s)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpMatrix::from_cols(self.field(), dst.dim(), &cols))
    }

    /// Span in `dst` of all products `s·t` with `s ∈ left`, `t ∈ right`.
    pub fn product_span(
        &self,
        left: &[Fraction],
        right: &GradedPiece,
        dst: &GradedPiece,
    ) -> Result<Subspace> {
        let mut vecs = Vec::with_capacity(left.len() * right.dim());
        for s in left {
            for t in &right.fractions {
                vecs.push(dst.coords(&self.mul(s, t))?);
            }
        }
        Ok(Subspace::spanned_by(self.field(), dst.dim(), &vecs))
    }

    /// `α², αβ, β²` as sections of `R_1`.
    pub fn quadrics(&self) -> [Fraction; 3] {
        let (a, b) = (self.alpha_frac(), self.beta_frac());
        [self.mul(&a, &a), self.mul(&a, &b), self.mul(&b, &b)]
    }

    /// `(r, s) ↦ r·α + s·β` from `src ⊕ src` to `dst`.
    pub fn pair_map(&self, src: &GradedPiece, dst: &GradedPiece) -> Result<FpMatrix> {
        let a = self.mul_map(&self.alpha_frac(), src, dst)?;
        let b = self.mul_map(&self.beta_frac(), src, dst)?;
        Ok(a.hstack(&b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub r_dims: Vec<usize>,
    pub m_dims: Vec<usize>,
    pub k_dims: Vec<usize>,
    /// Coefficients of `(1-t)²·Σ H(R,n)tⁿ` through `t^N`.
    pub numerator: Vec<i64>,
    pub polynomial_degree: usize,
}

pub fn hilbert_check(model: &GradedModel) -> Result<HilbertReport> {
    let g = model.genus() as i64;
    let r_dims = model.dims(PieceKind::R);
    let h: Vec<i64> = r_dims.iter().map(|&d| d as i64).collect();
    for (n, &found) in h.iter().enumerate() {
        let expected = if n == 0 {
            1
        } else {
            1 - g + 2 * n as i64 * (g + 1)
        };
        if found != expected {
            return Err(Error::HilbertMismatch {
                degree: n,
                expected,
                found,
            });
        }
    }
    let at = |n: i64| if n < 0 { 0 } else { h[n as usize] };
    let numerator: Vec<i64> = (0..h.len() as i64)
        .map(|n| at(n) - 2 * at(n - 1) + at(n - 2))
        .collect();
    for (n, &c) in numerator.iter().enumerate() {
        let expected = match n {
            0 => 1,
            1 => g + 1,
            2 => g,
            _ => 0,
        };
        if c != expected {
            return Err(Error::HilbertMismatch {
                degree: n,
                expected,
                found: c,
            });
        }
    }
    // constant nonzero first differences from n = 1 on: a linear Hilbert polynomial
    let diffs: Vec<i64> = h.windows(2).skip(1).map(|w| w[1] - w[0]).collect();
    let polynomial_degree = if diffs.iter().all(|&d| d == diffs[0] && d != 0) {
        1
    } else {
        0
    };
    if polynomial_degree != 1 {
        return Err(Error::HilbertMismatch {
            degree: 1,
            expected: 1,
            found: polynomial_degree as i64,
        });
    }
    Ok(HilbertReport {
        r_dims,
        m_dims: model.dims(PieceKind::M),
        k_dims: model.dims(PieceKind::K),
        numerator,
        polynomial_degree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardGradedReport {
    /// `rank(R_1·R_n)` for `n = 0..N-1`, equal to `dim R_{n+1}`.
    pub linear_products: Vec<usize>,
    /// `rank((α², αβ, β²)·R_n)` for `n = 1..N-1`, equal to `dim R_{n+1}`.
    pub quadric_products: Vec<usize>,
    /// Dimension of the span of `α², αβ, β²` inside `R_1`.
    pub quadric_span_in_degree_one: usize,
}

pub fn check_standard_graded(model: &GradedModel) -> Result<StandardGradedReport> {
    let n_max = model.bound;
    let r1 = model.r[1].fractions.clone();
    let mut linear_products = Vec::new();
    for n in 0..n_max {
        let span = model.product_span(&r1, &model.r[n], &model.r[n + 1])?;
        if span.dim() != model.r[n + 1].dim() {
            return Err(Error::NotStandardGraded(format!(
                "R_1·R_{n} has dimension {} < {}",
                span.dim(),
                model.r[n + 1].dim()
            )));
        }
        linear_products.push(span.dim());
    }
    let quads = model.quadrics();
    let mut quadric_products = Vec::new();
    for n in 1..n_max {
        let span = model.product_span(&quads, &model.r[n], &model.r[n + 1])?;
        if span.dim() != model.r[n + 1].dim() {
            return Err(Error::NotStandardGraded(format!(
                "quadric products into R_{} have dimension {} < {}",
                n + 1,
                span.dim(),
                model.r[n + 1].dim()
            )));
        }
        quadric_products.push(span.dim());
    }
    let q1: Vec<_> = quads
        .iter()
        .map(|q| model.r[1].coords(q))
        .collect::<Result<_>>()?;
    Ok(StandardGradedReport {
        linear_products,
        quadric_products,
        quadric_span_in_degree_one: Subspace::spanned_by(model.field(), model.r[1].dim(), &q1)
            .dim(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRecord {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub expected_kernel_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    /// `R_n² → M_n` for `n = 0..N-1`.
    pub ring_to_module: Vec<SequenceRecord>,
    /// `M_m² → R_{m+1}` for `m = 1..N-1`.
    pub module_to_ring: Vec<SequenceRecord>,
}

fn sequence_record(
    model: &GradedModel,
    src: &GradedPiece,
    dst: &GradedPiece,
    expected_kernel_dim: usize,
    label: &str,
) -> Result<SequenceRecord> {
    let map = model.pair_map(src, dst)?;
    let rank = map.rank();
    let record = SequenceRecord {
        degree: src.twist,
        source_dim: map.cols(),
        target_dim: dst.dim(),
        rank,
        kernel_dim: map.cols() - rank,
        expected_kernel_dim,
    };
    if rank != dst.dim() {
        return Err(Error::SequenceFailure(format!("{label}: not surjective")));
    }
    if record.kernel_dim != expected_kernel_dim {
        return Err(Error::SequenceFailure(format!(
            "{label}: kernel dimension {} != {expected_kernel_dim}",
            record.kernel_dim
        )));
    }
    Ok(record)
}

pub fn check_exact_sequences(model: &GradedModel) -> Result<SequenceReport> {
    let n_max = model.bound;
    let mut ring_to_module = Vec::new();
    for n in 0..n_max {
        let expected = if n == 0 { 0 } else { model.m[n - 1].dim() };
        ring_to_module.push(sequence_record(
            model,
            &model.r[n],
            &model.m[n],
            expected,
            &format!("n={n}"),
        )?);
    }
    let mut module_to_ring = Vec::new();
    for m in 1..n_max {
        let expected = model.r[m].dim();
        module_to_ring.push(sequence_record(
            model,
            &model.m[m],
            &model.r[m + 1],
            expected,
            &format!("m={m}"),
        )?);
    }
    Ok(SequenceReport {
        ring_to_module,
        module_to_ring,
    })
}
