//! Reduction modulo a linear system of parameters `x, y ∈ R_1`.
//!
//! The quotient `R̄ = R/(x, y)` is a finite graded algebra, and the reduced
//! matrix `Ā` gives a 1-periodic complex `R̄² → R̄² → ⋯`. Exactness of `Ā` and
//! of its transpose at a single spot is then a complete total-reflexivity
//! certificate for `M̄ = coker Ā`, with no degree window.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Fp, FpMatrix, FpScalar, Subspace};
use crate::error::{Error, Result};
use crate::reflexivity::SyzygyMatrix;
use crate::section_ring::{GradedModel, GradedPiece};

/// A finite-dimensional graded commutative algebra given by a structure table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedArtinianAlgebra {
    fp: Fp,
    /// Degree of each basis vector, nondecreasing; basis vector 0 is the unit.
    degrees: Vec<usize>,
    /// `table[i][j]` = coordinates of `e_i · e_j`.
    table: Vec<Vec<Vec<FpScalar>>>,
}

impl GradedArtinianAlgebra {
    pub fn new(fp: Fp, degrees: Vec<usize>, table: Vec<Vec<Vec<FpScalar>>>) -> Self {
        GradedArtinianAlgebra { fp, degrees, table }
    }

    /// `k[s_1..s_v]/(s_1..s_v)²`.
    pub fn square_zero_ideal(fp: Fp, vars: usize) -> Self {
        let n = vars + 1;
        let unit = |i: usize| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i, j) {
                        (0, j) => unit(j),
                        (i, 0) => unit(i),
                        _ => vec![0; n],
                    })
                    .collect()
            })
            .collect();
        let degrees = std::iter::once(0)
            .chain(std::iter::repeat_n(1, vars))
            .collect();
        GradedArtinianAlgebra::new(fp, degrees, table)
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn hilbert(&self) -> Vec<usize> {
        let top = self.degrees.iter().copied().max().unwrap_or(0);
        let mut h = vec![0; top + 1];
        for &d in &self.degrees {
            h[d] += 1;
        }
        h
    }

    fn indices_of_degree(&self, d: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn mul(&self, x: &[FpScalar], y: &[FpScalar]) -> Vec<FpScalar> {
        let fp = self.fp;
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, &b)| b != 0) {
                let ab = fp.mul(a, b);
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = fp.add(*o, fp.mul(ab, t));
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `x`.
    pub fn mult_matrix(&self, x: &[FpScalar]) -> FpMatrix {
        let n = self.dim();
        let cols: Vec<_> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = 1;
                self.mul(x, &e)
            })
            .collect();
        FpMatrix::from_cols(self.fp, n, &cols)
    }

    /// `{v : v·a = 0 for all a of degree one}`.
    pub fn socle(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for i in self.indices_of_degree(1) {
            let mut e = vec![0; n];
            e[i] = 1;
            let m = self.mult_matrix(&e);
            rows.extend((0..n).map(|r| m.row(r).to_vec()));
        }
        let kernel = if rows.is_empty() {
            FpMatrix::identity(self.fp, n).row_space()
        } else {
            FpMatrix::from_rows(self.fp, n, &rows).kernel()
        };
        Subspace::spanned_by(self.fp, n, &kernel)
    }

    /// Span of the basis vectors of degree `d`.
    pub fn degree_part(&self, d: usize) -> Subspace {
        let n = self.dim();
        let vecs: Vec<_> = self
            .indices_of_degree(d)
            .into_iter()
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        Subspace::spanned_by(self.fp, n, &vecs)
    }

    /// Smallest `k` with `m^k = 0`, `m` the ideal of positive degree.
    pub fn loewy_length(&self) -> usize {
        let n = self.dim();
        let m: Vec<Vec<FpScalar>> = (0..n)
            .filter(|&i| self.degrees[i] > 0)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        let mut power = Subspace::spanned_by(self.fp, n, &m);
        let mut k = 1;
        while power.dim() > 0 {
            let prods: Vec<_> = power
                .basis()
                .iter()
                .flat_map(|p| m.iter().map(move |q| (p, q)))
                .map(|(p, q)| self.mul(p, q))
                .collect();
            power = Subspace::spanned_by(self.fp, n, &prods);
            k += 1;
        }
        k
    }

    /// `[[a, b], [c, d]]` acting on the free module of rank two, by blocks.
    pub fn matrix_on_pairs(&self, entries: &[[Vec<FpScalar>; 2]; 2]) -> FpMatrix {
        let m = |i: usize, j: usize| self.mult_matrix(&entries[i][j]);
        let (a, b, c, d) = (m(0, 0), m(0, 1), m(1, 0), m(1, 1));
        FpMatrix::block(self.fp, &[vec![&a, &b], vec![&c, &d]])
    }
}

/// Rank, kernel dimension and `B² = 0` for one endomorphism `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicExactness {
    pub rank: usize,
    pub kernel_dim: usize,
    pub square_zero: bool,
    pub exact: bool,
}

/// `im B = ker B`, checked as `B² = 0` plus `rank B = dim ker B`.
pub fn periodic_exactness(b: &FpMatrix) -> PeriodicExactness {
    let rank = b.rank();
    let kernel_dim = b.cols() - rank;
    let square_zero = b.mul(b).is_zero();
    PeriodicExactness {
        rank,
        kernel_dim,
        square_zero,
        exact: square_zero && rank == kernel_dim,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sop {
    pub x: Vec<FpScalar>,
    pub y: Vec<FpScalar>,
    pub tries: usize,
    pub seed: u64,
}

/// `I_n = x·P_{n-1} + y·P_{n-1}` inside `P_n`.
fn ideal_part(
    model: &GradedModel,
    pieces: &[GradedPiece],
    x: &[FpScalar],
    y: &[FpScalar],
    n: usize,
) -> Result<Subspace> {
    if n == 0 {
        return Ok(Subspace::spanned_by(model.field(), pieces[0].dim(), &[]));
    }
    let xs = model.r[1].element(x);
    let ys = model.r[1].element(y);
    model.product_span(&[xs, ys], &pieces[n - 1], &pieces[n])
}

/// `dim P_n / (x, y)P_{n-1}` for `n = 0..=N`.
fn quotient_dims_of(
    model: &GradedModel,
    pieces: &[GradedPiece],
    x: &[FpScalar],
    y: &[FpScalar],
) -> Result<Vec<usize>> {
    (0..=model.bound)
        .map(|n| Ok(pieces[n].dim() - ideal_part(model, pieces, x, y, n)?.dim()))
        .collect()
}

pub fn quotient_dims(model: &GradedModel, x: &[FpScalar], y: &[FpScalar]) -> Result<Vec<usize>> {
    quotient_dims_of(model, &model.r, x, y)
}

/// `(1, g+1, g, 0, …, 0)` through degree `N`.
pub fn expected_quotient_dims(g: usize, bound: usize) -> Vec<usize> {
    (0..=bound)
        .map(|n| match n {
            0 => 1,
            1 => g + 1,
            2 => g,
            _ => 0,
        })
        .collect()
}

pub fn find_sop(model: &GradedModel, seed: u64, max_tries: usize) -> Result<Sop> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fp = model.field();
    let n = model.r[1].dim();
    let expected = expected_quotient_dims(model.genus(), model.bound);
    for t in 0..max_tries {
        let x: Vec<_> = (0..n).map(|_| fp.random(&mut rng)).collect();
        let y: Vec<_> = (0..n).map(|_| fp.random(&mut rng)).collect();
        if quotient_dims(model, &x, &y)? == expected {
            return Ok(Sop {
                x,
                y,
                tries: t + 1,
                seed,
            });
        }
    }
    Err(Error::ExhaustedTries(max_tries))
}

#[derive(Debug, Clone)]
pub struct ArtinianModel {
    pub sop: Sop,
    pub genus: usize,
    pub algebra: GradedArtinianAlgebra,
    pub rbar_dims: Vec<usize>,
    pub mbar_dims: Vec<usize>,
    /// Entries of `Ā` in the basis of the algebra.
    pub abar: [[Vec<FpScalar>; 2]; 2],
}

/// Quotient basis of `P_n/I_n` and the projection onto it.
struct Quotient {
    ideal: Subspace,
    keep: Vec<usize>,
}

impl Quotient {
    fn project(&self, v: &[FpScalar]) -> Vec<FpScalar> {
        let r = self.ideal.reduce(v);
        self.keep.iter().map(|&i| r[i]).collect()
    }
}

pub fn build_artinian(model: &GradedModel, sop: &Sop, a: &SyzygyMatrix) -> Result<ArtinianModel> {
    let fp = model.field();
    let g = model.genus();
    let rbar_dims = quotient_dims(model, &sop.x, &sop.y)?;
    if rbar_dims != expected_quotient_dims(g, model.bound) {
        return Err(Error::HilbertMismatch {
            degree: 0,
            expected: (2 * g + 2) as i64,
            found: rbar_dims.iter().sum::<usize>() as i64,
        });
    }
    // the quotient vanishes from degree 3 on, so products only need degrees ≤ 4
    let top = 2;
    let quotients: Vec<Quotient> = (0..=2 * top)
        .map(|n| {
            let ideal = ideal_part(model, &model.r, &sop.x, &sop.y, n)?;
            let keep = ideal.complement_indices();
            Ok(Quotient { ideal, keep })
        })
        .collect::<Result<_>>()?;
    let mut degrees = Vec::new();
    let mut lifts = Vec::new();
    let mut offsets = Vec::new();
    for (n, q) in quotients.iter().enumerate().take(top + 1) {
        offsets.push(degrees.len());
        for &i in &q.keep {
            degrees.push(n);
            let mut e = vec![0; model.r[n].dim()];
            e[i] = 1;
            lifts.push(model.r[n].element(&e));
        }
    }
    let total = degrees.len();
    let mut table = vec![vec![vec![0; total]; total]; total];
    for i in 0..total {
        for j in 0..total {
            let deg = degrees[i] + degrees[j];
            if deg > top {
                // must vanish in the quotient; checked rather than assumed
                let prod = model.r[deg].coords(&model.mul(&lifts[i], &lifts[j]))?;
                if quotients[deg].project(&prod).iter().any(|&c| c != 0) {
                    return Err(Error::ArtinianExactnessFailure(format!(
                        "nonzero product in degree {deg}"
                    )));
                }
                continue;
            }
            let prod = model.r[deg].coords(&model.mul(&lifts[i], &lifts[j]))?;
            for (k, c) in quotients[deg].project(&prod).into_iter().enumerate() {
                table[i][j][offsets[deg] + k] = c;
            }
        }
    }
    let algebra = GradedArtinianAlgebra::new(fp, degrees, table);
    let embed = |coords: &[FpScalar]| {
        let mut v = vec![0; total];
        for (k, c) in quotients[1].project(coords).into_iter().enumerate() {
            v[offsets[1] + k] = c;
        }
        v
    };
    let abar = [
        [embed(&a.coords[0][0]), embed(&a.coords[0][1])],
        [embed(&a.coords[1][0]), embed(&a.coords[1][1])],
    ];
    let mbar_dims = quotient_dims_of(model, &model.m, &sop.x, &sop.y)?;
    Ok(ArtinianModel {
        sop: sop.clone(),
        genus: g,
        algebra,
        rbar_dims,
        mbar_dims,
        abar,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtinianCertificate {
    pub rbar_total: usize,
    pub mbar_total: usize,
    /// `dim coker Ā`, which must agree with `mbar_total`.
    pub cokernel_dim: usize,
    pub abar: PeriodicExactness,
    pub abar_transpose: PeriodicExactness,
    pub nonfree: bool,
    pub complete: bool,
}

/// `im Ā = ker Ā`, `im Āᵀ = ker Āᵀ`, and `M̄` not free.
pub fn verify_total_reflexivity_artinian(am: &ArtinianModel) -> Result<ArtinianCertificate> {
    let alg = &am.algebra;
    let b = alg.matrix_on_pairs(&am.abar);
    let mut t = am.abar.clone();
    let [top, bottom] = &mut t;
    std::mem::swap(&mut top[1], &mut bottom[0]);
    let bt = alg.matrix_on_pairs(&t);
    let abar = periodic_exactness(&b);
    let abar_transpose = periodic_exactness(&bt);
    let rbar_total = alg.dim();
    let mbar_total: usize = am.mbar_dims.iter().sum();
    let cokernel_dim = 2 * rbar_total - abar.rank;
    if !abar.exact {
        return Err(Error::ArtinianExactnessFailure(format!(
            "rank {} vs kernel {}",
            abar.rank, abar.kernel_dim
        )));
    }
    if !abar_transpose.exact {
        return Err(Error::ArtinianExactnessFailure(format!(
            "transpose rank {} vs kernel {}",
            abar_transpose.rank, abar_transpose.kernel_dim
        )));
    }
    if cokernel_dim != mbar_total {
        return Err(Error::ArtinianExactnessFailure(format!(
            "cokernel {cokernel_dim} vs direct quotient {mbar_total}"
        )));
    }
    let nonfree = am.mbar_dims[0] == 2 && mbar_total != 2 * rbar_total;
    if !nonfree {
        return Err(Error::FreenessDetected);
    }
    Ok(ArtinianCertificate {
        rbar_total,
        mbar_total,
        cokernel_dim,
        abar,
        abar_transpose,
        nonfree,
        complete: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleReport {
    pub socle_dim: usize,
    pub loewy_length: usize,
    pub socle_is_top_degree: bool,
    pub type_of_quotient: usize,
}

pub fn socle_and_type(am: &ArtinianModel) -> Result<SocleReport> {
    let alg = &am.algebra;
    let socle = alg.socle();
    let top = alg.degree_part(2);
    let socle_is_top_degree = socle.dim() == top.dim() && socle.contains_subspace(&top);
    if !socle_is_top_degree || socle.dim() != am.genus {
        return Err(Error::SocleMismatch(format!(
            "socle dimension {} with degree-two part {}",
            socle.dim(),
            top.dim()
        )));
    }
    let loewy_length = alg.loewy_length();
    if loewy_length != 3 {
        return Err(Error::SocleMismatch(format!("Loewy length {loewy_length}")));
    }
    Ok(SocleReport {
        socle_dim: socle.dim(),
        loewy_length,
        socle_is_top_degree,
        type_of_quotient: socle.dim(),
    })
}
