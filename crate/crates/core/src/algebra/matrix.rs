//! Dense matrices over `F_p` with Gaussian elimination.

use std::fmt;

use super::field::{Fp, FpScalar};

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    fp: Fp,
    rows: usize,
    cols: usize,
    data: Vec<FpScalar>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FpMatrix {}x{} over F_{}",
            self.rows,
            self.cols,
            self.fp.modulus()
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`mat_solve`].
#[derive(Debug, Clone)]
pub struct Solved {
    pub rank: usize,
    pub kernel: Vec<Vec<FpScalar>>,
    pub rref: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(fp: Fp, rows: usize, cols: usize) -> Self {
        FpMatrix {
            fp,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(fp: Fp, n: usize) -> Self {
        let mut m = FpMatrix::zeros(fp, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(fp: Fp, cols: usize, rows: &[Vec<FpScalar>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().map(|&v| fp.reduce(v)));
        }
        FpMatrix {
            fp,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(fp: Fp, rows: usize, cols: &[Vec<FpScalar>]) -> Self {
        let mut m = FpMatrix::zeros(fp, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, fp.reduce(v));
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.fp
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FpScalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FpScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FpScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<FpScalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.fp, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let fp = self.fp;
        let mut out = FpMatrix::zeros(fp, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = fp.add(out.get(i, j), fp.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FpScalar]) -> Vec<FpScalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let fp = self.fp;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| fp.add(acc, fp.mul(a, b)))
            })
            .collect()
    }

    /// Stacks `blocks[i][j]` into one matrix; blocks in a row share a height.
    pub fn block(fp: Fp, blocks: &[Vec<&FpMatrix>]) -> FpMatrix {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let mut out = FpMatrix::zeros(fp, heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                assert_eq!(b.rows, heights[bi]);
                assert_eq!(b.cols, widths[bj]);
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        out.set(r0 + r, c0 + c, b.get(r, c));
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        out
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            fp: self.fp,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        self.transpose().vstack(&other.transpose()).transpose()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let fp = self.fp;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for c in 0..m.cols {
                    m.data.swap(piv * m.cols + c, row * m.cols + c);
                }
            }
            let inv = fp.inv(m.get(row, col));
            for c in col..m.cols {
                let v = fp.mul(m.get(row, c), inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = fp.sub(m.get(r, c), fp.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<FpScalar>> {
        mat_solve(self).kernel
    }

    /// Nonzero rows of the RREF: an echelon basis of the row space.
    pub fn row_space(&self) -> Vec<Vec<FpScalar>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }
}

/// Rank, kernel basis and reduced row echelon form in one elimination.
pub fn mat_solve(m: &FpMatrix) -> Solved {
    let fp = m.fp;
    let (rref, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let kernel = (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; m.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = fp.neg(rref.get(i, free));
            }
            v
        })
        .collect();
    Solved {
        rank: pivots.len(),
        kernel,
        rref,
        pivots,
    }
}

/// A subspace of `F_p^n` held as an RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    fp: Fp,
    ambient: usize,
    basis: Vec<Vec<FpScalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn spanned_by(fp: Fp, ambient: usize, vectors: &[Vec<FpScalar>]) -> Self {
        if vectors.is_empty() {
            return Subspace {
                fp,
                ambient,
                basis: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let (r, pivots) = FpMatrix::from_rows(fp, ambient, vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            fp,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<FpScalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, v: &[FpScalar]) -> Vec<FpScalar> {
        let fp = self.fp;
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(row) {
                *o = fp.sub(*o, fp.mul(c, b));
            }
        }
        out
    }

    pub fn contains(&self, v: &[FpScalar]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[FpScalar]) -> Option<Vec<FpScalar>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Standard basis vectors indexed by the non-pivot columns; they span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let s = mat_solve(&FpMatrix::identity(k(), 6));
        assert_eq!(s.rank, 6);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let s = mat_solve(&FpMatrix::zeros(k(), 5, 5));
        assert_eq!(s.rank, 0);
        assert_eq!(s.kernel.len(), 5);
    }

    #[test]
    fn random_rank_nullity() {
        let fp = k();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..20 {
            // force rank deficiency on half the trials by duplicating rows
            let mut rows: Vec<Vec<u64>> = (0..10)
                .map(|_| (0..14).map(|_| rng.gen_range(0..101)).collect())
                .collect();
            if trial % 2 == 0 {
                rows[9] = rows[0].clone();
                rows[8] = rows[1]
                    .iter()
                    .zip(&rows[2])
                    .map(|(a, b)| (a + b) % 101)
                    .collect();
            }
            let m = FpMatrix::from_rows(fp, 14, &rows);
            let s = mat_solve(&m);
            assert_eq!(s.rank + s.kernel.len(), 14);
            for v in &s.kernel {
                assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
            let nonzero_rows = (0..s.rref.rows())
                .filter(|&r| s.rref.row(r).iter().any(|&x| x != 0))
                .count();
            assert_eq!(nonzero_rows, s.rank);
            if trial % 2 == 0 {
                assert!(s.rank <= 8);
            }
        }
    }

    #[test]
    fn subspace_membership() {
        let fp = k();
        let s = Subspace::spanned_by(fp, 3, &[vec![1, 2, 3], vec![2, 4, 7]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[3, 6, 10]));
        assert!(!s.contains(&[0, 1, 0]));
        assert_eq!(s.complement_indices(), vec![1]);
    }
}
