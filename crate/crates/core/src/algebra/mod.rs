//! Exact arithmetic substrate: `F_p` scalars, univariate polynomials and
//! dense matrices.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod residue;

pub use factor::{is_irreducible, poly_factor, poly_factor_seeded, Factorization};
pub use field::{Fp, FpScalar};
pub use matrix::{mat_solve, FpMatrix, Solved, Subspace};
pub use poly::{ext_gcd, poly_gcd, Poly};
pub use residue::{ResElem, ResidueField};
