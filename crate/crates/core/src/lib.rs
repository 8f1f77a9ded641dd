//! Exact certification of totally reflexive modules built from hyperelliptic
//! curves.
//!
//! Starting from a curve `C: y² = f(x)` of genus `g ≥ 2` over `F_p`, the crate
//! finds a divisor `D` of degree `g+1` with `h⁰(D) = 2`, `h¹(D) = 0` and no
//! base points, then builds the graded ring `R = ⊕ H⁰(2nD)`, the module
//! `M = ⊕ H⁰((2n+1)D)` and the canonical module `K = ⊕ H⁰(K_C + 2nD)` up to a
//! degree bound. Every structural claim about them is checked by exact linear
//! algebra: Hilbert function, standard gradedness, the periodic 2×2 resolution
//! of `M` and its dual, Ext vanishing, `Hom(M, R) ≅ M(-1)`, the Cohen–Macaulay
//! type of `R`, and a complete total-reflexivity certificate after cutting
//! down by a system of parameters.
//!
//! The [`pipeline`] module strings the stages together and renders the
//! results as a canonical JSON certificate.

pub mod algebra;
pub mod artinian;
pub mod curve;
pub mod divisor_search;
pub mod error;
pub mod function_field;
pub mod pipeline;
pub mod reflexivity;
pub mod riemann_roch;
pub mod section_ring;

pub use error::{Error, Result};
