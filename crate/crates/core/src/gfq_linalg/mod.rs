//! Exact linear algebra over GF(p), p <= 251, and GF(4).

pub mod field;
pub mod matrix;
pub mod poly;

pub use field::Field;
pub use matrix::{fitting_split, solve_linear, vec_from_index, vec_index, EchelonBasis, LinearSolution, Matrix};
pub use poly::{factor_univariate, Factorization, Poly};
