//! Exact arithmetic substrate: rationals, weighted-graded polynomials and
//! dense rational matrices.

mod matrix;
mod polynomial;
mod rational;

pub use matrix::{EchelonBasis, ExactMatrix, SparseRow};
pub use polynomial::{monomials_of_degree, Monomial, Polynomial};
pub use rational::Rational;
