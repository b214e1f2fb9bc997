//! Exact arithmetic: integer and rational matrices, integer vectors and
//! Laurent polynomials. Nothing in this crate touches floating point.

pub mod matrix;
pub mod poly;
pub mod vector;

pub use matrix::{IntMatrix, RationalMatrix};
pub use poly::LaurentPolynomial;
