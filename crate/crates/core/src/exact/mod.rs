//! Exact arithmetic substrate: rationals, vectors, matrices, inner products
//! and multivariate polynomials.

pub mod matrix;
pub mod poly;
pub mod rational;
pub mod space;
pub mod vector;

pub use matrix::{max_minor_abs_sum, rref, RationalMatrix};
pub use poly::{poly_linear_substitute, Monomial, Polynomial};
pub use rational::{fmt_rational, int, parse_rational, rat, to_f64_vec, Rational};
pub use space::AmbientSpace;
pub use vector::RationalVector;
