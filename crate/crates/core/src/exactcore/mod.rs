//! Exact arithmetic: rationals, polynomials in `t`, rational functions and matrices.

pub mod matrix;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod ring;

pub use matrix::{kernel_over_fraction_field, primitive_vector, rank_over_fraction_field, Mat, PolyMatrix};
pub use poly::{poly_mul, poly_sqrt, BoundedPoly, Poly};
pub use ratfn::RatFn;
pub use rational::{fmt_rational, parse_rational, q, qi, Rational};
pub use ring::{Field, Quad, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree {degree} exceeds bound {bound}")]
    BoundExceeded { degree: i64, bound: i64 },
    #[error("entry ({row},{col}) has degree {degree} above bound {bound}")]
    EntryBound { row: usize, col: usize, degree: i64, bound: i64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
