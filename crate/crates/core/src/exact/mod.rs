//! Exact arithmetic: rational matrices, integer polynomials, and values in
//! real quadratic fields `a + b√m`.

mod matrix;
mod poly;
mod quadratic;
mod roots;

pub use matrix::{Rational, RationalMatrix};
pub use poly::{char_poly, char_poly_rational, eval_at_matrix, IntPolynomial};
pub use quadratic::{square_free_part, QuadraticValue};
pub use roots::{eval_at_quadratic, roots_degree_le2, Root, RootFactorization};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("cannot parse {0:?} as an exact value")]
    Parse(String),
}
