//! Exact dense linear algebra over prime fields and the rationals.

mod matrix;
mod scalar;

pub use matrix::{Echelon, Matrix, Solution};
pub use scalar::{is_prime, Field, Fp, Gf2, Gf3, Gf5, Gf7, Rational, Scalar};
