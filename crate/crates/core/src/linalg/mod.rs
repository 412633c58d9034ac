//! Exact field arithmetic and the linear-algebra kernel everything else sits on.

pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{FieldError, FieldSpec, Scalar, MAX_MODULUS};
pub use matrix::{Matrix, Rref};
pub use poly::{minimal_polynomial, Polynomial};
