//! Exact linear algebra over rationals and cyclotomic fields.

pub mod cyclotomic;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod unipotent;

pub use cyclotomic::{Cyc, RationalNorm};
pub use matrix::{EchelonBasis, LinearError, Matrix};
pub use poly::{rational_roots, Poly};
pub use scalar::{Rational, Scalar};
pub use unipotent::{is_quasi_unipotent, matrix_order, QuasiUnipotence};
