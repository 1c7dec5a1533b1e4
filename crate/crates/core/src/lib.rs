//! Exact computations with surface group representations: Dehn twists,
//! mapping class group orbits, finite covers, quasi-unipotence and finite
//! image certificates.
//!
//! All arithmetic is exact. Algorithms are generic over [`Scalar`]; the
//! aliases below fix the two fields used in practice.

pub mod augmentation;
pub mod covers;
pub mod instances;
pub mod json;
pub mod linear;
pub mod mcg;
pub mod rank1;
pub mod rep;
pub mod surface;
pub mod word;

pub use linear::{Cyc, Matrix, Rational, Scalar};
pub use rep::Representation;
pub use surface::SurfaceSig;
pub use word::{Pi1Endo, Word};

/// Matrices over the rationals.
pub type QMatrix = Matrix<Rational>;
/// Matrices over cyclotomic fields.
pub type CycMatrix = Matrix<Cyc>;
/// Representations with rational images.
pub type QRep = Representation<Rational>;
/// Representations with cyclotomic images.
pub type CycRep = Representation<Cyc>;
