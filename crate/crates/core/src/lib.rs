//! Faithful unitriangular matrix representations of finitely generated
//! torsion-free nilpotent groups given by nilpotent presentations.
//!
//! The pipeline runs presentation → collection → action polynomials →
//! closed polynomial basis → generator matrices. Arithmetic is generic over
//! [`scalar::Scalar`]; the aliases below fix exact rationals.

pub mod basis;
pub mod collect;
pub mod error;
pub mod matrep;
pub mod matrix;
pub mod multpoly;
pub mod poly;
pub mod presentation;
pub mod scalar;

pub use error::{Error, Result};
pub use presentation::{ExponentVector, Family, NilpotentPresentation, Word};

pub type Rational = num_rational::BigRational;
pub type QPolynomial = poly::Polynomial<Rational>;
pub type QBasis = basis::PolyBasis<Rational>;
pub type QMatrix = matrix::Mat<Rational>;
pub type QMatrixRep = matrep::MatrixRep<Rational>;
