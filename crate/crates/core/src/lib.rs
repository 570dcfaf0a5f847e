//! Exact computation of cohomological polynomials of character varieties.
//!
//! The pipeline: exact rational-function arithmetic in two formal variables
//! (z, w), symmetric functions in several alphabets, modified Macdonald
//! polynomials, the Hausel-Letellier-Villegas kernel, and finally the
//! character-variety front end (Poincaré, twisted Poincaré, E- and
//! conjectural mixed-Hodge polynomials) cross-validated by brute-force
//! point counting over small prime fields.
//!
//! The symmetric-function layer is generic over its exact coefficient field
//! through [`coeff::Coeff`]; the two scalars in use are plain rationals and
//! the rational-function field Q(z, w). No floating point is used anywhere.

pub mod error;
pub mod rat;
pub mod unipoly;
pub mod zwpoly;
pub mod field;
pub mod partition;
pub mod coeff;
pub mod symfunc;
pub mod multisym;
pub mod macdonald;
pub mod kernel;
pub mod charvar;
pub mod fq;
pub mod jsonio;
pub mod cache;

pub use error::{Error, Result};
pub use field::FieldElem;
pub use partition::{Cell, MultiPartition, Partition, TypeOmega};
pub use rat::BigRat;
pub use unipoly::{UniPoly, UniRat};
pub use zwpoly::ZWPoly;

/// Symmetric functions over plain rationals (base change, Kostka numbers,
/// twisted Littlewood-Richardson work).
pub type SymFuncQ = symfunc::SymFunc1<BigRat>;

/// Symmetric functions over the rational-function field Q(z, w) (Macdonald
/// polynomials, kernel coefficients).
pub type SymFuncZW = symfunc::SymFunc1<FieldElem>;
