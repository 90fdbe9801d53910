//! Exact tropical geometry over a valued field with value group `Q`.

pub mod complexes;
pub mod error;
pub mod fixtures;
pub mod intersection;
pub mod lattice;
pub mod polyhedra;
pub mod valued_poly;

pub use error::{Error, Result};

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout.
pub type Rat = num_rational::BigRational;
