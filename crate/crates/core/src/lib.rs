//! Exact computations for semiample divisors on complete simplicial toric
//! varieties and for the hypersurfaces they cut out.
//!
//! The generic linear algebra in [`linalg`] works over any integer type
//! implementing [`linalg::Ring`] and over fractions of such types. The
//! geometric modules are fixed to arbitrary precision via [`Int`] and [`Rat`].

pub mod catalog;
pub mod coxring;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod hodge;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod polytope;
pub mod residue;
pub mod threefold;

mod cone;
mod util;

pub use error::{Error, Result};

/// Arbitrary precision integer used for all lattice data.
pub type Int = num_bigint::BigInt;
/// Arbitrary precision rational used for coefficients and polytope vertices.
pub type Rat = num_rational::BigRational;
