//! Exact enumeration of lattice paths by descents, major index and crossings.

pub mod arrays;
pub mod cli;
pub mod formulas;
pub mod oracle;
pub mod pair_arrays;
pub mod paths;
pub mod verify;
pub mod qpoly;

pub use arrays::{Bracket, TwoRowedArray};
pub use pair_arrays::{ArrayPair, PairCrossing};
pub use paths::{Crossing, CrossingKind, LatticePath, Point, Step};
pub use qpoly::{Coeff, Laurent, PolyError, TqPoly};

/// Polynomial in `t` and `q` with arbitrary-precision integer coefficients.
pub type QTPoly = TqPoly<num_bigint::BigInt>;
/// [`QTPoly`] times a possibly negative power of `q`.
pub type LaurentQT = Laurent<num_bigint::BigInt>;
