//! Exact-arithmetic construction and machine verification of bi-Frobenius
//! algebra structures on quantum complete intersections.
//!
//! The crate builds the truncated skew-commutative algebras
//! A(q, a_1, ..., a_n) over Q, Q(i), or a prime field, equips them with
//! explicit comultiplication tables, solves for the coefficients that make
//! the induced antipode work, and checks every axiom exhaustively on the
//! monomial basis, producing pass/fail reports with counterexample
//! witnesses. A separate module decides bialgebra obstructions through
//! binomial-coefficient valuations.

pub mod algebra;
pub mod bifrobenius;
pub mod coalgebra;
pub mod error;
pub mod files;
pub mod linalg;
pub mod obstructions;
pub mod report;
pub mod scalar;

pub use error::QciError;
