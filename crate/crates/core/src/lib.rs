//! Exact computations with the graph complexes, Arnold algebras and
//! Drinfeld–Kohno Lie algebras attached to configuration spaces and to the
//! space of long knots modulo immersions.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] — exact sparse linear algebra, generic over an exact [`Field`];
//! * [`diagrams`] — admissible diagrams, signed canonical forms, enumeration;
//! * [`arnold`] — the simplicial algebra `A_•`, its totalization and shuffle product;
//! * [`kohno`] — the cosimplicial Lie algebra `L^•` and the complex `Tot L^•`;
//! * [`graphcomplex`] — the diagram complexes `D_n`, `P_n` and their totalizations;
//! * [`sseq`] — Betti tables, bidegree bookkeeping, primitives and verification.
//!
//! Everything is generic over the coefficient field; the aliases below fix
//! it to the rationals, which is what all higher-level drivers use.

pub mod arnold;
pub mod bigraded;
pub mod diagrams;
pub mod error;
pub mod graphcomplex;
pub mod kohno;
pub mod linalg;
pub mod sign;
pub mod sseq;

pub use error::{Error, Result};
pub use linalg::{Field, LinComb};
pub use sign::Sign;

/// Arbitrary-precision rationals in lowest terms.
pub type Rational = num_rational::BigRational;
/// Sparse matrix over the rationals.
pub type QMatrix = linalg::SparseMatrix<Rational>;
/// A rational combination of canonical diagrams.
pub type DiagramCombination = LinComb<diagrams::Diagram, Rational>;
/// A rational element of an Arnold algebra `A_n`.
pub type ArnoldElement = LinComb<arnold::ForestMonomial, Rational>;
/// A rational element of a Drinfeld–Kohno Lie algebra, in basis coordinates.
pub type LieElement = kohno::LieElement<Rational>;
/// Bigraded complex with rational differentials.
pub type QBigradedComplex = bigraded::BigradedComplex<Rational>;

/// Version tag stored in cache keys; bump whenever a basis or sign convention changes.
pub const CODE_VERSION: &str = concat!("graphcx-", env!("CARGO_PKG_VERSION"), "-s1");
