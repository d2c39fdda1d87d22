//! Decision procedures and canonical forms for unitary equivalence of a
//! complex square matrix to its transpose.
//!
//! The crate answers three questions about a matrix `T`:
//!
//! * is `T` unitarily equivalent to its transpose (UET)?
//! * is `T` unitarily equivalent to a complex symmetric matrix (UECSM)?
//! * is `T` unitarily equivalent to an antiskewsymmetric matrix (UEASM)?
//!
//! Affirmative answers come with witness unitaries that can be re-verified by
//! direct multiplication, negative answers with an explicit disproof (a
//! violating trace word or an empty intertwiner kernel).  On top of the
//! deciders, [`canonical::decompose_canonical`] splits a UET matrix into its
//! canonical direct sum of type I (irreducible complex symmetric), type II
//! (irreducible antiskewsymmetric) and type III (`A ⊕ Aᵗ` with `A`
//! irreducible and neither UECSM nor UEASM) summands.

pub mod antilinear;
pub mod canonical;
pub mod commutant;
pub mod error;
pub mod gallery;
pub mod intertwiner;
pub mod json;
pub mod linalg;
pub mod tol;
pub mod tracewords;

pub use error::Error;
pub use linalg::{Matrix, Scalar, Subspace};
pub use tol::ToleranceConfig;
