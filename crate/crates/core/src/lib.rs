//! Exact computations with Coulomb branch algebras of 3d N=4 gauge theories
//! of cotangent type.
//!
//! The crate covers root data and matter ([`lattice`]), exact polynomial and
//! series arithmetic ([`symbolic`]), the torus algebra ([`abelian_algebra`]),
//! Hilbert series from the monopole formula ([`monopole`]), the localized
//! embedding of nonabelian theories ([`abelianization`]), the associated
//! graded algebra ([`degeneration`]) and hypertoric reductions
//! ([`hypertoric`]). The [`cli`] module backs the `coulombkit` binary.

pub mod abelian_algebra;
pub mod abelianization;
pub mod cli;
pub mod degeneration;
pub mod error;
pub mod hypertoric;
pub mod lattice;
pub mod linalg;
pub mod monopole;
pub mod properties;
pub mod random;
pub mod symbolic;

pub use error::{Error, Result};
