//! Exact computational homological algebra for finite-dimensional algebras
//! given by quivers with relations: modules, bounded complexes up to
//! homotopy, the Nakayama functor and Serre duality on perfect complexes,
//! Auslander-Reiten triangles with machine-checkable certificates, and
//! Gorenstein-type finiteness tests.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod gorenstein;
pub mod linalg;
pub mod module;
pub mod serre;
pub mod textio;

pub use error::{Error, Result};
