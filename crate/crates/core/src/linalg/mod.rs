//! Exact linear algebra over GF(p) and Q.

mod field;
mod mat;
mod subspace;

pub use field::{Field, Scalar};
pub use mat::Mat;
pub use subspace::{Coordinates, Quotient, Subspace};
