//! Exact-arithmetic models of the adjoint variety of G2, its hyperplane
//! sections inside G(3,6), and the rank-12 quadric geometry around both, with
//! the verification checks that certify their structure.

pub mod exterior;
pub mod groebner;
pub mod hilbert;
pub mod fp;
pub mod g2;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use matrix::{ExactMatrix, LinearSubspace, QuadraticForm};
pub use poly::{MPoly, Mono, VarSet};
pub use scalar::{Field, Scalar};
