//! Exact arithmetic in cyclotomic fields `Q(ζ_N)` and dense/sparse linear
//! algebra over them.
//!
//! Every scalar that shows up in a bicharacter, cocycle or structure constant
//! is a root of unity of order dividing the exponent of the grading group, so
//! `Q(ζ_N)` with `N = exp(G)` is always large enough.

mod matrix;
mod num;
mod poly;
mod sparse;

pub use matrix::CycloMatrix;
pub use num::{cyclo_root, cyclotomic_polynomial, euler_phi, ArithOp, CycloNum};
pub use poly::CycloPoly;
pub use sparse::SparseEchelon;
