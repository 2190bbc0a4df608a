//! Exact construction of multiplicity free graded Lie and Jordan algebras from
//! skew root systems in finite symplectic abelian groups.
//!
//! Layers, bottom up:
//!
//! * [`cyclo`]: the cyclotomic fields `Q(ζ_N)` and linear algebra over them;
//! * [`abgroup`]: finite abelian groups, quotients and subgroup presentations;
//! * [`symplectic`]: alternating bicharacters, bilinear cocycles and twisted
//!   group algebras;
//! * [`skewroot`]: skew root systems, their graphs, reductions and censuses;
//! * [`galgebra`]: the algebras `L(R)` and `J(R)` and their invariants;
//! * [`families`]: the nonsingular, Clifford and quadratic-form families with
//!   independent matrix models.

pub mod abgroup;
pub mod cyclo;
pub mod error;
pub mod families;
pub mod galgebra;
pub mod skewroot;
pub mod symplectic;

pub use error::{Error, Result};
