//! Exact polyhedral invariants of pairs of monomial ideals of finite colength.
//!
//! Given monomial ideals `I` and `J` in `n <= 6` variables the crate computes
//! Newton polyhedra and their compact faces, the Newton filtration induced by
//! `J`, Samuel and mixed multiplicities, Rees mixed multiplicities, the
//! numbers `a_{i,J}(I)` and `c_J(I)`, the Lojasiewicz exponent `L_J(I)` and
//! the mixed sequence `L_J^{(i)}(I)` (exact when `J` is diagonal, upper bounds
//! otherwise), plus diagnostics relating all of these.
//!
//! All arithmetic is exact over arbitrary-precision rationals.

pub mod arith;
pub mod cli;
pub mod error;
pub mod filtration;
pub mod geometry;
pub mod linalg;
pub mod lojasiewicz;
pub mod multiplicity;
pub mod newton;
pub mod relations;

pub use arith::{Integer, IntegerVector, Rational, RationalPoint};
pub use error::{Error, Result};
pub use newton::{MonomialIdeal, NewtonPolyhedron};
