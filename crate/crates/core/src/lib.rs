//! Exact algebra for Steinitz (supernatural) numbers and the generalized
//! Clifford algebra `Clg(l, I)`.
//!
//! * [`steinitz`]: supernatural numbers, their lattice and classification.
//! * [`cyclotomic`]: the coefficient field `Q(z)` with `z` a primitive
//!   `l`-th root of unity.
//! * [`clifford`]: ordered-monomial normal forms, the diagonal automorphisms,
//!   conjugation phases and centralizers of finite truncations.
//! * [`matrixrep`]: clock-and-shift realizations, spanning and faithfulness
//!   checks, Kronecker products and matrix centralizers.
//!
//! Everything is exact; there is no floating point anywhere in the crate.

pub mod clifford;
pub mod cyclotomic;
mod error;
pub mod linalg;
pub mod matrixrep;
pub mod steinitz;

pub use clifford::{CliffordElement, GeneratorIndex, Monomial, Word};
pub use cyclotomic::{CycElem, CycField};
pub use error::{Error, Result};
pub use matrixrep::{ExactMatrix, RepAssignment};
pub use steinitz::{Exponent, SteinitzNumber};

/// Largest truncation (number of basis monomials or spanned dimension)
/// handled by the dense exact solvers.
pub const DIMENSION_GUARD: usize = 4096;
