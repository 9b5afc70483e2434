//! superkit: exact-arithmetic Lie superalgebra computations.
//!
//! The crate represents finite-dimensional Lie superalgebras over ℚ or 𝔽_p
//! by structure constants and machine-checks, with no floating point
//! anywhere, the classical facts about triple derivations and triple
//! homomorphisms of perfect centerless algebras:
//!
//! - `TDer(L) = Der(L)` and `TDer(Der L) = ad(Der L)` when ½ is in the field
//!   and L is perfect with zero center, including the characteristic-2
//!   counterexample that makes ½ necessary;
//! - every triple homomorphism out of a perfect algebra whose image envelope
//!   is centerless and decomposable is a homomorphism, an anti-homomorphism,
//!   or a direct sum of both.
//!
//! Everything is built on a small exact linear-algebra core ([`matrix`],
//! [`subspace`]) whose canonical RREF form makes subspace equality
//! structural.

// structure-constant assembly walks several tables by shared indices
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod catalog;
pub mod derivations;
pub mod document;
pub mod endspace;
pub mod error;
pub mod field;
pub mod linmap;
pub mod matrix;
pub mod subspace;
pub mod triplehom;

mod decompose;

pub use algebra::{
    direct_sum, AlgebraBuilder, DirectSum, Element, LieSuperalgebra, ValidationReport, Violation,
    ViolationKind,
};
pub use decompose::Decomposition;
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linmap::{GradedDim, LinearMap, Parity};
pub use matrix::{Matrix, Rref};
pub use subspace::Subspace;
