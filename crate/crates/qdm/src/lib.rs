//! Numerical operator algebra on truncated Fock spaces.
//!
//! Implements the classical SU(2)/SU(1,1) Berry models, the Jaynes-Cummings
//! quantum diagonalization, its pseudo-Hermitian SU(1,1) counterpart on the
//! admissible subspace, operator-valued Veronese mappings, spin
//! representations, and the supporting projective-geometry and quadrature
//! machinery, with every operator identity checkable to explicit tolerances.

pub mod block;
pub mod chern;
pub mod classical;
pub mod error;
pub mod fock;
pub mod jc;
pub mod linalg;
pub mod pseudo;
pub mod quad;
pub mod repr;
pub mod veronese;

pub use block::{interior_equal, reference_exponential, BlockOperator, ValidityBand};
pub use error::{Error, Result};
pub use fock::{annihilation, creation, diag_fn, number, FockOperator, FockSpace};
