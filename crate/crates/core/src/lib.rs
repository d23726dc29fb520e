//! Exact synthesis of stabilizing controllers under quadratically invariant
//! sparsity constraints.
//!
//! Everything is computed over exact rational-function arithmetic: doubly
//! coprime factorizations over the ring 𝔸 of stable proper transfer
//! functions, the Youla parametrization, and the model-matching system
//! whose stable solutions are exactly the Youla parameters producing a
//! controller with the required sparsity.

pub mod error;
pub mod factorization;
pub mod json;
pub mod linalg;
pub mod modelmatch;
pub mod polymat;
pub mod ratfield;
pub mod sparsity;
pub mod tfm;

pub use error::{Error, Result};
pub use factorization::Dcf;
pub use ratfield::{Poly, RationalFunction, Region, Q};
pub use sparsity::{BinMatrix, SparsityConstraint};
pub use tfm::{Partition, Tfm};
