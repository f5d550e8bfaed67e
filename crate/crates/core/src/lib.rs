//! Lattice states on C^4 ⊗ C^4 and the machinery to classify them.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs apart from the see-saw optimisers, which take an
//! explicit seed.
//!
//! Layout, bottom up:
//!
//! * [`linalg`]: dense complex matrices, Jacobi eigensolver, partial
//!   operations and realignment.
//! * [`pauli`]: index algebra of Pauli words and the translations `tau`.
//! * [`states`]: Bell, Werner, UPB and sigma-diagonal states.
//! * [`maps`]: Choi matrices, sigma-diagonal maps, see-saw block positivity.
//! * [`criteria`]: PPT, realignment, reduction and witnesses.
//! * [`lattice`]: subsets of the 4×4 lattice, special quadruples,
//!   coverings and the classifier.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod criteria;
mod error;
pub mod lattice;
pub mod linalg;
pub mod maps;
pub mod pauli;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{BipartiteDims, CMat, Party, C64};
