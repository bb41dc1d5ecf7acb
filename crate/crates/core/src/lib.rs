//! Computational finite group theory on explicitly enumerated permutation
//! groups.
//!
//! Every group is a [`PermGroup`] given by generators; algorithms enumerate
//! elements on demand and verify the theorems they rely on as they go.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod coh;
pub mod error;
pub mod ffgroups;
pub mod frobenius;
pub mod hall;
pub mod perm;
pub mod structure;
pub mod sylow;
pub mod transfer;

pub use error::{FinisError, Result};
pub use perm::{GroupHom, PermGroup, Permutation};
