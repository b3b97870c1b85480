//! Finite groups, loops, and the Baer-style loop `(G, ∘)` built from a
//! uniquely 2-divisible group, with exhaustive checkers for the loop
//! identities that relate them.

pub mod construct;
pub mod error;
pub mod group;
pub mod perm;
pub mod props;
pub mod table;
pub mod tbl;
pub mod verify;

pub use error::{Error, Result};
