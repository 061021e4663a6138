//! Combinatorics and chain-level algebra of the contractible 2-operad of
//! sequences and its action on Hochschild-type complexes of dg categories.

pub mod action;
pub mod chain_complex;
pub mod dg_cat;
pub mod error;
pub mod linalg;
pub mod ordinal;
pub mod seq;
pub mod two_ordinal;

pub use error::{Error, Result};
