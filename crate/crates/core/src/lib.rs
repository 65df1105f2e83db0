//! Exact computational invariant theory for finite matrix groups over
//! cyclotomic fields: spanning degree, generic orbit ideal and generators of
//! the field of rational invariants.

pub mod cli;
pub mod error;
pub mod fieldgen;
pub mod grouprep;
pub mod linalg;
pub mod multipoly;
pub mod orbitideal;
pub mod scalars;
pub mod spanning;

pub use error::{Error, Result};
