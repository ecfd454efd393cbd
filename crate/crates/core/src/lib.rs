//! Reidemeister numbers of group endomorphisms and their zeta functions.
//!
//! Every counting formula in this crate is paired with an independent
//! brute-force route so that the two can be compared.

pub mod error;
pub mod fox;
pub mod group;
pub mod linalg;
pub mod problem;
pub mod reidemeister;
pub mod zeta;

pub use error::{Error, Result};
