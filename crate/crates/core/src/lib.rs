//! Exact construction and verification of classical and exceptional
//! Krawtchouk polynomials.

pub mod algebra;
pub mod darboux;
pub mod error;
pub mod krawtchouk;
pub mod report;
pub mod structure;
pub mod suites;
pub mod xkrawtchouk;

pub use error::{Error, Result};
