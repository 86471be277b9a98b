//! Point counts and intersection multiplicities for minuscule GGP cycles on
//! GSpin Rapoport-Zink spaces, computed exactly and cross-checked against
//! brute-force oracles.

pub mod error;
pub mod cli;
pub mod finite;
pub mod formula;
pub mod instance;
pub mod oracle;
pub mod padic;
pub mod rational;
pub mod report;
pub mod selftest;

pub use error::{Error, Result};
