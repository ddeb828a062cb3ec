//! Generalized Roth-Lempel codes over odd-characteristic finite fields:
//! hull dimensions, LCD checks, classification, non-GRS certificates,
//! point counts and entanglement-assisted quantum code parameters.

pub mod appendix;
pub mod classify;
pub mod counting;
pub mod eaqecc;
pub mod error;
pub mod families;
pub mod gf;
pub mod grl;
pub mod hull;
pub mod linalg;
pub mod nongrs;

pub use error::{Error, Result};
