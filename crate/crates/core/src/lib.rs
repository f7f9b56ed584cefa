//! Untangling and tangling isomorphisms between `F[x]/<T^mu>` and
//! `K[xi]/<xi^mu>`, their bivariate analogues for primary ideals, and the
//! fast arithmetic built on them.

pub mod bench;
pub mod bitangle;
pub mod error;
pub mod field;
mod ntt;
pub mod unitangle;
pub mod powmod;
pub mod staircase;
pub mod upoly;

pub use error::{Error, Hypothesis, Result};
