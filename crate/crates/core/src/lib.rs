//! Exact-arithmetic construction and analysis of low-dimensional digital
//! point sets.
//!
//! Everything in this crate computes with exact rationals; no floating
//! point enters any computational path. The only `f64` values produced
//! anywhere are the report-only ratio traces of the regression suite
//! (ratios against logarithms are irrational by nature).
//!
//! The crate is `no_std` + `alloc`; all types are immutable values and all
//! operations are pure functions, so everything can be shared freely
//! across threads by a std front end.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod base;
pub mod discrepancy;
pub mod error;
pub mod generators;
pub mod harness;
pub mod modmat;
pub mod netverify;
pub mod perm;
pub mod psi;
pub mod rat;
pub mod rng;
pub mod walsh2;

pub use base::BaseRational;
pub use error::Error;
pub use rat::Rat;

/// Largest point count accepted by the general quadratic-time
/// two-dimensional star discrepancy sweep.
pub const DESK_N_CAP: usize = 1 << 13;
