//! Characteristic-p tautological ring toolkit.
//!
//! Everything here is pure computation over `alloc`: exact rational
//! polynomial arithmetic, the graded rings `Q[u1..ug]/I`, type-C Weyl group
//! combinatorics, the Borel and twisted invariant-theoretic presentations,
//! brute-force zip geometry over small prime fields, and the p-rank cycle
//! classes. File formats, caching and the command line live in the `taut`
//! crate.
#![no_std]

extern crate alloc;

mod error;

pub mod brokemper;
pub mod eo_classes;
pub mod poly;
pub mod taut_ring;
pub mod weyl;
pub mod zip_oracle;

pub use error::Error;
