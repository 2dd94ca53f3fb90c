//! Brute-force enumeration and series oracles backing the test suites.
//!
//! Everything in this crate is deliberately independent of the determinantal
//! machinery it is used to check: matchings are enumerated by backtracking,
//! path measures by direct summation over families, special functions by
//! series.

pub mod airy;
pub mod matchings;
pub mod patterns;
pub mod paths;
pub mod plane_partitions;
