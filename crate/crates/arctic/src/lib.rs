//! Determinantal point process machinery for random tilings and dimer
//! models: Kasteleyn matrices, non-intersecting path kernels, Toeplitz and
//! Wiener-Hopf kernel engines, concrete tiling models, exact samplers, and
//! numerical evaluators for the universal edge-limit kernels.

pub mod dpp;
pub mod kasteleyn;
pub mod kernel;
pub mod lgv;
pub mod models;
pub mod error;
pub mod numeric;
pub mod symfunc;
pub mod toeplitz;

pub use error::{Error, Result};
