//! The concrete tiling kernels: one-Aztec, Schur process/measure, skew plane
//! partitions, double Aztec, and uniform interlacing systems, each wired to
//! the generic engines plus model-specific closed forms.

pub mod aztec;
pub mod double_aztec;
pub mod interlacing;
pub mod schur;
pub mod skew_pp;

pub use aztec::{aztec_kernel, aztec_kernel_alt, AztecEnsembleSpec};
pub use double_aztec::{double_aztec_kernel, DoubleAztecSpec};
pub use interlacing::{interlacing_kernel, interlacing_kernel_sum, GTPattern};
pub use schur::{schur_measure_kernel, schur_process_kernel, SchurMeasureSpec, SchurProcessSpec};
pub use skew_pp::{skew_pp_kernel, SkewPlanePartitionSpec};
