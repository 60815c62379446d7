//! Deterministic-by-seed sampling primitives: innovation laws, exact
//! fractional Gaussian noise, skewed stable variates and fractional
//! differencing.

pub mod fgn;
pub mod fracdiff;
pub mod innovations;
pub mod stable;

pub use fgn::{fgn_autocovariance, sample_fgn, FgnSpec};
pub use fracdiff::{fracdiff_weights, fractional_difference, DEFAULT_TRUNCATION};
pub use innovations::{sample_innovations, InnovationSpec};
pub use stable::sample_stable_skewed;
