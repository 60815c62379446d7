//! Simulation and inference laboratory for pure-jump transaction-level
//! asset-price models with drift.
//!
//! The crate generates stationary duration processes (Poisson, ACD(1,1),
//! LMSD), builds tick-level log-price paths with drift and optional
//! microstructure noise, and provides the estimators and Monte Carlo
//! drivers needed to verify the predicted partial-sum limits (rate gamma
//! and limit family) and the behavior of the ordinary t-test for the
//! growth rate.

pub mod cli;
pub mod durations;
pub mod error;
pub mod experiments;
pub mod inference;
pub mod kernels;
pub mod price;
pub mod quadrature;
pub mod rng;

pub use error::{ModelError, Result};
pub use rng::RandomStream;
