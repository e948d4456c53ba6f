//! Feature screening for high-dimensional data via distance correlation.
//!
//! The core procedure, DC-SIS, ranks predictors (or grouped predictor
//! blocks) by their squared sample distance correlation with the response.
//! Because distance correlation vanishes exactly under independence and
//! needs no model for the regression function, the ranking handles
//! nonlinear effects, interactions, grouped predictors and multivariate
//! responses that Pearson-correlation screening misses.
//!
//! What's here:
//!
//! - [`dcov`]: sample distance covariance/correlation via the moment
//!   identity `dcov² = S1 + S2 − 2·S3`, with a streaming O(n²) fast path
//!   and a literal triple-loop oracle for verification.
//! - [`screen`]: DC-SIS utilities, ranking, top-d and threshold selection,
//!   and the bivariate-normal closed form `T0(ρ)` used as an oracle.
//! - [`baselines`]: SIS (absolute Pearson correlation) and SIRS
//!   (rank-indicator) screening for comparison.
//! - [`simulate`]: a reproducible Monte Carlo harness for the benchmark
//!   models, reporting minimum model size quantiles and selection
//!   proportions.
//! - [`convergence`]: an empirical decay diagnostic of the utilities
//!   against a large-sample surrogate.
//! - [`dataset`]: CSV ingestion, validation, grouping and
//!   standardization.
//! - [`cli`]: the `dcscreen` binary (`screen` / `simulate` / `converge`).
//!
//! Everything is deterministic given a master seed: parallel work items
//! derive their own rng streams by index, so results are identical for any
//! worker count. Start with the runnable examples (`cargo run --example
//! screen_csv`, etc.) for end-to-end usage.

pub mod baselines;
pub mod cli;
pub mod convergence;
pub mod dataset;
pub mod dcov;
pub mod error;
pub mod screen;
pub mod simulate;

pub use dataset::{Dataset, FeatureBlock};
pub use dcov::{dcov2_sample, dcov2_sample_naive, pairwise_distances, DistanceStats};
pub use error::{Error, Result};
pub use screen::{
    cutoff_d, dcsis_utilities, rank_and_select, screen_dataset, t0_of_rho, BlockUtilities,
    ScreeningResult, SelectionRule,
};
pub use simulate::{
    run_replications, sample_ar1_normal, EvalReport, ModelId, ModelSpec, ScreeningMethod,
};
