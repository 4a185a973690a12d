//! Optimally approximate a belief (a probability distribution) within a
//! restricted family by minimizing the approximation Kullback-Leibler
//! divergence, and numerically verify the scoring-rule axioms (locality and
//! properness) that single out the logarithmic loss behind it.
//!
//! The crate is organized around five layers:
//!
//! - [`densities`]: categorical, Gaussian, Gaussian-mixture and grid-sampled
//!   distributions, reference measures, affine coordinate maps and
//!   discretization.
//! - [`scoring`]: KL divergence, cross entropy against a reference measure,
//!   expected local losses, coding redundancy and the ELBO decomposition.
//! - [`estimators`]: point estimates (mode/median/mean) as minimizers of
//!   expected estimation loss.
//! - [`approximators`]: moment matching and divergence-minimizing fits in
//!   both KL directions, including the bimodal two-direction demo.
//! - [`axiom_lab`]: brute-force checks that properness plus locality pin the
//!   loss down to `-C ln x + D`, with event-splitting and measure-independence
//!   probes.
//!
//! All expectations are deterministic quadratures or exact sums; identical
//! inputs produce bitwise identical outputs. The crate is `no_std`
//! (with `alloc`); float transcendentals come from `libm`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod approximators;
pub mod axiom_lab;
pub mod densities;
pub mod error;
pub mod estimators;
pub mod quadrature;
pub mod rng;
pub mod scoring;

pub use densities::{
    AffineMap, Categorical, Density, Gaussian1D, GridDensity, IntegrationRule, Mixture1D,
    ReferenceMeasure,
};
pub use error::{Error, Result};

/// Density values at or below this threshold are treated as exact zeros.
///
/// This separates "true zero" from values that underflowed the f64 range, so
/// absolute-continuity failures are detected reproducibly across platforms.
/// Log-space evaluation of closed-form densities never trips it.
pub const ZERO_DENSITY: f64 = 1e-300;
