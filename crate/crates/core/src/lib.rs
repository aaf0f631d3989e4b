//! Robust adaptive beamforming toolkit.
//!
//! The crate is organized around one optimization problem: choose a
//! beamformer that maximizes worst-case SINR when both the desired-signal
//! covariance factor and the interference-plus-noise covariance are only
//! known up to matrix uncertainty sets. The exact solver reformulates the
//! problem as a single semidefinite program (`minimax`), the baselines
//! solve the maximin form by difference-of-convex linearization (`dc`),
//! and both run on a small dense conic interior-point core (`conic`).
//!
//! Supporting modules: `linalg` (dense complex/real matrix plumbing),
//! `signal` (array geometry, scattered-source covariances, snapshot
//! simulation), `uncertainty` (the uncertainty sets and their worst-case
//! powers), `verify` (numerical certificates for solved instances), and
//! `bench` (scenario configs, Monte Carlo sweeps, CSV records).

// Negated float comparisons like `!(x > 0.0)` are deliberate NaN guards
// (`x <= 0.0` is false for NaN), and the dense kernels index parallel
// arrays by position throughout; both idioms trip style lints.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::type_complexity)]

pub mod bench;
pub mod conic;
pub mod dc;
mod error;
pub mod linalg;
pub mod minimax;
pub mod signal;
pub mod uncertainty;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
