//! `oco_lab`: online convex optimization over curved feasible sets.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: stack-allocated vectors and small dense matrices.
//! - [`geometry`]: convex bodies (balls, ellipsoids, `ℓp` balls, boxes,
//!   simplices) with projection, linear minimization, Mahalanobis
//!   projection, enclosing spheres facing a boundary point, `γ★` and
//!   uniform-convexity witnesses.
//! - [`losses`]: linear, quadratic and squared-linear losses.
//! - [`environments`]: stochastic, adversarial and corrupted-stochastic loss
//!   generators, including the Beta–Bernoulli growth construction.
//! - [`algorithms`]: OGD, FTL, ONS and a multi-rate universal learner.
//! - [`harness`]: the simulation loop, regret curves, slope fits and the
//!   inequality diagnostics.
//! - [`cli`]: JSON-configured experiment runs with CSV output.
//!
//! Runnable walkthroughs for each capability live under `examples/`.

pub mod algorithms;
pub mod cli;
pub mod environments;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod losses;

pub use algorithms::{Learner, LearnerSpec, OnlineLearner};
pub use environments::{EnvSpec, Environment, NoiseSpec};
pub use geometry::{FeasibleSet, NormTag, SetKind, SphereFacing, SphereFit};
pub use harness::{ExperimentConfig, RegretCurve};
pub use linalg::{Matrix, Vector};
pub use losses::LossFn;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OcoError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("{what} did not converge (residual {residual:e})")]
    NonConvergence { what: &'static str, residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("corruption budget overflow: used {used} > budget {budget}")]
    BudgetOverflow { used: f64, budget: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, OcoError>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(OcoError::DimensionMismatch { expected, got })
    }
}
