//! Counting weighted Diophantine approximations on random parameters, their
//! closed-form mean and variance constants, and a reproducible Monte Carlo
//! harness for the central limit behaviour of the counts.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// per-form loops index several parallel arrays
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod config;
pub mod constants;
pub mod counting;
pub mod error;
pub mod format;
pub mod model;
pub mod montecarlo;
pub mod norms;
pub mod special;
pub mod stats;

pub use constants::{constants_for, TheoreticalConstants};
pub use counting::{delta, orthant_count, window_counts, CountResult, QPlan, WindowSeries};
pub use error::{Error, Result};
pub use model::{ApproximationProblem, Mode, ModelError, OrthantRestriction, QLower, SamplePoint, SignReq};
pub use montecarlo::{exact_mean_oracle, run_simulation, sample_point, Centering, SimulationConfig, SimulationSummary};
pub use norms::NormSpec;
