//! Optimizers that estimate second-order structure online from noisy gradients.
//!
//! The core idea: maintain exponential moving averages of a scalar `(theta, g)`
//! stream and fit the linear trend `g ≈ lambda (theta - p)` by weighted least
//! squares. `lambda` is the curvature seen along the modeled direction and `p`
//! the position of the extremum, which turns noisy first-order information into
//! a step size. The crate provides:
//!
//! - [`regression`]: the EMA moment accumulator and line fit,
//! - [`direction`]: momentum-driven tracking of the modeled unit direction,
//! - [`ogr`]: the OGR1d / OGR1ds / OGR1dc optimizers built on the two above,
//! - [`asgd`]: per-coordinate adaptive SGD (`sigma_theta / sigma_g` rates) and
//!   its noise-aware variant,
//! - [`hessian`]: diagnostic Hessian-entry estimators from trajectory moments,
//! - [`problems`]: analytic objectives with seeded stochastic gradient oracles,
//! - [`baselines`]: SGD, momentum, RMSprop and Adam for comparison,
//! - [`trace`]: the per-step record type shared with the benchmark harness.
//!
//! The crate is `no_std`-compatible (with `alloc`): disable the default `std`
//! feature and enable `libm` to route float math through it.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("ogr-core requires either the `std` or the `libm` feature");

mod float;
pub mod vecmath;
pub mod rng;
pub mod regression;
pub mod direction;
pub mod problems;
pub mod trace;
pub mod ogr;
pub mod asgd;
pub mod baselines;
pub mod hessian;

pub use asgd::{AsgdConfig, AsgdState, AsgdcConfig, AsgdcState, NuMode};
pub use baselines::{BaselineKind, BaselineState};
pub use direction::{DirectionState, NormalizeError};
pub use hessian::{PairMoments, ProbeError};
pub use ogr::{OgrHyperparams, OgrState, OgrVariant, RunError, SaddlePolicy};
pub use problems::{Problem, Quadratic, Rosenbrock, TinyMlp};
pub use regression::{FitError, MomentError, MomentSet, ParabolaFit};
pub use trace::{RunOutcome, Trace, TraceRecord};
