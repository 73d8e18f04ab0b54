//! Per-step run records shared between the optimizers and the benchmark
//! harness.

use alloc::vec::Vec;
use core::fmt;

/// Rejected run request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunError {
    /// OGR variants need at least the `2 m` warmup evaluations.
    BudgetTooSmall { budget: usize, required: usize },
    /// Starting point does not match the problem dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// A hyperparameter outside its allowed range; names the field.
    InvalidHyperparam(&'static str),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::BudgetTooSmall { budget, required } => {
                write!(f, "budget {budget} below the {required} evaluations required")
            }
            RunError::DimensionMismatch { expected, got } => {
                write!(f, "start vector has dimension {got}, problem expects {expected}")
            }
            RunError::InvalidHyperparam(what) => write!(f, "invalid hyperparameter: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RunError {}

/// One row per gradient evaluation.
///
/// `theta_proj` is the position projected onto the model direction (zero for
/// per-coordinate methods and before a direction exists). For OGR proper
/// steps, `lambda` / `p` hold the fitted trend and `step_size` the signed
/// second-order step along the direction; rows without a fit log the full
/// step length instead. Per-coordinate methods log summary statistics:
/// `lambda` = median `|lambda_i|`, `p` = median learning rate.
/// `direction_drift` is `1 - |v_hat_t . v_hat_{t-1}|` for the direction used
/// by the step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub step: u64,
    pub loss: f64,
    pub grad_norm: f64,
    pub theta_proj: f64,
    pub lambda: f64,
    pub p: f64,
    pub step_size: f64,
    pub direction_drift: f64,
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    /// Budget exhausted normally.
    Completed,
    /// Warmup saw only vanishing gradients: already at a stationary point.
    Converged,
    /// A non-finite loss or parameter appeared at this evaluation index.
    Diverged { at_step: u64 },
}

/// Full record of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
    pub outcome: RunOutcome,
    pub final_theta: Vec<f64>,
}

impl Trace {
    pub fn final_loss(&self) -> Option<f64> {
        self.records.last().map(|r| r.loss)
    }

    /// Number of gradient evaluations consumed.
    pub fn evals(&self) -> usize {
        self.records.len()
    }
}
