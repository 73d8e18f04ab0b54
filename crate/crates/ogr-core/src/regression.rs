//! Exponential-moving-average moments of a `(theta, g)` stream and the
//! weighted least-squares fit of the linear gradient trend
//! `g ≈ lambda (theta - p)`.
//!
//! Every statistic is an EMA updated as `f <- beta f + (1 - beta) sample`, so
//! a sample observed `k` steps ago carries weight `(1 - beta) beta^k`. The
//! accumulated weight `s = 1 - beta^t` is tracked explicitly and all derived
//! quantities (variances, correlation, the fit itself) are normalized by it,
//! which keeps them meaningful from the second sample onward instead of only
//! in the `s -> 1` limit.

use core::fmt;

#[cfg(not(feature = "std"))]
use crate::float::FloatExt;

/// Relative floor under which a variance (or slope) counts as degenerate.
const DEGENERACY_EPS: f64 = 1e-12;

/// Rejected sample fed to [`MomentSet::update`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentError {
    /// A non-finite `theta` or `g`; usually means the optimization diverged.
    NonFinite { theta: f64, g: f64 },
}

impl fmt::Display for MomentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MomentError::NonFinite { theta, g } => {
                write!(f, "non-finite sample: theta={theta}, g={g}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MomentError {}

/// Why a fit could not be produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitError {
    /// All observed `theta` values are effectively equal; no slope exists.
    DegenerateVariance,
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::DegenerateVariance => {
                write!(f, "theta variance below degeneracy floor")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FitError {}

/// EMA accumulators driving the regression: means of `theta`, `g`,
/// `g*theta`, `theta^2`, `g^2`, plus the accumulated weight `s`.
///
/// All fields start at zero; after `t` updates with rate `beta` the weight
/// sum equals `1 - beta^t`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MomentSet {
    pub mean_theta: f64,
    pub mean_g: f64,
    pub mean_gtheta: f64,
    pub mean_theta2: f64,
    pub mean_g2: f64,
    pub weight_sum: f64,
}

/// Fitted linear gradient trend at one instant.
///
/// `lambda` is the slope (curvature of the modeled parabola), `p` the
/// position where the trend crosses zero (the extremum). `p` is `None` when
/// `|lambda|` sits below the degeneracy floor — a plateau or inflection where
/// the predicted extremum is unreliably far; callers must clip or fall back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolaFit {
    pub lambda: f64,
    pub p: Option<f64>,
    pub corr: f64,
    pub lambda_stddev: f64,
}

impl MomentSet {
    /// All-zero accumulators.
    pub fn new() -> Self {
        Self::default()
    }

    fn theta_floor(&self) -> f64 {
        DEGENERACY_EPS * self.mean_theta2.max(1.0)
    }

    /// Weighted theta variance in raw form, `s theta2bar - thetabar^2`.
    pub fn theta_variance_raw(&self) -> f64 {
        self.weight_sum * self.mean_theta2 - self.mean_theta * self.mean_theta
    }

    /// Weighted g variance in raw form, `s g2bar - gbar^2`.
    pub fn g_variance_raw(&self) -> f64 {
        self.weight_sum * self.mean_g2 - self.mean_g * self.mean_g
    }

    /// Folds one `(theta, g)` sample in with forgetting rate `beta`.
    ///
    /// Each accumulator moves as `f <- beta f + (1 - beta) sample` with
    /// samples `(theta, g, g theta, theta^2, g^2, 1)`.
    ///
    /// # Panics
    /// If `beta` is outside `(0, 1)`.
    pub fn update(&mut self, theta: f64, g: f64, beta: f64) -> Result<(), MomentError> {
        assert!(beta > 0.0 && beta < 1.0, "beta must lie in (0,1), got {beta}");
        if !theta.is_finite() || !g.is_finite() {
            return Err(MomentError::NonFinite { theta, g });
        }
        let w = 1.0 - beta;
        self.mean_theta = beta * self.mean_theta + w * theta;
        self.mean_g = beta * self.mean_g + w * g;
        self.mean_gtheta = beta * self.mean_gtheta + w * g * theta;
        self.mean_theta2 = beta * self.mean_theta2 + w * theta * theta;
        self.mean_g2 = beta * self.mean_g2 + w * g * g;
        self.weight_sum = beta * self.weight_sum + w;
        Ok(())
    }

    /// Least-squares fit of `g ≈ lambda (theta - p)` from the current moments.
    ///
    /// `lambda = (s gtbar - gbar tbar) / (s t2bar - tbar^2)` and
    /// `p = (lambda tbar - gbar) / (s lambda)`. The correlation uses
    /// bias-corrected dispersions (second moments divided by `s`) so it is a
    /// true correlation at every `t`, not only once `s ≈ 1`.
    pub fn fit_line(&self) -> Result<ParabolaFit, FitError> {
        let var_t = self.theta_variance_raw();
        if self.weight_sum <= 0.0 || var_t <= self.theta_floor() {
            return Err(FitError::DegenerateVariance);
        }
        let cov = self.weight_sum * self.mean_gtheta - self.mean_g * self.mean_theta;
        let lambda = cov / var_t;
        let p = if lambda.abs() > self.theta_floor() {
            Some((lambda * self.mean_theta - self.mean_g) / (self.weight_sum * lambda))
        } else {
            None
        };
        let var_g = self.g_variance_raw();
        let corr = if var_g > DEGENERACY_EPS * self.mean_g2.max(1.0) {
            cov / (var_t.max(0.0).sqrt() * var_g.sqrt())
        } else {
            // Constant g carries no correlation information.
            0.0
        };
        Ok(ParabolaFit {
            lambda,
            p,
            corr,
            lambda_stddev: 0.0,
        })
    }

    /// Moves the origin of the `theta` axis by `delta`, as if every sample
    /// had been recorded as `theta - delta`.
    ///
    /// The transforms are weight-aware so the identity
    /// `fit(shift(m, d)) = fit(m) translated by d` holds exactly at every
    /// `t`, not just once `s = 1`:
    /// `tbar <- tbar - s d`, `gtbar <- gtbar - gbar d`,
    /// `t2bar <- t2bar - 2 tbar d + s d^2`; `gbar`, `g2bar`, `s` unchanged.
    pub fn shift_origin(&mut self, delta: f64) {
        assert!(delta.is_finite(), "shift by non-finite delta {delta}");
        let old_mean_theta = self.mean_theta;
        self.mean_theta -= self.weight_sum * delta;
        self.mean_gtheta -= self.mean_g * delta;
        self.mean_theta2 += -2.0 * old_mean_theta * delta + self.weight_sum * delta * delta;
    }

    /// Predicted standard deviation of the fitted `lambda` when gradients
    /// carry i.i.d. noise of standard deviation `sigma`:
    /// `sigma / sigma_theta * sqrt((1 - beta) / (1 + beta))`,
    /// with `sigma_theta = sqrt(s t2bar - tbar^2) / s`.
    pub fn lambda_stddev(&self, sigma: f64, beta: f64) -> Result<f64, FitError> {
        let var_t = self.theta_variance_raw();
        if self.weight_sum <= 0.0 || var_t <= self.theta_floor() {
            return Err(FitError::DegenerateVariance);
        }
        let sigma_theta = var_t.sqrt() / self.weight_sum;
        Ok(sigma / sigma_theta * ((1.0 - beta) / (1.0 + beta)).sqrt())
    }
}
