//! Momentum accumulation and the unit direction singled out for the
//! second-order model.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::vecmath;

/// Momentum length below which no direction can be extracted.
const ZERO_MOMENTUM_FLOOR: f64 = 1e-30;

/// Normalization failed because the momentum vector is (numerically) zero.
///
/// Callers keep the previous unit direction in that case; a zero momentum at
/// warmup means every gradient vanished and the run is already stationary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizeError;

impl fmt::Display for NormalizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zero momentum: no direction to normalize")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NormalizeError {}

/// `v <- gamma v + g`, returning the updated momentum.
///
/// # Panics
/// On dimension mismatch.
pub fn momentum_update(v: &mut [f64], g: &[f64], gamma: f64) {
    assert_eq!(v.len(), g.len(), "dimension mismatch: {} vs {}", v.len(), g.len());
    for (vi, gi) in v.iter_mut().zip(g) {
        *vi = gamma * *vi + gi;
    }
}

/// `v / ||v||`, or [`NormalizeError`] when the norm sits below the floor.
pub fn normalize(v: &[f64]) -> Result<Vec<f64>, NormalizeError> {
    let n = vecmath::norm2(v);
    if n <= ZERO_MOMENTUM_FLOOR {
        return Err(NormalizeError);
    }
    Ok(vecmath::scale(v, 1.0 / n))
}

/// Projection `x . v_hat` of a vector onto the unit direction.
pub fn project(x: &[f64], v_hat: &[f64]) -> f64 {
    vecmath::dot(x, v_hat)
}

/// Direction bookkeeping for one optimizer run: the momentum accumulator
/// `v`, the current model direction `v_hat`, the previous direction `w_hat`
/// (used by the safe variant, which steps with the outgoing direction while
/// averages build for the new one), and the rotation center `c` (used by the
/// centered variant).
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionState {
    pub v: Vec<f64>,
    pub v_hat: Vec<f64>,
    pub w_hat: Vec<f64>,
    pub center: Vec<f64>,
}

impl DirectionState {
    /// Zero momentum, unset directions, origin-centered.
    pub fn new(dim: usize) -> Self {
        Self {
            v: vec![0.0; dim],
            v_hat: vec![0.0; dim],
            w_hat: vec![0.0; dim],
            center: vec![0.0; dim],
        }
    }

    /// Re-normalizes `v_hat` from the momentum, keeping the previous
    /// direction when the momentum has collapsed to zero.
    pub fn refresh_v_hat(&mut self) -> Result<(), NormalizeError> {
        match normalize(&self.v) {
            Ok(u) => {
                self.v_hat = u;
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    /// Drift metric `1 - |v_hat . prev|` between two unit directions.
    pub fn drift(a: &[f64], b: &[f64]) -> f64 {
        1.0 - vecmath::dot(a, b).abs()
    }
}
