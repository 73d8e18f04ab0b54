//! Counter-based deterministic noise.
//!
//! Gradient noise must be a pure function of `(seed, step_index, coordinate)`
//! so that traces are reproducible regardless of evaluation order. Each draw
//! hashes its key through a SplitMix64-style finalizer and maps the result to
//! a Gaussian via Box-Muller; there is no mutable generator state anywhere.

#[cfg(not(feature = "std"))]
use crate::float::FloatExt;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer: a bijective avalanche mix on 64 bits.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashes a key of any length into one well-mixed word.
pub fn hash(parts: &[u64]) -> u64 {
    let mut h = 0x853c_49e6_748f_ea9b;
    for &p in parts {
        h = mix64(h ^ p);
    }
    h
}

/// Uniform draw in `[0, 1)` keyed by `parts`.
pub fn uniform(parts: &[u64]) -> f64 {
    // Top 53 bits give the full double mantissa.
    (hash(parts) >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Standard normal draw keyed by `parts` (Box-Muller, cosine branch).
pub fn gaussian(parts: &[u64]) -> f64 {
    let h = hash(parts);
    let u1 = uniform(&[h, 0]);
    let u2 = uniform(&[h, 1]);
    // 1 - u1 lies in (0, 1], so the log is finite.
    (-2.0 * (1.0 - u1).ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
}

/// Gaussian gradient-noise component for one coordinate of one evaluation.
pub fn grad_noise(seed: u64, step_index: u64, coord: u64) -> f64 {
    gaussian(&[seed, step_index, coord])
}
