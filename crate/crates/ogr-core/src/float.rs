//! Float math that works with and without `std`.
//!
//! Inherent `f64` methods (`sqrt`, `ln`, ...) live in `std`; when the crate is
//! built without it, this extension trait supplies the same names via `libm`.
//! Modules that need transcendental math import [`FloatExt`] under
//! `cfg(not(feature = "std"))` only, so method calls resolve to the inherent
//! versions whenever `std` is present.

#![allow(dead_code)]

#[cfg(not(feature = "std"))]
pub(crate) trait FloatExt {
    fn sqrt(self) -> f64;
    fn ln(self) -> f64;
    fn exp(self) -> f64;
    fn cos(self) -> f64;
    fn tanh(self) -> f64;
    fn powi(self, n: i32) -> f64;
    fn abs(self) -> f64;
    fn signum(self) -> f64;
}

#[cfg(not(feature = "std"))]
impl FloatExt for f64 {
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    fn ln(self) -> f64 {
        libm::log(self)
    }
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    fn cos(self) -> f64 {
        libm::cos(self)
    }
    fn tanh(self) -> f64 {
        libm::tanh(self)
    }
    fn powi(self, n: i32) -> f64 {
        libm::pow(self, n as f64)
    }
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
    fn signum(self) -> f64 {
        if self.is_nan() {
            f64::NAN
        } else if self.is_sign_negative() {
            -1.0
        } else {
            1.0
        }
    }
}
