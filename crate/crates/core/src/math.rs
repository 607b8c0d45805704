//! Thin wrappers over `libm` so the numerics build without `std`.

pub use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, SQRT_2, TAU};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sin_cos(x: f64) -> (f64, f64) {
    libm::sincos(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

/// Greatest common divisor by Euclid's algorithm.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `log(1 + x) / x`, continuous at `x = 0`.
#[inline]
pub fn ln_1p_over(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        ln_1p(x) / x
    }
}

/// First divided difference of the logarithm, `(log b − log a) / (b − a)`.
#[inline]
pub fn log_divided_difference(a: f64, b: f64) -> f64 {
    ln_1p_over((b - a) / a) / a
}

/// Second divided difference of `−log` at `a ≤ b ≤ c`, i.e. `(−log)[a, b, c]`.
///
/// Positive for every positive triple; evaluated through first divided
/// differences, which keeps it accurate when `b` approaches either end.
#[inline]
pub fn neg_log_second_difference(a: f64, b: f64, c: f64) -> f64 {
    (log_divided_difference(a, b) - log_divided_difference(b, c)) / (c - a)
}
