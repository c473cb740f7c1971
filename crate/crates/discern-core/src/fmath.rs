//! Float math routed through `libm` so the crate builds without `std`.

pub(crate) use libm::{cbrt, copysign, erf, exp, fabs as abs, hypot, log as ln, round, sqrt};

/// Standard normal density.
pub(crate) fn normal_pdf(z: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * exp(-0.5 * z * z)
}

/// Standard normal CDF via `erf`.
pub(crate) fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / core::f64::consts::SQRT_2))
}
