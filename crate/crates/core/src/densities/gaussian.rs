use alloc::format;

use crate::densities::AffineMap;
use crate::error::{Error, Result};

const LOG_2PI: f64 = 1.8378770664093453;

/// A one-dimensional Gaussian, parametrized by mean and (strictly positive)
/// variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian1D {
    mean: f64,
    variance: f64,
}

impl Gaussian1D {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mean",
                reason: format!("must be finite, got {mean}"),
            });
        }
        if !(variance > 0.0) || !variance.is_finite() {
            return Err(Error::InvalidParameter {
                name: "variance",
                reason: format!("must be strictly positive and finite, got {variance}"),
            });
        }
        Ok(Self { mean, variance })
    }

    /// The standard normal N(0, 1).
    pub fn standard() -> Self {
        Self { mean: 0.0, variance: 1.0 }
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn std_dev(&self) -> f64 {
        libm::sqrt(self.variance)
    }

    pub fn pdf(&self, s: f64) -> f64 {
        libm::exp(self.log_pdf(s))
    }

    /// ln N(s; mean, variance) = -0.5 (ln 2pi + ln var) - (s - mean)^2 / (2 var)
    pub fn log_pdf(&self, s: f64) -> f64 {
        let d = s - self.mean;
        -0.5 * (LOG_2PI + libm::log(self.variance)) - d * d / (2.0 * self.variance)
    }

    /// Distribution of `a*s + b` for `s ~ N(mean, variance)`.
    pub fn pushforward_affine(&self, map: &AffineMap) -> Self {
        Self {
            mean: map.scale() * self.mean + map.offset(),
            variance: map.scale() * map.scale() * self.variance,
        }
    }
}
