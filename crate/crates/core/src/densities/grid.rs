use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::densities::AffineMap;
use crate::error::{Error, Result};
use crate::quadrature::{simpson_weights, weighted_sum};
use crate::ZERO_DENSITY;

/// Quadrature rule a [`GridDensity`] integrates itself with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationRule {
    /// Composite Simpson on the uniform grid (3/8 tail for odd interval counts).
    Simpson,
}

/// A density sampled on a strictly increasing uniform grid.
///
/// Values are renormalized at construction so the quadrature integral is one;
/// the pre-normalization integral is kept for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity {
    grid: Vec<f64>,
    values: Vec<f64>,
    rule: IntegrationRule,
    raw_integral: f64,
}

impl GridDensity {
    /// Build from support points and nonnegative density values, renormalizing
    /// to unit integral under the Simpson rule.
    pub fn from_values(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: String::from("need at least two support points"),
            });
        }
        if grid.len() != values.len() {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: format!("expected {} values to match the grid, got {}", grid.len(), values.len()),
            });
        }
        let h = grid[1] - grid[0];
        if !(h > 0.0) {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: String::from("support points must be strictly increasing"),
            });
        }
        let span = grid[grid.len() - 1] - grid[0];
        for i in 1..grid.len() {
            let step = grid[i] - grid[i - 1];
            if !(step > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "grid",
                    reason: format!("support points must be strictly increasing (violated at index {i})"),
                });
            }
            if (step - h).abs() > 1e-9 * span.max(1.0) {
                return Err(Error::InvalidParameter {
                    name: "grid",
                    reason: format!("grid must be uniform; spacing at index {i} is {step}, expected {h}"),
                });
            }
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter {
                    name: "values",
                    reason: format!("value {v} at index {i} is not a nonnegative finite number"),
                });
            }
        }
        let w = simpson_weights(grid.len(), h);
        let raw_integral = weighted_sum(&w, &values);
        if !(raw_integral > 0.0) || !raw_integral.is_finite() {
            return Err(Error::InvalidParameter {
                name: "values",
                reason: format!("integral over the grid must be positive and finite, got {raw_integral}"),
            });
        }
        let values = values.into_iter().map(|v| v / raw_integral).collect();
        Ok(Self {
            grid,
            values,
            rule: IntegrationRule::Simpson,
            raw_integral,
        })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rule(&self) -> IntegrationRule {
        self.rule
    }

    /// Integral of the supplied values before renormalization.
    pub fn raw_integral(&self) -> f64 {
        self.raw_integral
    }

    pub fn lo(&self) -> f64 {
        self.grid[0]
    }

    pub fn hi(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    pub fn step(&self) -> f64 {
        (self.hi() - self.lo()) / (self.grid.len() - 1) as f64
    }

    /// Quadrature weights matching this grid.
    pub fn weights(&self) -> Vec<f64> {
        simpson_weights(self.grid.len(), self.step())
    }

    /// Density at an arbitrary point by linear interpolation between grid
    /// values; zero outside the window.
    pub fn pdf(&self, s: f64) -> f64 {
        if s < self.lo() || s > self.hi() {
            return 0.0;
        }
        let h = self.step();
        let t = (s - self.lo()) / h;
        let i = (libm::floor(t) as usize).min(self.grid.len() - 2);
        let frac = (s - self.grid[i]) / h;
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }

    /// Log-density at grid point `i`; values at or below the zero-density
    /// threshold report negative infinity.
    pub fn log_value(&self, i: usize) -> f64 {
        let v = self.values[i];
        if v < ZERO_DENSITY {
            f64::NEG_INFINITY
        } else {
            libm::log(v)
        }
    }

    /// Quadrature mean and variance.
    pub fn moments(&self) -> (f64, f64) {
        let w = self.weights();
        let mut mean = 0.0;
        let mut second = 0.0;
        for i in 0..self.len() {
            let x = self.grid[i];
            let m = w[i] * self.values[i];
            mean += m * x;
            second += m * x * x;
        }
        (mean, second - mean * mean)
    }

    /// Map grid points through `a*s + b` and divide values by `|a|`
    /// (reversing the order when `a < 0` to keep the grid increasing).
    pub fn pushforward_affine(&self, map: &AffineMap) -> Result<Self> {
        let a = map.scale();
        let inv_abs_a = 1.0 / libm::fabs(a);
        let mut grid: Vec<f64> = self.grid.iter().map(|&s| map.apply(s)).collect();
        let mut values: Vec<f64> = self.values.iter().map(|&v| v * inv_abs_a).collect();
        if a < 0.0 {
            grid.reverse();
            values.reverse();
        }
        Self::from_values(grid, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::linspace;

    fn std_normal_grid(lo: f64, hi: f64, n: usize) -> GridDensity {
        let grid = linspace(lo, hi, n);
        let values = grid
            .iter()
            .map(|&x| libm::exp(-0.5 * x * x) / libm::sqrt(2.0 * core::f64::consts::PI))
            .collect();
        GridDensity::from_values(grid, values).unwrap()
    }

    #[test]
    fn normalizes_on_construction() {
        let g = std_normal_grid(-8.0, 8.0, 2048);
        let w = g.weights();
        let integral = weighted_sum(&w, g.values());
        assert!((integral - 1.0).abs() < 1e-9);
        assert!((g.raw_integral() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn grid_moments_match_closed_form() {
        let g = std_normal_grid(-8.0, 8.0, 4096);
        let (m, v) = g.moments();
        assert!(m.abs() < 1e-9);
        assert!((v - 1.0).abs() < 1e-7);
    }

    #[test]
    fn interpolated_pdf() {
        let g = std_normal_grid(-8.0, 8.0, 4096);
        let expected = 0.3989422804014327;
        assert!((g.pdf(0.0) - expected).abs() < 1e-6);
        assert_eq!(g.pdf(9.0), 0.0);
        assert_eq!(g.pdf(-9.0), 0.0);
    }

    #[test]
    fn rejects_non_uniform_grid() {
        let grid = alloc::vec![0.0, 1.0, 3.0];
        let values = alloc::vec![1.0, 1.0, 1.0];
        assert!(GridDensity::from_values(grid, values).is_err());
    }

    #[test]
    fn rejects_decreasing_grid() {
        let grid = alloc::vec![0.0, -1.0, -2.0];
        let values = alloc::vec![1.0, 1.0, 1.0];
        assert!(GridDensity::from_values(grid, values).is_err());
    }

    #[test]
    fn pushforward_negative_scale_reverses() {
        let g = std_normal_grid(-6.0, 10.0, 512);
        let u = AffineMap::new(-1.0, 0.0).unwrap();
        let h = g.pushforward_affine(&u).unwrap();
        assert_eq!(h.lo(), -10.0);
        assert_eq!(h.hi(), 6.0);
        let (m_g, v_g) = g.moments();
        let (m_h, v_h) = h.moments();
        assert!((m_h + m_g).abs() < 1e-12);
        assert!((v_h - v_g).abs() < 1e-12);
    }
}
