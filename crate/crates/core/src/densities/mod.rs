//! Distributions, reference measures and coordinate maps.
//!
//! Everything here is immutable after construction and safe to share across
//! threads. Expectations over continuous densities are deterministic Simpson
//! quadratures on uniform grids; there is no sampling anywhere.

mod affine;
mod categorical;
mod gaussian;
mod grid;
mod measure;
mod mixture;

pub use affine::AffineMap;
pub use categorical::{Categorical, WEIGHT_SUM_TOL};
pub use gaussian::Gaussian1D;
pub use grid::{GridDensity, IntegrationRule};
pub use measure::ReferenceMeasure;
pub use mixture::Mixture1D;

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::quadrature::{linspace, simpson_weights, weighted_sum};

/// Number of grid points used when a window is discretized by default.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Half-width of the default window, in component standard deviations.
pub const WINDOW_SIGMAS: f64 = 8.0;

/// Largest probability mass that may fall outside a discretization window.
pub const TRUNCATION_LIMIT: f64 = 1e-8;

/// A belief: either a distribution over finitely many outcomes or a
/// one-dimensional density.
#[derive(Debug, Clone, PartialEq)]
pub enum Density {
    Categorical(Categorical),
    Gaussian(Gaussian1D),
    Mixture(Mixture1D),
    Grid(GridDensity),
}

impl Density {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Density::Categorical(_) => "categorical",
            Density::Gaussian(_) => "gaussian",
            Density::Mixture(_) => "mixture",
            Density::Grid(_) => "grid",
        }
    }

    pub fn is_continuous(&self) -> bool {
        !matches!(self, Density::Categorical(_))
    }

    pub fn as_categorical(&self) -> Option<&Categorical> {
        match self {
            Density::Categorical(c) => Some(c),
            _ => None,
        }
    }

    /// Density value at a point of the continuous line.
    pub fn pdf(&self, s: f64) -> Result<f64> {
        match self {
            Density::Categorical(_) => Err(Error::UnsupportedDensity {
                operation: "pdf at a real point",
                kind: self.kind_name(),
            }),
            Density::Gaussian(g) => Ok(g.pdf(s)),
            Density::Mixture(m) => Ok(m.pdf(s)),
            Density::Grid(g) => Ok(g.pdf(s)),
        }
    }

    /// Log-density at a point. Closed forms are evaluated in log space, so
    /// far tails that underflow a linear value are still exact here.
    pub fn log_pdf(&self, s: f64) -> Result<f64> {
        match self {
            Density::Categorical(_) => Err(Error::UnsupportedDensity {
                operation: "log pdf at a real point",
                kind: self.kind_name(),
            }),
            Density::Gaussian(g) => Ok(g.log_pdf(s)),
            Density::Mixture(m) => Ok(m.log_pdf(s)),
            Density::Grid(g) => {
                let v = g.pdf(s);
                Ok(if v < crate::ZERO_DENSITY {
                    f64::NEG_INFINITY
                } else {
                    libm::log(v)
                })
            }
        }
    }

    /// Probability mass of a finite outcome.
    pub fn mass(&self, index: usize) -> Result<f64> {
        match self {
            Density::Categorical(c) => c.prob(index),
            _ => Err(Error::UnsupportedDensity {
                operation: "mass at an outcome index",
                kind: self.kind_name(),
            }),
        }
    }

    /// Mean and variance. Closed form for Gaussians and mixtures, quadrature
    /// for grids, weighted numeric labels for categoricals.
    pub fn moments(&self) -> Result<(f64, f64)> {
        match self {
            Density::Categorical(c) => c.moments(),
            Density::Gaussian(g) => Ok((g.mean(), g.variance())),
            Density::Mixture(m) => Ok(m.moments()),
            Density::Grid(g) => Ok(g.moments()),
        }
    }

    /// Distribution of `a*s + b` for `s ~ self`.
    pub fn pushforward_affine(&self, map: &AffineMap) -> Result<Density> {
        match self {
            Density::Categorical(_) => Err(Error::UnsupportedDensity {
                operation: "affine pushforward",
                kind: self.kind_name(),
            }),
            Density::Gaussian(g) => Ok(Density::Gaussian(g.pushforward_affine(map))),
            Density::Mixture(m) => Ok(Density::Mixture(m.pushforward_affine(map))),
            Density::Grid(g) => Ok(Density::Grid(g.pushforward_affine(map)?)),
        }
    }

    /// Window `[min_i (mu_i - 8 sigma_i), max_i (mu_i + 8 sigma_i)]` for
    /// closed forms; a grid's own window for grids.
    pub fn default_window(&self) -> Result<(f64, f64)> {
        match self {
            Density::Categorical(_) => Err(Error::UnsupportedDensity {
                operation: "quadrature window",
                kind: self.kind_name(),
            }),
            Density::Gaussian(g) => {
                let r = WINDOW_SIGMAS * g.std_dev();
                Ok((g.mean() - r, g.mean() + r))
            }
            Density::Mixture(m) => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for c in m.components() {
                    let r = WINDOW_SIGMAS * c.std_dev();
                    lo = lo.min(c.mean() - r);
                    hi = hi.max(c.mean() + r);
                }
                Ok((lo, hi))
            }
            Density::Grid(g) => Ok((g.lo(), g.hi())),
        }
    }

    /// Sample the density on `n` uniform points over `[lo, hi]` and
    /// renormalize. Errors if more than [`TRUNCATION_LIMIT`] of the mass lies
    /// outside the window, or if `self` is already a grid on a different
    /// window (grids are never resampled).
    pub fn discretize(&self, lo: f64, hi: f64, n: usize) -> Result<GridDensity> {
        if !(lo < hi) {
            return Err(Error::InvalidParameter {
                name: "window",
                reason: format!("lo = {lo} must be below hi = {hi}"),
            });
        }
        if n < 16 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: format!("need at least 16 grid points, got {n}"),
            });
        }
        match self {
            Density::Categorical(_) => Err(Error::UnsupportedDensity {
                operation: "discretize",
                kind: self.kind_name(),
            }),
            Density::Grid(g) => {
                let span = hi - lo;
                if g.len() == n
                    && (g.lo() - lo).abs() <= 1e-12 * span
                    && (g.hi() - hi).abs() <= 1e-12 * span
                {
                    Ok(g.clone())
                } else {
                    Err(Error::GridMismatch {
                        reason: format!(
                            "grid density lives on [{}, {}] with {} points and is never resampled; requested [{lo}, {hi}] with {n}",
                            g.lo(),
                            g.hi(),
                            g.len()
                        ),
                    })
                }
            }
            _ => {
                let grid = linspace(lo, hi, n);
                let values: Vec<f64> = grid
                    .iter()
                    .map(|&s| self.pdf(s).expect("continuous density"))
                    .collect();
                let w = simpson_weights(n, (hi - lo) / (n - 1) as f64);
                let mass_inside = weighted_sum(&w, &values);
                let truncated = 1.0 - mass_inside;
                if truncated > TRUNCATION_LIMIT {
                    return Err(Error::ExcessiveTruncation {
                        mass: truncated,
                        limit: TRUNCATION_LIMIT,
                    });
                }
                GridDensity::from_values(grid, values)
            }
        }
    }

    /// Discretize over the default window with [`DEFAULT_GRID_POINTS`] points.
    pub fn discretize_default(&self) -> Result<GridDensity> {
        match self {
            Density::Grid(g) => Ok(g.clone()),
            _ => {
                let (lo, hi) = self.default_window()?;
                self.discretize(lo, hi, DEFAULT_GRID_POINTS)
            }
        }
    }
}

impl From<Categorical> for Density {
    fn from(c: Categorical) -> Self {
        Density::Categorical(c)
    }
}

impl From<Gaussian1D> for Density {
    fn from(g: Gaussian1D) -> Self {
        Density::Gaussian(g)
    }
}

impl From<Mixture1D> for Density {
    fn from(m: Mixture1D) -> Self {
        Density::Mixture(m)
    }
}

impl From<GridDensity> for Density {
    fn from(g: GridDensity) -> Self {
        Density::Grid(g)
    }
}

/// Smallest window covering the default windows of both densities.
pub fn joint_window(a: &Density, b: &Density) -> Result<(f64, f64)> {
    let (alo, ahi) = a.default_window()?;
    let (blo, bhi) = b.default_window()?;
    Ok((alo.min(blo), ahi.max(bhi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn std_normal() -> Density {
        Density::Gaussian(Gaussian1D::standard())
    }

    fn pm3() -> Density {
        Density::Mixture(Mixture1D::symmetric_pair(3.0, 1.0).unwrap())
    }

    #[test]
    fn discretize_wide_window_normalizes() {
        let g = std_normal().discretize(-8.0, 8.0, 2048).unwrap();
        let integral = weighted_sum(&g.weights(), g.values());
        assert!((integral - 1.0).abs() < 1e-9);
    }

    #[test]
    fn discretize_narrow_window_errors() {
        let err = std_normal().discretize(-1.0, 1.0, 64).unwrap_err();
        match err {
            Error::ExcessiveTruncation { mass, .. } => {
                // 1 - (Phi(1) - Phi(-1)) = 0.31731050786291415
                assert!((mass - 0.31731050786291415).abs() < 1e-6, "mass = {mass}");
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn discretized_mixture_moments() {
        let g = pm3().discretize(-12.0, 12.0, 4096).unwrap();
        let (m, v) = g.moments();
        assert!(m.abs() < 1e-6);
        assert!((v - 10.0).abs() < 1e-6);
    }

    #[test]
    fn default_window_of_mixture() {
        let (lo, hi) = pm3().default_window().unwrap();
        assert_eq!(lo, -11.0);
        assert_eq!(hi, 11.0);
    }

    #[test]
    fn moments_respect_affine_pushforward() {
        let d = pm3();
        let u = AffineMap::new(-1.5, 2.0).unwrap();
        let pushed = d.pushforward_affine(&u).unwrap();
        let (m, v) = d.moments().unwrap();
        let (pm, pv) = pushed.moments().unwrap();
        assert!((pm - (-1.5 * m + 2.0)).abs() < 1e-9);
        assert!((pv - 2.25 * v).abs() < 1e-9);
    }

    #[test]
    fn grid_is_never_resampled() {
        let g = std_normal().discretize(-8.0, 8.0, 64).unwrap();
        let d = Density::Grid(g);
        assert!(d.discretize(-8.0, 8.0, 64).is_ok());
        assert!(matches!(
            d.discretize(-4.0, 4.0, 64),
            Err(Error::GridMismatch { .. })
        ));
    }

    #[test]
    fn categorical_mass_and_pdf_routing() {
        let c = Density::Categorical(Categorical::new(vec![0.25, 0.75]).unwrap());
        assert_eq!(c.mass(1).unwrap(), 0.75);
        assert!(c.pdf(0.5).is_err());
        assert!(std_normal().mass(0).is_err());
    }
}
