use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::densities::{AffineMap, Gaussian1D};
use crate::error::{Error, Result};

use super::categorical::WEIGHT_SUM_TOL;

/// A finite mixture of one-dimensional Gaussians.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture1D {
    component_weights: Vec<f64>,
    components: Vec<Gaussian1D>,
}

impl Mixture1D {
    pub fn new(component_weights: Vec<f64>, components: Vec<Gaussian1D>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter {
                name: "components",
                reason: String::from("need at least one component"),
            });
        }
        if component_weights.len() != components.len() {
            return Err(Error::InvalidParameter {
                name: "component_weights",
                reason: format!(
                    "expected {} weights to match the components, got {}",
                    components.len(),
                    component_weights.len()
                ),
            });
        }
        let mut sum = 0.0;
        for (i, &w) in component_weights.iter().enumerate() {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "component_weights",
                    reason: format!("weight {w} at index {i} is not a positive finite number"),
                });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidParameter {
                name: "component_weights",
                reason: format!("must sum to 1 within {WEIGHT_SUM_TOL:e}, got {sum}"),
            });
        }
        Ok(Self { component_weights, components })
    }

    /// The symmetric two-component mixture `0.5 N(-separation, v) + 0.5 N(+separation, v)`.
    pub fn symmetric_pair(separation: f64, component_variance: f64) -> Result<Self> {
        Self::new(
            alloc::vec![0.5, 0.5],
            alloc::vec![
                Gaussian1D::new(-separation, component_variance)?,
                Gaussian1D::new(separation, component_variance)?,
            ],
        )
    }

    pub fn component_weights(&self) -> &[f64] {
        &self.component_weights
    }

    pub fn components(&self) -> &[Gaussian1D] {
        &self.components
    }

    pub fn pdf(&self, s: f64) -> f64 {
        libm::exp(self.log_pdf(s))
    }

    /// Mixture log-density via log-sum-exp, so tails far below the
    /// linear-representable range still evaluate correctly.
    pub fn log_pdf(&self, s: f64) -> f64 {
        let mut terms = Vec::with_capacity(self.components.len());
        let mut max = f64::NEG_INFINITY;
        for (w, c) in self.component_weights.iter().zip(&self.components) {
            let t = libm::log(*w) + c.log_pdf(s);
            if t > max {
                max = t;
            }
            terms.push(t);
        }
        if max == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let mut acc = 0.0;
        for t in terms {
            acc += libm::exp(t - max);
        }
        max + libm::log(acc)
    }

    /// Exact mixture moments: mean `sum w_i mu_i`, second moment
    /// `sum w_i (var_i + mu_i^2)`.
    pub fn moments(&self) -> (f64, f64) {
        let mut mean = 0.0;
        let mut second = 0.0;
        for (w, c) in self.component_weights.iter().zip(&self.components) {
            mean += w * c.mean();
            second += w * (c.variance() + c.mean() * c.mean());
        }
        (mean, second - mean * mean)
    }

    /// Componentwise affine pushforward; weights are unchanged.
    pub fn pushforward_affine(&self, map: &AffineMap) -> Self {
        Self {
            component_weights: self.component_weights.clone(),
            components: self
                .components
                .iter()
                .map(|c| c.pushforward_affine(map))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm3() -> Mixture1D {
        Mixture1D::symmetric_pair(3.0, 1.0).unwrap()
    }

    #[test]
    fn pdf_at_valley() {
        // 0.5 phi(3) + 0.5 phi(-3) = phi(3)
        let expected = 0.0044318484119380075;
        assert!((pm3().pdf(0.0) - expected).abs() < 1e-15);
    }

    #[test]
    fn moments_of_symmetric_pair() {
        let (m, v) = pm3().moments();
        assert_eq!(m, 0.0);
        assert!((v - 10.0).abs() < 1e-12);
    }

    #[test]
    fn moments_of_shifted_pair() {
        let mix = Mixture1D::new(
            alloc::vec![0.5, 0.5],
            alloc::vec![
                Gaussian1D::new(0.0, 1.0).unwrap(),
                Gaussian1D::new(2.0, 1.0).unwrap(),
            ],
        )
        .unwrap();
        let (m, v) = mix.moments();
        assert!((m - 1.0).abs() < 1e-12);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn log_pdf_far_tail_stays_finite() {
        let lp = pm3().log_pdf(40.0);
        assert!(lp.is_finite());
        assert!(lp < -600.0);
    }

    #[test]
    fn negation_maps_symmetric_pair_to_itself() {
        let u = AffineMap::new(-1.0, 0.0).unwrap();
        let flipped = pm3().pushforward_affine(&u);
        // Components swap roles; the density is unchanged pointwise.
        for s in [-4.0, -1.0, 0.0, 0.5, 3.7] {
            assert!((flipped.pdf(s) - pm3().pdf(s)).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_weight_mismatch() {
        assert!(Mixture1D::new(alloc::vec![1.0], alloc::vec![]).is_err());
        assert!(Mixture1D::new(
            alloc::vec![0.5, 0.5],
            alloc::vec![Gaussian1D::standard()]
        )
        .is_err());
    }
}
