use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Tolerance for the normalization invariant on stored weight vectors.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// A distribution over a finite set of mutually exclusive outcomes.
///
/// Weights are stored exactly as given (no renormalization); the constructor
/// only checks that they are nonnegative and sum to one within
/// [`WEIGHT_SUM_TOL`]. Outcomes may optionally carry labels; labels that all
/// parse as numbers give the categorical a numeric support, which the
/// estimators use for means and medians.
#[derive(Debug, Clone, PartialEq)]
pub struct Categorical {
    weights: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl Categorical {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        validate_weights(&weights)?;
        Ok(Self { weights, labels: None })
    }

    pub fn with_labels(weights: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        validate_weights(&weights)?;
        if labels.len() != weights.len() {
            return Err(Error::InvalidParameter {
                name: "labels",
                reason: format!(
                    "expected {} labels to match the weights, got {}",
                    weights.len(),
                    labels.len()
                ),
            });
        }
        Ok(Self { weights, labels: Some(labels) })
    }

    /// Uniform distribution over `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: String::from("need at least one outcome"),
            });
        }
        let w = 1.0 / n as f64;
        Ok(Self {
            weights: alloc::vec![w; n],
            labels: None,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Probability mass of outcome `index`.
    pub fn prob(&self, index: usize) -> Result<f64> {
        self.weights
            .get(index)
            .copied()
            .ok_or(Error::IndexOutOfRange { index, len: self.weights.len() })
    }

    /// The outcome values as numbers, when every label parses as one.
    pub fn numeric_labels(&self) -> Option<Vec<f64>> {
        let labels = self.labels.as_ref()?;
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            out.push(l.parse::<f64>().ok()?);
        }
        Some(out)
    }

    /// Refine outcome `index` into two outcomes carrying `alpha` and
    /// `1 - alpha` of its weight. All other weights are copied bitwise.
    pub fn split_event(&self, index: usize, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidSplit { alpha });
        }
        let w = self.prob(index)?;
        let mut weights = Vec::with_capacity(self.weights.len() + 1);
        weights.extend_from_slice(&self.weights[..index]);
        weights.push(alpha * w);
        weights.push((1.0 - alpha) * w);
        weights.extend_from_slice(&self.weights[index + 1..]);

        let labels = self.labels.as_ref().map(|ls| {
            let mut out = Vec::with_capacity(ls.len() + 1);
            out.extend_from_slice(&ls[..index]);
            out.push(format!("{}/a", ls[index]));
            out.push(format!("{}/b", ls[index]));
            out.extend_from_slice(&ls[index + 1..]);
            out
        });

        Ok(Self { weights, labels })
    }

    /// Weighted mean and variance over the numeric support.
    pub fn moments(&self) -> Result<(f64, f64)> {
        let support = self.numeric_labels().ok_or(Error::NonNumericSupport)?;
        let mut mean = 0.0;
        let mut second = 0.0;
        for (w, x) in self.weights.iter().zip(&support) {
            mean += w * x;
            second += w * x * x;
        }
        Ok((mean, second - mean * mean))
    }
}

fn validate_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidParameter {
            name: "weights",
            reason: String::from("need at least one outcome"),
        });
    }
    let mut sum = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidParameter {
                name: "weights",
                reason: format!("weight {w} at index {i} is not a nonnegative finite number"),
            });
        }
        sum += w;
    }
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::InvalidParameter {
            name: "weights",
            reason: format!("must sum to 1 within {WEIGHT_SUM_TOL:e}, got {sum}"),
        });
    }
    Ok(())
}
