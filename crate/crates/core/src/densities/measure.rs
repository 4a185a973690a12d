use alloc::format;
use alloc::vec::Vec;

use crate::densities::Density;
use crate::error::{Error, Result};

/// The reference measure the loss argument `q/m` is taken against.
///
/// `CountingUniform` assigns measure one to every outcome or grid point; the
/// `Grid` variant carries one value per outcome. Absolute continuity (m > 0
/// wherever the densities in play are positive) is enforced where ratios are
/// actually formed, not at construction.
#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceMeasure {
    CountingUniform,
    Grid(Vec<f64>),
}

impl ReferenceMeasure {
    /// Pointwise positive measure values.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "measure values",
                    reason: format!("value {v} at index {i} is not a positive finite number"),
                });
            }
        }
        Ok(Self::Grid(values))
    }

    /// Use a density's own weights or grid values as the measure (the `m = p`
    /// construction). Closed-form densities have no finite value vector;
    /// discretize them first.
    pub fn from_density(d: &Density) -> Result<Self> {
        match d {
            Density::Categorical(c) => Ok(Self::Grid(c.weights().to_vec())),
            Density::Grid(g) => Ok(Self::Grid(g.values().to_vec())),
            _ => Err(Error::UnsupportedDensity {
                operation: "reference measure from density",
                kind: d.kind_name(),
            }),
        }
    }

    /// Measure value at outcome/grid index `i`.
    pub fn value_at(&self, i: usize) -> f64 {
        match self {
            Self::CountingUniform => 1.0,
            Self::Grid(v) => v[i],
        }
    }

    /// Check compatibility with an `n`-outcome space.
    pub fn check_len(&self, n: usize) -> Result<()> {
        match self {
            Self::CountingUniform => Ok(()),
            Self::Grid(v) if v.len() == n => Ok(()),
            Self::Grid(v) => Err(Error::MismatchedSpaces {
                reason: format!("measure has {} values but the space has {} outcomes", v.len(), n),
            }),
        }
    }

    /// Split outcome `index` of a measure over `outcome_count` outcomes into
    /// proportions `alpha` and `1 - alpha`. A counting-uniform measure is
    /// materialized to explicit values first.
    pub fn split(&self, outcome_count: usize, index: usize, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidSplit { alpha });
        }
        let base: Vec<f64> = match self {
            Self::CountingUniform => alloc::vec![1.0; outcome_count],
            Self::Grid(v) => {
                self.check_len(outcome_count)?;
                v.clone()
            }
        };
        if index >= base.len() {
            return Err(Error::IndexOutOfRange { index, len: base.len() });
        }
        let mut out = Vec::with_capacity(base.len() + 1);
        out.extend_from_slice(&base[..index]);
        out.push(alpha * base[index]);
        out.push((1.0 - alpha) * base[index]);
        out.extend_from_slice(&base[index + 1..]);
        Ok(Self::Grid(out))
    }
}

impl Default for ReferenceMeasure {
    /// The paper-default `m = 1`.
    fn default() -> Self {
        Self::CountingUniform
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::Categorical;
    use alloc::vec;

    #[test]
    fn counting_uniform_is_one_everywhere() {
        let m = ReferenceMeasure::CountingUniform;
        assert_eq!(m.value_at(0), 1.0);
        assert_eq!(m.value_at(17), 1.0);
        assert!(m.check_len(5).is_ok());
    }

    #[test]
    fn rejects_nonpositive_values() {
        assert!(ReferenceMeasure::from_values(vec![1.0, 0.0]).is_err());
        assert!(ReferenceMeasure::from_values(vec![1.0, -2.0]).is_err());
    }

    #[test]
    fn split_materializes_counting_uniform() {
        let m = ReferenceMeasure::CountingUniform;
        let s = m.split(3, 1, 0.4).unwrap();
        match s {
            ReferenceMeasure::Grid(v) => assert_eq!(v, vec![1.0, 0.4, 0.6, 1.0]),
            _ => panic!("expected grid values"),
        }
    }

    #[test]
    fn from_density_clones_weights() {
        let c = Categorical::new(vec![0.3, 0.7]).unwrap();
        let m = ReferenceMeasure::from_density(&Density::Categorical(c)).unwrap();
        assert_eq!(m.value_at(0), 0.3);
        assert_eq!(m.value_at(1), 0.7);
    }
}
