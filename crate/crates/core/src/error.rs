use alloc::string::String;
use thiserror::Error;

/// Errors reported by the density, scoring, estimation and fitting layers.
///
/// Messages name the offending field or quantity so that callers (in
/// particular the CLI) can surface them verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor argument violates its domain (negative weight,
    /// non-positive variance, non-increasing grid, ...).
    #[error("invalid `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Outcome index outside a categorical's support.
    #[error("index {index} out of range for {len} outcomes")]
    IndexOutOfRange { index: usize, len: usize },

    /// Split proportion outside the open interval (0, 1).
    #[error("invalid split proportion alpha = {alpha}; must lie strictly between 0 and 1")]
    InvalidSplit { alpha: f64 },

    /// The two distributions do not live on a common outcome space.
    #[error("mismatched outcome spaces: {reason}")]
    MismatchedSpaces { reason: String },

    /// Grid-valued inputs must share the exact same support points.
    #[error("grid mismatch: {reason}")]
    GridMismatch { reason: String },

    /// Discretization window leaves too much probability mass outside.
    #[error("discretization window truncates mass {mass:e} (limit {limit:e}); widen the window")]
    ExcessiveTruncation { mass: f64, limit: f64 },

    /// The reference measure vanishes somewhere the density is positive.
    #[error("reference measure is zero at outcome {index} where the density is positive")]
    ZeroMeasure { index: usize },

    /// A loss of the ratio q/m received a non-positive argument.
    #[error("ratio q/m = {ratio:e} at outcome {index} is not positive where p > 0")]
    InvalidRatio { ratio: f64, index: usize },

    /// Conditioning on a data index with zero marginal probability.
    #[error("joint marginal at data index {index} is zero; cannot condition")]
    ZeroMarginal { index: usize },

    /// Mean/median of a categorical needs numeric outcome labels.
    #[error("operation requires numeric outcome labels, which this categorical does not have")]
    NonNumericSupport,

    /// Moment matching against a numerically degenerate target.
    #[error("target has non-positive variance {variance:e}; cannot moment match")]
    DegenerateTarget { variance: f64 },

    /// The fit objective was +infinity at every evaluated point.
    #[error("objective is +infinity everywhere; the family cannot cover the target's support")]
    InfiniteObjective,

    /// Numerical differentiation produced a non-finite estimate.
    #[error("non-finite derivative estimate at x = {x:e}")]
    NonFiniteDerivative { x: f64 },

    /// The requested operation is not defined for this density kind.
    #[error("operation `{operation}` is not defined for a {kind} density")]
    UnsupportedDensity {
        operation: &'static str,
        kind: &'static str,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
