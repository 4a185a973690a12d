//! Fitting a restricted approximation `q` to a target belief `p`.
//!
//! Two objectives are supported: the approximation divergence `KL(p, q)`,
//! whose exact optimum over the Gaussian family is moment matching, and the
//! inference divergence `KL(q, p)`, which is mode-seeking on multi-modal
//! targets and sensitive to initialization. Fits run a deterministic
//! Nelder-Mead descent on the quadrature objective from one or several
//! starting points and report every basin they land in.

mod simplex;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::densities::{Categorical, Density, Gaussian1D, Mixture1D};
use crate::error::{Error, Result};
use crate::estimators::quantile;
use crate::quadrature::linspace;
use crate::scoring::kl;
use crate::ZERO_DENSITY;

pub use simplex::{SimplexOptions, SimplexResult};

const LOG_2PI: f64 = 1.8378770664093453;

/// Default lower bound on the fitted Gaussian variance. Inference-direction
/// objectives can drive the variance toward zero at a mode; the floor keeps
/// the objective finite so the report can document the collapse.
pub const VARIANCE_FLOOR: f64 = 1e-8;

/// The restricted set of candidate approximations.
#[derive(Debug, Clone, PartialEq)]
pub enum ParametricFamily {
    /// All Gaussians, parametrized as `(mean, ln variance)` with the variance
    /// clamped to a floor.
    Gaussian1d { variance_floor: f64 },
    /// All distributions over `outcomes` outcomes, parametrized by softmax of
    /// `outcomes - 1` free scores (the last score is pinned to zero).
    CategoricalSimplex { outcomes: usize },
}

impl ParametricFamily {
    pub fn gaussian() -> Self {
        Self::Gaussian1d { variance_floor: VARIANCE_FLOOR }
    }

    pub fn simplex(outcomes: usize) -> Result<Self> {
        if outcomes < 2 {
            return Err(Error::InvalidParameter {
                name: "outcomes",
                reason: format!("need at least 2 outcomes, got {outcomes}"),
            });
        }
        Ok(Self::CategoricalSimplex { outcomes })
    }

    /// Number of free parameters.
    pub fn dim(&self) -> usize {
        match self {
            Self::Gaussian1d { .. } => 2,
            Self::CategoricalSimplex { outcomes } => outcomes - 1,
        }
    }

    /// Materialize a parameter vector as a density. Every finite parameter
    /// vector yields a valid member of the family.
    pub fn density(&self, params: &[f64]) -> Result<Density> {
        if params.len() != self.dim() {
            return Err(Error::InvalidParameter {
                name: "params",
                reason: format!("expected {} parameters, got {}", self.dim(), params.len()),
            });
        }
        match self {
            Self::Gaussian1d { variance_floor } => {
                let variance = libm::exp(params[1]).max(*variance_floor);
                Ok(Density::Gaussian(Gaussian1D::new(params[0], variance)?))
            }
            Self::CategoricalSimplex { outcomes } => {
                Ok(Density::Categorical(Categorical::new(softmax(params, *outcomes))?))
            }
        }
    }
}

/// Softmax of `(scores..., 0)`.
fn softmax(scores: &[f64], outcomes: usize) -> Vec<f64> {
    debug_assert_eq!(scores.len() + 1, outcomes);
    let mut max = 0.0_f64;
    for &s in scores {
        max = max.max(s);
    }
    let mut out = Vec::with_capacity(outcomes);
    let mut total = 0.0;
    for i in 0..outcomes {
        let s = if i + 1 == outcomes { 0.0 } else { scores[i] };
        let e = libm::exp(s - max);
        total += e;
        out.push(e);
    }
    for v in out.iter_mut() {
        *v /= total;
    }
    out
}

/// Which divergence the fit minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitDirection {
    /// Minimize `KL(p, q)` over `q`: mass-covering, the optimal direction for
    /// approximation.
    ApproximationKl,
    /// Minimize `KL(q, p)` over `q`: the variational-inference direction,
    /// mode-seeking on multi-modal targets.
    InferenceKl,
}

impl FitDirection {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::ApproximationKl => "approximation-kl",
            Self::InferenceKl => "inference-kl",
        }
    }
}

/// One Nelder-Mead run within a multistart fit.
#[derive(Debug, Clone, PartialEq)]
pub struct MultistartRun {
    pub init: Vec<f64>,
    pub params: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

/// Result of a fit: the winning density plus diagnostics for every start.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub fitted: Density,
    pub divergence_value: f64,
    pub direction: FitDirection,
    pub initial_point: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub multistart_results: Vec<MultistartRun>,
}

/// The Gaussian with the target's mean and variance: the exact minimizer of
/// `KL(p, .)` over the Gaussian family.
pub fn moment_match_gaussian(p: &Density) -> Result<Gaussian1D> {
    let (mean, variance) = p.moments()?;
    if !(variance > 0.0) {
        return Err(Error::DegenerateTarget { variance });
    }
    Gaussian1D::new(mean, variance)
}

/// Quadrature view of a continuous target: grid points, Simpson weights and
/// (window-normalized) density values.
struct QuadTarget {
    points: Vec<f64>,
    weights: Vec<f64>,
    p: Vec<f64>,
    log_p: Vec<f64>,
}

impl QuadTarget {
    fn from_density(p: &Density) -> Result<Self> {
        let grid = p.discretize_default()?;
        let weights = grid.weights();
        let log_p = (0..grid.len()).map(|i| grid.log_value(i)).collect();
        Ok(Self {
            points: grid.grid().to_vec(),
            weights,
            p: grid.values().to_vec(),
            log_p,
        })
    }
}

fn gaussian_objective(
    target: &QuadTarget,
    direction: FitDirection,
    variance_floor: f64,
    params: &[f64],
) -> f64 {
    let mean = params[0];
    let log_var = params[1];
    if !mean.is_finite() || !log_var.is_finite() {
        return f64::INFINITY;
    }
    let variance = libm::exp(log_var).max(variance_floor);
    if !variance.is_finite() {
        return f64::INFINITY;
    }
    let log_norm = -0.5 * (LOG_2PI + libm::log(variance));
    let inv_two_var = 1.0 / (2.0 * variance);
    let mut acc = 0.0;
    match direction {
        FitDirection::ApproximationKl => {
            // <ln p - ln q>_p; q is the raw family pdf, never renormalized
            // over the window, so the stationary point is exact moment
            // matching of the windowed target.
            for i in 0..target.points.len() {
                let pw = target.p[i];
                if pw < ZERO_DENSITY {
                    continue;
                }
                let d = target.points[i] - mean;
                let log_q = log_norm - d * d * inv_two_var;
                acc += target.weights[i] * pw * (target.log_p[i] - log_q);
            }
        }
        FitDirection::InferenceKl => {
            for i in 0..target.points.len() {
                let d = target.points[i] - mean;
                let log_q = log_norm - d * d * inv_two_var;
                let qw = libm::exp(log_q);
                if qw < ZERO_DENSITY {
                    continue;
                }
                if target.log_p[i] == f64::NEG_INFINITY {
                    return f64::INFINITY;
                }
                acc += target.weights[i] * qw * (log_q - target.log_p[i]);
            }
        }
    }
    acc
}

fn simplex_objective(target: &Categorical, direction: FitDirection, params: &[f64]) -> f64 {
    for &v in params {
        if !v.is_finite() {
            return f64::INFINITY;
        }
    }
    let q = softmax(params, target.len());
    let mut acc = 0.0;
    match direction {
        FitDirection::ApproximationKl => {
            for (&pw, &qw) in target.weights().iter().zip(&q) {
                if pw < ZERO_DENSITY {
                    continue;
                }
                if qw < ZERO_DENSITY {
                    return f64::INFINITY;
                }
                acc += pw * (libm::log(pw) - libm::log(qw));
            }
        }
        FitDirection::InferenceKl => {
            for (&pw, &qw) in target.weights().iter().zip(&q) {
                if qw < ZERO_DENSITY {
                    continue;
                }
                if pw < ZERO_DENSITY {
                    return f64::INFINITY;
                }
                acc += qw * (libm::log(qw) - libm::log(pw));
            }
        }
    }
    acc
}

/// Deterministic multistart grid: means at the 10th-90th percentiles of the
/// target, log-variance at 0 and at the target's own log-variance.
fn default_gaussian_starts(p: &Density) -> Result<Vec<Vec<f64>>> {
    let (_, variance) = p.moments()?;
    if !(variance > 0.0) {
        return Err(Error::DegenerateTarget { variance });
    }
    let log_var = libm::log(variance);
    let mut starts = Vec::with_capacity(8);
    for &prob in &[0.1, 0.36666666666666664, 0.6333333333333333, 0.9] {
        let mean = quantile(p, prob)?;
        for &lv in &[0.0, log_var] {
            starts.push(alloc::vec![mean, lv]);
        }
    }
    Ok(starts)
}

fn default_simplex_starts(p: &Categorical) -> Vec<Vec<f64>> {
    let k = p.len();
    let uniform = alloc::vec![0.0; k - 1];
    // Log-ratio start: softmax of these scores reproduces p (clamped away
    // from empty outcomes).
    let last = p.weights()[k - 1].max(1e-12);
    let matched: Vec<f64> = p.weights()[..k - 1]
        .iter()
        .map(|&w| libm::log(w.max(1e-12) / last))
        .collect();
    alloc::vec![uniform, matched]
}

/// Minimize the chosen divergence over the family by simplex descent on the
/// quadrature objective.
///
/// Without an explicit `init`, eight deterministic starts spread over the
/// target's support are used (two for the simplex family) and every endpoint
/// is reported, since the inference direction can settle in different basins
/// depending on the start. Non-convergence flags the report but still
/// returns the best point found; an objective that is infinite everywhere is
/// an error.
pub fn fit(
    p: &Density,
    family: &ParametricFamily,
    direction: FitDirection,
    init: Option<&[f64]>,
) -> Result<FitReport> {
    if let Some(init) = init {
        if init.len() != family.dim() {
            return Err(Error::InvalidParameter {
                name: "init",
                reason: format!("expected {} parameters, got {}", family.dim(), init.len()),
            });
        }
        for &v in init {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "init",
                    reason: String::from("initial parameters must be finite"),
                });
            }
        }
    }

    enum Objective<'a> {
        Gaussian { target: QuadTarget, floor: f64, _marker: core::marker::PhantomData<&'a ()> },
        Simplex { target: &'a Categorical },
    }

    let objective = match family {
        ParametricFamily::Gaussian1d { variance_floor } => Objective::Gaussian {
            target: QuadTarget::from_density(p)?,
            floor: *variance_floor,
            _marker: core::marker::PhantomData,
        },
        ParametricFamily::CategoricalSimplex { outcomes } => {
            let c = p.as_categorical().ok_or(Error::MismatchedSpaces {
                reason: String::from("the categorical-simplex family needs a categorical target"),
            })?;
            if c.len() != *outcomes {
                return Err(Error::MismatchedSpaces {
                    reason: format!(
                        "family has {} outcomes but the target has {}",
                        outcomes,
                        c.len()
                    ),
                });
            }
            Objective::Simplex { target: c }
        }
    };

    let starts: Vec<Vec<f64>> = match init {
        Some(x0) => alloc::vec![x0.to_vec()],
        None => match family {
            ParametricFamily::Gaussian1d { .. } => default_gaussian_starts(p)?,
            ParametricFamily::CategoricalSimplex { .. } => {
                default_simplex_starts(p.as_categorical().expect("checked above"))
            }
        },
    };

    let opts = SimplexOptions::default();
    let mut runs: Vec<MultistartRun> = Vec::with_capacity(starts.len());
    let mut iterations = Vec::with_capacity(starts.len());
    for start in &starts {
        let result = match &objective {
            Objective::Gaussian { target, floor, .. } => simplex::minimize(
                |x| gaussian_objective(target, direction, *floor, x),
                start,
                &opts,
            ),
            Objective::Simplex { target } => {
                simplex::minimize(|x| simplex_objective(target, direction, x), start, &opts)
            }
        };
        iterations.push(result.iterations);
        runs.push(MultistartRun {
            init: start.clone(),
            params: result.x,
            value: result.value,
            converged: result.converged,
        });
    }

    let mut best = 0;
    for i in 1..runs.len() {
        if runs[i].value < runs[best].value {
            best = i;
        }
    }
    if !runs[best].value.is_finite() {
        return Err(Error::InfiniteObjective);
    }

    let fitted = family.density(&runs[best].params)?;
    let divergence_value = match direction {
        FitDirection::ApproximationKl => kl(p, &fitted)?,
        FitDirection::InferenceKl => kl(&fitted, p)?,
    };

    Ok(FitReport {
        fitted,
        divergence_value,
        direction,
        initial_point: runs[best].init.clone(),
        iterations: iterations[best],
        converged: runs[best].converged,
        multistart_results: runs,
    })
}

/// One row of the two-direction comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    pub s: f64,
    pub p: f64,
    pub q_approx: f64,
    pub q_infer: f64,
}

/// The bimodal two-direction experiment: target, three fits and plot data.
#[derive(Debug, Clone)]
pub struct Figure1Result {
    pub target: Mixture1D,
    pub approx: FitReport,
    pub infer_pos: FitReport,
    pub infer_neg: FitReport,
    pub rows: Vec<Figure1Row>,
}

/// Number of plot rows emitted by [`figure1_demo`].
pub const FIGURE1_PLOT_POINTS: usize = 401;

/// Approximate the symmetric mixture `0.5 N(-sep, v) + 0.5 N(+sep, v)` with a
/// single Gaussian in both divergence directions.
///
/// The approximation direction uses the default multistarts; the inference
/// direction is run twice, initialized at `+sep/2` and `-sep/2`, because its
/// outcome depends on the starting basin. The `q_infer` plot column shows the
/// positively-initialized fit.
pub fn figure1_demo(separation: f64, component_variance: f64) -> Result<Figure1Result> {
    if !(separation >= 0.0) || !separation.is_finite() {
        return Err(Error::InvalidParameter {
            name: "separation",
            reason: format!("must be a nonnegative finite number, got {separation}"),
        });
    }
    let target = Mixture1D::symmetric_pair(separation, component_variance)?;
    let p = Density::Mixture(target.clone());
    let family = ParametricFamily::gaussian();

    let approx = fit(&p, &family, FitDirection::ApproximationKl, None)?;
    let log_v = libm::log(component_variance);
    let infer_pos = fit(
        &p,
        &family,
        FitDirection::InferenceKl,
        Some(&[separation / 2.0, log_v]),
    )?;
    let infer_neg = fit(
        &p,
        &family,
        FitDirection::InferenceKl,
        Some(&[-separation / 2.0, log_v]),
    )?;

    let half_width = separation + 4.0 * libm::sqrt(component_variance);
    let grid = linspace(-half_width, half_width, FIGURE1_PLOT_POINTS);
    let rows = grid
        .iter()
        .map(|&s| {
            Ok(Figure1Row {
                s,
                p: p.pdf(s)?,
                q_approx: approx.fitted.pdf(s)?,
                q_infer: infer_pos.fitted.pdf(s)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Figure1Result { target, approx, infer_pos, infer_neg, rows })
}
