//! Divergences, cross entropies against a reference measure, expected local
//! losses, coding redundancy and the ELBO decomposition.
//!
//! Conventions shared by every function here:
//!
//! - All quantities are reported in nats (natural logarithm).
//! - `+infinity` is a regular return value, produced exactly when the second
//!   argument's stored density value is a true zero (at or below
//!   [`crate::ZERO_DENSITY`]) somewhere the first argument is positive.
//!   Closed-form Gaussians and mixtures are evaluated in log space and never
//!   hit the threshold: their divergences stay finite however far apart the
//!   distributions sit.
//! - Terms where the outer density is zero contribute nothing.
//! - Grid-valued inputs must live on identical grids; nothing is ever
//!   interpolated between mismatched grids, because that would silently
//!   change the measure. Closed-form inputs are discretized through one
//!   shared window instead.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::densities::{joint_window, Categorical, Density, ReferenceMeasure, DEFAULT_GRID_POINTS, TRUNCATION_LIMIT};
use crate::error::{Error, Result};
use crate::quadrature::{linspace, simpson_weights};
use crate::ZERO_DENSITY;

/// A local loss: a function of the single ratio `x = q(s0) / m(s0)`.
///
/// The evaluation closure must be defined and finite for every finite `x > 0`
/// and must be free of side effects; these are contracts on the implementor,
/// not checked here.
pub struct LocalLoss {
    name: String,
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl LocalLoss {
    pub fn new(name: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), eval: Box::new(eval) }
    }

    /// The logarithmic loss `x -> -ln x`.
    pub fn log() -> Self {
        Self::new("neg_log", |x| -libm::log(x))
    }

    /// The scaled family `x -> -c ln x + d`.
    pub fn scaled_log(c: f64, d: f64) -> Self {
        Self::new(format!("scaled_neg_log({c},{d})"), move |x| -c * libm::log(x) + d)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }
}

impl core::fmt::Debug for LocalLoss {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "LocalLoss({})", self.name)
    }
}

/// A general score: a function of the full reported vector `q` and the
/// outcome `s0` that occurred, prior to imposing locality.
///
/// The vector is allowed to be an arbitrary positive vector, not necessarily
/// normalized; the locality probe exploits that extended domain. Evaluation
/// must be side-effect-free.
pub struct GeneralScore {
    name: String,
    eval: Box<dyn Fn(&[f64], usize) -> f64 + Send + Sync>,
}

impl GeneralScore {
    pub fn new(
        name: impl Into<String>,
        eval: impl Fn(&[f64], usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), eval: Box::new(eval) }
    }

    /// Log score `-ln q(s0)`, local by construction.
    pub fn log_score() -> Self {
        Self::new("log_score", |q: &[f64], s0: usize| -libm::log(q[s0]))
    }

    /// Quadratic (Brier) score `-2 q(s0) + sum_s q(s)^2`; proper but not local.
    pub fn brier() -> Self {
        Self::new("brier", |q: &[f64], s0: usize| {
            let sq: f64 = q.iter().map(|&v| v * v).sum();
            -2.0 * q[s0] + sq
        })
    }

    /// Linear score `-q(s0)`; local but not proper.
    pub fn linear() -> Self {
        Self::new("linear", |q: &[f64], s0: usize| -q[s0])
    }

    /// Lift a local loss to a general score through a reference measure:
    /// `(q, s0) -> loss(q(s0) / m(s0))`.
    pub fn from_local(loss: LocalLoss, m: ReferenceMeasure) -> Self {
        Self::new(format!("local({})", loss.name()), move |q: &[f64], s0: usize| {
            loss.eval(q[s0] / m.value_at(s0))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, q: &[f64], s0: usize) -> f64 {
        (self.eval)(q, s0)
    }
}

impl core::fmt::Debug for GeneralScore {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "GeneralScore({})", self.name)
    }
}

/// Two densities resolved on one quadrature grid: points, Simpson weights and
/// window-normalized log densities.
struct CommonGrid {
    weights: Vec<f64>,
    log_p: Vec<f64>,
    log_q: Vec<f64>,
}

/// Log densities of `d` on the given points, normalized to unit mass within
/// the window. Closed forms are evaluated through `log_pdf` (no underflow);
/// an existing grid must match the points exactly.
fn log_density_on(d: &Density, points: &[f64], weights: &[f64]) -> Result<Vec<f64>> {
    match d {
        Density::Grid(g) => {
            if g.len() != points.len() || g.grid().iter().zip(points).any(|(a, b)| a != b) {
                return Err(Error::GridMismatch {
                    reason: String::from(
                        "grid densities entering a divergence must share the exact same grid",
                    ),
                });
            }
            Ok((0..g.len()).map(|i| g.log_value(i)).collect())
        }
        Density::Categorical(_) => Err(Error::MismatchedSpaces {
            reason: String::from("cannot place a categorical on a quadrature grid"),
        }),
        _ => {
            let logs: Vec<f64> = points
                .iter()
                .map(|&s| d.log_pdf(s).expect("continuous density"))
                .collect();
            let mass: f64 = logs
                .iter()
                .zip(weights)
                .map(|(&l, &w)| w * libm::exp(l))
                .sum();
            let truncated = 1.0 - mass;
            if truncated > TRUNCATION_LIMIT {
                return Err(Error::ExcessiveTruncation { mass: truncated, limit: TRUNCATION_LIMIT });
            }
            let log_mass = libm::log(mass);
            Ok(logs.into_iter().map(|l| l - log_mass).collect())
        }
    }
}

/// Resolve a pair of continuous densities on a shared grid.
fn resolve_pair(p: &Density, q: &Density) -> Result<CommonGrid> {
    let points: Vec<f64> = match (p, q) {
        (Density::Grid(gp), _) => gp.grid().to_vec(),
        (_, Density::Grid(gq)) => gq.grid().to_vec(),
        _ => {
            let (lo, hi) = joint_window(p, q)?;
            linspace(lo, hi, DEFAULT_GRID_POINTS)
        }
    };
    let n = points.len();
    let h = (points[n - 1] - points[0]) / (n - 1) as f64;
    let weights = simpson_weights(n, h);
    let log_p = log_density_on(p, &points, &weights)?;
    let log_q = log_density_on(q, &points, &weights)?;
    Ok(CommonGrid { weights, log_p, log_q })
}

/// Kullback-Leibler divergence `KL(p, q) = <ln(p/q)>_p` in nats.
///
/// `p` is the actual belief, `q` the approximation; minimizing over `q` is
/// the approximation direction. Gaussian pairs use the closed form
/// `ln(sq/sp) + (sp^2 + (mp - mq)^2) / (2 sq^2) - 1/2`; everything else is an
/// exact sum or a Simpson quadrature over one shared grid.
pub fn kl(p: &Density, q: &Density) -> Result<f64> {
    match (p, q) {
        (Density::Categorical(cp), Density::Categorical(cq)) => kl_categorical(cp, cq),
        (Density::Gaussian(gp), Density::Gaussian(gq)) => Ok(kl_gaussian(
            gp.mean(),
            gp.variance(),
            gq.mean(),
            gq.variance(),
        )),
        _ if p.is_continuous() && q.is_continuous() => {
            let g = resolve_pair(p, q)?;
            Ok(kl_from_logs(&g.weights, &g.log_p, &g.log_q))
        }
        _ => Err(Error::MismatchedSpaces {
            reason: format!(
                "cannot compare a {} density with a {} density",
                p.kind_name(),
                q.kind_name()
            ),
        }),
    }
}

/// Closed-form KL between two univariate Gaussians.
pub fn kl_gaussian(mp: f64, vp: f64, mq: f64, vq: f64) -> f64 {
    0.5 * libm::log(vq / vp) + (vp + (mp - mq) * (mp - mq)) / (2.0 * vq) - 0.5
}

fn kl_categorical(p: &Categorical, q: &Categorical) -> Result<f64> {
    check_same_outcomes(p, q)?;
    let mut acc = 0.0;
    for (&pw, &qw) in p.weights().iter().zip(q.weights()) {
        if pw < ZERO_DENSITY {
            continue;
        }
        if qw < ZERO_DENSITY {
            return Ok(f64::INFINITY);
        }
        acc += pw * (libm::log(pw) - libm::log(qw));
    }
    Ok(acc)
}

fn kl_from_logs(weights: &[f64], log_p: &[f64], log_q: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..weights.len() {
        let pe = libm::exp(log_p[i]);
        if pe < ZERO_DENSITY {
            continue;
        }
        if log_q[i] == f64::NEG_INFINITY {
            return f64::INFINITY;
        }
        acc += weights[i] * pe * (log_p[i] - log_q[i]);
    }
    acc
}

fn check_same_outcomes(p: &Categorical, q: &Categorical) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::MismatchedSpaces {
            reason: format!("{} outcomes vs {} outcomes", p.len(), q.len()),
        });
    }
    Ok(())
}

/// Cross entropy relative to a reference measure:
/// `-<ln(q(s0)/m(s0))>_p`. With `m = 1` this is the plain cross entropy
/// `<-ln q(s0)>_p`; with `m = p` it equals `kl(p, q)` exactly.
pub fn cross_entropy_m(p: &Density, q: &Density, m: &ReferenceMeasure) -> Result<f64> {
    match (p, q) {
        (Density::Categorical(cp), Density::Categorical(cq)) => {
            check_same_outcomes(cp, cq)?;
            m.check_len(cp.len())?;
            let mut acc = 0.0;
            for (i, (&pw, &qw)) in cp.weights().iter().zip(cq.weights()).enumerate() {
                if pw < ZERO_DENSITY {
                    continue;
                }
                if qw < ZERO_DENSITY {
                    return Ok(f64::INFINITY);
                }
                let mv = m.value_at(i);
                if mv < ZERO_DENSITY {
                    return Err(Error::ZeroMeasure { index: i });
                }
                acc += pw * (libm::log(qw) - libm::log(mv));
            }
            Ok(-acc)
        }
        _ if p.is_continuous() && q.is_continuous() => {
            let g = resolve_pair(p, q)?;
            if let ReferenceMeasure::Grid(values) = m {
                if values.len() != g.weights.len() {
                    return Err(Error::MismatchedSpaces {
                        reason: format!(
                            "measure has {} values but the quadrature grid has {} points",
                            values.len(),
                            g.weights.len()
                        ),
                    });
                }
            }
            let mut acc = 0.0;
            for i in 0..g.weights.len() {
                let pe = libm::exp(g.log_p[i]);
                if pe < ZERO_DENSITY {
                    continue;
                }
                if g.log_q[i] == f64::NEG_INFINITY {
                    return Ok(f64::INFINITY);
                }
                let mv = m.value_at(i);
                if mv < ZERO_DENSITY {
                    return Err(Error::ZeroMeasure { index: i });
                }
                let log_m = if matches!(m, ReferenceMeasure::CountingUniform) {
                    0.0
                } else {
                    libm::log(mv)
                };
                acc += g.weights[i] * pe * (g.log_q[i] - log_m);
            }
            Ok(-acc)
        }
        _ => Err(Error::MismatchedSpaces {
            reason: format!(
                "cannot compare a {} density with a {} density",
                p.kind_name(),
                q.kind_name()
            ),
        }),
    }
}

/// Expected local loss `<loss(q(s0)/m(s0))>_p`.
///
/// With `loss = -ln x` this equals [`cross_entropy_m`]. Errors if the ratio
/// `q/m` is not strictly positive anywhere `p` is.
pub fn expected_local_loss(
    p: &Density,
    q: &Density,
    m: &ReferenceMeasure,
    loss: &LocalLoss,
) -> Result<f64> {
    match (p, q) {
        (Density::Categorical(cp), Density::Categorical(cq)) => {
            check_same_outcomes(cp, cq)?;
            m.check_len(cp.len())?;
            let mut acc = 0.0;
            for (i, (&pw, &qw)) in cp.weights().iter().zip(cq.weights()).enumerate() {
                if pw < ZERO_DENSITY {
                    continue;
                }
                let mv = m.value_at(i);
                if mv < ZERO_DENSITY {
                    return Err(Error::ZeroMeasure { index: i });
                }
                let ratio = qw / mv;
                if !(ratio > 0.0) {
                    return Err(Error::InvalidRatio { ratio, index: i });
                }
                acc += pw * loss.eval(ratio);
            }
            Ok(acc)
        }
        _ if p.is_continuous() && q.is_continuous() => {
            let g = resolve_pair(p, q)?;
            if let ReferenceMeasure::Grid(values) = m {
                if values.len() != g.weights.len() {
                    return Err(Error::MismatchedSpaces {
                        reason: format!(
                            "measure has {} values but the quadrature grid has {} points",
                            values.len(),
                            g.weights.len()
                        ),
                    });
                }
            }
            let mut acc = 0.0;
            for i in 0..g.weights.len() {
                let pe = libm::exp(g.log_p[i]);
                if pe < ZERO_DENSITY {
                    continue;
                }
                let mv = m.value_at(i);
                if mv < ZERO_DENSITY {
                    return Err(Error::ZeroMeasure { index: i });
                }
                let log_m = if matches!(m, ReferenceMeasure::CountingUniform) {
                    0.0
                } else {
                    libm::log(mv)
                };
                let ratio = libm::exp(g.log_q[i] - log_m);
                if !(ratio > 0.0) {
                    return Err(Error::InvalidRatio { ratio, index: i });
                }
                acc += g.weights[i] * pe * loss.eval(ratio);
            }
            Ok(acc)
        }
        _ => Err(Error::MismatchedSpaces {
            reason: format!(
                "cannot compare a {} density with a {} density",
                p.kind_name(),
                q.kind_name()
            ),
        }),
    }
}

/// Expected extra code length, in nats, from coding against `q` when symbols
/// follow `p`: the cross entropy minus the entropy. Equals `kl(p, q)`;
/// divide by `ln 2` for bits.
pub fn redundancy(p: &Categorical, q: &Categorical) -> Result<f64> {
    let pdens = Density::Categorical(p.clone());
    let qdens = Density::Categorical(q.clone());
    let m = ReferenceMeasure::CountingUniform;
    let h_pq = cross_entropy_m(&pdens, &qdens, &m)?;
    let h_p = cross_entropy_m(&pdens, &pdens, &m)?;
    Ok(h_pq - h_p)
}

/// A joint distribution over a finite data index and a finite latent index.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteJoint {
    table: Vec<Vec<f64>>,
}

impl DiscreteJoint {
    /// Rows index data `d`, columns index the latent `s`; entries must be
    /// nonnegative and sum to one within 1e-12.
    pub fn new(table: Vec<Vec<f64>>) -> Result<Self> {
        if table.is_empty() || table[0].is_empty() {
            return Err(Error::InvalidParameter {
                name: "table",
                reason: String::from("joint table must be non-empty"),
            });
        }
        let cols = table[0].len();
        let mut total = 0.0;
        for (d, row) in table.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidParameter {
                    name: "table",
                    reason: format!("row {d} has {} entries, expected {cols}", row.len()),
                });
            }
            for (s, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "table",
                        reason: format!("entry ({d}, {s}) = {v} is not a nonnegative finite number"),
                    });
                }
                total += v;
            }
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "table",
                reason: format!("entries must sum to 1 within 1e-12, got {total}"),
            });
        }
        Ok(Self { table })
    }

    pub fn data_len(&self) -> usize {
        self.table.len()
    }

    pub fn latent_len(&self) -> usize {
        self.table[0].len()
    }

    pub fn value(&self, d: usize, s: usize) -> f64 {
        self.table[d][s]
    }

    /// Marginal probability of data index `d`.
    pub fn marginal_data(&self, d: usize) -> f64 {
        self.table[d].iter().sum()
    }
}

/// The three quantities tied together by the evidence identity
/// `elbo + kl_to_posterior = log_evidence`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElboDecomposition {
    pub elbo: f64,
    pub kl_to_posterior: f64,
    pub log_evidence: f64,
}

/// Decompose the log evidence of data index `d` under the joint into the
/// evidence lower bound of `q` plus `KL(q, posterior)`.
pub fn elbo_decomposition(
    joint: &DiscreteJoint,
    d: usize,
    q: &Categorical,
) -> Result<ElboDecomposition> {
    if d >= joint.data_len() {
        return Err(Error::IndexOutOfRange { index: d, len: joint.data_len() });
    }
    if q.len() != joint.latent_len() {
        return Err(Error::MismatchedSpaces {
            reason: format!(
                "q has {} outcomes but the joint has {} latent states",
                q.len(),
                joint.latent_len()
            ),
        });
    }
    let marginal = joint.marginal_data(d);
    if marginal < ZERO_DENSITY {
        return Err(Error::ZeroMarginal { index: d });
    }
    let log_evidence = libm::log(marginal);

    let mut elbo = 0.0;
    for (s, &qw) in q.weights().iter().enumerate() {
        if qw < ZERO_DENSITY {
            continue;
        }
        let j = joint.value(d, s);
        if j < ZERO_DENSITY {
            elbo = f64::NEG_INFINITY;
            break;
        }
        elbo += qw * (libm::log(j) - libm::log(qw));
    }

    let posterior = Categorical::new(
        (0..joint.latent_len())
            .map(|s| joint.value(d, s) / marginal)
            .collect(),
    )?;
    let kl_to_posterior = kl(
        &Density::Categorical(q.clone()),
        &Density::Categorical(posterior),
    )?;

    Ok(ElboDecomposition { elbo, kl_to_posterior, log_evidence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::{Gaussian1D, Mixture1D};
    use alloc::vec;

    fn cat(w: &[f64]) -> Density {
        Density::Categorical(Categorical::new(w.to_vec()).unwrap())
    }

    #[test]
    fn kl_identity_is_zero() {
        let p = cat(&[0.3, 0.2, 0.5]);
        assert_eq!(kl(&p, &p).unwrap(), 0.0);
        let g = Density::Gaussian(Gaussian1D::new(1.0, 2.0).unwrap());
        assert_eq!(kl(&g, &g).unwrap(), 0.0);
    }

    #[test]
    fn kl_two_term_example() {
        // 0.5 ln 2 + 0.5 ln(2/3)
        let v = kl(&cat(&[0.5, 0.5]), &cat(&[0.25, 0.75])).unwrap();
        assert!((v - 0.14384103622589042).abs() < 1e-15);
    }

    #[test]
    fn kl_gaussian_unit_shift() {
        let p = Density::Gaussian(Gaussian1D::standard());
        let q = Density::Gaussian(Gaussian1D::new(1.0, 1.0).unwrap());
        assert!((kl(&p, &q).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kl_absolute_continuity_failure_is_infinite() {
        let v = kl(&cat(&[0.5, 0.5]), &cat(&[1.0, 0.0])).unwrap();
        assert_eq!(v, f64::INFINITY);
    }

    #[test]
    fn kl_gaussian_quadrature_matches_closed_form() {
        let p = Density::Gaussian(Gaussian1D::new(0.2, 1.7).unwrap());
        let q = Density::Gaussian(Gaussian1D::new(-1.0, 0.4).unwrap());
        let closed = kl(&p, &q).unwrap();
        let gp = Density::Grid(p.discretize_default().unwrap());
        // Resolve q on p's grid.
        let quad = kl(&gp, &q).unwrap();
        assert!((closed - quad).abs() < 1e-6, "closed {closed} vs quad {quad}");
    }

    #[test]
    fn kl_far_apart_narrow_gaussians_stays_finite_on_grids() {
        // The log-space path has to survive ratios far below the f64 floor.
        let p = Gaussian1D::new(-1.557, 7.652).unwrap();
        let q = Gaussian1D::new(-4.444, 0.115).unwrap();
        let closed = kl(&Density::Gaussian(p), &Density::Gaussian(q)).unwrap();
        let (lo, hi) = joint_window(&Density::Gaussian(p), &Density::Gaussian(q)).unwrap();
        let gp = Density::Gaussian(p).discretize(lo, hi, 4096).unwrap();
        let quad = kl(&Density::Grid(gp), &Density::Gaussian(q)).unwrap();
        assert!(quad.is_finite());
        assert!((closed - quad).abs() < 1e-6, "closed {closed} vs quad {quad}");
    }

    #[test]
    fn kl_rejects_mismatched_grids() {
        let g1 = Density::Gaussian(Gaussian1D::standard())
            .discretize(-8.0, 8.0, 64)
            .unwrap();
        let g2 = Density::Gaussian(Gaussian1D::standard())
            .discretize(-8.5, 8.5, 64)
            .unwrap();
        let r = kl(&Density::Grid(g1), &Density::Grid(g2));
        assert!(matches!(r, Err(Error::GridMismatch { .. })));
    }

    #[test]
    fn kl_rejects_mixed_spaces() {
        let p = cat(&[0.5, 0.5]);
        let q = Density::Gaussian(Gaussian1D::standard());
        assert!(matches!(kl(&p, &q), Err(Error::MismatchedSpaces { .. })));
    }

    #[test]
    fn cross_entropy_examples() {
        let p = cat(&[0.5, 0.5]);
        let q = cat(&[0.25, 0.75]);
        let m = ReferenceMeasure::CountingUniform;
        let ce = cross_entropy_m(&p, &q, &m).unwrap();
        assert!((ce - 0.8369882167858358).abs() < 1e-15);
        // Entropy of the uniform distribution over four outcomes.
        let u = cat(&[0.25, 0.25, 0.25, 0.25]);
        let h = cross_entropy_m(&u, &u, &m).unwrap();
        assert!((h - 1.3862943611198906).abs() < 1e-15);
    }

    #[test]
    fn cross_entropy_with_m_p_equals_kl() {
        let p = cat(&[0.2, 0.3, 0.5]);
        let q = cat(&[0.4, 0.4, 0.2]);
        let m = ReferenceMeasure::from_density(&p).unwrap();
        let ce = cross_entropy_m(&p, &q, &m).unwrap();
        let k = kl(&p, &q).unwrap();
        assert_eq!(ce.to_bits(), k.to_bits());
    }

    #[test]
    fn cross_entropy_zero_measure_errors() {
        let p = cat(&[0.5, 0.5]);
        let q = cat(&[0.5, 0.5]);
        let m = ReferenceMeasure::Grid(vec![1.0, 0.0]);
        assert!(matches!(
            cross_entropy_m(&p, &q, &m),
            Err(Error::ZeroMeasure { index: 1 })
        ));
    }

    #[test]
    fn expected_local_loss_examples() {
        let p = cat(&[0.5, 0.5]);
        let q = cat(&[0.25, 0.75]);
        let m = ReferenceMeasure::CountingUniform;
        // Log loss reproduces the cross entropy.
        let ell = expected_local_loss(&p, &q, &m, &LocalLoss::log()).unwrap();
        let ce = cross_entropy_m(&p, &q, &m).unwrap();
        assert!((ell - ce).abs() < 1e-15);
        // The scaled family is affine in the cross entropy.
        let scaled = expected_local_loss(&p, &q, &m, &LocalLoss::scaled_log(3.0, -2.0)).unwrap();
        assert!((scaled - (3.0 * ce - 2.0)).abs() < 1e-12);
        // Identity loss with everything uniform: the ratio is exactly one.
        let u = cat(&[0.5, 0.5]);
        let mu = ReferenceMeasure::Grid(vec![0.5, 0.5]);
        let one = expected_local_loss(&u, &u, &mu, &LocalLoss::new("identity", |x| x)).unwrap();
        assert_eq!(one, 1.0);
    }

    #[test]
    fn expected_local_loss_rejects_zero_ratio() {
        let p = cat(&[0.5, 0.5]);
        let q = cat(&[1.0, 0.0]);
        let m = ReferenceMeasure::CountingUniform;
        let r = expected_local_loss(&p, &q, &m, &LocalLoss::log());
        assert!(matches!(r, Err(Error::InvalidRatio { index: 1, .. })));
    }

    #[test]
    fn redundancy_equals_kl() {
        let p = Categorical::new(vec![0.9, 0.1]).unwrap();
        let q = Categorical::new(vec![0.5, 0.5]).unwrap();
        let r = redundancy(&p, &q).unwrap();
        assert!((r - 0.3680642071684971).abs() < 1e-15);
        let k = kl(
            &Density::Categorical(p.clone()),
            &Density::Categorical(q.clone()),
        )
        .unwrap();
        assert!((r - k).abs() < 1e-12);
        assert_eq!(redundancy(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn elbo_worked_example() {
        let joint = DiscreteJoint::new(vec![vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        let q = Categorical::new(vec![0.5, 0.5]).unwrap();
        let d = elbo_decomposition(&joint, 0, &q).unwrap();
        assert!((d.log_evidence - (-1.2039728043259361)).abs() < 1e-15);
        assert!((d.elbo - (-1.2628643221541276)).abs() < 1e-15);
        assert!((d.elbo + d.kl_to_posterior - d.log_evidence).abs() < 1e-12);
    }

    #[test]
    fn elbo_tight_at_exact_posterior() {
        let joint = DiscreteJoint::new(vec![vec![0.1, 0.2], vec![0.3, 0.4]]).unwrap();
        let marginal = 0.3;
        let posterior = Categorical::new(vec![0.1 / marginal, 0.2 / marginal]).unwrap();
        let d = elbo_decomposition(&joint, 0, &posterior).unwrap();
        assert!(d.kl_to_posterior.abs() < 1e-15);
        assert!((d.elbo - d.log_evidence).abs() < 1e-12);
    }

    #[test]
    fn elbo_zero_marginal_errors() {
        let joint = DiscreteJoint::new(vec![vec![0.0, 0.0], vec![0.5, 0.5]]).unwrap();
        let q = Categorical::new(vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            elbo_decomposition(&joint, 0, &q),
            Err(Error::ZeroMarginal { index: 0 })
        ));
    }

    #[test]
    fn mixture_kl_between_directions_differs() {
        let p = Density::Mixture(Mixture1D::symmetric_pair(3.0, 1.0).unwrap());
        let q = Density::Gaussian(Gaussian1D::new(0.0, 10.0).unwrap());
        let forward = kl(&p, &q).unwrap();
        let reverse = kl(&q, &p).unwrap();
        assert!(forward > 0.0 && reverse > 0.0);
        assert!((forward - reverse).abs() > 1e-3);
    }
}
