//! Numerical verification of the two consistency requirements — locality and
//! properness — that single out the logarithmic family `-C ln x + D` as the
//! only admissible local loss, plus the event-splitting and zero-loss
//! normalization checks.
//!
//! Everything here is brute force on purpose: simplex grids are enumerated
//! exhaustively (supported up to four outcomes) and derivatives are central
//! differences, so losses enter strictly as black boxes and no symbolic
//! structure is assumed.

use alloc::format;
use alloc::vec::Vec;

use crate::densities::{joint_window, Categorical, Density, ReferenceMeasure, DEFAULT_GRID_POINTS};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::scoring::{cross_entropy_m, expected_local_loss, kl, GeneralScore, LocalLoss};
use crate::ZERO_DENSITY;

/// Relative step for central-difference derivatives of a loss.
const DERIVATIVE_STEP: f64 = 1e-6;

/// Loss changes below this are "inert" for the locality probe.
const LOCALITY_TOL: f64 = 1e-10;

/// Splitting invariance must hold to this absolute tolerance.
const SPLITTING_TOL: f64 = 1e-12;

/// Thresholds confirming membership in the `-C ln x + D` family.
const SHAPE_SPREAD_REL: f64 = 1e-4;
const SHAPE_RESIDUAL_TOL: f64 = 1e-6;

/// The built-in loss zoo: the two members of the logarithmic family followed
/// by four losses outside it.
pub fn loss_zoo() -> Vec<LocalLoss> {
    alloc::vec![
        LocalLoss::log(),
        LocalLoss::scaled_log(2.0, 5.0),
        LocalLoss::new("identity", |x| x),
        LocalLoss::new("square", |x| x * x),
        LocalLoss::new("neg_sqrt", |x| -libm::sqrt(x)),
        LocalLoss::new("reciprocal", |x| 1.0 / x),
    ]
}

/// Names of the zoo members inside the logarithmic family.
pub fn log_family_names() -> [&'static str; 2] {
    ["neg_log", "scaled_neg_log(2,5)"]
}

/// Result of an exhaustive properness search.
#[derive(Debug, Clone)]
pub struct PropernessReport {
    pub tested_p: Categorical,
    /// Grid point with the smallest expected loss.
    pub argmin_q: Categorical,
    /// Euclidean distance between the argmin and `p`.
    pub distance_to_p: f64,
    /// Euclidean length of one elementary grid move (shifting `1/grid_n` of
    /// mass between two outcomes), i.e. `sqrt(2)/grid_n`.
    pub grid_resolution: f64,
    /// Whether the argmin sits within one grid move of `p`.
    pub is_proper_at_resolution: bool,
    /// For local losses: maximum deviation of `x L'(x)` at `x = p/m` from its
    /// mean across outcomes. The stationarity condition makes this a common
    /// constant (minus the normalization multiplier) exactly for the
    /// logarithmic family.
    pub lagrange_residual: Option<f64>,
}

fn validate_properness_inputs(p: &Categorical, grid_n: usize) -> Result<()> {
    let k = p.len();
    if k < 2 || k > 4 {
        return Err(Error::InvalidParameter {
            name: "p",
            reason: format!("exhaustive simplex search supports 2 to 4 outcomes, got {k}"),
        });
    }
    if grid_n < 11 * (k - 1) {
        return Err(Error::InvalidParameter {
            name: "grid_n",
            reason: format!("need at least 11 grid steps per free dimension ({})", 11 * (k - 1)),
        });
    }
    for (i, &w) in p.weights().iter().enumerate() {
        if w <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "p",
                reason: format!("must be strictly positive; weight {w} at index {i}"),
            });
        }
    }
    Ok(())
}

/// Visit every composition of `total` into `slots` nonnegative parts, in
/// lexicographic order.
fn for_each_composition<F: FnMut(&[usize])>(slots: usize, total: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(buf: &mut Vec<usize>, remaining: usize, slots: usize, f: &mut F) {
        if slots == 1 {
            buf.push(remaining);
            f(buf);
            buf.pop();
            return;
        }
        for c in 0..=remaining {
            buf.push(c);
            rec(buf, remaining - c, slots - 1, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(slots);
    rec(&mut buf, total, slots, f);
}

fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    libm::sqrt(acc)
}

/// Exhaustive grid search for the minimizer of the expected loss, with the
/// expected loss of the candidate `q` computed by `eval`.
fn properness_search(
    p: &Categorical,
    grid_n: usize,
    mut eval: impl FnMut(&[f64]) -> f64,
) -> Result<(Categorical, f64, f64, bool)> {
    let k = p.len();
    let mut best_value = f64::INFINITY;
    let mut best_q: Vec<f64> = alloc::vec![0.0; k];
    let mut undefined_at: Option<Vec<f64>> = None;
    let mut q = alloc::vec![0.0; k];
    let mut first = true;
    for_each_composition(k, grid_n, &mut |counts| {
        for (qi, &c) in q.iter_mut().zip(counts) {
            *qi = c as f64 / grid_n as f64;
        }
        let value = eval(&q);
        if value.is_nan() {
            if undefined_at.is_none() {
                undefined_at = Some(q.clone());
            }
            return;
        }
        if first || value < best_value {
            best_value = value;
            best_q.copy_from_slice(&q);
            first = false;
        }
    });
    if let Some(at) = undefined_at {
        return Err(Error::InvalidParameter {
            name: "loss",
            reason: format!("loss is undefined (NaN) at grid point {at:?}"),
        });
    }
    let distance = euclidean_distance(&best_q, p.weights());
    let resolution = libm::sqrt(2.0) / grid_n as f64;
    let proper = distance <= resolution + 1e-12;
    Ok((Categorical::new(best_q)?, distance, resolution, proper))
}

/// Central-difference derivative of a local loss, relative step 1e-6.
fn loss_derivative(loss: &LocalLoss, x: f64) -> Result<f64> {
    let h = DERIVATIVE_STEP;
    let d = (loss.eval(x * (1.0 + h)) - loss.eval(x * (1.0 - h))) / (2.0 * h * x);
    if !d.is_finite() {
        return Err(Error::NonFiniteDerivative { x });
    }
    Ok(d)
}

/// Properness check for a local loss of the ratio `q/m`: exhaustively search
/// the simplex grid for the expected-loss argmin and evaluate the Lagrange
/// stationarity residual at `q = p`.
pub fn check_properness_local(
    loss: &LocalLoss,
    p: &Categorical,
    m: &ReferenceMeasure,
    grid_n: usize,
) -> Result<PropernessReport> {
    validate_properness_inputs(p, grid_n)?;
    m.check_len(p.len())?;
    let pw = p.weights();
    let (argmin_q, distance_to_p, grid_resolution, is_proper_at_resolution) =
        properness_search(p, grid_n, |q| {
            let mut acc = 0.0;
            for s in 0..q.len() {
                acc += pw[s] * loss.eval(q[s] / m.value_at(s));
            }
            acc
        })?;

    // x L'(x) at x = p/m per outcome; stationarity demands a common value.
    let mut values = Vec::with_capacity(pw.len());
    for (s, &w) in pw.iter().enumerate() {
        let x = w / m.value_at(s);
        values.push(x * loss_derivative(loss, x)?);
    }
    let mean: f64 = values.iter().sum::<f64>() / values.len() as f64;
    let residual = values
        .iter()
        .fold(0.0_f64, |acc, &v| acc.max((v - mean).abs()));

    Ok(PropernessReport {
        tested_p: p.clone(),
        argmin_q,
        distance_to_p,
        grid_resolution,
        is_proper_at_resolution,
        lagrange_residual: Some(residual),
    })
}

/// Properness check for a general score (any measure dependence is already
/// baked into the score itself).
pub fn check_properness_score(
    score: &GeneralScore,
    p: &Categorical,
    grid_n: usize,
) -> Result<PropernessReport> {
    validate_properness_inputs(p, grid_n)?;
    let pw = p.weights();
    let (argmin_q, distance_to_p, grid_resolution, is_proper_at_resolution) =
        properness_search(p, grid_n, |q| {
            let mut acc = 0.0;
            for s in 0..q.len() {
                acc += pw[s] * score.eval(q, s);
            }
            acc
        })?;
    Ok(PropernessReport {
        tested_p: p.clone(),
        argmin_q,
        distance_to_p,
        grid_resolution,
        is_proper_at_resolution,
        lagrange_residual: None,
    })
}

/// A perturbation that moved the loss even though it only touched outcomes
/// other than the one that occurred.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalityWitness {
    pub q: Vec<f64>,
    pub outcome: usize,
    pub perturbed_index: usize,
    pub delta: f64,
    pub loss_before: f64,
    pub loss_after: f64,
}

/// Verdict of the locality probe.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalityReport {
    pub local: bool,
    pub trials: usize,
    pub witness: Option<LocalityWitness>,
}

/// Probe whether a score depends only on the value reported for the outcome
/// that occurred.
///
/// Draws random positive vectors `q` (deliberately not normalized: the
/// functional's domain extends to positive vectors), perturbs one entry away
/// from the realized outcome, and reports the first perturbation that moves
/// the loss by more than 1e-10.
pub fn check_locality(
    score: &GeneralScore,
    outcome_count: usize,
    trials: usize,
    seed: u64,
) -> Result<LocalityReport> {
    if outcome_count < 3 {
        return Err(Error::InvalidParameter {
            name: "outcome_count",
            reason: format!("need at least 3 outcomes to perturb off the realized one, got {outcome_count}"),
        });
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..trials {
        let q: Vec<f64> = (0..outcome_count).map(|_| rng.uniform(0.1, 2.0)).collect();
        let s0 = rng.index(outcome_count);
        let mut j = rng.index(outcome_count - 1);
        if j >= s0 {
            j += 1;
        }
        let delta = rng.uniform(0.25, 1.5);
        let before = score.eval(&q, s0);
        let mut perturbed = q.clone();
        perturbed[j] += delta;
        let after = score.eval(&perturbed, s0);
        if (after - before).abs() > LOCALITY_TOL {
            return Ok(LocalityReport {
                local: false,
                trials,
                witness: Some(LocalityWitness {
                    q,
                    outcome: s0,
                    perturbed_index: j,
                    delta,
                    loss_before: before,
                    loss_after: after,
                }),
            });
        }
    }
    Ok(LocalityReport { local: true, trials, witness: None })
}

/// Shape analysis of a local loss against the family `-C ln x + D`.
#[derive(Debug, Clone, PartialEq)]
pub struct LossShapeReport {
    pub sample_points: Vec<f64>,
    /// `x L'(x)` at each sample point, by central differences.
    pub x_l_prime: Vec<f64>,
    /// max - min of `x L'(x)` over the samples.
    pub max_spread: f64,
    pub fitted_c: f64,
    pub fitted_d: f64,
    /// Root-mean-square residual of the least-squares fit to `-C ln x + D`.
    pub residual: f64,
    /// Confirmed member of the family: spread below `1e-4 |median|` and
    /// fit residual below 1e-6.
    pub confirmed: bool,
}

/// Sample `x L'(x)` log-uniformly on `[x_lo, x_hi]` and least-squares fit
/// `L(x) = -C ln x + D`. A constant `x L'(x)` is exactly the stationarity
/// signature of the logarithmic family.
pub fn check_loss_shape(loss: &LocalLoss, x_lo: f64, x_hi: f64, n: usize) -> Result<LossShapeReport> {
    if !(x_lo > 0.0 && x_lo < x_hi) {
        return Err(Error::InvalidParameter {
            name: "x_lo",
            reason: format!("need 0 < x_lo < x_hi, got [{x_lo}, {x_hi}]"),
        });
    }
    if n < 16 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("need at least 16 sample points, got {n}"),
        });
    }
    let log_lo = libm::log(x_lo);
    let log_hi = libm::log(x_hi);
    let mut sample_points = Vec::with_capacity(n);
    let mut x_l_prime = Vec::with_capacity(n);
    for i in 0..n {
        let x = libm::exp(log_lo + (log_hi - log_lo) * i as f64 / (n - 1) as f64);
        let d = loss_derivative(loss, x)?;
        sample_points.push(x);
        x_l_prime.push(x * d);
    }
    let mut sorted = x_l_prime.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let max_spread = sorted[n - 1] - sorted[0];
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    };

    // Least squares on L(x_i) = C * (-ln x_i) + D.
    let mut su = 0.0;
    let mut sy = 0.0;
    let mut suu = 0.0;
    let mut suy = 0.0;
    for &x in &sample_points {
        let u = -libm::log(x);
        let y = loss.eval(x);
        su += u;
        sy += y;
        suu += u * u;
        suy += u * y;
    }
    let nf = n as f64;
    let denom = nf * suu - su * su;
    let fitted_c = (nf * suy - su * sy) / denom;
    let fitted_d = (sy - fitted_c * su) / nf;
    if !fitted_c.is_finite() || !fitted_d.is_finite() {
        return Err(Error::NonFiniteDerivative { x: f64::NAN });
    }
    let mut sq = 0.0;
    for &x in &sample_points {
        let r = loss.eval(x) - (-fitted_c * libm::log(x) + fitted_d);
        sq += r * r;
    }
    let residual = libm::sqrt(sq / nf);
    let confirmed = max_spread < SHAPE_SPREAD_REL * median.abs() && residual < SHAPE_RESIDUAL_TOL;

    Ok(LossShapeReport {
        sample_points,
        x_l_prime,
        max_spread,
        fitted_c,
        fitted_d,
        residual,
        confirmed,
    })
}

/// Both sides of an event-splitting comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplittingReport {
    pub loss_before: f64,
    pub loss_after: f64,
    pub discrepancy: f64,
    pub invariant: bool,
}

/// Split `q` and `m` at `index` with the same proportion `alpha` and `p` with
/// an arbitrary proportion `beta`; the expected local loss of the ratio `q/m`
/// must not move.
pub fn check_splitting_invariance(
    p: &Categorical,
    q: &Categorical,
    m: &ReferenceMeasure,
    loss: &LocalLoss,
    index: usize,
    alpha: f64,
    beta: f64,
) -> Result<SplittingReport> {
    let before = expected_local_loss(
        &Density::Categorical(p.clone()),
        &Density::Categorical(q.clone()),
        m,
        loss,
    )?;
    let p2 = p.split_event(index, beta)?;
    let q2 = q.split_event(index, alpha)?;
    let m2 = m.split(q.len(), index, alpha)?;
    let after = expected_local_loss(
        &Density::Categorical(p2),
        &Density::Categorical(q2),
        &m2,
        loss,
    )?;
    let discrepancy = (after - before).abs();
    Ok(SplittingReport {
        loss_before: before,
        loss_after: after,
        discrepancy,
        invariant: discrepancy <= SPLITTING_TOL,
    })
}

/// Expected loss evaluated on the raw reported weights instead of the ratio
/// `q/m`. This deliberately measure-ignoring variant is the counterexample
/// showing why the reference measure is needed: it is not invariant under
/// event splitting.
pub fn expected_loss_ignoring_measure(
    p: &Categorical,
    q: &Categorical,
    loss: &LocalLoss,
) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::MismatchedSpaces {
            reason: format!("{} outcomes vs {} outcomes", p.len(), q.len()),
        });
    }
    let mut acc = 0.0;
    for (i, (&pw, &qw)) in p.weights().iter().zip(q.weights()).enumerate() {
        if pw < ZERO_DENSITY {
            continue;
        }
        if !(qw > 0.0) {
            return Err(Error::InvalidRatio { ratio: qw, index: i });
        }
        acc += pw * loss.eval(qw);
    }
    Ok(acc)
}

/// The zero-loss normalization: with `m = p` the expected log loss of the
/// actual belief is zero and the cross entropy relative to `m` coincides
/// with `kl(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Criterion3Report {
    /// Expected log loss of `p` against itself with `m = p`.
    pub self_loss: f64,
    /// `cross_entropy_m(p, q, m = p)`.
    pub cross_entropy_value: f64,
    /// `kl(p, q)`.
    pub kl_value: f64,
    pub passes: bool,
}

/// Verify the zero-loss normalization on a pair of beliefs. Continuous pairs
/// are discretized through one shared window first.
pub fn verify_criterion3(p: &Density, q: &Density) -> Result<Criterion3Report> {
    let (pd, qd): (Density, Density) = match (p, q) {
        (Density::Categorical(_), Density::Categorical(_)) => (p.clone(), q.clone()),
        _ if p.is_continuous() && q.is_continuous() => {
            let (lo, hi) = joint_window(p, q)?;
            (
                Density::Grid(p.discretize(lo, hi, DEFAULT_GRID_POINTS)?),
                Density::Grid(q.discretize(lo, hi, DEFAULT_GRID_POINTS)?),
            )
        }
        _ => {
            return Err(Error::MismatchedSpaces {
                reason: format!(
                    "cannot compare a {} density with a {} density",
                    p.kind_name(),
                    q.kind_name()
                ),
            })
        }
    };
    let m = ReferenceMeasure::from_density(&pd)?;
    let self_loss = expected_local_loss(&pd, &pd, &m, &LocalLoss::log())?;
    let cross_entropy_value = cross_entropy_m(&pd, &qd, &m)?;
    let kl_value = kl(&pd, &qd)?;
    let identity_holds = if cross_entropy_value.is_finite() || kl_value.is_finite() {
        (cross_entropy_value - kl_value).abs() <= 1e-12
    } else {
        true
    };
    Ok(Criterion3Report {
        self_loss,
        cross_entropy_value,
        kl_value,
        passes: self_loss.abs() <= 1e-12 && identity_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::Gaussian1D;
    use alloc::vec;

    fn p37() -> Categorical {
        Categorical::new(vec![0.3, 0.7]).unwrap()
    }

    #[test]
    fn log_loss_is_proper() {
        let m = ReferenceMeasure::CountingUniform;
        let r = check_properness_local(&LocalLoss::log(), &p37(), &m, 200).unwrap();
        assert!(r.is_proper_at_resolution);
        assert!(r.distance_to_p <= 0.005, "distance {}", r.distance_to_p);
        assert!(r.lagrange_residual.unwrap() < 1e-6);
    }

    #[test]
    fn log_loss_proper_under_any_measure() {
        let m = ReferenceMeasure::from_values(vec![0.4, 2.5]).unwrap();
        let r = check_properness_local(&LocalLoss::log(), &p37(), &m, 200).unwrap();
        assert!(r.is_proper_at_resolution, "distance {}", r.distance_to_p);
        assert!(r.lagrange_residual.unwrap() < 1e-6);
    }

    #[test]
    fn brier_is_proper_but_linear_is_not() {
        let r = check_properness_score(&GeneralScore::brier(), &p37(), 200).unwrap();
        assert!(r.is_proper_at_resolution, "distance {}", r.distance_to_p);
        assert!(r.distance_to_p <= 0.005);

        let r = check_properness_score(&GeneralScore::linear(), &p37(), 200).unwrap();
        assert!(!r.is_proper_at_resolution);
        // Expected linear loss is minimized at the vertex concentrated on the
        // most likely outcome: sqrt(0.3^2 + 0.3^2).
        assert_eq!(r.argmin_q.weights(), &[0.0, 1.0]);
        assert!((r.distance_to_p - 0.42426406871192851).abs() < 1e-12);
    }

    #[test]
    fn square_loss_is_improper_under_uniform_measure() {
        let m = ReferenceMeasure::CountingUniform;
        let loss = LocalLoss::new("square", |x| x * x);
        let r = check_properness_local(&loss, &p37(), &m, 200).unwrap();
        // Minimizing <(q/m)^2> pushes q toward 1/p, not p.
        assert!(!r.is_proper_at_resolution);
        assert!(r.lagrange_residual.unwrap() > 1e-2);
    }

    #[test]
    fn locality_discriminates_log_from_brier() {
        let log = check_locality(&GeneralScore::log_score(), 4, 100, 7).unwrap();
        assert!(log.local);
        assert!(log.witness.is_none());

        let brier = check_locality(&GeneralScore::brier(), 4, 100, 7).unwrap();
        assert!(!brier.local);
        let w = brier.witness.unwrap();
        assert_ne!(w.perturbed_index, w.outcome);
        assert!((w.loss_after - w.loss_before).abs() > LOCALITY_TOL);
    }

    #[test]
    fn lifted_local_loss_is_local() {
        let lifted = GeneralScore::from_local(LocalLoss::log(), ReferenceMeasure::CountingUniform);
        let r = check_locality(&lifted, 5, 100, 11).unwrap();
        assert!(r.local);
    }

    #[test]
    fn shape_confirms_log_family() {
        let r = check_loss_shape(&LocalLoss::log(), 0.1, 10.0, 64).unwrap();
        assert!(r.confirmed, "spread {} residual {}", r.max_spread, r.residual);
        assert!((r.fitted_c - 1.0).abs() < 1e-6);
        assert!(r.fitted_d.abs() < 1e-6);

        let r = check_loss_shape(&LocalLoss::scaled_log(2.0, 5.0), 0.1, 10.0, 64).unwrap();
        assert!(r.confirmed);
        assert!((r.fitted_c - 2.0).abs() < 1e-6);
        assert!((r.fitted_d - 5.0).abs() < 1e-6);
    }

    #[test]
    fn shape_rejects_square() {
        let loss = LocalLoss::new("square", |x| x * x);
        let r = check_loss_shape(&loss, 0.1, 10.0, 64).unwrap();
        assert!(!r.confirmed);
        // x L'(x) = 2 x^2 spans [0.02, 200].
        assert!(r.max_spread > 100.0);
    }

    #[test]
    fn splitting_invariance_example() {
        let p = Categorical::new(vec![0.5, 0.5]).unwrap();
        let q = Categorical::new(vec![0.25, 0.75]).unwrap();
        let m = ReferenceMeasure::CountingUniform;
        let r = check_splitting_invariance(&p, &q, &m, &LocalLoss::log(), 1, 0.4, 0.7).unwrap();
        assert!(r.invariant, "discrepancy {}", r.discrepancy);
    }

    #[test]
    fn measure_ignoring_loss_breaks_splitting() {
        let p = Categorical::new(vec![0.5, 0.5]).unwrap();
        let q = Categorical::new(vec![0.25, 0.75]).unwrap();
        let loss = LocalLoss::log();
        let before = expected_loss_ignoring_measure(&p, &q, &loss).unwrap();
        let p2 = p.split_event(1, 0.7).unwrap();
        let q2 = q.split_event(1, 0.4).unwrap();
        let after = expected_loss_ignoring_measure(&p2, &q2, &loss).unwrap();
        assert!((after - before).abs() > 1e-3, "{before} vs {after}");
    }

    #[test]
    fn criterion3_on_categoricals() {
        let p = Density::Categorical(Categorical::new(vec![0.5, 0.5]).unwrap());
        let q = Density::Categorical(Categorical::new(vec![0.25, 0.75]).unwrap());
        let r = verify_criterion3(&p, &q).unwrap();
        assert!(r.passes);
        assert_eq!(r.self_loss, 0.0);
        assert!((r.kl_value - 0.14384103622589042).abs() < 1e-15);
    }

    #[test]
    fn criterion3_on_gaussian_pair() {
        let p = Density::Gaussian(Gaussian1D::new(0.0, 1.0).unwrap());
        let q = Density::Gaussian(Gaussian1D::new(1.0, 1.0).unwrap());
        let r = verify_criterion3(&p, &q).unwrap();
        assert!(r.passes);
        // Same-grid quadrature agrees with the closed form.
        assert!((r.kl_value - 0.5).abs() < 1e-5, "kl {}", r.kl_value);
    }

    #[test]
    fn rejects_oversized_spaces() {
        let p = Categorical::uniform(5).unwrap();
        let m = ReferenceMeasure::CountingUniform;
        assert!(check_properness_local(&LocalLoss::log(), &p, &m, 200).is_err());
    }
}
