//! Point estimation as expected-loss minimization.
//!
//! Three estimation losses, three recipes: the delta loss extracts the mode,
//! the absolute loss the median, the squared loss the mean. `estimate`
//! implements each recipe directly; `expected_estimation_loss` evaluates the
//! underlying objective so tests can confirm the recipes really are the
//! argmins.

use alloc::vec::Vec;

use crate::densities::Density;
use crate::error::{Error, Result};
use crate::quadrature::integrate;

/// Convergence tolerance, in probability, for CDF bisection.
const CDF_PROB_TOL: f64 = 1e-10;

/// Subintervals per CDF quadrature evaluation.
const CDF_INTERVALS: usize = 2048;

/// Relative tolerance for detecting tied pdf maxima.
const MODE_TIE_REL: f64 = 1e-12;

/// Which loss `L(sigma, s0)` the estimate minimizes in expectation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimationLoss {
    /// `-delta(sigma - s0)`: minimized by the mode.
    Mode,
    /// `|sigma - s0|`: minimized by the median.
    Median,
    /// `(sigma - s0)^2`: minimized by the mean.
    Mean,
}

/// Extract the point estimate of `p` under the given loss.
///
/// Mode: argmax of the pdf (componentwise search for mixtures, grid argmax
/// for grid densities), ties within 1e-12 of the maximum broken toward the
/// smaller value. Median: bisection on the quadrature CDF. Mean: the first
/// moment. Categoricals support the mode always; median and mean require
/// numeric outcome labels.
pub fn estimate(p: &Density, loss: EstimationLoss) -> Result<f64> {
    match loss {
        EstimationLoss::Mode => mode(p),
        EstimationLoss::Median => median(p),
        EstimationLoss::Mean => Ok(p.moments()?.0),
    }
}

/// Expected estimation loss `<L(sigma, s0)>_p` by quadrature (exact sums for
/// categoricals). The delta loss evaluates to `-pdf(sigma)` directly rather
/// than through any smoothed kernel.
pub fn expected_estimation_loss(p: &Density, sigma: f64, loss: EstimationLoss) -> Result<f64> {
    if let Density::Categorical(c) = p {
        let support = match c.numeric_labels() {
            Some(s) => s,
            None if loss == EstimationLoss::Mode => {
                (0..c.len()).map(|i| i as f64).collect()
            }
            None => return Err(Error::NonNumericSupport),
        };
        let mut acc = 0.0;
        for (&w, &x) in c.weights().iter().zip(&support) {
            match loss {
                EstimationLoss::Mode => {
                    if (sigma - x).abs() <= 1e-12 {
                        acc -= w;
                    }
                }
                EstimationLoss::Median => acc += w * (sigma - x).abs(),
                EstimationLoss::Mean => acc += w * (sigma - x) * (sigma - x),
            }
        }
        return Ok(acc);
    }

    match loss {
        EstimationLoss::Mode => Ok(-p.pdf(sigma)?),
        EstimationLoss::Median => {
            let (lo, hi) = p.default_window()?;
            let f = |s: f64| (sigma - s).abs() * p.pdf(s).expect("continuous density");
            // Split at the kink so Simpson sees smooth integrands.
            if sigma > lo && sigma < hi {
                Ok(integrate(f, lo, sigma, CDF_INTERVALS) + integrate(f, sigma, hi, CDF_INTERVALS))
            } else {
                Ok(integrate(f, lo, hi, 2 * CDF_INTERVALS))
            }
        }
        EstimationLoss::Mean => {
            let (lo, hi) = p.default_window()?;
            let f = |s: f64| {
                let d = sigma - s;
                d * d * p.pdf(s).expect("continuous density")
            };
            Ok(integrate(f, lo, hi, 2 * CDF_INTERVALS))
        }
    }
}

/// Quadrature CDF: probability mass at or below `t`.
pub fn cdf(p: &Density, t: f64) -> Result<f64> {
    let (lo, hi) = p.default_window()?;
    if t <= lo {
        return Ok(0.0);
    }
    if t >= hi {
        return Ok(1.0);
    }
    Ok(integrate(
        |s| p.pdf(s).expect("continuous density"),
        lo,
        t,
        CDF_INTERVALS,
    ))
}

/// Point where the quadrature CDF crosses `prob`, by monotone bisection to
/// the probability tolerance 1e-10.
pub fn quantile(p: &Density, prob: f64) -> Result<f64> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(Error::InvalidParameter {
            name: "prob",
            reason: alloc::format!("must lie strictly between 0 and 1, got {prob}"),
        });
    }
    let (mut lo, mut hi) = p.default_window()?;
    let span = hi - lo;
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let c = cdf(p, mid)?;
        if (c - prob).abs() <= CDF_PROB_TOL || (hi - lo) <= 1e-13 * span {
            return Ok(mid);
        }
        if c < prob {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

fn median(p: &Density) -> Result<f64> {
    match p {
        Density::Categorical(c) => {
            let support = c.numeric_labels().ok_or(Error::NonNumericSupport)?;
            let mut order: Vec<usize> = (0..c.len()).collect();
            order.sort_by(|&a, &b| support[a].total_cmp(&support[b]));
            let mut cum = 0.0;
            for &i in &order {
                cum += c.weights()[i];
                if cum >= 0.5 {
                    return Ok(support[i]);
                }
            }
            Ok(support[order[c.len() - 1]])
        }
        _ => quantile(p, 0.5),
    }
}

fn mode(p: &Density) -> Result<f64> {
    match p {
        Density::Categorical(c) => {
            let max = c
                .weights()
                .iter()
                .fold(f64::NEG_INFINITY, |acc, &w| acc.max(w));
            let idx = c
                .weights()
                .iter()
                .position(|&w| w >= max - MODE_TIE_REL * max.abs().max(1.0))
                .expect("non-empty categorical");
            match c.numeric_labels() {
                Some(support) => Ok(support[idx]),
                None => Ok(idx as f64),
            }
        }
        Density::Gaussian(g) => Ok(g.mean()),
        Density::Mixture(m) => {
            // One local search per component, then compare across components.
            let mut candidates: Vec<f64> = Vec::with_capacity(2 * m.components().len());
            for c in m.components() {
                let (lo, hi) = (c.mean() - c.std_dev(), c.mean() + c.std_dev());
                candidates.push(golden_max(|s| m.pdf(s), lo, hi));
                candidates.push(c.mean());
            }
            candidates.sort_by(|a, b| a.total_cmp(b));
            let best = candidates
                .iter()
                .fold(f64::NEG_INFINITY, |acc, &s| acc.max(m.pdf(s)));
            let tol = MODE_TIE_REL * best.abs().max(f64::MIN_POSITIVE);
            for &s in &candidates {
                if m.pdf(s) >= best - tol {
                    return Ok(s);
                }
            }
            unreachable!("one candidate attains the maximum")
        }
        Density::Grid(g) => {
            let max = g
                .values()
                .iter()
                .fold(f64::NEG_INFINITY, |acc, &v| acc.max(v));
            let tol = MODE_TIE_REL * max.abs().max(f64::MIN_POSITIVE);
            let idx = g
                .values()
                .iter()
                .position(|&v| v >= max - tol)
                .expect("non-empty grid");
            Ok(g.grid()[idx])
        }
    }
}

/// Golden-section maximization on `[a, b]`.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.6180339887498949;
    let tol = 1e-12 * (1.0 + a.abs().max(b.abs()));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::{Categorical, Gaussian1D, GridDensity, Mixture1D};
    use crate::quadrature::linspace;
    use alloc::string::ToString;
    use alloc::vec;

    fn gaussian(mean: f64, var: f64) -> Density {
        Density::Gaussian(Gaussian1D::new(mean, var).unwrap())
    }

    /// Exp(1) truncated to [0, 40] (mass beyond is ~4e-18).
    fn exponential_grid() -> Density {
        let grid = linspace(0.0, 40.0, 4096);
        let values = grid.iter().map(|&x| libm::exp(-x)).collect();
        Density::Grid(GridDensity::from_values(grid, values).unwrap())
    }

    #[test]
    fn gaussian_estimates_coincide() {
        let p = gaussian(1.5, 2.0);
        for loss in [EstimationLoss::Mode, EstimationLoss::Median, EstimationLoss::Mean] {
            let e = estimate(&p, loss).unwrap();
            assert!((e - 1.5).abs() < 1e-6, "{loss:?} gave {e}");
        }
    }

    #[test]
    fn exponential_mode_median_mean() {
        let p = exponential_grid();
        assert_eq!(estimate(&p, EstimationLoss::Mode).unwrap(), 0.0);
        let median = estimate(&p, EstimationLoss::Median).unwrap();
        assert!((median - core::f64::consts::LN_2).abs() < 1e-4, "median {median}");
        let mean = estimate(&p, EstimationLoss::Mean).unwrap();
        assert!((mean - 1.0).abs() < 1e-6, "mean {mean}");
    }

    #[test]
    fn bimodal_mixture_estimates() {
        let p = Density::Mixture(Mixture1D::symmetric_pair(3.0, 1.0).unwrap());
        let mean = estimate(&p, EstimationLoss::Mean).unwrap();
        assert!(mean.abs() < 1e-12);
        // Equal peaks near -3 and +3; the tie breaks toward the smaller.
        let mode = estimate(&p, EstimationLoss::Mode).unwrap();
        assert!((mode + 3.0).abs() < 1e-6, "mode {mode}");
    }

    #[test]
    fn squared_loss_is_variance_plus_bias() {
        let p = gaussian(0.0, 1.0);
        let at0 = expected_estimation_loss(&p, 0.0, EstimationLoss::Mean).unwrap();
        assert!((at0 - 1.0).abs() < 1e-8, "{at0}");
        let at1 = expected_estimation_loss(&p, 1.0, EstimationLoss::Mean).unwrap();
        assert!((at1 - 2.0).abs() < 1e-8, "{at1}");
    }

    #[test]
    fn absolute_loss_minimized_at_zero_for_standard_normal() {
        let p = gaussian(0.0, 1.0);
        let mut best = (f64::INFINITY, f64::NAN);
        let mut s = -2.0;
        while s <= 2.0 {
            let v = expected_estimation_loss(&p, s, EstimationLoss::Median).unwrap();
            if v < best.0 {
                best = (v, s);
            }
            s += 0.05;
        }
        assert!(best.1.abs() < 0.05 + 1e-12, "argmin at {}", best.1);
    }

    #[test]
    fn delta_loss_is_negative_pdf() {
        let p = gaussian(0.0, 1.0);
        let v = expected_estimation_loss(&p, 0.3, EstimationLoss::Mode).unwrap();
        assert_eq!(v, -p.pdf(0.3).unwrap());
    }

    #[test]
    fn categorical_without_labels() {
        let c = Density::Categorical(Categorical::new(vec![0.2, 0.5, 0.3]).unwrap());
        assert_eq!(estimate(&c, EstimationLoss::Mode).unwrap(), 1.0);
        assert!(matches!(
            estimate(&c, EstimationLoss::Median),
            Err(Error::NonNumericSupport)
        ));
        assert!(matches!(
            estimate(&c, EstimationLoss::Mean),
            Err(Error::NonNumericSupport)
        ));
    }

    #[test]
    fn categorical_with_numeric_labels() {
        let c = Density::Categorical(
            Categorical::with_labels(
                vec![0.2, 0.5, 0.3],
                vec!["-1".to_string(), "0.5".to_string(), "4".to_string()],
            )
            .unwrap(),
        );
        assert_eq!(estimate(&c, EstimationLoss::Mode).unwrap(), 0.5);
        assert_eq!(estimate(&c, EstimationLoss::Median).unwrap(), 0.5);
        let mean = estimate(&c, EstimationLoss::Mean).unwrap();
        assert!((mean - (0.2 * -1.0 + 0.5 * 0.5 + 0.3 * 4.0)).abs() < 1e-15);
    }

    #[test]
    fn quantile_brackets_the_median() {
        let p = gaussian(2.0, 4.0);
        let q25 = quantile(&p, 0.25).unwrap();
        let q75 = quantile(&p, 0.75).unwrap();
        // Standard normal quartile is 0.6744897501960817.
        assert!((q25 - (2.0 - 2.0 * 0.6744897501960817)).abs() < 1e-5);
        assert!((q75 - (2.0 + 2.0 * 0.6744897501960817)).abs() < 1e-5);
    }

    #[test]
    fn cdf_endpoints() {
        let p = gaussian(0.0, 1.0);
        assert_eq!(cdf(&p, -9.0).unwrap(), 0.0);
        assert_eq!(cdf(&p, 9.0).unwrap(), 1.0);
        let half = cdf(&p, 0.0).unwrap();
        assert!((half - 0.5).abs() < 1e-9);
    }
}
