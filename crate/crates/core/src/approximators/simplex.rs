//! Derivative-free simplex descent (Nelder-Mead) for the low-dimensional fit
//! objectives. Standard coefficients: reflection 1, expansion 2, contraction
//! 0.5, shrink 0.5. Fully deterministic: same start, same trajectory.

use alloc::vec::Vec;

/// Outcome of one simplex descent.
#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub struct SimplexOptions {
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
    /// Converged when every vertex is within this of the best, per coordinate.
    pub x_tol: f64,
    /// ... and the objective spread across the simplex is below this.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { initial_step: 0.5, x_tol: 1e-8, f_tol: 1e-10, max_iter: 2000 }
    }
}

/// Minimize `f` starting from `x0`. Infinite objective values are legal and
/// simply rank worst; NaN is treated as infinite.
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> SimplexResult {
    let n = x0.len();
    debug_assert!(n >= 1);
    let mut eval = |x: &[f64]| -> f64 {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut vertices: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    vertices.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        vertices.push(v);
    }
    let mut values: Vec<f64> = vertices.iter().map(|v| eval(v)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        iterations += 1;

        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let reordered: Vec<Vec<f64>> = order.iter().map(|&i| vertices[i].clone()).collect();
        let revalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        vertices = reordered;
        values = revalues;

        let spread = values[n] - values[0];
        let mut diameter = 0.0_f64;
        for v in &vertices[1..] {
            for j in 0..n {
                diameter = diameter.max((v[j] - vertices[0][j]).abs());
            }
        }
        if diameter < opts.x_tol && spread < opts.f_tol {
            converged = true;
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = alloc::vec![0.0; n];
        for v in &vertices[..n] {
            for j in 0..n {
                centroid[j] += v[j];
            }
        }
        for c in centroid.iter_mut() {
            *c /= n as f64;
        }

        let reflected: Vec<f64> = (0..n)
            .map(|j| centroid[j] + (centroid[j] - vertices[n][j]))
            .collect();
        let f_reflected = eval(&reflected);

        if f_reflected < values[0] {
            let expanded: Vec<f64> = (0..n)
                .map(|j| centroid[j] + 2.0 * (reflected[j] - centroid[j]))
                .collect();
            let f_expanded = eval(&expanded);
            if f_expanded < f_reflected {
                vertices[n] = expanded;
                values[n] = f_expanded;
            } else {
                vertices[n] = reflected;
                values[n] = f_reflected;
            }
        } else if f_reflected < values[n - 1] {
            vertices[n] = reflected;
            values[n] = f_reflected;
        } else {
            let (contracted, f_contracted) = if f_reflected < values[n] {
                // Outside contraction.
                let c: Vec<f64> = (0..n)
                    .map(|j| centroid[j] + 0.5 * (reflected[j] - centroid[j]))
                    .collect();
                let fc = eval(&c);
                (c, fc)
            } else {
                // Inside contraction.
                let c: Vec<f64> = (0..n)
                    .map(|j| centroid[j] + 0.5 * (vertices[n][j] - centroid[j]))
                    .collect();
                let fc = eval(&c);
                (c, fc)
            };
            if f_contracted < values[n].min(f_reflected) {
                vertices[n] = contracted;
                values[n] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                for i in 1..=n {
                    for j in 0..n {
                        vertices[i][j] = vertices[0][j] + 0.5 * (vertices[i][j] - vertices[0][j]);
                    }
                    values[i] = eval(&vertices[i]);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    SimplexResult {
        x: vertices[best].clone(),
        value: values[best],
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let r = minimize(
            |x| (x[0] - 1.5) * (x[0] - 1.5) + 3.0 * (x[1] + 0.5) * (x[1] + 0.5),
            &[0.0, 0.0],
            &SimplexOptions::default(),
        );
        assert!(r.converged);
        assert!((r.x[0] - 1.5).abs() < 1e-7);
        assert!((r.x[1] + 0.5).abs() < 1e-7);
    }

    #[test]
    fn rosenbrock_two_dim() {
        let rosen = |x: &[f64]| {
            let a = 1.0 - x[0];
            let b = x[1] - x[0] * x[0];
            a * a + 100.0 * b * b
        };
        let r = minimize(rosen, &[-1.2, 1.0], &SimplexOptions { max_iter: 5000, ..Default::default() });
        assert!((r.x[0] - 1.0).abs() < 1e-4, "{:?}", r.x);
        assert!((r.x[1] - 1.0).abs() < 1e-4, "{:?}", r.x);
    }

    #[test]
    fn deterministic_replay() {
        let f = |x: &[f64]| libm::cos(x[0]) + (x[1] - 0.3) * (x[1] - 0.3);
        let a = minimize(f, &[1.0, 0.0], &SimplexOptions::default());
        let b = minimize(f, &[1.0, 0.0], &SimplexOptions::default());
        assert_eq!(a.x[0].to_bits(), b.x[0].to_bits());
        assert_eq!(a.x[1].to_bits(), b.x[1].to_bits());
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn survives_infinite_regions() {
        // Objective is +inf left of the origin; the minimum sits at x = 2.
        let f = |x: &[f64]| {
            if x[0] < 0.0 {
                f64::INFINITY
            } else {
                (x[0] - 2.0) * (x[0] - 2.0)
            }
        };
        let r = minimize(f, &[0.1], &SimplexOptions::default());
        assert!((r.x[0] - 2.0).abs() < 1e-6);
    }
}
