//! Generic projected-gradient maximizer for smooth concave objectives over a
//! box intersected with one linear inequality. Used as the independent
//! numeric cross-check for the closed-form Lagrange optima; deliberately
//! knows nothing about the stationarity algebra it verifies.

/// Feasible set `{ v : lo <= v <= hi, w . v <= b }`.
#[derive(Debug, Clone)]
pub struct BoxHalfspace {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub w: Vec<f64>,
    pub b: f64,
}

impl BoxHalfspace {
    fn clamp(&self, v: &[f64]) -> Vec<f64> {
        v.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .map(|(&x, (&l, &h))| x.clamp(l, h))
            .collect()
    }

    /// Euclidean projection onto the intersection. The projection is
    /// `clamp(v - mu w)` where `mu >= 0` is zero when the clamped point
    /// already satisfies the halfspace and otherwise solves
    /// `w . clamp(v - mu w) = b` (a monotone piecewise-linear equation,
    /// resolved by bisection).
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        let clamped = self.clamp(v);
        let dot = |u: &[f64]| u.iter().zip(&self.w).map(|(x, w)| x * w).sum::<f64>();
        if dot(&clamped) <= self.b + 1e-15 {
            return clamped;
        }
        let shifted = |mu: f64| -> Vec<f64> {
            self.clamp(&v.iter().zip(&self.w).map(|(&x, &w)| x - mu * w).collect::<Vec<_>>())
        };
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        while dot(&shifted(hi)) > self.b && hi < 1e12 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if dot(&shifted(mid)) > self.b {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-16 * hi.max(1.0) {
                break;
            }
        }
        shifted(hi)
    }
}

#[derive(Debug, Clone)]
pub struct MaximizeResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Projected gradient ascent with Armijo backtracking. `tol` bounds the
/// step-to-step movement at convergence.
pub fn maximize_concave<F, G>(
    f: F,
    grad: G,
    feasible: &BoxHalfspace,
    start: &[f64],
    tol: f64,
    max_iters: usize,
) -> MaximizeResult
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64]) -> Vec<f64>,
{
    let mut x = feasible.project(start);
    let mut value = f(&x);
    let mut step = 1.0f64;
    let mut converged = false;
    let mut iterations = 0;
    for it in 0..max_iters {
        iterations = it + 1;
        let g = grad(&x);
        let mut moved = 0.0;
        let mut accepted = false;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(&xi, &gi)| xi + step * gi).collect();
            let proj = feasible.project(&trial);
            let trial_value = f(&proj);
            moved = proj
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            // Armijo on the projected step
            if trial_value >= value + 1e-4 * moved * moved / step.max(1e-300) - 1e-18 {
                x = proj;
                value = trial_value;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            converged = moved <= tol;
            break;
        }
        step = (step * 1.5).min(1e6);
        if moved <= tol {
            converged = true;
            break;
        }
    }
    MaximizeResult { x, value, iterations, converged }
}
