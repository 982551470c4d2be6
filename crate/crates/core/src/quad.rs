//! Adaptive Simpson quadrature for the bounded, piecewise-smooth kernels used
//! by the geometry and variational modules.

fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, fa, m, fm, flm);
    let right = simpson(m, fm, b, fb, frm);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)
            + adaptive(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)
    }
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, fa, b, fb, fm);
    adaptive(&f, a, fa, b, fb, fm, whole, tol.max(1e-14), 40)
}

/// Integrate over `[a, b]` splitting at the interior `breakpoints` (kinks of
/// the integrand), so the adaptive rule never straddles a non-smooth point.
pub fn integrate_with_breakpoints(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> f64 {
    if b <= a {
        return 0.0;
    }
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x > a + 1e-15 && x < b - 1e-15)
        .collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-13);
    let mut total = 0.0;
    let mut lo = a;
    let per_panel_tol = tol / (cuts.len() + 1) as f64;
    for &c in &cuts {
        total += adaptive_simpson(&f, lo, c, per_panel_tol);
        lo = c;
    }
    total + adaptive_simpson(&f, lo, b, per_panel_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        let v = adaptive_simpson(|x| x * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 4.0).abs() < 1e-10);
    }

    #[test]
    fn handles_kinks_with_breakpoints() {
        // integral of |x - 1| over [0, 3] = 0.5 + 2
        let v = integrate_with_breakpoints(|x: f64| (x - 1.0).abs(), 0.0, 3.0, &[1.0], 1e-10);
        assert!((v - 2.5).abs() < 1e-9);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(adaptive_simpson(|x| x, 2.0, 2.0, 1e-9), 0.0);
        assert_eq!(adaptive_simpson(|x| x, 3.0, 2.0, 1e-9), 0.0);
    }
}
