//! Test-only reference integrators, independent of the quadrature module.

use std::f64::consts::PI;

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson integral of `g` over `[a, b]`.
pub fn integrate(g: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let g = &g as &dyn Fn(f64) -> f64;
    // Pre-split so the initial Simpson estimate can't alias a narrow bump.
    let pieces = 64;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (f0, fm, f1) = (g(x0), g(0.5 * (x0 + x1)), g(x1));
            let whole = simpson(x0, x1, f0, fm, f1);
            adaptive(g, x0, x1, f0, fm, f1, whole, tol / pieces as f64, 50)
        })
        .sum()
}

/// `E f(Z)` for standard normal `Z` by adaptive Simpson on `[-40, 40]`,
/// split at the given kink locations.
pub fn normal_expect_adaptive(f: impl Fn(f64) -> f64, kinks: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = kinks.iter().copied().filter(|k| k.abs() < 40.0).collect();
    cuts.push(-40.0);
    cuts.push(40.0);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    let g = |z: f64| f(z) * (-0.5 * z * z).exp() / (2.0 * PI).sqrt();
    cuts.windows(2).map(|w| integrate(g, w[0], w[1], 1e-14)).sum()
}
