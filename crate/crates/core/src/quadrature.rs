//! Gauss–Hermite rules for expectations under a standard normal.

use crate::error::{invalid, Error, Result};

/// Node count used by the shrinkage and state-evolution code.
pub const DEFAULT_NODES: usize = 61;

/// Gauss–Hermite rule rescaled to the standard normal measure: nodes `z_i`
/// and weights `w_i` with `sum_i w_i f(z_i) ≈ E f(Z)`. Exact for polynomials
/// of degree `<= 2 * nodes - 1`.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("Gauss-Hermite needs at least 2 nodes (got {n})")));
        }
        let (x, w) = hermite_physicists(n)?;
        let pi_sqrt = std::f64::consts::PI.sqrt();
        let nodes = x.iter().map(|v| v * std::f64::consts::SQRT_2).collect();
        let weights = w.iter().map(|v| v / pi_sqrt).collect();
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `E f(Z)`; a non-finite `f` value is reported with its node.
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&z, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(z);
            if !v.is_finite() {
                return Err(Error::NumericFailure(format!("integrand is {v} at node z = {z}")));
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

/// `E f(Z)` for `Z ~ N(0,1)` with an `nodes`-point rule.
pub fn gauss_expect(f: impl Fn(f64) -> f64, nodes: usize) -> Result<f64> {
    GaussHermite::new(nodes)?.expect(f)
}

// Roots of H_n and weights for the weight function exp(-x^2), by Newton
// iteration on the orthonormal Hermite recurrence. Roots are found from the
// largest down; the rule is symmetric so only half are computed.
fn hermite_physicists(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    const PIM4: f64 = 0.751_125_544_464_942_5; // pi^(-1/4)
    const MAX_IT: usize = 100;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-0.166_67),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        let mut converged = false;
        for _ in 0..MAX_IT {
            let mut p1 = PIM4;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NumericFailure(format!("Hermite root {i} of {n} did not converge")));
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    Ok((x, w))
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(invalid("Gauss-Legendre needs at least 1 node"));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p1, mut p2) = (1.0, 0.0);
                for j in 1..=n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
                }
                dp = nf * (z * p1 - p2) / (z * z - 1.0);
                let z1 = z;
                z = z1 - p1 / dp;
                if (z - z1).abs() <= 1e-15 {
                    break;
                }
            }
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
            weights[n - 1 - i] = weights[i];
        }
        Ok(Self { nodes, weights })
    }

    /// Integral of `g` over `[a, b]`.
    pub fn integrate(&self, g: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        half * self.nodes.iter().zip(&self.weights).map(|(x, w)| w * g(mid + half * x)).sum::<f64>()
    }
}

/// Half-width of the truncated normal range used by [`normal_expect_piecewise`].
pub const NORMAL_RANGE: f64 = 12.0;

/// `E f(Z)` for `f` that is smooth except at known `kinks`: Gauss–Legendre
/// on unit-length pieces of `[-12, 12]`, with piece boundaries at every kink.
/// Gauss–Hermite loses most of its accuracy on such integrands.
pub fn normal_expect_piecewise(f: impl Fn(f64) -> f64, kinks: &[f64], nodes: usize) -> Result<f64> {
    let rule = GaussLegendre::new(nodes)?;
    let mut cuts: Vec<f64> = (-(NORMAL_RANGE as i64)..=(NORMAL_RANGE as i64)).map(|v| v as f64).collect();
    cuts.extend(kinks.iter().copied().filter(|k| k.is_finite() && k.abs() < NORMAL_RANGE));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let density = |z: f64| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut acc = 0.0;
    for w in cuts.windows(2) {
        if w[1] - w[0] <= 0.0 {
            continue;
        }
        let bad = std::cell::Cell::new(None);
        acc += rule.integrate(
            |z| {
                let v = f(z);
                if !v.is_finite() {
                    bad.set(Some((z, v)));
                }
                v * density(z)
            },
            w[0],
            w[1],
        );
        if let Some((z, v)) = bad.get() {
            return Err(Error::NumericFailure(format!("integrand is {v} at node z = {z}")));
        }
    }
    Ok(acc)
}
