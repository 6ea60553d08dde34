//! State evolution for AMP on the LASSO:
//!
//! ```text
//! G(tau^2; sigma^2) = sigma^2 + E[(eta(Theta + tau Z; kappa tau) - Theta)^2] / delta
//! ```
//!
//! Quantities live in the `sqrt(n)`-rescaled coordinates: an AMP run on an
//! unnormalized Gaussian design with signal amplitude `a` corresponds to a
//! prior with amplitude `a sqrt(n)`, and `tau_t^2` matches `||r^(t)||^2 / n`.

use crate::error::{invalid, Result};
use crate::quadrature::normal_expect_piecewise;
use crate::shrinkage::{minimax_soft, soft, soft_risk};

/// Tolerance passed to [`minimax_soft`] wherever `M(eps)` is needed here.
pub const MINIMAX_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum Prior {
    /// `(1 - eps) delta_0 + (eps/2) (delta_a + delta_{-a})`.
    ThreePoint { amplitude: f64 },
    /// Atoms `(value, mass)`; masses sum to 1.
    Custom(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SEConfig {
    pub delta: f64,
    pub eps: f64,
    pub sigma2: f64,
    pub kappa: f64,
    pub prior: Prior,
    atoms: Vec<(f64, f64)>,
}

impl SEConfig {
    pub fn new(delta: f64, eps: f64, sigma2: f64, kappa: f64, prior: Prior) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(invalid(format!("delta must be finite and > 0 (got {delta})")));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(invalid(format!("eps must lie in (0, 1) (got {eps})")));
        }
        if !(sigma2 >= 0.0) || !sigma2.is_finite() {
            return Err(invalid(format!("sigma2 must be finite and >= 0 (got {sigma2})")));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(invalid(format!("kappa must be finite and > 0 (got {kappa})")));
        }
        let atoms = match &prior {
            Prior::ThreePoint { amplitude } => {
                if !amplitude.is_finite() {
                    return Err(invalid(format!("amplitude must be finite (got {amplitude})")));
                }
                vec![(0.0, 1.0 - eps), (*amplitude, eps / 2.0), (-*amplitude, eps / 2.0)]
            }
            Prior::Custom(atoms) => {
                if atoms.is_empty() {
                    return Err(invalid("custom prior has no atoms"));
                }
                if atoms.iter().any(|(v, m)| !v.is_finite() || !(*m >= 0.0)) {
                    return Err(invalid("custom prior atoms need finite values and masses >= 0"));
                }
                let total: f64 = atoms.iter().map(|a| a.1).sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(invalid(format!("custom prior masses sum to {total}, not 1")));
                }
                atoms.clone()
            }
        };
        Ok(Self { delta, eps, sigma2, kappa, prior, atoms })
    }

    /// Minimax threshold `ell(eps)` as `kappa`.
    pub fn with_minimax_kappa(delta: f64, eps: f64, sigma2: f64, prior: Prior) -> Result<Self> {
        let ell = minimax_soft(eps, MINIMAX_TOL)?.ell;
        Self::new(delta, eps, sigma2, ell, prior)
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// `E Theta^2`.
    pub fn second_moment(&self) -> f64 {
        self.atoms.iter().map(|(v, m)| m * v * v).sum()
    }

    /// `sigma^2 + E Theta^2 / delta`: the effective noise of `theta^(0) = 0`.
    pub fn default_tau2_0(&self) -> f64 {
        self.sigma2 + self.second_moment() / self.delta
    }
}

fn check_tau2(tau2: f64) -> Result<()> {
    if tau2 >= 0.0 && tau2.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("tau2 must be finite and >= 0 (got {tau2})")))
    }
}

/// `G(tau^2)` using the closed-form Gaussian risk of soft thresholding.
pub fn se_map(cfg: &SEConfig, tau2: f64) -> Result<f64> {
    check_tau2(tau2)?;
    let tau = tau2.sqrt();
    let lambda = cfg.kappa * tau;
    let mse: f64 = cfg.atoms.iter().map(|&(v, m)| m * soft_risk(v, tau, lambda)).sum();
    Ok(cfg.sigma2 + mse / cfg.delta)
}

/// `G(tau^2)` by numerical integration over `Z` for each atom, using
/// piecewise Gauss–Legendre with `nodes` points per piece and the
/// thresholding kinks as piece boundaries.
pub fn se_map_quadrature(cfg: &SEConfig, tau2: f64, nodes: usize) -> Result<f64> {
    check_tau2(tau2)?;
    let tau = tau2.sqrt();
    let lambda = cfg.kappa * tau;
    let mut mse = 0.0;
    for &(v, m) in &cfg.atoms {
        if tau == 0.0 {
            mse += m * (soft(v, 0.0) - v).powi(2);
            continue;
        }
        let kinks = [(-lambda - v) / tau, (lambda - v) / tau];
        mse += m * normal_expect_piecewise(|z| (soft(v + tau * z, lambda) - v).powi(2), &kinks, nodes)?;
    }
    Ok(cfg.sigma2 + mse / cfg.delta)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SETrace {
    /// `tau_t^2` for `t = 0..=T`, shorter if the recursion diverged.
    pub tau2: Vec<f64>,
    /// Last value once the recursion has converged.
    pub fixed_point: Option<f64>,
    pub converged: bool,
    pub diverged: bool,
}

impl SETrace {
    /// Predicted `||theta^(t) - theta_0||^2` of AMP, `tau_t^2 - sigma^2`,
    /// for `t = 1..`.
    pub fn predicted_error(&self, sigma2: f64) -> Vec<f64> {
        self.tau2.iter().skip(1).map(|t| t - sigma2).collect()
    }
}

/// Iteration cap for [`se_fixed_point`].
pub const SE_MAX_ITER: usize = 10_000;

/// `tau^2` above this multiple of `max(1, tau_0^2)` counts as divergence.
const SE_BLOWUP: f64 = 1e100;

fn converged_step(prev: f64, next: f64) -> bool {
    (next - prev).abs() < 1e-12 * prev.max(1.0)
}

/// `T` steps of `tau^2 <- G(tau^2)` from `tau2_0` (default
/// [`SEConfig::default_tau2_0`]).
pub fn se_trace(cfg: &SEConfig, t_max: usize, tau2_0: Option<f64>) -> Result<SETrace> {
    if t_max == 0 {
        return Err(invalid("se_trace needs T >= 1"));
    }
    run(cfg, t_max, tau2_0, false)
}

/// Iterate until convergence or [`SE_MAX_ITER`] steps.
pub fn se_fixed_point(cfg: &SEConfig, tau2_0: Option<f64>) -> Result<SETrace> {
    run(cfg, SE_MAX_ITER, tau2_0, true)
}

fn run(cfg: &SEConfig, t_max: usize, tau2_0: Option<f64>, stop_early: bool) -> Result<SETrace> {
    let start = tau2_0.unwrap_or_else(|| cfg.default_tau2_0());
    check_tau2(start)?;
    let limit = SE_BLOWUP * start.max(1.0);
    let mut trace = SETrace { tau2: vec![start], fixed_point: None, converged: false, diverged: false };
    let mut cur = start;
    for _ in 0..t_max {
        let next = se_map(cfg, cur)?;
        if !next.is_finite() || next > limit {
            trace.diverged = true;
            trace.converged = false;
            return Ok(trace);
        }
        trace.tau2.push(next);
        if converged_step(cur, next) {
            trace.converged = true;
            if stop_early {
                cur = next;
                break;
            }
        }
        cur = next;
    }
    if trace.converged {
        trace.fixed_point = Some(cur);
    }
    Ok(trace)
}

/// `sigma^2 M(eps) / (delta - M(eps))`, or `+inf` when `M(eps) >= delta`.
pub fn lasso_asymptotic_risk(eps: f64, delta: f64, sigma2: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(invalid(format!("delta must be > 0 (got {delta})")));
    }
    if !(sigma2 >= 0.0) {
        return Err(invalid(format!("sigma2 must be >= 0 (got {sigma2})")));
    }
    let m = minimax_soft(eps, MINIMAX_TOL)?.m;
    if m >= delta {
        return Ok(f64::INFINITY);
    }
    Ok(sigma2 * m / (delta - m))
}

/// `(eps, M(eps))` for each grid point: below the curve AMP fails in the
/// noiseless problem, above it succeeds.
pub fn phase_boundary(eps_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    eps_grid.iter().map(|&e| Ok((e, minimax_soft(e, MINIMAX_TOL)?.m))).collect()
}
