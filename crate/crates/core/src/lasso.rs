//! The LASSO objective `F(theta) = ||y - X theta||^2 / (2n) + lambda ||theta||_1`
//! and two iterative solvers for it: ISTA and AMP.
//!
//! Designs are unnormalized (`X_ij ~ N(0,1)` for Gaussian designs), so the
//! effective observation at each step is `theta + X^T r / n`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{invalid, Error, Result};
use crate::model_gen::{normal_vec, seeded_rng, DesignMatrix};
use crate::shrinkage::soft;

#[derive(Debug, Clone, Copy)]
pub struct LassoProblem<'a> {
    pub x: &'a DesignMatrix,
    pub y: &'a DVector<f64>,
    pub lambda: f64,
}

impl<'a> LassoProblem<'a> {
    pub fn new(x: &'a DesignMatrix, y: &'a DVector<f64>, lambda: f64) -> Result<Self> {
        if y.len() != x.n() {
            return Err(invalid(format!("y has length {} but the design has n = {}", y.len(), x.n())));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(invalid(format!("lambda must be finite and >= 0 (got {lambda})")));
        }
        Ok(Self { x, y, lambda })
    }

    fn n(&self) -> f64 {
        self.x.n() as f64
    }

    /// `X^T (y - X theta) / n`, the negative gradient of the smooth part.
    pub fn correlation(&self, theta: &DVector<f64>) -> DVector<f64> {
        self.x.apply_t(&(self.y - self.x.apply(theta))) / self.n()
    }

    /// Smallest `lambda` for which `theta = 0` is optimal: `||X^T y / n||_inf`.
    pub fn lambda_max(&self) -> f64 {
        (self.x.apply_t(self.y) / self.n()).amax()
    }
}

pub fn lasso_cost(prob: &LassoProblem, theta: &DVector<f64>) -> f64 {
    let resid = prob.y - prob.x.apply(theta);
    resid.norm_squared() / (2.0 * prob.n()) + prob.lambda * theta.lp_norm(1)
}

/// Largest distance from `X^T (y - X theta)/n` to the subdifferential of
/// `lambda ||.||_1` at `theta`, over coordinates. Zero exactly at minimizers.
pub fn kkt_residual(prob: &LassoProblem, theta: &DVector<f64>) -> f64 {
    let g = prob.correlation(theta);
    g.iter()
        .zip(theta.iter())
        .map(|(&gj, &tj)| {
            if tj != 0.0 {
                (gj - prob.lambda * tj.signum()).abs()
            } else {
                (gj.abs() - prob.lambda).max(0.0)
            }
        })
        .fold(0.0, f64::max)
}

const POWER_MAX_ITER: usize = 100_000;

/// Upper estimate of `lambda_max(X^T X / n)` by power iteration, stopped
/// when the Rayleigh quotient changes by less than `tol` relatively; the
/// estimate is inflated by `1 + tol`.
pub fn lipschitz_bound(x: &DesignMatrix, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(invalid(format!("tol must be > 0 (got {tol})")));
    }
    if x.entries().amax() == 0.0 {
        return Err(invalid("lipschitz_bound needs a nonzero design"));
    }
    let n = x.n() as f64;
    // Fixed pseudo-random start so no eigen-direction is missed by construction.
    let mut rng = seeded_rng(0x4c49_5053);
    let mut v = DVector::from_vec(normal_vec(&mut rng, x.p()));
    v /= v.norm();
    let mut rq_prev = f64::NAN;
    for _ in 0..POWER_MAX_ITER {
        let w = x.apply_t(&x.apply(&v)) / n;
        let rq = v.dot(&w);
        let norm = w.norm();
        if norm == 0.0 {
            return Err(Error::NumericFailure("power iteration collapsed to zero".into()));
        }
        v = w / norm;
        if (rq - rq_prev).abs() < tol * rq.abs() {
            return Ok((1.0 + tol) * rq.max(norm));
        }
        rq_prev = rq;
    }
    Err(Error::NumericFailure(format!(
        "lipschitz_bound: no convergence in {POWER_MAX_ITER} power iterations"
    )))
}

/// Per-iteration record of a solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct IterateTrace {
    /// `(t, theta^(t))`: every iterate up to t = 50, then every 10th.
    pub iterates: Vec<(usize, DVector<f64>)>,
    /// `F(theta^(t))` at the problem's lambda, for every stored and skipped t.
    pub costs: Vec<f64>,
    pub final_theta: DVector<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// AMP only: `tau_hat_t = ||r^(t)|| / sqrt(n)`, the effective noise level
    /// in the `sqrt(n)`-rescaled coordinates where state evolution lives.
    pub tau_hat: Vec<f64>,
    /// AMP only: the iteration blew up.
    pub diverged: bool,
    /// AMP only: `gamma (1 - ||theta||_0 / n)`, the LASSO penalty whose
    /// minimizer the final iterate is a fixed point for.
    pub induced_lambda: Option<f64>,
}

impl IterateTrace {
    fn start(p: usize) -> Self {
        Self {
            iterates: vec![(0, DVector::zeros(p))],
            costs: Vec::new(),
            final_theta: DVector::zeros(p),
            iterations: 0,
            converged: false,
            tau_hat: Vec::new(),
            diverged: false,
            induced_lambda: None,
        }
    }

    fn record(&mut self, t: usize, theta: &DVector<f64>) {
        if t <= 50 || t % 10 == 0 {
            self.iterates.push((t, theta.clone()));
        }
    }

    /// Stored iterate at step `t`, if kept by the thinning rule.
    pub fn iterate(&self, t: usize) -> Option<&DVector<f64>> {
        self.iterates.iter().find(|(s, _)| *s == t).map(|(_, v)| v)
    }
}

/// Iterative soft thresholding with step `1/L`:
/// `theta <- eta(theta + X^T (y - X theta) / (n L); lambda / L)` from `theta = 0`.
/// Stops when the relative cost decrease drops below `tol`.
pub fn ista(prob: &LassoProblem, max_iter: usize, tol: f64) -> Result<IterateTrace> {
    let lip = lipschitz_bound(prob.x, 1e-10)?;
    let p = prob.x.p();
    let mut trace = IterateTrace::start(p);
    let mut theta = DVector::zeros(p);
    let mut cost = lasso_cost(prob, &theta);
    trace.costs.push(cost);
    for t in 1..=max_iter {
        let step = prob.correlation(&theta) / lip + &theta;
        let next = step.map(|v| soft(v, prob.lambda / lip));
        let next_cost = lasso_cost(prob, &next);
        theta = next;
        trace.costs.push(next_cost);
        trace.record(t, &theta);
        trace.iterations = t;
        let decrease = cost - next_cost;
        cost = next_cost;
        if decrease <= tol * cost.abs().max(f64::MIN_POSITIVE) {
            trace.converged = true;
            break;
        }
    }
    trace.final_theta = theta;
    Ok(trace)
}

/// How AMP picks its threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdPolicy {
    /// `gamma_t = kappa * tau_hat_t / sqrt(n)`.
    FixedAlpha { kappa: f64 },
    /// Search `kappa` so that the induced LASSO penalty equals `lambda`.
    CalibratedLambda { lambda: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmpOptions {
    pub max_iter: usize,
    /// Stop once `||theta^(t+1) - theta^(t)|| / sqrt(p) < tol`.
    pub tol: f64,
    /// Include the memory term `b_t r^(t-1)`. Without it the recursion is
    /// plain iterative thresholding with the same threshold policy.
    pub onsager: bool,
}

impl AmpOptions {
    pub fn new(max_iter: usize, tol: f64) -> Self {
        Self { max_iter, tol, onsager: true }
    }
}

const DIVERGENCE_FACTOR: f64 = 1e6;

/// Approximate message passing for the LASSO:
///
/// ```text
/// r^(t)       = y - X theta^(t) + b_t r^(t-1),   b_t = ||theta^(t)||_0 / n
/// theta^(t+1) = eta(theta^(t) + X^T r^(t) / n; gamma_t)
/// ```
///
/// from `theta^(0) = 0`, `r^(-1) = 0`. Intended for Gaussian designs.
pub fn amp_lasso(prob: &LassoProblem, policy: ThresholdPolicy, max_iter: usize, tol: f64) -> Result<IterateTrace> {
    amp_lasso_with(prob, policy, AmpOptions::new(max_iter, tol))
}

pub fn amp_lasso_with(prob: &LassoProblem, policy: ThresholdPolicy, opts: AmpOptions) -> Result<IterateTrace> {
    match policy {
        ThresholdPolicy::FixedAlpha { kappa } => {
            if !(kappa > 0.0) || !kappa.is_finite() {
                return Err(invalid(format!("kappa must be finite and > 0 (got {kappa})")));
            }
            Ok(amp_fixed_alpha(prob, kappa, opts))
        }
        ThresholdPolicy::CalibratedLambda { lambda } => calibrate(prob, lambda, opts),
    }
}

fn amp_fixed_alpha(prob: &LassoProblem, kappa: f64, opts: AmpOptions) -> IterateTrace {
    let (n, p) = (prob.x.n(), prob.x.p());
    let nf = n as f64;
    let mut trace = IterateTrace::start(p);
    let mut theta = DVector::zeros(p);
    let mut r_prev = DVector::zeros(n);
    let mut onsager = 0.0;
    let mut gamma = 0.0;
    trace.costs.push(lasso_cost(prob, &theta));
    for t in 0..opts.max_iter {
        let mut r = prob.y - prob.x.apply(&theta);
        if opts.onsager {
            r.axpy(onsager, &r_prev, 1.0);
        }
        let tau = r.norm() / nf.sqrt();
        trace.tau_hat.push(tau);
        if !tau.is_finite() || tau > DIVERGENCE_FACTOR * trace.tau_hat[0] {
            trace.diverged = true;
            break;
        }
        gamma = kappa * tau / nf.sqrt();
        let pseudo = prob.x.apply_t(&r) / nf + &theta;
        let next = pseudo.map(|v| soft(v, gamma));
        let change = (&next - &theta).norm() / (p as f64).sqrt();
        theta = next;
        onsager = theta.iter().filter(|v| **v != 0.0).count() as f64 / nf;
        r_prev = r;
        trace.iterations = t + 1;
        trace.costs.push(lasso_cost(prob, &theta));
        trace.record(t + 1, &theta);
        if change < opts.tol {
            trace.converged = true;
            break;
        }
    }
    let nnz = theta.iter().filter(|v| **v != 0.0).count() as f64;
    trace.induced_lambda = Some(gamma * (1.0 - nnz / nf));
    trace.final_theta = theta;
    trace
}

const CALIBRATION_STEPS: usize = 200;

fn calibrate(prob: &LassoProblem, lambda: f64, opts: AmpOptions) -> Result<IterateTrace> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(invalid(format!("calibrated lambda must be finite and > 0 (got {lambda})")));
    }
    let run = |kappa: f64| amp_fixed_alpha(prob, kappa, opts);
    let usable = |tr: &IterateTrace| tr.converged && !tr.diverged;
    let induced = |tr: &IterateTrace| tr.induced_lambda.unwrap_or(f64::NAN);

    let mut hi = 1.0;
    let mut hi_trace = run(hi);
    let mut steps = 0;
    while !(usable(&hi_trace) && induced(&hi_trace) >= lambda) {
        hi *= 2.0;
        hi_trace = run(hi);
        steps += 1;
        if steps > 60 {
            return Err(Error::NumericFailure(format!("no kappa reaches induced lambda {lambda}")));
        }
    }
    let mut lo = hi / 2.0;
    let mut lo_trace = run(lo);
    while usable(&lo_trace) && induced(&lo_trace) > lambda {
        lo /= 2.0;
        lo_trace = run(lo);
        steps += 1;
        if steps > 120 {
            return Err(Error::NumericFailure(format!("no kappa goes below induced lambda {lambda}")));
        }
    }
    // Bisection: `hi` always usable with induced >= lambda.
    for _ in 0..CALIBRATION_STEPS {
        if (induced(&hi_trace) - lambda).abs() <= 1e-9 * lambda || hi - lo <= 1e-13 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let tr = run(mid);
        if usable(&tr) && induced(&tr) >= lambda {
            hi = mid;
            hi_trace = tr;
        } else {
            lo = mid;
        }
    }
    Ok(hi_trace)
}

/// Number of `k`-subsets of `p` items, saturating.
fn binomial(p: usize, k: usize) -> u128 {
    let k = k.min(p - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((p - i) as u128) / (i as u128 + 1);
    }
    acc
}

pub const RIP_BUDGET: u128 = 1_000_000;

/// Exact restricted isometry constant of `X / sqrt(n)` at sparsity `k`, by
/// enumerating all `C(p, k)` supports.
pub fn rip_constant_bruteforce(x: &DesignMatrix, k: usize) -> Result<f64> {
    let p = x.p();
    if k == 0 || k > p {
        return Err(invalid(format!("rip_constant_bruteforce needs 1 <= k <= p (k={k}, p={p})")));
    }
    let count = binomial(p, k);
    if count > RIP_BUDGET {
        return Err(invalid(format!(
            "C({p}, {k}) = {count} supports exceeds the budget of {RIP_BUDGET}"
        )));
    }
    let gram = x.entries().tr_mul(x.entries()) / x.n() as f64;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut delta: f64 = 0.0;
    loop {
        let sub = DMatrix::from_fn(k, k, |a, b| gram[(idx[a], idx[b])]);
        let ev = SymmetricEigen::new(sub).eigenvalues;
        delta = delta.max(ev.max() - 1.0).max(1.0 - ev.min());
        // next combination in lexicographic order
        let mut i = k;
        while i > 0 && idx[i - 1] == p - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(delta)
}
