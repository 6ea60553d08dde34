//! Planted clique recovery on `±1` sign graphs: degree heuristic, spectral
//! method, and AMP with the exponential nonlinearity, plus the clique state
//! evolution `mu_{t+1} = kappa exp(mu_t^2 / 2)`.
//!
//! All algorithms work on `A = W / sqrt(n)` and break ties by ascending
//! vertex index.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{invalid, Result};
use crate::model_gen::{seeded_rng, SignGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueMethod {
    Degree,
    Spectral,
    Amp,
}

impl CliqueMethod {
    pub fn name(&self) -> &'static str {
        match self {
            CliqueMethod::Degree => "degree",
            CliqueMethod::Spectral => "spectral",
            CliqueMethod::Amp => "amp",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostics {
    Degree,
    Spectral {
        top_eigenvalue: f64,
        iterations: usize,
        residual: f64,
        /// Power iteration hit its cap before the residual test passed.
        low_confidence: bool,
        /// `B`: the `k` largest `|v_1|` entries, before cleaning.
        raw: Vec<usize>,
        repair_steps: usize,
    },
    Amp {
        /// `mu` used by `f_t` for `t = 1..T-1`.
        mu_hat: Vec<f64>,
        /// The `k` largest entries of `theta^(T)`, before cleaning.
        raw: Vec<usize>,
        repair_steps: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliqueEstimate {
    /// Sorted, `k` entries.
    pub s_hat: Vec<usize>,
    pub method: CliqueMethod,
    pub diagnostics: Diagnostics,
}

impl CliqueEstimate {
    /// Candidate set before cleaning (the estimate itself for the degree method).
    pub fn raw(&self) -> &[usize] {
        match &self.diagnostics {
            Diagnostics::Degree => &self.s_hat,
            Diagnostics::Spectral { raw, .. } | Diagnostics::Amp { raw, .. } => raw,
        }
    }
}

fn check_k(graph: &SignGraph, k: usize) -> Result<()> {
    if k == 0 || k > graph.n() {
        return Err(invalid(format!("need 1 <= k <= n (k={k}, n={})", graph.n())));
    }
    Ok(())
}

/// Indices of the `k` largest scores, ties to the smaller index, sorted.
fn top_k(scores: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    idx.truncate(k);
    idx.sort_unstable();
    idx
}

/// `|S_hat ∩ S| / |S|`.
pub fn overlap(s_hat: &[usize], s: &[usize]) -> Result<f64> {
    if s.is_empty() {
        return Err(invalid("overlap with an empty reference set"));
    }
    let common = s_hat.iter().filter(|i| s.contains(i)).count();
    Ok(common as f64 / s.len() as f64)
}

/// Every pair of distinct vertices in `t` is joined.
pub fn is_clique(graph: &SignGraph, t: &[usize]) -> bool {
    t.iter().enumerate().all(|(a, &i)| t[a + 1..].iter().all(|&j| graph.get(i, j) == 1))
}

/// The `k` vertices of largest degree.
pub fn degree_heuristic(graph: &SignGraph, k: usize) -> Result<CliqueEstimate> {
    check_k(graph, k)?;
    let degrees: Vec<f64> = (0..graph.n())
        .map(|i| (graph.row(i).iter().filter(|&&w| w == 1).count() - 1) as f64)
        .collect();
    Ok(CliqueEstimate { s_hat: top_k(&degrees, k), method: CliqueMethod::Degree, diagnostics: Diagnostics::Degree })
}

/// Result of power iteration on `W / sqrt(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerResult {
    /// Unit-norm eigenvector estimate.
    pub vector: Vec<f64>,
    /// Rayleigh quotient.
    pub eigenvalue: f64,
    pub iterations: usize,
    /// `||A v - lambda v||`.
    pub residual: f64,
    pub converged: bool,
}

const POWER_START_SEED: u64 = 0x5eed_c11c;

/// Leading eigenpair of `W / sqrt(n)` by power iteration from a fixed
/// pseudo-random start, stopped once `||A v - lambda v|| <= tol |lambda|`.
pub fn top_eigenvector(graph: &SignGraph, tol: f64, max_iter: usize) -> Result<PowerResult> {
    if !(tol > 0.0) {
        return Err(invalid(format!("power tolerance must be > 0 (got {tol})")));
    }
    if max_iter == 0 {
        return Err(invalid("power iteration needs max_iter >= 1"));
    }
    let n = graph.n();
    let scale = 1.0 / (n as f64).sqrt();
    let mut rng = seeded_rng(POWER_START_SEED);
    let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    normalize(&mut v);
    let mut out = PowerResult { vector: Vec::new(), eigenvalue: 0.0, iterations: 0, residual: f64::INFINITY, converged: false };
    for it in 1..=max_iter {
        let mut w = graph.mul_vec(&v, scale);
        let lambda = dot(&v, &w);
        let residual = w.iter().zip(&v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
        out.iterations = it;
        out.eigenvalue = lambda;
        out.residual = residual;
        if residual <= tol * lambda.abs() {
            out.converged = true;
            break;
        }
        if normalize(&mut w) == 0.0 {
            break;
        }
        v = w;
    }
    out.vector = v;
    Ok(out)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Keep the `k` vertices with the most neighbors in `b`, then repair with
/// up to `2k` greedy swaps until the set is a clique. Returns the set and
/// the number of swaps made.
fn clean(graph: &SignGraph, b: &[usize], k: usize) -> (Vec<usize>, usize) {
    let n = graph.n();
    let counts: Vec<f64> = (0..n)
        .map(|i| b.iter().filter(|&&j| j != i && graph.get(i, j) == 1).count() as f64)
        .collect();
    let mut s = top_k(&counts, k);
    let mut member = vec![false; n];
    s.iter().for_each(|&i| member[i] = true);
    // in_s[i] = number of neighbors of i inside s, excluding i itself.
    let mut in_s: Vec<usize> = (0..n)
        .map(|i| s.iter().filter(|&&j| j != i && graph.get(i, j) == 1).count())
        .collect();
    let mut steps = 0;
    while steps < 2 * k && !in_s_is_clique(&s, &in_s, k) {
        let drop = *s.iter().min_by(|&&a, &&b| in_s[a].cmp(&in_s[b]).then(a.cmp(&b))).unwrap();
        member[drop] = false;
        for (i, c) in in_s.iter_mut().enumerate() {
            if i != drop && graph.get(i, drop) == 1 {
                *c -= 1;
            }
        }
        let add = (0..n)
            .filter(|&i| !member[i] && i != drop)
            .max_by(|&a, &b| in_s[a].cmp(&in_s[b]).then(b.cmp(&a)));
        let Some(add) = add else {
            member[drop] = true;
            for (i, c) in in_s.iter_mut().enumerate() {
                if i != drop && graph.get(i, drop) == 1 {
                    *c += 1;
                }
            }
            break;
        };
        member[add] = true;
        for (i, c) in in_s.iter_mut().enumerate() {
            if i != add && graph.get(i, add) == 1 {
                *c += 1;
            }
        }
        s = (0..n).filter(|&i| member[i]).collect();
        steps += 1;
    }
    (s, steps)
}

fn in_s_is_clique(s: &[usize], in_s: &[usize], k: usize) -> bool {
    s.iter().all(|&i| in_s[i] == k - 1)
}

/// Spectral method: `B` = the `k` largest `|v_1|` entries, followed by the
/// neighbor-count cleaning step and greedy clique repair.
pub fn spectral_clique(graph: &SignGraph, k: usize, power_tol: f64, max_power_iter: usize) -> Result<CliqueEstimate> {
    check_k(graph, k)?;
    let pr = top_eigenvector(graph, power_tol, max_power_iter)?;
    let mags: Vec<f64> = pr.vector.iter().map(|x| x.abs()).collect();
    let raw = top_k(&mags, k);
    let (s_hat, repair_steps) = clean(graph, &raw, k);
    Ok(CliqueEstimate {
        s_hat,
        method: CliqueMethod::Spectral,
        diagnostics: Diagnostics::Spectral {
            top_eigenvalue: pr.eigenvalue,
            iterations: pr.iterations,
            residual: pr.residual,
            low_confidence: !pr.converged,
            raw,
            repair_steps,
        },
    })
}

/// How AMP chooses `mu_t` in `f_t(x) = exp(mu_t x - mu_t^2 / 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuSchedule {
    /// The clique state evolution sequence at `kappa = k / sqrt(n)`.
    StateEvolution,
    /// Mean of `theta^(t)` over its top `k` entries, replaced by the state
    /// evolution value whenever it fails to increase.
    Empirical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmpCliqueOptions {
    pub iterations: usize,
    pub onsager: bool,
    pub schedule: MuSchedule,
    /// Upper bound on `mu_t`; `None` means [`default_mu_cap`].
    pub mu_cap: Option<f64>,
}

impl AmpCliqueOptions {
    pub fn new(iterations: usize) -> Self {
        Self { iterations, onsager: true, schedule: MuSchedule::StateEvolution, mu_cap: None }
    }
}

/// `sqrt(ln n) / 2`.
pub fn default_mu_cap(n: usize) -> f64 {
    (n as f64).ln().max(0.0).sqrt() / 2.0
}

/// `f_t` on `theta`, rescaled to unit root-mean-square. Evaluated in the log
/// domain, so no exponent overflows.
fn exp_nonlinearity(theta: &[f64], mu: f64) -> Vec<f64> {
    let top = theta.iter().map(|&x| mu * x).fold(f64::NEG_INFINITY, f64::max);
    let mut f: Vec<f64> = theta.iter().map(|&x| (mu * x - top).exp()).collect();
    let rms = (dot(&f, &f) / f.len() as f64).sqrt();
    f.iter_mut().for_each(|x| *x /= rms);
    f
}

/// AMP for the planted clique:
///
/// ```text
/// theta^(t+1) = A f_t(theta^(t)) - b_t f_{t-1}(theta^(t-1)),   b_t = mean f_t'(theta^(t))
/// ```
///
/// from `theta^(0) = 1` (so `f_0 = 1`), followed by the same cleaning as
/// [`spectral_clique`] applied to the top `k` entries of `theta^(T)`.
pub fn amp_clique(graph: &SignGraph, k: usize, opts: AmpCliqueOptions) -> Result<CliqueEstimate> {
    check_k(graph, k)?;
    if opts.iterations == 0 {
        return Err(invalid("amp_clique needs T >= 1"));
    }
    let n = graph.n();
    let scale = 1.0 / (n as f64).sqrt();
    let kappa = k as f64 / (n as f64).sqrt();
    let cap = opts.mu_cap.unwrap_or_else(|| default_mu_cap(n));
    if !(cap > 0.0) {
        return Err(invalid(format!("mu cap must be > 0 (got {cap})")));
    }
    let se = clique_se_trace(kappa, opts.iterations, f64::INFINITY)?;
    let se_mu = |t: usize| se.mu_tilde.get(t - 1).copied().unwrap_or(f64::INFINITY);

    let mut f = vec![1.0; n];
    let mut theta = graph.mul_vec(&f, scale);
    let mut mu_hat = Vec::with_capacity(opts.iterations);
    let mut last_emp = f64::NEG_INFINITY;
    for t in 1..opts.iterations {
        let mu = match opts.schedule {
            MuSchedule::StateEvolution => se_mu(t),
            MuSchedule::Empirical => {
                let top = top_k(&theta, k);
                let emp = top.iter().map(|&i| theta[i]).sum::<f64>() / k as f64;
                let mu = if emp > last_emp { emp } else { se_mu(t) };
                last_emp = emp;
                mu
            }
        }
        .min(cap);
        mu_hat.push(mu);
        let next_f = exp_nonlinearity(&theta, mu);
        let b = if opts.onsager { mu * next_f.iter().sum::<f64>() / n as f64 } else { 0.0 };
        let mut next = graph.mul_vec(&next_f, scale);
        next.iter_mut().zip(&f).for_each(|(x, fp)| *x -= b * fp);
        f = next_f;
        theta = next;
    }
    let raw = top_k(&theta, k);
    let (s_hat, repair_steps) = clean(graph, &raw, k);
    Ok(CliqueEstimate { s_hat, method: CliqueMethod::Amp, diagnostics: Diagnostics::Amp { mu_hat, raw, repair_steps } })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliqueSETrace {
    /// `mu_1 = kappa, mu_2, ...`
    pub mu_tilde: Vec<f64>,
    /// Some `mu_t` exceeded the cap; the sequence stops there.
    pub diverged: bool,
    /// Successive values agreed to `1e-12` relative.
    pub converged: bool,
}

/// Default escape level for [`clique_se_trace`].
pub const CLIQUE_SE_CAP: f64 = 30.0;

/// `T` terms of `mu_1 = kappa`, `mu_{t+1} = kappa exp(mu_t^2 / 2)`, stopping
/// early once a term exceeds `cap`.
pub fn clique_se_trace(kappa: f64, t_max: usize, cap: f64) -> Result<CliqueSETrace> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(invalid(format!("kappa must be finite and > 0 (got {kappa})")));
    }
    if t_max == 0 {
        return Err(invalid("clique_se_trace needs T >= 1"));
    }
    let mut tr = CliqueSETrace { mu_tilde: vec![kappa], diverged: false, converged: false };
    if kappa > cap {
        tr.diverged = true;
        return Ok(tr);
    }
    let mut mu = kappa;
    for _ in 1..t_max {
        let next = kappa * (mu * mu / 2.0).exp();
        if next > cap || !next.is_finite() {
            tr.diverged = true;
            break;
        }
        tr.mu_tilde.push(next);
        if (next - mu).abs() <= 1e-12 * mu {
            tr.converged = true;
        }
        mu = next;
    }
    if tr.diverged {
        tr.converged = false;
    }
    Ok(tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_gen::planted_clique_instance;
    use rand::seq::SliceRandom;

    #[test]
    fn overlap_examples() {
        assert_eq!(overlap(&[1, 2, 3], &[1, 2, 3]).unwrap(), 1.0);
        assert_eq!(overlap(&[4, 5], &[1, 2]).unwrap(), 0.0);
        let s: Vec<usize> = (0..10).collect();
        let t: Vec<usize> = (3..13).collect();
        assert!((overlap(&t, &s).unwrap() - 0.7).abs() < 1e-15);
        assert!(overlap(&[1], &[]).is_err());
    }

    #[test]
    fn is_clique_examples() {
        let inst = planted_clique_instance(200, 30, 3).unwrap();
        assert!(is_clique(&inst.graph, &inst.support));
        assert!(is_clique(&inst.graph, &[]));
        assert!(is_clique(&inst.graph, &[17]));
        let outsider = (0..200).find(|i| !inst.support.contains(i)).unwrap();
        let mut t = inst.support.clone();
        t.push(outsider);
        assert!(!is_clique(&inst.graph, &t));
    }

    #[test]
    fn top_k_ties_go_to_smaller_index() {
        assert_eq!(top_k(&[1.0, 3.0, 3.0, 2.0, 3.0], 2), vec![1, 2]);
        assert_eq!(top_k(&[0.0; 5], 3), vec![0, 1, 2]);
    }

    #[test]
    fn degree_on_complete_graph() {
        let g = SignGraph::from_signs(6, vec![1; 36]).unwrap();
        let est = degree_heuristic(&g, 6).unwrap();
        assert_eq!(est.s_hat, (0..6).collect::<Vec<_>>());
        assert!(degree_heuristic(&g, 0).is_err());
        assert!(degree_heuristic(&g, 7).is_err());
    }

    #[test]
    fn degree_is_permutation_equivariant() {
        // k large enough that no degree tie straddles the top-k boundary.
        let inst = planted_clique_instance(400, 100, 8).unwrap();
        let mut deg: Vec<usize> = (0..400).map(|i| inst.graph.row(i).iter().filter(|&&w| w == 1).count()).collect();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        assert!(deg[99] > deg[100]);
        let mut perm: Vec<usize> = (0..400).collect();
        perm.shuffle(&mut seeded_rng(99));
        let est = degree_heuristic(&inst.graph, 100).unwrap().s_hat;
        let est_p = degree_heuristic(&inst.graph.permuted(&perm), 100).unwrap().s_hat;
        let mut mapped: Vec<usize> = est.iter().map(|&i| perm[i]).collect();
        mapped.sort_unstable();
        assert_eq!(mapped, est_p);
    }

    #[test]
    fn power_iteration_residual() {
        let inst = planted_clique_instance(600, 80, 2).unwrap();
        let pr = top_eigenvector(&inst.graph, 1e-8, 5000).unwrap();
        assert!(pr.converged);
        assert!(pr.residual <= 1e-8 * pr.eigenvalue.abs());
        let norm: f64 = pr.vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        // Spiked model: lambda ≈ kappa + 1/kappa.
        let kappa = inst.kappa();
        assert!((pr.eigenvalue - (kappa + 1.0 / kappa)).abs() < 0.15, "{}", pr.eigenvalue);
    }

    #[test]
    fn power_iteration_cap_is_flagged() {
        let inst = planted_clique_instance(300, 5, 4).unwrap();
        let est = spectral_clique(&inst.graph, 5, 1e-14, 3).unwrap();
        match est.diagnostics {
            Diagnostics::Spectral { low_confidence, iterations, .. } => {
                assert!(low_confidence);
                assert_eq!(iterations, 3);
            }
            _ => panic!("wrong diagnostics"),
        }
        assert_eq!(est.s_hat.len(), 5);
    }

    #[test]
    fn cleaning_repairs_to_a_clique() {
        let inst = planted_clique_instance(500, 70, 6).unwrap();
        // Start from half the clique plus arbitrary outsiders.
        let mut b: Vec<usize> = inst.support[..35].to_vec();
        b.extend((0..500).filter(|i| !inst.support.contains(i)).take(35));
        let (s, _) = clean(&inst.graph, &b, 70);
        assert_eq!(s, inst.support);
    }

    #[test]
    fn estimates_have_k_sorted_entries() {
        let inst = planted_clique_instance(300, 12, 5).unwrap();
        let ests = [
            degree_heuristic(&inst.graph, 12).unwrap(),
            spectral_clique(&inst.graph, 12, 1e-6, 200).unwrap(),
            amp_clique(&inst.graph, 12, AmpCliqueOptions::new(5)).unwrap(),
        ];
        for e in ests {
            assert_eq!(e.s_hat.len(), 12);
            assert!(e.s_hat.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(e.raw().len(), 12);
        }
    }

    #[test]
    fn amp_recovers_large_clique() {
        let inst = planted_clique_instance(1000, 60, 1).unwrap();
        let est = amp_clique(&inst.graph, 60, AmpCliqueOptions::new(10)).unwrap();
        assert_eq!(est.s_hat, inst.support);
        match &est.diagnostics {
            Diagnostics::Amp { mu_hat, .. } => {
                assert_eq!(mu_hat.len(), 9);
                assert!((mu_hat[0] - inst.kappa().min(default_mu_cap(1000))).abs() < 1e-15);
                assert!(mu_hat.iter().all(|&m| m <= default_mu_cap(1000)));
            }
            _ => panic!("wrong diagnostics"),
        }
        let emp = AmpCliqueOptions { schedule: MuSchedule::Empirical, ..AmpCliqueOptions::new(10) };
        assert_eq!(amp_clique(&inst.graph, 60, emp).unwrap().s_hat.len(), 60);
    }

    #[test]
    fn exp_nonlinearity_is_stable() {
        let f = exp_nonlinearity(&[1e4, 0.0, -1e4], 50.0);
        assert!(f.iter().all(|x| x.is_finite()));
        let rms = (f.iter().map(|x| x * x).sum::<f64>() / 3.0).sqrt();
        assert!((rms - 1.0).abs() < 1e-15);
        let g = exp_nonlinearity(&[0.3, -1.0, 2.0, 0.0], 0.8);
        let raw: Vec<f64> = [0.3f64, -1.0, 2.0, 0.0].iter().map(|x| (0.8 * x - 0.32).exp()).collect();
        let r = (raw.iter().map(|x| x * x).sum::<f64>() / 4.0).sqrt();
        for (a, b) in g.iter().zip(&raw) {
            assert!((a - b / r).abs() < 1e-14);
        }
    }

    #[test]
    fn se_fixed_point_at_critical_kappa() {
        let kappa = (-0.5f64).exp();
        assert!((kappa * 0.5f64.exp() - 1.0).abs() < 1e-15);
        let next = kappa * (1.0f64 / 2.0).exp();
        assert!((next - 1.0).abs() < 1e-15);
    }

    #[test]
    fn se_below_threshold_converges() {
        let tr = clique_se_trace(0.5, 200, CLIQUE_SE_CAP).unwrap();
        assert!(tr.converged && !tr.diverged);
        assert_eq!(tr.mu_tilde[0], 0.5);
        // Bisection on g(mu) = 0.5 exp(mu^2/2) - mu over [0, 1].
        let g = |m: f64| 0.5 * (m * m / 2.0).exp() - m;
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let last = *tr.mu_tilde.last().unwrap();
        assert!((last - lo).abs() < 1e-10);
        assert!((last - 0.598).abs() < 5e-4, "{last}");
    }

    #[test]
    fn se_above_threshold_diverges() {
        let tr = clique_se_trace(0.7, 60, CLIQUE_SE_CAP).unwrap();
        assert!(tr.diverged && !tr.converged);
        assert!(tr.mu_tilde.len() < 60);
        assert!(clique_se_trace(0.0, 10, 30.0).is_err());
        assert!(clique_se_trace(0.5, 0, 30.0).is_err());
    }

    #[test]
    fn se_dichotomy_split() {
        let grid: Vec<f64> = (1..=50).map(|i| 0.1 + 1.1 * i as f64 / 51.0).collect();
        let mut split_lo = 0.0;
        let mut split_hi = f64::INFINITY;
        for &kappa in &grid {
            let tr = clique_se_trace(kappa, 100_000, CLIQUE_SE_CAP).unwrap();
            assert!(tr.converged ^ tr.diverged, "kappa={kappa}");
            if tr.converged {
                split_lo = f64::max(split_lo, kappa);
            } else {
                split_hi = split_hi.min(kappa);
            }
        }
        assert!(split_lo < split_hi);
        let split = 0.5 * (split_lo + split_hi);
        assert!((split - (-0.5f64).exp()).abs() < 0.02, "{split}");
    }
}
