//! The five experiments behind the subcommands.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use nalgebra::DVector;
use rayon::prelude::*;
use statest::classical::{bias_variance_curve, orthogonal_statistic, universal_threshold};
use statest::clique::{amp_clique, degree_heuristic, overlap, spectral_clique, AmpCliqueOptions, CliqueEstimate, CliqueMethod};
use statest::lasso::{amp_lasso_with, ista, AmpOptions, IterateTrace, LassoProblem, ThresholdPolicy};
use statest::model_gen::{
    dct_orthogonal_design, gaussian_design, linear_observe, planted_clique_instance, sparse_signal, substream, SignGraph,
};
use statest::shrinkage::{minimax_soft, ShrinkageKind, ShrinkageRule};
use statest::state_evolution::phase_boundary;

use crate::config::{Experiment, RunConfig};
use crate::error::{usage, CliError, CliResult};
use crate::svg::{emit_svg_plot, PlotSpec};
use crate::table::{emit_csv, ResultTable};

/// A finished run: the table, an optional plot, and one message per failed
/// replicate.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub table: ResultTable,
    pub plot: Option<PlotSpec>,
    pub failures: Vec<String>,
}

/// Run the experiment and write `<name>.csv`, `<name>.svg` (when the
/// experiment has a plot) and `<name>.meta` into the output directory.
pub fn run_experiment(cfg: &RunConfig) -> CliResult<ExperimentOutput> {
    let out = compute(cfg)?;
    fs::create_dir_all(&cfg.output_dir).map_err(|e| CliError::io(&cfg.output_dir, e))?;
    let stem = cfg.experiment.name();
    emit_csv(&out.table, &cfg.output_dir.join(format!("{stem}.csv")))?;
    if let Some(plot) = &out.plot {
        if !out.table.rows().is_empty() {
            emit_svg_plot(&out.table, plot, &cfg.output_dir.join(format!("{stem}.svg")))?;
        }
    }
    let meta = cfg.output_dir.join(format!("{stem}.meta"));
    fs::write(&meta, out.table.metadata_text()).map_err(|e| CliError::io(meta, e))?;
    Ok(out)
}

/// Run the experiment without touching the file system.
pub fn compute(cfg: &RunConfig) -> CliResult<ExperimentOutput> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| usage(format!("cannot start {} worker threads: {e}", cfg.jobs)))?;
    let mut out = pool.install(|| match cfg.experiment {
        Experiment::Denoise => denoise(cfg),
        Experiment::BiasVariance => bias_variance(cfg),
        Experiment::LassoCompare => lasso_compare(cfg),
        Experiment::SePhaseDiagram => se_phase_diagram(cfg),
        Experiment::CliqueSweep => clique_sweep(cfg),
    })?;
    out.table.metadata.config_echo = cfg.echo();
    out.table.metadata.version = env!("CARGO_PKG_VERSION").to_string();
    out.table.metadata.wall_clock_secs = start.elapsed().as_secs_f64();
    Ok(out)
}

fn seed_of(cfg: &RunConfig, r: usize) -> u64 {
    cfg.base_seed.wrapping_add(r as u64)
}

/// Run `f` on every replicate index. Results come back in index order
/// whatever the scheduling.
fn replicates<T: Send>(cfg: &RunConfig, f: impl Fn(usize, u64) -> Result<T, String> + Sync) -> Vec<Result<T, String>> {
    (0..cfg.replicates).into_par_iter().map(|r| f(r, seed_of(cfg, r))).collect()
}

fn setup<T>(what: &str, r: statest::Result<T>) -> CliResult<T> {
    r.map_err(|e| usage(format!("{what}: {e}")))
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::INFINITY, f64::INFINITY);
    }
    let m = xs.iter().sum::<f64>() / xs.len() as f64;
    if xs.len() == 1 {
        return (m, 0.0);
    }
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    (m, var.sqrt())
}

fn positive(key: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(usage(format!("{key} must be > 0 (got {v})")))
    }
}

fn denoise(cfg: &RunConfig) -> CliResult<ExperimentOutput> {
    let p = &cfg.params;
    let n = p.usize("n")?;
    let s0 = p.usize("s0")?;
    let sigma = positive("sigma", p.f64("sigma")?)?;
    let amplitude = positive("amplitude", p.f64("amplitude")?)?;
    let scales = p.f64_list("lambda_scales")?;
    if n < 2 || s0 > n {
        return Err(usage(format!("denoise needs n >= 2 and s0 <= n (n={n}, s0={s0})")));
    }
    if scales.is_empty() || scales.iter().any(|s| *s <= 0.0) {
        return Err(usage("lambda_scales must be a nonempty list of positive numbers"));
    }
    let kind = match p.str("rule") {
        "soft" => ShrinkageKind::Soft,
        "hard" => ShrinkageKind::Hard,
        other => return Err(usage(format!("rule: expected soft or hard, got {other:?}"))),
    };
    let lam = setup("universal threshold", universal_threshold(sigma, n, n))?;
    let x = setup("design", dct_orthogonal_design(n, cfg.base_seed))?;

    let runs = replicates(cfg, |_, seed| {
        let th = sparse_signal(n, s0, amplitude * lam, substream(seed, 1)).map_err(|e| e.to_string())?;
        let y = linear_observe(&x, &th, sigma, substream(seed, 2)).map_err(|e| e.to_string())?.y;
        let stat = orthogonal_statistic(&x, &y).map_err(|e| e.to_string())?;
        scales
            .iter()
            .map(|&s| {
                let rule = ShrinkageRule::new(kind, s * lam).map_err(|e| e.to_string())?;
                Ok(stat.iter().zip(th.values().iter()).map(|(z, t)| (rule.apply(*z) - t).powi(2)).sum())
            })
            .collect::<Result<Vec<f64>, String>>()
    });
    let failures = failure_messages(&runs);
    let bound = s0 as f64 * sigma * sigma * 2.0 * (n as f64).ln() / n as f64;
    let mut table = ResultTable::new(&[
        ("lambda_scale", "multiple of universal threshold"),
        ("lambda", "threshold"),
        ("mean_loss", "squared l2 error"),
        ("sd_loss", "squared l2 error"),
        ("bound", "s0 sigma^2 2 log p / n"),
        ("failures", "replicates"),
    ]);
    for (j, &s) in scales.iter().enumerate() {
        let losses: Vec<f64> = runs.iter().filter_map(|r| r.as_ref().ok().map(|v| v[j])).collect();
        let (m, sd) = mean_sd(&losses);
        table.push_row(vec![s, s * lam, m, sd, bound, failures.len() as f64])?;
    }
    let mut plot = PlotSpec::new("lambda_scale", &["mean_loss", "bound"], "Denoising risk against threshold");
    plot.y_label = "squared error".into();
    Ok(ExperimentOutput { table, plot: Some(plot), failures })
}

fn failure_messages<T>(runs: &[Result<T, String>]) -> Vec<String> {
    runs.iter()
        .enumerate()
        .filter_map(|(r, x)| x.as_ref().err().map(|e| format!("replicate {r}: {e}")))
        .collect()
}

fn bias_variance(cfg: &RunConfig) -> CliResult<ExperimentOutput> {
    let p = &cfg.params;
    let f: fn(f64) -> f64 = match p.str("function") {
        "abs" => |t| (t - 0.5).abs(),
        "sine" => |t| (2.0 * std::f64::consts::PI * t).sin(),
        "step" => |t| if t > 0.5 { 1.0 } else { 0.0 },
        other => return Err(usage(format!("function: expected abs, sine or step, got {other:?}"))),
    };
    let ns = p.usize_list("ns")?;
    let sigma = p.f64("sigma")?;
    let j_max = p.usize("j_max")?;
    if sigma < 0.0 {
        return Err(usage(format!("sigma must be >= 0 (got {sigma})")));
    }
    if ns.is_empty() || j_max == 0 || ns.iter().any(|&n| n < j_max) {
        return Err(usage("bias_variance needs j_max >= 1 and every n >= j_max"));
    }
    let curves: Vec<_> = ns
        .par_iter()
        .map(|&n| bias_variance_curve(f, n, sigma, j_max, cfg.replicates, cfg.base_seed))
        .collect();
    let mut table = ResultTable::new(&[
        ("n", "samples"),
        ("argmin_j", "basis functions"),
        ("min_risk", "mean squared prediction error"),
        ("failures", "runs"),
    ]);
    let mut failures = Vec::new();
    for (&n, c) in ns.iter().zip(curves) {
        match c {
            Ok(c) => table.push_row(vec![n as f64, c.argmin_j as f64, c.min_risk(), 0.0])?,
            Err(e) => {
                failures.push(format!("n = {n}: {e}"));
                table.push_row(vec![n as f64, f64::INFINITY, f64::INFINITY, 1.0])?;
            }
        }
    }
    let plot = PlotSpec::new("n", &["min_risk"], "Optimal prediction risk against n").log_log();
    Ok(ExperimentOutput { table, plot: Some(plot), failures })
}

/// First stored iterate within `target` relative distance of `reference`.
fn iterations_to(trace: &IterateTrace, reference: &DVector<f64>, target: f64) -> f64 {
    let scale = reference.norm();
    trace
        .iterates
        .iter()
        .find(|(_, th)| (th - reference).norm() <= target * scale)
        .map_or(f64::INFINITY, |(t, _)| *t as f64)
}

fn lasso_compare(cfg: &RunConfig) -> CliResult<ExperimentOutput> {
    let prm = &cfg.params;
    let p = prm.usize("p")?;
    let delta = positive("delta", prm.f64("delta")?)?;
    let eps = positive("eps", prm.f64("eps")?)?;
    let sigma = prm.f64("sigma")?;
    let amplitude = positive("amplitude", prm.f64("amplitude")?)?;
    let target = positive("target", prm.f64("target")?)?;
    let max_iter = prm.usize("max_iter")?;
    let n = (delta * p as f64).round() as usize;
    let s0 = (eps * p as f64).round() as usize;
    if n == 0 || s0 == 0 || s0 > p || sigma < 0.0 || max_iter == 0 {
        return Err(usage(format!("lasso_compare: need n, s0 >= 1, s0 <= p, sigma >= 0 (n={n}, s0={s0}, sigma={sigma})")));
    }
    let kappa = match prm.str("kappa") {
        "minimax" => setup("minimax threshold", minimax_soft(eps, 1e-10))?.ell,
        _ => positive("kappa", prm.f64("kappa")?)?,
    };
    let amp_abs = amplitude / (n as f64).sqrt();

    let runs = replicates(cfg, |_, seed| {
        let e = |e: statest::Error| e.to_string();
        let x = gaussian_design(n, p, substream(seed, 0)).map_err(e)?;
        let th = sparse_signal(p, s0, amp_abs, substream(seed, 1)).map_err(e)?;
        let y = linear_observe(&x, &th, sigma, substream(seed, 2)).map_err(e)?.y;
        let prob = LassoProblem::new(&x, &y, 0.0).map_err(e)?;
        let theta_scale = y.norm() / n as f64;
        let opts = AmpOptions { max_iter: 5000, tol: 1e-13 * theta_scale, onsager: true };
        let amp = amp_lasso_with(&prob, ThresholdPolicy::FixedAlpha { kappa }, opts).map_err(e)?;
        // A coordinate sitting on the threshold can keep the step size above
        // `tol` indefinitely; accept a run whose last stored iterates agree
        // far below the target.
        let settled = || match amp.iterates.iter().rev().nth(1) {
            Some((_, prev)) => (prev - &amp.final_theta).norm() <= 1e-3 * target * amp.final_theta.norm(),
            None => false,
        };
        if amp.diverged || !(amp.converged || settled()) {
            return Err("AMP did not converge".to_string());
        }
        let lambda = amp.induced_lambda.unwrap_or(0.0);
        if !(lambda > 0.0) {
            return Err(format!("induced lambda {lambda} is not positive"));
        }
        let reference = &amp.final_theta;
        if reference.norm() == 0.0 {
            return Err("LASSO solution is zero".to_string());
        }
        let prob = LassoProblem::new(&x, &y, lambda).map_err(e)?;
        let ist = ista(&prob, max_iter, 0.0).map_err(e)?;
        Ok((lambda, iterations_to(&amp, reference, target), iterations_to(&ist, reference, target)))
    });
    let failures = failure_messages(&runs);
    let mut table = ResultTable::new(&[
        ("replicate", ""),
        ("seed", ""),
        ("lambda", "induced LASSO penalty"),
        ("amp_iterations", "iterations"),
        ("ista_iterations", "iterations, resolution 10 beyond 50"),
        ("failures", "0 or 1"),
    ]);
    for (r, run) in runs.iter().enumerate() {
        let (lam, a, i, fail) = match run {
            Ok((lam, a, i)) => (*lam, *a, *i, 0.0),
            Err(_) => (f64::INFINITY, f64::INFINITY, f64::INFINITY, 1.0),
        };
        table.push_row(vec![r as f64, seed_of(cfg, r) as f64, lam, a, i, fail])?;
    }
    let mut plot = PlotSpec::new("replicate", &["amp_iterations", "ista_iterations"], "Iterations to reach the LASSO solution");
    plot.log_y = true;
    plot.y_label = "iterations".into();
    Ok(ExperimentOutput { table, plot: Some(plot), failures })
}

fn se_phase_diagram(cfg: &RunConfig) -> CliResult<ExperimentOutput> {
    let p = &cfg.params;
    let lo = p.f64("eps_min")?;
    let hi = p.f64("eps_max")?;
    let points = p.usize("points")?;
    if !(0.0 < lo && lo <= hi && hi < 1.0) || points == 0 || (points == 1 && lo != hi) {
        return Err(usage(format!("need 0 < eps_min <= eps_max < 1 and points >= 1 (got {lo}, {hi}, {points})")));
    }
    let at = |i: usize| -> f64 {
        if points == 1 {
            return lo;
        }
        let f = i as f64 / (points - 1) as f64;
        match p.str("spacing") {
            "log" => (lo.ln() + f * (hi.ln() - lo.ln())).exp(),
            _ => lo + f * (hi - lo),
        }
    };
    if !matches!(p.str("spacing"), "linear" | "log") {
        return Err(usage(format!("spacing: expected linear or log, got {:?}", p.str("spacing"))));
    }
    let grid: Vec<f64> = (0..points).map(at).collect();
    let rows: Vec<_> = grid.par_iter().map(|&e| phase_boundary(&[e])).collect();
    let mut table = ResultTable::new(&[("eps", "sparsity fraction"), ("delta_c", "critical n/p"), ("failures", "0 or 1")]);
    let mut failures = Vec::new();
    for (&e, row) in grid.iter().zip(rows) {
        match row {
            Ok(v) => table.push_row(vec![e, v[0].1, 0.0])?,
            Err(err) => {
                failures.push(format!("eps = {e}: {err}"));
                table.push_row(vec![e, f64::INFINITY, 1.0])?;
            }
        }
    }
    let plot = PlotSpec::new("eps", &["delta_c"], "Noiseless phase boundary");
    Ok(ExperimentOutput { table, plot: Some(plot), failures })
}

#[derive(Debug, Clone, Copy)]
struct CliqueSettings {
    amp_iterations: usize,
    power_tol: f64,
    power_max_iter: usize,
}

fn run_method(m: CliqueMethod, g: &SignGraph, k: usize, s: CliqueSettings) -> statest::Result<CliqueEstimate> {
    match m {
        CliqueMethod::Degree => degree_heuristic(g, k),
        CliqueMethod::Spectral => spectral_clique(g, k, s.power_tol, s.power_max_iter),
        CliqueMethod::Amp => amp_clique(g, k, AmpCliqueOptions::new(s.amp_iterations)),
    }
}

fn parse_methods(names: &[&str]) -> CliResult<Vec<CliqueMethod>> {
    if names.is_empty() {
        return Err(usage("methods must name at least one of amp, spectral, degree"));
    }
    names
        .iter()
        .map(|&s| match s {
            "amp" => Ok(CliqueMethod::Amp),
            "spectral" => Ok(CliqueMethod::Spectral),
            "degree" => Ok(CliqueMethod::Degree),
            other => Err(usage(format!("methods: unknown method {other:?}"))),
        })
        .collect()
}

/// Largest vertex index in an edge list, plus one.
fn edge_list_order(text: &str) -> usize {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .flat_map(|l| l.split_whitespace().filter_map(|t| t.parse::<usize>().ok()))
        .max()
        .map_or(0, |m| m + 1)
}

fn clique_sweep(cfg: &RunConfig) -> CliResult<ExperimentOutput> {
    let p = &cfg.params;
    let methods = parse_methods(&p.list("methods"))?;
    let settings = CliqueSettings {
        amp_iterations: p.usize("amp_iterations")?,
        power_tol: positive("power_tol", p.f64("power_tol")?)?,
        power_max_iter: p.usize("power_max_iter")?,
    };
    if settings.amp_iterations == 0 || settings.power_max_iter == 0 {
        return Err(usage("amp_iterations and power_max_iter must be >= 1"));
    }
    if !p.str("graph").is_empty() {
        return clique_on_graph(cfg, &methods, settings);
    }
    let n = p.usize("n")?;
    let kappas = p.f64_list("kappas")?;
    let ks: Vec<usize> = kappas.iter().map(|&kap| (kap * (n as f64).sqrt()).ceil() as usize).collect();
    if n < 2 || kappas.is_empty() || ks.iter().any(|&k| k == 0 || k > n) {
        return Err(usage(format!("clique_sweep needs n >= 2 and 1 <= ceil(kappa sqrt n) <= n (n={n})")));
    }
    let tasks: Vec<(usize, usize)> = (0..ks.len()).flat_map(|i| (0..cfg.replicates).map(move |r| (i, r))).collect();
    // Per task and method: Ok((exact, overlap)) or a message.
    let results: Vec<Vec<Result<(bool, f64), String>>> = tasks
        .par_iter()
        .map(|&(i, r)| {
            let k = ks[i];
            match planted_clique_instance(n, k, seed_of(cfg, r)) {
                Err(e) => methods.iter().map(|_| Err(e.to_string())).collect(),
                Ok(inst) => methods
                    .iter()
                    .map(|&m| {
                        let est = run_method(m, &inst.graph, k, settings).map_err(|e| e.to_string())?;
                        let ov = overlap(&est.s_hat, &inst.support).map_err(|e| e.to_string())?;
                        Ok((est.s_hat == inst.support, ov))
                    })
                    .collect(),
            }
        })
        .collect();

    let mut cols: Vec<(String, String)> = vec![("kappa".into(), "k / sqrt n".into()), ("k".into(), "clique size".into())];
    for m in &methods {
        cols.push((format!("{}_success_rate", m.name()), "fraction exact".into()));
        cols.push((format!("{}_mean_overlap", m.name()), "|S_hat & S| / k".into()));
    }
    cols.push(("failures".into(), "method runs".into()));
    let col_refs: Vec<(&str, &str)> = cols.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let mut table = ResultTable::new(&col_refs);
    let mut failures = Vec::new();
    for (i, (&kap, &k)) in kappas.iter().zip(&ks).enumerate() {
        let mut row = vec![kap, k as f64];
        let mut failed = 0;
        for (j, m) in methods.iter().enumerate() {
            let mut exact = 0;
            let mut overlaps = Vec::new();
            for (t, res) in tasks.iter().zip(&results).filter(|(t, _)| t.0 == i) {
                match &res[j] {
                    Ok((ok, ov)) => {
                        exact += usize::from(*ok);
                        overlaps.push(*ov);
                    }
                    Err(e) => {
                        failed += 1;
                        failures.push(format!("kappa = {kap}, replicate {}, {}: {e}", t.1, m.name()));
                    }
                }
            }
            row.push(exact as f64 / cfg.replicates as f64);
            row.push(mean_sd(&overlaps).0);
        }
        row.push(failed as f64);
        table.push_row(row)?;
    }
    let ys: Vec<String> = methods.iter().map(|m| format!("{}_success_rate", m.name())).collect();
    let ys: Vec<&str> = ys.iter().map(String::as_str).collect();
    let mut plot = PlotSpec::new("kappa", &ys, "Planted clique exact recovery");
    plot.y_label = "success rate".into();
    Ok(ExperimentOutput { table, plot: Some(plot), failures })
}

fn clique_on_graph(cfg: &RunConfig, methods: &[CliqueMethod], settings: CliqueSettings) -> CliResult<ExperimentOutput> {
    let path = PathBuf::from(cfg.params.str("graph"));
    let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let n = edge_list_order(&text);
    let graph = SignGraph::from_edge_list(n.max(1), &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let k = cfg.params.usize("k")?;
    if k == 0 || k > graph.n() {
        return Err(usage(format!("k must be in 1..={} for this graph (got {k})", graph.n())));
    }
    let estimates: Vec<_> = methods.par_iter().map(|&m| run_method(m, &graph, k, settings)).collect();
    let mut cols = vec![("vertex".to_string(), String::new())];
    for m in methods {
        cols.push((m.name().to_string(), "1 if selected".into()));
    }
    let col_refs: Vec<(&str, &str)> = cols.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let mut table = ResultTable::new(&col_refs);
    let mut failures = Vec::new();
    for (m, e) in methods.iter().zip(&estimates) {
        if let Err(err) = e {
            failures.push(format!("{}: {err}", m.name()));
        }
    }
    for v in 0..graph.n() {
        let mut row = vec![v as f64];
        for e in &estimates {
            row.push(match e {
                Ok(est) => f64::from(u8::from(est.s_hat.binary_search(&v).is_ok())),
                Err(_) => f64::INFINITY,
            });
        }
        table.push_row(row)?;
    }
    Ok(ExperimentOutput { table, plot: None, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ConfigFile, Overrides};

    fn cfg(e: Experiment, text: &str, reps: usize, jobs: usize) -> RunConfig {
        let ov = Overrides { replicates: Some(reps), jobs: Some(jobs), ..Default::default() };
        RunConfig::build(e, &ConfigFile::parse(text).unwrap(), &ov).unwrap()
    }

    #[test]
    fn phase_diagram_passes_boundary_through() {
        let c = cfg(Experiment::SePhaseDiagram, "[se_phase_diagram]\npoints = 20\n", 1, 1);
        let out = compute(&c).unwrap();
        let eps = out.table.column("eps").unwrap();
        let want = phase_boundary(&eps).unwrap();
        assert_eq!(out.table.columns()[..2].iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["eps", "delta_c"]);
        for (row, (e, d)) in out.table.rows().iter().zip(want) {
            assert_eq!((row[0], row[1]), (e, d));
        }
        assert_eq!(eps.len(), 20);
    }

    #[test]
    fn jobs_do_not_change_results() {
        let text = "[denoise]\nn = 256\ns0 = 4\n";
        let a = compute(&cfg(Experiment::Denoise, text, 6, 1)).unwrap();
        let b = compute(&cfg(Experiment::Denoise, text, 6, 3)).unwrap();
        assert_eq!(a.table.to_csv(), b.table.to_csv());
        assert!(a.failures.is_empty());
    }

    #[test]
    fn invalid_values_are_usage_errors() {
        for (e, text) in [
            (Experiment::Denoise, "[denoise]\nrule = medium\n"),
            (Experiment::Denoise, "[denoise]\ns0 = 5000\n"),
            (Experiment::BiasVariance, "[bias_variance]\nns = 32\n"),
            (Experiment::SePhaseDiagram, "[se_phase_diagram]\neps_max = 1.5\n"),
            (Experiment::CliqueSweep, "[clique_sweep]\nmethods = amp, magic\n"),
            (Experiment::LassoCompare, "[lasso_compare]\nkappa = -1\n"),
        ] {
            let err = compute(&cfg(e, text, 1, 1)).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}");
        }
    }

    #[test]
    fn edge_list_order_ignores_comments() {
        assert_eq!(edge_list_order("# 99 100\n0 1\n\n4 2\n"), 5);
        assert_eq!(edge_list_order(""), 0);
    }
}
