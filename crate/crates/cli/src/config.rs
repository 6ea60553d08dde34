//! Run configuration: a flat `key = value` text format with one section per
//! experiment, merged with command-line overrides.
//!
//! ```text
//! # comments start with '#'
//! [run]
//! seed = 7
//! replicates = 20
//!
//! [clique_sweep]
//! n = 8000
//! kappas = 0.4, 0.6, 0.8, 1.0
//! ```
//!
//! Precedence, lowest first: built-in defaults, the `[run]` and experiment
//! sections of the file, `--set key=value` overrides, dedicated flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::{usage, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Experiment {
    Denoise,
    BiasVariance,
    LassoCompare,
    SePhaseDiagram,
    CliqueSweep,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::Denoise,
        Experiment::BiasVariance,
        Experiment::LassoCompare,
        Experiment::SePhaseDiagram,
        Experiment::CliqueSweep,
    ];

    /// Section name in config files, also the output file stem.
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Denoise => "denoise",
            Experiment::BiasVariance => "bias_variance",
            Experiment::LassoCompare => "lasso_compare",
            Experiment::SePhaseDiagram => "se_phase_diagram",
            Experiment::CliqueSweep => "clique_sweep",
        }
    }

    /// Command-line subcommand.
    pub fn command(self) -> &'static str {
        match self {
            Experiment::Denoise => "denoise",
            Experiment::BiasVariance => "bias-variance",
            Experiment::LassoCompare => "lasso",
            Experiment::SePhaseDiagram => "phase-diagram",
            Experiment::CliqueSweep => "clique",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == s || e.command() == s)
    }

    /// Accepted keys and their defaults.
    pub fn defaults(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Experiment::Denoise => &[
                ("n", "4096"),
                ("s0", "10"),
                ("sigma", "1"),
                ("amplitude", "10"),
                ("lambda_scales", "0.5, 0.75, 1, 1.25, 1.5, 2"),
                ("rule", "soft"),
            ],
            Experiment::BiasVariance => &[
                ("function", "abs"),
                ("ns", "256, 512, 1024, 2048, 4096, 8192"),
                ("sigma", "0.5"),
                ("j_max", "64"),
            ],
            Experiment::LassoCompare => &[
                ("p", "500"),
                ("delta", "0.5"),
                ("eps", "0.1"),
                ("sigma", "0.2"),
                ("amplitude", "1"),
                ("kappa", "minimax"),
                ("target", "1e-6"),
                ("max_iter", "20000"),
            ],
            Experiment::SePhaseDiagram => &[
                ("eps_min", "0.01"),
                ("eps_max", "0.5"),
                ("points", "20"),
                ("spacing", "linear"),
            ],
            Experiment::CliqueSweep => &[
                ("n", "2000"),
                ("kappas", "0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2"),
                ("methods", "amp, spectral, degree"),
                ("amp_iterations", "30"),
                ("power_tol", "1e-6"),
                ("power_max_iter", "200"),
                ("graph", ""),
                ("k", "0"),
            ],
        }
    }
}

const RUN_KEYS: [&str; 4] = ["seed", "replicates", "jobs", "out"];

pub const DEFAULT_REPLICATES: usize = 10;

/// Validated string parameters with typed accessors. Every accepted key is
/// present, filled from the defaults when not given.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    fn raw(&self, key: &str) -> &str {
        self.values
            .get(key)
            .map(String::as_str)
            .unwrap_or_else(|| panic!("parameter {key} missing from schema"))
    }

    pub fn str(&self, key: &str) -> &str {
        self.raw(key)
    }

    pub fn f64(&self, key: &str) -> CliResult<f64> {
        parse_f64(key, self.raw(key))
    }

    pub fn usize(&self, key: &str) -> CliResult<usize> {
        let v = self.raw(key);
        v.parse().map_err(|_| usage(format!("{key}: expected a non-negative integer, got {v:?}")))
    }

    pub fn f64_list(&self, key: &str) -> CliResult<Vec<f64>> {
        self.list(key).into_iter().map(|s| parse_f64(key, s)).collect()
    }

    pub fn usize_list(&self, key: &str) -> CliResult<Vec<usize>> {
        self.list(key)
            .into_iter()
            .map(|s| s.parse().map_err(|_| usage(format!("{key}: expected integers, got {s:?}"))))
            .collect()
    }

    pub fn list(&self, key: &str) -> Vec<&str> {
        self.raw(key).split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

fn parse_f64(key: &str, v: &str) -> CliResult<f64> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(usage(format!("{key}: expected a finite number, got {v:?}"))),
    }
}

/// Parsed config file: `[run]` keys plus one key map per section.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub run: BTreeMap<String, String>,
    pub sections: BTreeMap<Experiment, BTreeMap<String, String>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut cfg = ConfigFile::default();
        // None: before any header; Some(None): [run]; Some(Some(e)): experiment.
        let mut current: Option<Option<Experiment>> = None;
        for (lineno, line) in text.lines().enumerate() {
            let at = |msg: String| usage(format!("config line {}: {msg}", lineno + 1));
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| at(format!("malformed section header {line:?}")))?
                    .trim();
                current = Some(if name == "run" {
                    None
                } else {
                    let e = Experiment::from_name(name).ok_or_else(|| at(format!("unknown section [{name}]")))?;
                    cfg.sections.entry(e).or_default();
                    Some(e)
                });
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| at(format!("expected `key = value`, got {line:?}")))?;
            let (key, value) = (key.trim().to_string(), value.trim().to_string());
            if key.is_empty() {
                return Err(at("empty key".into()));
            }
            let map = match current {
                None => return Err(at(format!("key {key:?} appears before any section"))),
                Some(None) => {
                    if !RUN_KEYS.contains(&key.as_str()) {
                        return Err(at(format!("unknown key {key:?} in [run]")));
                    }
                    &mut cfg.run
                }
                Some(Some(e)) => {
                    if !e.defaults().iter().any(|(k, _)| *k == key) {
                        return Err(at(format!("unknown key {key:?} in [{}]", e.name())));
                    }
                    cfg.sections.get_mut(&e).expect("section inserted at header")
                }
            };
            if map.insert(key.clone(), value).is_some() {
                return Err(at(format!("duplicate key {key:?}")));
            }
        }
        Ok(cfg)
    }
}

/// Everything needed to run one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub params: Params,
    pub base_seed: u64,
    pub replicates: usize,
    pub output_dir: PathBuf,
    pub jobs: usize,
}

/// Command-line values that override the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub set: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub replicates: Option<usize>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
}

/// Split `key=value`.
pub fn parse_assignment(s: &str) -> CliResult<(String, String)> {
    let (k, v) = s.split_once('=').ok_or_else(|| usage(format!("expected key=value, got {s:?}")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

impl RunConfig {
    pub fn build(experiment: Experiment, file: &ConfigFile, ov: &Overrides) -> CliResult<Self> {
        let mut values: BTreeMap<String, String> =
            experiment.defaults().iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        if let Some(sec) = file.sections.get(&experiment) {
            values.extend(sec.clone());
        }
        let mut run = file.run.clone();
        for (k, v) in &ov.set {
            if RUN_KEYS.contains(&k.as_str()) {
                run.insert(k.clone(), v.clone());
            } else if values.contains_key(k) {
                values.insert(k.clone(), v.clone());
            } else {
                return Err(usage(format!("unknown key {k:?} for {}", experiment.command())));
            }
        }
        let base_seed = match ov.seed {
            Some(s) => s,
            None => run
                .get("seed")
                .map(|v| v.parse().map_err(|_| usage(format!("seed: expected an unsigned integer, got {v:?}"))))
                .transpose()?
                .unwrap_or(0),
        };
        let replicates = match ov.replicates {
            Some(r) => r,
            None => run
                .get("replicates")
                .map(|v| v.parse().map_err(|_| usage(format!("replicates: expected an integer, got {v:?}"))))
                .transpose()?
                .unwrap_or(DEFAULT_REPLICATES),
        };
        if replicates == 0 {
            return Err(usage("replicates must be >= 1"));
        }
        let jobs = match ov.jobs {
            Some(j) => j,
            None => run
                .get("jobs")
                .map(|v| v.parse().map_err(|_| usage(format!("jobs: expected an integer, got {v:?}"))))
                .transpose()?
                .unwrap_or(1),
        };
        if jobs == 0 {
            return Err(usage("jobs must be >= 1"));
        }
        let output_dir = ov
            .out
            .clone()
            .or_else(|| run.get("out").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        Ok(Self { experiment, params: Params { values }, base_seed, replicates, output_dir, jobs })
    }

    /// The config in file form. Feeding it back reproduces the run.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[run]\nseed = {}\nreplicates = {}\n", self.base_seed, self.replicates);
        let _ = writeln!(s, "[{}]", self.experiment.name());
        for (k, v) in self.params.iter() {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }
}
