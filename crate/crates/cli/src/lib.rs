//! Experiment runner for the `statest` toolkit: config parsing, seeded
//! replicate sweeps, CSV tables and SVG plots.

pub mod config;
pub mod error;
pub mod experiments;
pub mod svg;
pub mod table;

pub use config::{ConfigFile, Experiment, Overrides, RunConfig};
pub use error::{CliError, CliResult};
pub use experiments::{compute, run_experiment, ExperimentOutput};
pub use svg::{emit_svg_plot, render_svg, PlotSpec};
pub use table::{emit_csv, format_g17, ResultTable};
