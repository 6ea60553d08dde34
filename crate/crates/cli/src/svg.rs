//! Static SVG 1.1 line plots of result tables.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{usage, CliError, CliResult};
use crate::table::ResultTable;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub x: String,
    pub ys: Vec<String>,
    pub log_x: bool,
    pub log_y: bool,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
}

impl PlotSpec {
    pub fn new(x: &str, ys: &[&str], title: &str) -> Self {
        Self {
            x: x.into(),
            ys: ys.iter().map(|s| s.to_string()).collect(),
            log_x: false,
            log_y: false,
            title: title.into(),
            x_label: x.into(),
            y_label: ys.join(", "),
        }
    }

    pub fn log_log(mut self) -> Self {
        self.log_x = true;
        self.log_y = true;
        self
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const TICKS: usize = 5;

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Option<Self> {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return None;
        }
        if hi - lo < 1e-12 * (1.0 + lo.abs()) {
            lo -= 0.5;
            hi += 0.5;
        }
        Some(Self { lo, hi, log })
    }

    fn frac(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn tick_label(&self, i: usize) -> String {
        let t = self.lo + (self.hi - self.lo) * i as f64 / (TICKS - 1) as f64;
        if self.log {
            format!("1e{:.2}", t)
        } else {
            short(t)
        }
    }
}

fn short(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e5) {
        format!("{v:.2e}")
    } else {
        format!("{:.4}", v).trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn plottable(v: f64, log: bool) -> bool {
    v.is_finite() && (!log || v > 0.0)
}

/// SVG text for `spec` drawn from `table`. One `<path>` per y column;
/// points with infinite values, or non-positive values on a log axis, are
/// left out.
pub fn render_svg(table: &ResultTable, spec: &PlotSpec) -> CliResult<String> {
    if table.rows().is_empty() {
        return Err(usage("cannot plot an empty table"));
    }
    if spec.ys.is_empty() {
        return Err(usage("plot needs at least one y column"));
    }
    let xs = table.column(&spec.x)?;
    let series: Vec<(String, Vec<(f64, f64)>)> = spec
        .ys
        .iter()
        .map(|name| {
            let ys = table.column(name)?;
            let pts = xs
                .iter()
                .zip(&ys)
                .filter(|(x, y)| plottable(**x, spec.log_x) && plottable(**y, spec.log_y))
                .map(|(x, y)| (*x, *y))
                .collect();
            Ok((name.clone(), pts))
        })
        .collect::<CliResult<_>>()?;
    let all = || series.iter().flat_map(|(_, p)| p.iter().copied());
    let ax = Axis::fit(all().map(|p| p.0), spec.log_x).ok_or_else(|| usage("no finite points to plot"))?;
    let ay = Axis::fit(all().map(|p| p.1), spec.log_y).ok_or_else(|| usage("no finite points to plot"))?;

    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let px = |x: f64| LEFT + ax.frac(x) * pw;
    let py = |y: f64| TOP + (1.0 - ay.frac(y)) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        escape(&spec.title)
    );
    let (x0, y0, x1, y1) = (LEFT, TOP + ph, LEFT + pw, TOP);
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black"/>"#);
    for i in 0..TICKS {
        let f = i as f64 / (TICKS - 1) as f64;
        let tx = LEFT + f * pw;
        let ty = TOP + (1.0 - f) * ph;
        let _ = writeln!(s, r#"<line x1="{tx:.2}" y1="{y0:.2}" x2="{tx:.2}" y2="{:.2}" stroke="black"/>"#, y0 + 5.0);
        let _ = writeln!(
            s,
            r#"<text x="{tx:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            y0 + 18.0,
            escape(&ax.tick_label(i))
        );
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{ty:.2}" x2="{x0:.2}" y2="{ty:.2}" stroke="black"/>"#, x0 - 5.0);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            ty + 4.0,
            escape(&ay.tick_label(i))
        );
    }
    let axis_name = |label: &str, log: bool| if log { format!("{label} (log scale)") } else { label.to_string() };
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 15.0,
        escape(&axis_name(&spec.x_label, spec.log_x))
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(&axis_name(&spec.y_label, spec.log_y))
    );
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if !pts.is_empty() {
            let mut d = String::new();
            for (j, &(x, y)) in pts.iter().enumerate() {
                let _ = write!(d, "{}{:.2} {:.2}", if j == 0 { "M" } else { " L" }, px(x), py(y));
            }
            let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="2"/>"#);
            for &(x, y) in pts {
                let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#, px(x), py(y));
            }
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = LEFT + pw + 15.0;
        let _ = writeln!(s, r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
            lx + 25.0,
            ly + 4.0,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Render and write. Nothing is written when rendering fails.
pub fn emit_svg_plot(table: &ResultTable, spec: &PlotSpec, path: &Path) -> CliResult<()> {
    let svg = render_svg(table, spec)?;
    fs::write(path, svg).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ResultTable {
        let mut t = ResultTable::new(&[("x", ""), ("y", ""), ("z", "")]);
        for i in 1..=5 {
            let x = i as f64;
            t.push_row(vec![x, x * x, if i == 3 { f64::INFINITY } else { 1.0 / x }]).unwrap();
        }
        t
    }

    #[test]
    fn one_path_per_series() {
        let svg = render_svg(&table(), &PlotSpec::new("x", &["y"], "t")).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(r#"version="1.1""#));
        let svg = render_svg(&table(), &PlotSpec::new("x", &["y", "z"], "t")).unwrap();
        assert_eq!(svg.matches("<path").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 9);
    }

    #[test]
    fn log_flags_annotate_axes() {
        let svg = render_svg(&table(), &PlotSpec::new("x", &["y"], "t").log_log()).unwrap();
        assert_eq!(svg.matches("(log scale)").count(), 2);
    }

    #[test]
    fn deterministic_and_errors() {
        let spec = PlotSpec::new("x", &["y"], "a < b");
        assert_eq!(render_svg(&table(), &spec).unwrap(), render_svg(&table(), &spec).unwrap());
        assert!(render_svg(&table(), &spec).unwrap().contains("a &lt; b"));
        assert!(render_svg(&table(), &PlotSpec::new("x", &["w"], "t")).is_err());
        let empty = ResultTable::new(&[("x", ""), ("y", "")]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.svg");
        assert!(emit_svg_plot(&empty, &PlotSpec::new("x", &["y"], "t"), &path).is_err());
        assert!(!path.exists());
    }
}
