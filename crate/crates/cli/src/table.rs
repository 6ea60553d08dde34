//! Numeric result tables and their CSV form.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{usage, CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

/// Run information kept next to a table, outside the CSV bytes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Metadata {
    pub config_echo: String,
    pub version: String,
    pub wall_clock_secs: f64,
}

/// Rows of numbers under named columns. Cells are finite or infinite, never
/// NaN; an infinite cell marks a divergent or unreached quantity.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    columns: Vec<Column>,
    rows: Vec<Vec<f64>>,
    pub metadata: Metadata,
}

impl ResultTable {
    pub fn new(columns: &[(&str, &str)]) -> Self {
        Self {
            columns: columns.iter().map(|(n, u)| Column { name: n.to_string(), unit: u.to_string() }).collect(),
            rows: Vec::new(),
            metadata: Metadata::default(),
        }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Values of one column, top to bottom.
    pub fn column(&self, name: &str) -> CliResult<Vec<f64>> {
        let j = self.column_index(name).ok_or_else(|| usage(format!("unknown column {name:?}")))?;
        Ok(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> CliResult<()> {
        if row.len() != self.columns.len() {
            return Err(usage(format!("row has {} cells for {} columns", row.len(), self.columns.len())));
        }
        if let Some(j) = row.iter().position(|v| v.is_nan()) {
            return Err(usage(format!("NaN in column {:?}", self.columns[j].name)));
        }
        self.rows.push(row);
        Ok(())
    }

    /// CSV text: header of column names, then one line per row, LF endings.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let header: Vec<String> = self.columns.iter().map(|c| quote(&c.name)).collect();
        s.push_str(&header.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_g17(v)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    /// Inverse of [`ResultTable::to_csv`]. Units and metadata are not stored
    /// in the CSV and come back empty.
    pub fn from_csv(text: &str) -> CliResult<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| usage("empty CSV"))?;
        let names = split_record(header)?;
        let cols: Vec<(&str, &str)> = names.iter().map(|n| (n.as_str(), "")).collect();
        let mut table = ResultTable::new(&cols);
        for (i, line) in lines.enumerate() {
            let cells = split_record(line)?;
            let row = cells
                .iter()
                .map(|c| parse_cell(c).ok_or_else(|| usage(format!("CSV row {}: bad number {c:?}", i + 1))))
                .collect::<CliResult<Vec<f64>>>()?;
            table.push_row(row)?;
        }
        Ok(table)
    }

    /// Human-readable sidecar: units, config echo, version, wall-clock.
    pub fn metadata_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# version {}", self.metadata.version);
        let _ = writeln!(s, "# wall_clock_secs {:.3}", self.metadata.wall_clock_secs);
        for c in &self.columns {
            let _ = writeln!(s, "# column {} [{}]", c.name, c.unit);
        }
        s.push_str(&self.metadata.config_echo);
        s
    }
}

/// Write `table` as CSV to `path`.
pub fn emit_csv(table: &ResultTable, path: &Path) -> CliResult<()> {
    fs::write(path, table.to_csv()).map_err(|e| CliError::io(path, e))
}

/// `%.17g`: 17 significant digits, trailing zeros dropped, exponent form
/// outside `1e-4 <= |x| < 1e17`. Infinities print as `inf` and `-inf`.
pub fn format_g17(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mant) = match mant.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mant),
    };
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    if !(-4..17).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        let dot = if frac.is_empty() { "" } else { "." };
        return format!("{sign}{}{dot}{frac}e{}{:02}", &digits[..1], if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let (int, frac) = if exp >= 0 {
        let cut = exp as usize + 1;
        (digits[..cut].to_string(), digits[cut..].to_string())
    } else {
        ("0".to_string(), "0".repeat((-exp - 1) as usize) + &digits)
    };
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn parse_cell(s: &str) -> Option<f64> {
    match s {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => s.parse::<f64>().ok().filter(|v| v.is_finite()),
    }
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

// One record; quoted fields may not span lines here since cells are numeric
// and names are single-line.
fn split_record(line: &str) -> CliResult<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut chars = line.chars().peekable();
    let mut quoted = false;
    let mut was_quoted = false;
    while let Some(c) = chars.next() {
        match (quoted, c) {
            (true, '"') if chars.peek() == Some(&'"') => {
                chars.next();
                cur.push('"');
            }
            (true, '"') => quoted = false,
            (true, c) => cur.push(c),
            (false, '"') if cur.is_empty() && !was_quoted => {
                quoted = true;
                was_quoted = true;
            }
            (false, ',') => {
                out.push(std::mem::take(&mut cur));
                was_quoted = false;
            }
            (false, c) => cur.push(c),
        }
    }
    if quoted {
        return Err(usage("unterminated quoted CSV field"));
    }
    out.push(cur);
    Ok(out)
}
