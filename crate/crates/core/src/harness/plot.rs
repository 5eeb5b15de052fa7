//! Line plots of sweep CSV columns as standalone SVG.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::format::format_sig_digits;

pub const WIDTH: f64 = 960.0;
pub const HEIGHT: f64 = 360.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 50.0;
const TICKS: usize = 5;

/// Derived column: `norm_Mtilde / sqrt(n)`.
pub const VIRTUAL_MTILDE_RATIO: &str = "ratio_Mtilde_sqrt";

/// Splits a comma separated column list, dropping blanks.
pub fn parse_columns(spec: &str) -> Result<Vec<String>> {
    let cols: Vec<String> = spec
        .split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(str::to_string)
        .collect();
    if cols.is_empty() {
        Err(Error::NoColumns)
    } else {
        Ok(cols)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    header: Vec<String>,
    /// Row-major, one value per header entry. Booleans read as 0 / 1.
    rows: Vec<Vec<f64>>,
}

fn parse_cell(cell: &str) -> Option<f64> {
    match cell.trim() {
        "true" => Some(1.0),
        "false" => Some(0.0),
        other => other.parse().ok(),
    }
}

/// Reads a sweep CSV. Needs an `n` column; every cell must be numeric or boolean.
pub fn parse_sweep_csv<R: Read>(input: R) -> Result<SweepTable> {
    let mut reader = csv::Reader::from_reader(input);
    let header: Vec<String> = reader
        .headers()?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    if !header.iter().any(|h| h == "n") {
        return Err(Error::MissingColumn("n".into()));
    }
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .enumerate()
            .map(|(col, cell)| {
                parse_cell(cell).ok_or_else(|| {
                    Error::Table(format!(
                        "row {}, column {}: {cell:?} is not a number",
                        line + 1,
                        header[col]
                    ))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(SweepTable { header, rows })
}

impl SweepTable {
    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn raw(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn has_column(&self, name: &str) -> bool {
        self.raw(name).is_some()
            || (name == VIRTUAL_MTILDE_RATIO && self.raw("norm_Mtilde").is_some())
    }

    pub fn n_values(&self) -> Vec<f64> {
        self.raw("n").expect("checked at parse time")
    }

    /// Column values by name, including the derived ratio column.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        if let Some(v) = self.raw(name) {
            return Ok(v);
        }
        if name == VIRTUAL_MTILDE_RATIO {
            if let Some(norms) = self.raw("norm_Mtilde") {
                return Ok(norms
                    .iter()
                    .zip(self.n_values())
                    .map(|(m, n)| m / n.sqrt())
                    .collect());
            }
        }
        Err(Error::MissingColumn(name.to_string()))
    }
}

fn color_for(name: &str) -> (&'static str, bool) {
    if name == "ratio_T_sqrt" || name == "norm_T" {
        ("blue", true)
    } else if name.contains("mertens") {
        ("blue", false)
    } else if name.contains("Mtilde") {
        ("red", false)
    } else if name.contains('M') {
        ("black", false)
    } else {
        ("gray", false)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn extent(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values
        .filter(|v| v.is_finite())
        .fold(None, |acc, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
}

fn widen(lo: f64, hi: f64) -> (f64, f64) {
    if hi - lo > f64::EPSILON * hi.abs().max(lo.abs()).max(1.0) {
        (lo, hi)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

/// Renders the chosen columns against `n`. With `normalize_at`, each series is
/// divided by its value at the largest `n` not above that point.
pub fn render_svg(
    table: &SweepTable,
    columns: &[String],
    normalize_at: Option<f64>,
) -> Result<String> {
    if columns.is_empty() {
        return Err(Error::NoColumns);
    }
    let xs = table.n_values();
    let pivot = match normalize_at {
        None => None,
        Some(at) => {
            let row = xs
                .iter()
                .enumerate()
                .filter(|(_, &n)| n <= at)
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .ok_or_else(|| Error::Config(format!("no row with n <= {at}")))?;
            Some(row)
        }
    };
    let mut series = Vec::with_capacity(columns.len());
    for name in columns {
        let mut ys = table.column(name)?;
        if let Some(row) = pivot {
            let base = ys[row];
            ys.iter_mut().for_each(|y| *y /= base);
        }
        series.push((name.as_str(), ys));
    }

    let (x_lo, x_hi) = widen_or_default(extent(xs.iter().copied()));
    let (y_lo, y_hi) =
        widen_or_default(extent(series.iter().flat_map(|(_, ys)| ys.iter().copied())));
    let (y_lo, y_hi) = {
        let pad = 0.05 * (y_hi - y_lo);
        (y_lo - pad, y_hi + pad)
    };
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let x = x_lo + t * (x_hi - x_lo);
        let y = y_lo + t * (y_hi - y_lo);
        let (gx, gy) = (px(x), py(y));
        let bottom = MARGIN_TOP + plot_h;
        let _ = writeln!(
            svg,
            r#"<line x1="{gx:.2}" y1="{bottom}" x2="{gx:.2}" y2="{:.2}" stroke="black"/><text x="{gx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 5.0,
            bottom + 20.0,
            format_sig_digits(x, 6)
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{gy:.2}" x2="{MARGIN_LEFT}" y2="{gy:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT - 8.0,
            gy + 4.0,
            format_sig_digits(y, 4)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">n</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 8.0
    );
    let y_label = if pivot.is_some() { "normalized value" } else { "value" };
    let y_mid = MARGIN_TOP + plot_h / 2.0;
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{y_mid:.2}" text-anchor="middle" transform="rotate(-90 16 {y_mid:.2})">{y_label}</text>"#
    );
    if y_lo < 0.0 && y_hi > 0.0 {
        let _ = writeln!(
            svg,
            r#"<line x1="{MARGIN_LEFT}" y1="{0:.2}" x2="{1:.2}" y2="{0:.2}" stroke="lightgray"/>"#,
            py(0.0),
            MARGIN_LEFT + plot_w
        );
    }

    for (idx, (name, ys)) in series.iter().enumerate() {
        let (color, dashed) = color_for(name);
        let dash = if dashed {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let points: Vec<String> = xs
            .iter()
            .zip(ys)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        if !points.is_empty() {
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
                points.join(" ")
            );
        }
        let ly = MARGIN_TOP + 16.0 + 16.0 * idx as f64;
        let lx = MARGIN_LEFT + 10.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{:.2}" y2="{ly}" stroke="{color}" stroke-width="1.5"{dash}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0,
            escape(name)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn widen_or_default(range: Option<(f64, f64)>) -> (f64, f64) {
    match range {
        Some((lo, hi)) => widen(lo, hi),
        None => (0.0, 1.0),
    }
}

/// Reads `csv_path`, renders the columns and writes the SVG to `out_path`.
pub fn render_plot(
    csv_path: &Path,
    columns: &[String],
    normalize_at: Option<f64>,
    out_path: &Path,
) -> Result<()> {
    let table = parse_sweep_csv(std::fs::File::open(csv_path)?)?;
    let svg = render_svg(&table, columns, normalize_at)?;
    std::fs::write(out_path, svg)?;
    Ok(())
}
