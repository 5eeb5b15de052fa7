//! Number and table formatting shared by the CLI outputs.

use std::fmt::Write;

/// Significant digits used for every real number written to CSV.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Formats like C's `%.12g`: fixed notation for moderate exponents, scientific
/// otherwise, trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    format_sig_digits(x, SIGNIFICANT_DIGITS)
}

pub fn format_sig_digits(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    // the exponent after rounding to `digits` significant figures
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Renders a square table with row and column labels, right-aligned.
pub fn labeled_grid(corner: &str, labels: &[String], cells: &[Vec<String>]) -> String {
    let width = labels
        .iter()
        .chain(cells.iter().flatten())
        .map(|c| c.chars().count())
        .chain(std::iter::once(corner.chars().count()))
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    let _ = write!(out, "{corner:>width$} |");
    for l in labels {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    let rule = width + 2 + labels.len() * (width + 1);
    out.push_str(&"-".repeat(rule));
    out.push('\n');
    for (label, row) in labels.iter().zip(cells) {
        let _ = write!(out, "{label:>width$} |");
        for c in row {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
    }
    out
}
