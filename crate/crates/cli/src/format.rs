//! Deterministic number formatting for reports and CSV files.

use num_complex::Complex64;
use symgate_core::linalg::ComplexMatrix;

/// Significant digits for every printed real.
pub const DIGITS: usize = 15;

/// Magnitudes below this print as zero; keeps rounding noise such as
/// `e_p = 3e-17` out of reports.
pub const CHOP: f64 = 1e-14;

/// `%.{digits}g`-style formatting: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros trimmed.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{exp}", trim_zeros(mant))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn num(x: f64) -> String {
    sig(if x.abs() < CHOP { 0.0 } else { x }, DIGITS)
}

/// `a+bi`, dropping a zero part.
pub fn complex(z: Complex64) -> String {
    let re = if z.re.abs() < CHOP { 0.0 } else { z.re };
    let im = if z.im.abs() < CHOP { 0.0 } else { z.im };
    match (re == 0.0, im == 0.0) {
        (_, true) => num(re),
        (true, false) => format!("{}i", num(im)),
        (false, false) => {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", num(re), num(im.abs()))
        }
    }
}

pub fn vector(v: &[Complex64]) -> String {
    let parts: Vec<String> = v.iter().map(|&z| complex(z)).collect();
    format!("[{}]", parts.join(", "))
}

/// Right-aligned columns, one row per line, each line indented two spaces.
pub fn matrix(m: &ComplexMatrix) -> String {
    let cells: Vec<Vec<String>> = m
        .rows()
        .map(|row| row.iter().map(|&z| complex(z)).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        out.push_str("  ");
        out.push_str(&padded.join("  "));
        out.push('\n');
    }
    out
}
