//! Angle arguments: decimal radians or symbolic multiples of π.
//!
//! Grammar: `[sign] product [/ product]`, where a product is factors joined
//! by `*` and a factor is a decimal, `pi` (or `π`), `sqrtN` / `sqrt(N)`, or
//! a decimal glued to `pi` as in `3pi`. Examples: `pi/2`, `sqrt3*pi/2`,
//! `-0.25`, `3pi/4`.

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid angle '{input}': {reason}")]
pub struct AngleError {
    pub input: String,
    pub reason: String,
}

pub fn parse_angle(input: &str) -> Result<f64, AngleError> {
    let fail = |reason: &str| AngleError {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(fail("empty"));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, s.strip_prefix('+').unwrap_or(&s)),
    };
    let mut parts = body.split('/');
    let num = product(parts.next().unwrap_or("")).map_err(|r| fail(&r))?;
    let den = match parts.next() {
        Some(d) => product(d).map_err(|r| fail(&r))?,
        None => 1.0,
    };
    if parts.next().is_some() {
        return Err(fail("more than one '/'"));
    }
    if den == 0.0 {
        return Err(fail("division by zero"));
    }
    let value = sign * num / den;
    if !value.is_finite() {
        return Err(fail("not a finite number"));
    }
    Ok(value)
}

fn product(s: &str) -> Result<f64, String> {
    if s.is_empty() {
        return Err("missing operand".into());
    }
    s.split('*').map(factor).product()
}

fn factor(f: &str) -> Result<f64, String> {
    let lower = f.to_ascii_lowercase();
    if lower == "pi" || f == "π" {
        return Ok(PI);
    }
    if let Some(arg) = lower.strip_prefix("sqrt") {
        let arg = arg
            .strip_prefix('(')
            .and_then(|a| a.strip_suffix(')'))
            .unwrap_or(arg);
        let v = decimal(arg)?;
        if v < 0.0 {
            return Err(format!("sqrt of negative number {v}"));
        }
        return Ok(v.sqrt());
    }
    for suffix in ["pi", "π"] {
        if let Some(coef) = lower
            .strip_suffix(suffix)
            .or_else(|| f.strip_suffix(suffix))
        {
            if !coef.is_empty() {
                return Ok(decimal(coef)? * PI);
            }
        }
    }
    decimal(f)
}

fn decimal(s: &str) -> Result<f64, String> {
    // Rust's float parser accepts "inf" and "nan"; angles may not.
    if s.is_empty()
        || !s
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '-' | '+'))
    {
        return Err(format!("unrecognized term '{s}'"));
    }
    s.parse::<f64>()
        .map_err(|_| format!("unrecognized number '{s}'"))
}

/// Spin quantum number as `3/2`, `1`, `2.5`.
pub fn parse_spin(input: &str) -> Result<u32, String> {
    let s = input.trim();
    let two_j = if let Some((n, d)) = s.split_once('/') {
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| format!("invalid spin '{input}'"))?;
        match d.trim() {
            "2" => n,
            "1" => 2 * n,
            _ => {
                return Err(format!(
                    "invalid spin '{input}': denominator must be 1 or 2"
                ))
            }
        }
    } else {
        let v: f64 = s.parse().map_err(|_| format!("invalid spin '{input}'"))?;
        let twice = 2.0 * v;
        if v < 0.0 || (twice - twice.round()).abs() > 1e-12 {
            return Err(format!(
                "invalid spin '{input}': must be a non-negative multiple of 1/2"
            ));
        }
        twice.round() as u32
    };
    Ok(two_j)
}
