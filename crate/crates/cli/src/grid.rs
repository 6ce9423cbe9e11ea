//! Parsing of ranges and grids given on the command line.

use anyhow::{bail, Context, Result};

/// `a..b` (inclusive) or a single index.
pub fn parse_index_range(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let out: Vec<usize> = match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().with_context(|| format!("bad range start in `{s}`"))?;
            let b = b.trim().trim_start_matches('=');
            let b: usize = b.parse().with_context(|| format!("bad range end in `{s}`"))?;
            (a..=b).collect()
        }
        None => vec![s.parse().with_context(|| format!("bad index `{s}`"))?],
    };
    if out.is_empty() {
        bail!("range `{s}` is empty");
    }
    Ok(out)
}

/// Comma-separated values, `a..b` for integer steps, or `a..b:step`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, rest)) => {
                let (b, step) = match rest.split_once(':') {
                    Some((b, step)) => (b, step.parse::<f64>().with_context(|| format!("bad step in `{part}`"))?),
                    None => (rest, 1.0),
                };
                let a: f64 = a.parse().with_context(|| format!("bad grid start in `{part}`"))?;
                let b: f64 = b.parse().with_context(|| format!("bad grid end in `{part}`"))?;
                if step.is_nan() || step <= 0.0 {
                    bail!("grid step must be positive in `{part}`");
                }
                let n = ((b - a) / step + 1e-9).floor();
                if n < 0.0 {
                    bail!("grid `{part}` is empty");
                }
                // rebuild each point from the start to avoid accumulating the step
                out.extend((0..=n as usize).map(|i| {
                    let v = a + i as f64 * step;
                    (v * 1e12).round() / 1e12
                }));
            }
            None => out.push(part.parse().with_context(|| format!("bad grid value `{part}`"))?),
        }
    }
    if out.is_empty() {
        bail!("grid `{s}` is empty");
    }
    Ok(out)
}

/// Comma-separated coefficients.
pub fn parse_values(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().with_context(|| format!("bad number `{v}`")))
        .collect()
}
