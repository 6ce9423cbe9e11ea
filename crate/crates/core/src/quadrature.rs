//! Quadrature rules used for continuous-time projection and norms.

use std::f64::consts::PI;

/// Nodes per Gauss–Legendre panel.
pub const PANEL_NODES: usize = 16;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A set of nodes and weights for integrating over an interval.
#[derive(Debug, Clone)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Quadrature {
    /// Composite Gauss–Legendre rule on `[0, end]` with panels of width at most
    /// `panel_width`. Breakpoints inside the interval become panel edges so that
    /// integrands with jumps there are integrated to full accuracy.
    pub fn composite(end: f64, panel_width: f64, breakpoints: &[f64]) -> Self {
        let panels = (end / panel_width).ceil().max(1.0) as usize;
        let mut edges: Vec<f64> = (0..=panels)
            .map(|i| (i as f64 * end / panels as f64).min(end))
            .collect();
        edges.extend(breakpoints.iter().copied().filter(|b| *b > 0.0 && *b < end));
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * end.max(1.0));

        let (gx, gw) = gauss_legendre(PANEL_NODES);
        let mut nodes = Vec::with_capacity(edges.len() * PANEL_NODES);
        let mut weights = Vec::with_capacity(edges.len() * PANEL_NODES);
        for pair in edges.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (x, w) in gx.iter().zip(&gw) {
                nodes.push(mid + half * x);
                weights.push(half * w);
            }
        }
        Quadrature { nodes, weights }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(t, w)| w * f(*t))
            .sum()
    }
}

/// Weights of a composite Newton–Cotes rule over `n` equally spaced samples with
/// step `h`: Boole's rule on groups of four intervals, with Simpson's 3/8 and
/// Simpson's rule closing out the last one to three intervals.
pub fn uniform_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n];
    if n < 2 {
        return w;
    }
    let intervals = n - 1;
    let (mut boole, tail) = (intervals / 4, intervals % 4);
    let mut tail_parts: Vec<usize> = match tail {
        0 => vec![],
        1 if boole > 0 => {
            boole -= 1;
            vec![3, 2]
        }
        1 => vec![1],
        2 => vec![2],
        _ => vec![3],
    };
    let mut start = 0;
    for _ in 0..boole {
        for (k, c) in [7.0, 32.0, 12.0, 32.0, 7.0].iter().enumerate() {
            w[start + k] += c * 2.0 * h / 45.0;
        }
        start += 4;
    }
    for part in tail_parts.drain(..) {
        let coeffs: &[f64] = match part {
            3 => &[3.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 3.0 / 8.0],
            2 => &[1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0],
            _ => &[0.5, 0.5],
        };
        for (k, c) in coeffs.iter().enumerate() {
            w[start + k] += c * h;
        }
        start += part;
    }
    w
}
