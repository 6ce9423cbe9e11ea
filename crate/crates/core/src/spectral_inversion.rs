//! Inversion of the lower-triangular Toeplitz map from input spectrum to output
//! spectrum.

use serde::Serialize;

use crate::delay_operator::MarkovSequence;
use crate::error::{invalid, Error, Result};
use crate::laguerre_basis::Spectrum;

/// Input coefficients at or below this magnitude count as zero when stripping.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-12;

/// First column of the inverse of the Toeplitz matrix built from `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseCoeffs {
    pub g: Vec<f64>,
    pub source: Vec<f64>,
}

impl InverseCoeffs {
    /// `max |g_k| · max |u_k|`, a cheap bound on error amplification.
    pub fn condition_estimate(&self) -> f64 {
        let gm = self.g.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let um = self.source.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        gm * um
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `g_0 = 1/u_0`, `g_k = −(1/u_0) Σ_{j<k} u_{k−j} g_j`.
pub fn toeplitz_inverse_coeffs(u: &[f64]) -> Result<InverseCoeffs> {
    let Some(&u0) = u.first() else {
        return Err(invalid("empty input sequence"));
    };
    if u0 == 0.0 {
        return Err(Error::ZeroLeadingCoefficient);
    }
    if u.iter().any(|v| !v.is_finite()) {
        return Err(invalid("non-finite input coefficient"));
    }
    let mut g = Vec::with_capacity(u.len());
    g.push(1.0 / u0);
    for k in 1..u.len() {
        let mut acc = CompensatedSum::default();
        for j in 0..k {
            acc.add(u[k - j] * g[j]);
        }
        g.push(-acc.value() / u0);
    }
    Ok(InverseCoeffs {
        g,
        source: u.to_vec(),
    })
}

/// Markov parameters recovered from an input/output spectrum pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recovery {
    pub markov: MarkovSequence,
    /// Number of leading input coefficients that were zero.
    pub offset: usize,
    /// Output coefficients at those leading positions; they carry the spectrum of
    /// any additive disturbance living below the input's first active index.
    pub disturbance_prefix: Vec<f64>,
    pub condition_estimate: f64,
}

pub fn recover_markov(u: &Spectrum, y: &Spectrum, count: usize) -> Result<Recovery> {
    recover_markov_with_threshold(u, y, count, DEFAULT_ZERO_THRESHOLD)
}

pub fn recover_markov_with_threshold(
    u: &Spectrum,
    y: &Spectrum,
    count: usize,
    zero_threshold: f64,
) -> Result<Recovery> {
    if u.params != y.params {
        return Err(Error::ParamsMismatch(
            "input and output spectra use different bases".into(),
        ));
    }
    if u.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "input has {} coefficients, output has {}",
            u.len(),
            y.len()
        )));
    }
    if count == 0 {
        return Err(invalid("Markov parameter count must be positive"));
    }
    let offset = u.leading_index(zero_threshold).ok_or(Error::AllZeroInput)?;
    let available = u.len() - offset;
    if count > available {
        return Err(Error::InsufficientData {
            needed: count,
            available,
        });
    }
    let inv = toeplitz_inverse_coeffs(&u.coeffs[offset..offset + count])?;
    let ys = &y.coeffs[offset..offset + count];
    let h = (0..count)
        .map(|k| {
            let mut acc = CompensatedSum::default();
            for (j, yj) in ys[..=k].iter().enumerate() {
                acc.add(inv.g[k - j] * yj);
            }
            acc.value()
        })
        .collect();
    Ok(Recovery {
        markov: MarkovSequence::new(h)?,
        offset,
        disturbance_prefix: y.coeffs[..offset].to_vec(),
        condition_estimate: inv.condition_estimate(),
    })
}
