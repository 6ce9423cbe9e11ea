//! Closed-form extraction of the delay from Markov parameters.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::delay_operator::MarkovSequence;
use crate::error::{invalid, Error, Result};
use crate::laguerre_basis::{Domain, LaguerreParams, Spectrum};
use crate::spectral_inversion::recover_markov;

/// `|h_m|` below this fraction of `max |h_0 … h_{m+1}|` is treated as a vanishing
/// denominator.
pub const SINGULAR_RATIO: f64 = 1e-13;

pub const DEFAULT_M_RANGE: RangeInclusive<usize> = 1..=5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ThreeTerm,
    H0Log,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ThreeTerm => "three_term",
            Method::H0Log => "h0_log",
        })
    }
}

fn neighbours(h: &MarkovSequence, m: usize) -> Result<(f64, f64, f64)> {
    if m == 0 {
        return Err(invalid("the three-term formula needs m >= 1"));
    }
    if h.len() < m + 2 {
        return Err(Error::InsufficientData {
            needed: m + 2,
            available: h.len(),
        });
    }
    let (prev, hm, next) = (h.h[m - 1], h.h[m], h.h[m + 1]);
    let scale = h.h[..=m + 1].iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if hm.abs() < SINGULAR_RATIO * scale || hm == 0.0 {
        return Err(Error::SingularDenominator {
            m,
            magnitude: hm.abs(),
        });
    }
    Ok((prev, hm, next))
}

/// `κ = −[(m+1) h_{m+1} + (m−1) h_{m−1} − 2m h_m] / h_m`.
pub fn kappa_from_markov(h: &MarkovSequence, m: usize) -> Result<f64> {
    let (prev, cur, next) = neighbours(h, m)?;
    let mf = m as f64;
    Ok(-((mf + 1.0) * next + (mf - 1.0) * prev - 2.0 * mf * cur) / cur)
}

/// `τ = −[(m+1) h_{m+1} + (m−1) h_{m−1} + m(ξ + 1/ξ) h_m] / [(ξ − 1/ξ) h_m]`.
pub fn tau_disc_from_markov(h: &MarkovSequence, m: usize, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("discrete Laguerre parameter must lie in (0, 1), got {p}")));
    }
    let (prev, cur, next) = neighbours(h, m)?;
    let xi = p.sqrt();
    let mf = m as f64;
    Ok(-((mf + 1.0) * next + (mf - 1.0) * prev + mf * (xi + 1.0 / xi) * cur)
        / ((xi - 1.0 / xi) * cur))
}

/// Delay from `h_0` alone: `−ln h_0 / p` or `2 ln h_0 / ln p`.
pub fn tau_from_h0(h0: f64, p: f64, domain: Domain) -> Result<f64> {
    if h0.is_nan() || h0 <= 0.0 {
        return Err(invalid(format!("h_0 must be positive, got {h0}")));
    }
    LaguerreParams::new(p, domain)?;
    Ok(match domain {
        Domain::Continuous => -h0.ln() / p,
        Domain::Discrete => 2.0 * h0.ln() / p.ln(),
    })
}

/// Per-index result; `value` is absent when the index could not be used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerM {
    pub m: usize,
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelayEstimate {
    pub domain: Domain,
    pub method: Method,
    /// Delay in time units (or samples).
    pub value: f64,
    /// Normalized delay `2pτ` for continuous estimates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_rounded: Option<i64>,
    /// Raw per-index values: `κ` in continuous time, `τ` in discrete time.
    pub per_m: Vec<PerM>,
    /// Leading input coefficients that were skipped during recovery.
    pub offset: usize,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Three-term estimate for every `m` in `m_range`, aggregated by the median.
///
/// Indices where `h_m` vanishes are reported as skipped; the call fails only when
/// none is usable.
pub fn estimate_from_markov(
    h: &MarkovSequence,
    params: &LaguerreParams,
    m_range: &[usize],
) -> Result<DelayEstimate> {
    if m_range.is_empty() {
        return Err(invalid("empty m range"));
    }
    let p = params.p();
    let per_m: Vec<PerM> = m_range
        .iter()
        .map(|&m| {
            let raw = match params.domain() {
                Domain::Continuous => kappa_from_markov(h, m),
                Domain::Discrete => tau_disc_from_markov(h, m, p),
            };
            match raw {
                Ok(v) => PerM {
                    m,
                    value: Some(v),
                    skipped: None,
                },
                Err(e) => PerM {
                    m,
                    value: None,
                    skipped: Some(e.to_string()),
                },
            }
        })
        .collect();
    let mut usable: Vec<f64> = per_m.iter().filter_map(|r| r.value).collect();
    if usable.is_empty() {
        let first = m_range[0];
        return Err(match neighbours(h, first) {
            Err(e) => e,
            Ok(_) => invalid("no usable index in m range"),
        });
    }
    let mid = median(&mut usable);
    Ok(match params.domain() {
        Domain::Continuous => DelayEstimate {
            domain: Domain::Continuous,
            method: Method::ThreeTerm,
            value: mid / (2.0 * p),
            kappa: Some(mid),
            tau_rounded: None,
            per_m,
            offset: 0,
        },
        Domain::Discrete => DelayEstimate {
            domain: Domain::Discrete,
            method: Method::ThreeTerm,
            value: mid,
            kappa: None,
            tau_rounded: Some(mid.round() as i64),
            per_m,
            offset: 0,
        },
    })
}

/// Recovers Markov parameters from the spectra and applies the three-term formula.
/// Indices beyond the available length minus two are dropped.
pub fn estimate_delay(u: &Spectrum, y: &Spectrum, m_range: &[usize]) -> Result<DelayEstimate> {
    if m_range.is_empty() {
        return Err(invalid("empty m range"));
    }
    let offset = u
        .leading_index(crate::spectral_inversion::DEFAULT_ZERO_THRESHOLD)
        .ok_or(Error::AllZeroInput)?;
    let available = u.len() - offset;
    let cap = available.saturating_sub(2);
    let ms: Vec<usize> = m_range.iter().copied().filter(|&m| m <= cap).collect();
    if ms.is_empty() {
        let needed = m_range.iter().copied().min().unwrap_or(1) + 2;
        return Err(Error::InsufficientData { needed, available });
    }
    let count = ms.iter().max().copied().unwrap_or(1) + 2;
    let rec = recover_markov(u, y, count)?;
    let mut est = estimate_from_markov(&rec.markov, &u.params, &ms)?;
    est.offset = rec.offset;
    Ok(est)
}

/// Delay from the `h_0` relation, wrapped as an estimate.
pub fn estimate_from_h0(h: &MarkovSequence, params: &LaguerreParams) -> Result<DelayEstimate> {
    let h0 = *h.h.first().ok_or(Error::InsufficientData {
        needed: 1,
        available: 0,
    })?;
    let tau = tau_from_h0(h0, params.p(), params.domain())?;
    let discrete = params.domain() == Domain::Discrete;
    Ok(DelayEstimate {
        domain: params.domain(),
        method: Method::H0Log,
        value: tau,
        kappa: (!discrete).then(|| 2.0 * params.p() * tau),
        tau_rounded: discrete.then(|| tau.round() as i64),
        per_m: Vec::new(),
        offset: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delay_operator::{apply_delay, cont_markov, disc_markov, DelaySpec};

    fn seq(h: &[f64]) -> MarkovSequence {
        MarkovSequence::new(h.to_vec()).unwrap()
    }

    #[test]
    fn kappa_examples() {
        let k = kappa_from_markov(&seq(&[0.40657, -0.7318, -0.0732, 0.1903]), 2).unwrap();
        assert!((k - 1.802).abs() < 1e-3, "{k}");
        let h = cont_markov(&DelaySpec::continuous(0.18, 5.0).unwrap(), 4).unwrap();
        assert!((kappa_from_markov(&h, 1).unwrap() - 1.8).abs() < 1e-12);
        // zero delay makes every h_m with m >= 1 vanish, so the ratio is 0/0
        let h = cont_markov(&DelaySpec::continuous(0.18, 0.0).unwrap(), 4).unwrap();
        assert!(matches!(
            kappa_from_markov(&h, 1),
            Err(Error::SingularDenominator { m: 1, .. })
        ));
        let h = cont_markov(&DelaySpec::continuous(0.18, 1e-6).unwrap(), 4).unwrap();
        assert!(kappa_from_markov(&h, 1).unwrap().abs() < 1e-5);
    }

    #[test]
    fn h0_is_immaterial_at_first_index() {
        let h = cont_markov(&DelaySpec::continuous(0.18, 5.0).unwrap(), 4).unwrap();
        let mut tampered = h.clone();
        tampered.h[0] = 123.0;
        assert_eq!(
            kappa_from_markov(&h, 1).unwrap(),
            kappa_from_markov(&tampered, 1).unwrap()
        );
    }

    #[test]
    fn tau_examples() {
        let h = disc_markov(&DelaySpec::discrete(0.25, 1).unwrap(), 4).unwrap();
        assert_eq!(tau_disc_from_markov(&h, 2, 0.25).unwrap(), 1.0);
        let h = disc_markov(&DelaySpec::discrete(0.25, 2).unwrap(), 4).unwrap();
        assert_eq!(tau_disc_from_markov(&h, 2, 0.25).unwrap(), 2.0);
        let h = disc_markov(&DelaySpec::discrete(0.5, 5).unwrap(), 4).unwrap();
        assert!((tau_disc_from_markov(&h, 1, 0.5).unwrap() - 5.0).abs() < 1e-10);
    }

    #[test]
    fn singular_denominator() {
        // h_3 vanishes exactly for τ = 2, p = 1/2
        let h = seq(&[0.5, 0.5, 0.0, 0.0, 0.25]);
        assert!(matches!(
            tau_disc_from_markov(&h, 3, 0.5),
            Err(Error::SingularDenominator { m: 3, .. })
        ));
        assert!(matches!(
            kappa_from_markov(&seq(&[1.0, 2.0]), 1),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn h0_examples() {
        let t = tau_from_h0((-0.9f64).exp(), 0.18, Domain::Continuous).unwrap();
        assert!((t - 5.0).abs() < 1e-14);
        assert_eq!(tau_from_h0(0.25, 0.25, Domain::Discrete).unwrap(), 2.0);
        assert_eq!(tau_from_h0(1.0, 3.0, Domain::Continuous).unwrap(), 0.0);
        assert!(tau_from_h0(0.0, 0.5, Domain::Continuous).is_err());
        assert!(tau_from_h0(-1.0, 0.5, Domain::Discrete).is_err());
    }

    #[test]
    fn pipeline_examples() {
        let spec = DelaySpec::continuous(0.18, 5.0).unwrap();
        let u = Spectrum::new(spec.params, vec![6.0, -3.0, 2.0, -1.0, 0.0]).unwrap();
        let y = apply_delay(&spec, &u).unwrap();
        let est = estimate_delay(&u, &y, &[1, 2, 3]).unwrap();
        assert!((est.value - 5.0).abs() < 1e-9);
        assert_eq!(est.per_m.len(), 3);

        let spec = DelaySpec::discrete(0.4, 7).unwrap();
        let u = Spectrum::new(spec.params, vec![0.7, -1.2, 0.3, 2.0, -0.5, 0.9, 0.1]).unwrap();
        let y = apply_delay(&spec, &u).unwrap();
        let m: Vec<usize> = DEFAULT_M_RANGE.collect();
        let est = estimate_delay(&u, &y, &m).unwrap();
        assert_eq!(est.tau_rounded, Some(7));

        let mut up = vec![0.0, 0.0];
        up.extend_from_slice(&u.coeffs);
        let mut yp = vec![4.2, -9.0];
        yp.extend_from_slice(&y.coeffs);
        let up = Spectrum::new(spec.params, up).unwrap();
        let yp = Spectrum::new(spec.params, yp).unwrap();
        let shifted = estimate_delay(&up, &yp, &m).unwrap();
        assert_eq!(shifted.tau_rounded, Some(7));
        assert_eq!(shifted.offset, 2);
        assert_eq!(shifted.value, est.value);

        assert!(estimate_delay(&u, &y, &[]).is_err());
    }

    #[test]
    fn estimate_json_shape() {
        let spec = DelaySpec::discrete(0.25, 2).unwrap();
        let h = disc_markov(&spec, 4).unwrap();
        let est = estimate_from_markov(&h, &spec.params, &[2]).unwrap();
        let json = serde_json::to_value(&est).unwrap();
        assert_eq!(json["domain"], "discrete");
        assert_eq!(json["method"], "three_term");
        assert_eq!(json["tau_rounded"], 2);
        assert_eq!(json["per_m"][0]["m"], 2);
    }
}
