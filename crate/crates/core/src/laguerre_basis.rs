//! Continuous and discrete Laguerre bases in the time domain.
//!
//! Continuous functions are `ℓ_k(t) = √(2p) e^{−pt} L_k(2pt)` with `L_k` the
//! ordinary Laguerre polynomial. Discrete functions are impulse responses of
//! `√(1−p)/(z−√p)` followed by `k` copies of the all-pass `(1−√p z)/(z−√p)`; they are
//! zero at `t = 0`. Both families are orthonormal on `t ≥ 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quadrature::{uniform_weights, Quadrature};

/// Number of coefficients above which projected spectra are flagged as unreliable.
pub const DEFAULT_RELIABILITY_BOUND: usize = 30;

/// Basis functions are treated as zero once their magnitude bound drops below this.
const TAIL_TOLERANCE: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Continuous,
    Discrete,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Continuous => "continuous",
            Domain::Discrete => "discrete",
        })
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cont" | "continuous" | "c" => Ok(Domain::Continuous),
            "disc" | "discrete" | "d" => Ok(Domain::Discrete),
            other => Err(Error::Parse(format!("unknown domain `{other}`"))),
        }
    }
}

/// Laguerre parameter together with the time domain it applies to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct LaguerreParams {
    p: f64,
    domain: Domain,
}

#[derive(Deserialize)]
struct RawParams {
    p: f64,
    domain: Domain,
}

impl TryFrom<RawParams> for LaguerreParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        LaguerreParams::new(raw.p, raw.domain)
    }
}

impl LaguerreParams {
    pub fn new(p: f64, domain: Domain) -> Result<Self> {
        let ok = match domain {
            Domain::Continuous => p.is_finite() && p > 0.0,
            Domain::Discrete => p > 0.0 && p < 1.0,
        };
        if !ok {
            return Err(invalid(format!(
                "Laguerre parameter p = {p} is not admissible in the {domain} domain"
            )));
        }
        Ok(LaguerreParams { p, domain })
    }

    pub fn continuous(p: f64) -> Result<Self> {
        Self::new(p, Domain::Continuous)
    }

    pub fn discrete(p: f64) -> Result<Self> {
        Self::new(p, Domain::Discrete)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// `√p`, the pole of the discrete basis.
    pub fn xi(&self) -> f64 {
        self.p.sqrt()
    }
}

/// Finite Laguerre spectrum `w_0 … w_{N−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpectrumRepr", into = "SpectrumRepr")]
pub struct Spectrum {
    pub params: LaguerreParams,
    pub coeffs: Vec<f64>,
    /// Set when more coefficients were projected than numerically trustworthy.
    pub beyond_reliability_bound: bool,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRepr {
    p: f64,
    domain: Domain,
    coeffs: Vec<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    beyond_reliability_bound: bool,
}

impl TryFrom<SpectrumRepr> for Spectrum {
    type Error = Error;

    fn try_from(r: SpectrumRepr) -> Result<Self> {
        let mut s = Spectrum::new(LaguerreParams::new(r.p, r.domain)?, r.coeffs)?;
        s.beyond_reliability_bound = r.beyond_reliability_bound;
        Ok(s)
    }
}

impl From<Spectrum> for SpectrumRepr {
    fn from(s: Spectrum) -> Self {
        SpectrumRepr {
            p: s.params.p,
            domain: s.params.domain,
            coeffs: s.coeffs,
            beyond_reliability_bound: s.beyond_reliability_bound,
        }
    }
}

impl Spectrum {
    pub fn new(params: LaguerreParams, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("a spectrum needs at least one coefficient"));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(invalid(format!("non-finite spectral coefficient {bad}")));
        }
        Ok(Spectrum {
            params,
            coeffs,
            beyond_reliability_bound: false,
        })
    }

    pub fn zeros(params: LaguerreParams, len: usize) -> Result<Self> {
        Self::new(params, vec![0.0; len])
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `√(Σ w_j²)`, the signal norm by Parseval.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Value of the continuous series `Σ w_j ℓ_j(t)` at a single time.
    pub fn eval_continuous(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let mut basis = vec![0.0; self.len()];
        continuous_basis_values(self.params.p, t, &mut basis);
        basis.iter().zip(&self.coeffs).map(|(b, w)| b * w).sum()
    }

    /// Index of the first coefficient whose magnitude exceeds `threshold`.
    pub fn leading_index(&self, threshold: f64) -> Option<usize> {
        self.coeffs.iter().position(|c| c.abs() > threshold)
    }
}

/// Uniform time grid `t0, t0 + dt, …` with `len` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t0: f64,
    pub dt: f64,
    pub len: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, dt: f64, len: usize) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0 && t0.is_finite()) {
            return Err(invalid(format!("bad grid: t0 = {t0}, dt = {dt}")));
        }
        Ok(TimeGrid { t0, dt, len })
    }

    /// Integer grid `0, 1, …, len − 1`.
    pub fn discrete(len: usize) -> Self {
        TimeGrid {
            t0: 0.0,
            dt: 1.0,
            len,
        }
    }

    /// A grid long enough to hold basis functions up to `max_order`, with step
    /// `0.0025/p` in continuous time.
    pub fn covering(params: &LaguerreParams, max_order: usize) -> Self {
        match params.domain {
            Domain::Continuous => {
                let dt = 0.0025 / params.p;
                let end = continuous_horizon(params.p, max_order, 0.0);
                TimeGrid {
                    t0: 0.0,
                    dt,
                    len: (end / dt).ceil() as usize + 1,
                }
            }
            Domain::Discrete => TimeGrid::discrete(discrete_horizon(params.p, max_order)),
        }
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }
}

/// Uniformly sampled signal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledSignal {
    pub domain: Domain,
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<f64>,
}

impl SampledSignal {
    pub fn new(domain: Domain, t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0 && t0.is_finite()) {
            return Err(invalid(format!("bad sampling: t0 = {t0}, dt = {dt}")));
        }
        if domain == Domain::Discrete && (dt != 1.0 || t0.fract() != 0.0) {
            return Err(invalid("discrete signals live on the integer grid"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("non-finite sample"));
        }
        Ok(SampledSignal {
            domain,
            t0,
            dt,
            values,
        })
    }

    pub fn continuous(dt: f64, values: Vec<f64>) -> Result<Self> {
        Self::new(Domain::Continuous, 0.0, dt, values)
    }

    pub fn discrete(values: Vec<f64>) -> Result<Self> {
        Self::new(Domain::Discrete, 0.0, 1.0, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn grid(&self) -> TimeGrid {
        TimeGrid {
            t0: self.t0,
            dt: self.dt,
            len: self.values.len(),
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|i| self.t0 + i as f64 * self.dt)
    }

    /// `w(t − τ)` on the same grid, padded with `τ/dt` leading zeros. The delay must
    /// be a whole number of samples.
    pub fn delayed(&self, tau: f64) -> Result<Self> {
        let steps = tau / self.dt;
        if !(tau >= 0.0 && (steps - steps.round()).abs() <= 1e-9 * steps.max(1.0)) {
            return Err(invalid(format!(
                "delay {tau} is not a non-negative multiple of the step {}",
                self.dt
            )));
        }
        let steps = steps.round() as usize;
        let mut values = vec![0.0; steps];
        values.extend_from_slice(&self.values);
        Ok(SampledSignal {
            values,
            ..self.clone()
        })
    }

    /// Quadrature weights matching the samples (unit weights in discrete time).
    fn weights(&self) -> Vec<f64> {
        match self.domain {
            Domain::Continuous => uniform_weights(self.values.len(), self.dt),
            Domain::Discrete => vec![1.0; self.values.len()],
        }
    }

    /// Time-domain 2-norm.
    pub fn norm(&self) -> f64 {
        self.weights()
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v * v)
            .sum::<f64>()
            .sqrt()
    }
}

/// `ℓ_0(t) … ℓ_{n−1}(t)` written into `out`.
pub fn continuous_basis_values(p: f64, t: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let x = 2.0 * p * t;
    let scale = (2.0 * p).sqrt() * (-p * t).exp();
    let (mut prev, mut cur) = (0.0, 1.0);
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = scale * cur;
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
}

/// Discrete basis functions `l_0 … l_{count−1}` sampled at `t = 0 … len − 1`.
pub fn discrete_basis(p: f64, count: usize, len: usize) -> Vec<Vec<f64>> {
    let xi = p.sqrt();
    let gain = (1.0 - p).sqrt();
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let mut first = vec![0.0; len];
    for t in 1..len {
        first[t] = if t == 1 { gain } else { xi * first[t - 1] };
    }
    out.push(first);
    for _ in 1..count {
        let input = out.last().expect("nonempty");
        // y(t) = ξ y(t−1) + x(t−1) − ξ x(t)
        let mut next = vec![0.0; len];
        for t in 0..len {
            let mut v = -xi * input[t];
            if t > 0 {
                v += xi * next[t - 1] + input[t - 1];
            }
            next[t] = v;
        }
        out.push(next);
    }
    out
}

/// End time beyond which continuous basis functions of order `≤ max_order` are
/// negligible, and at least `duration + 40/p`.
pub fn continuous_horizon(p: f64, max_order: usize, duration: f64) -> f64 {
    // |ℓ_k| ≤ √(2p) e^{−x/2} 2^k x^k / k! once x ≥ k
    let k = max_order as f64;
    let ln_fact: f64 = (1..=max_order).map(|i| (i as f64).ln()).sum();
    let ln_tol = TAIL_TOLERANCE.ln();
    let mut x = 80.0f64.max(2.0 * k);
    while -0.5 * x + k * (x.ln() + std::f64::consts::LN_2) - ln_fact > ln_tol {
        x += 1.0;
    }
    (x / (2.0 * p)).max(duration + 40.0 / p)
}

/// Number of samples after which discrete basis functions of order `≤ max_order`
/// are negligible.
pub fn discrete_horizon(p: f64, max_order: usize) -> usize {
    let xi = p.sqrt();
    let k = max_order as f64;
    let ln_tol = TAIL_TOLERANCE.ln();
    let ln_binom = |t: f64| -> f64 {
        // ln C(t + k, k)
        (1..=max_order).map(|i| ((t + i as f64) / i as f64).ln()).sum()
    };
    let mut t = 64usize.max(2 * max_order);
    while k * (1.0 + xi).ln() + ln_binom(t as f64) + (t as f64 - k) * xi.ln() > ln_tol {
        t += 16;
    }
    t
}

/// Basis function `k` sampled on `grid`.
pub fn eval_basis(params: &LaguerreParams, k: usize, grid: &TimeGrid) -> SampledSignal {
    match params.domain {
        Domain::Continuous => {
            let mut buf = vec![0.0; k + 1];
            let values = (0..grid.len)
                .map(|i| {
                    let t = grid.time(i);
                    if t < 0.0 {
                        0.0
                    } else {
                        continuous_basis_values(params.p, t, &mut buf);
                        buf[k]
                    }
                })
                .collect();
            SampledSignal {
                domain: Domain::Continuous,
                t0: grid.t0,
                dt: grid.dt,
                values,
            }
        }
        Domain::Discrete => {
            let start = grid.t0.max(0.0) as usize;
            let basis = discrete_basis(params.p, k + 1, start + grid.len);
            SampledSignal {
                domain: Domain::Discrete,
                t0: grid.t0,
                dt: 1.0,
                values: basis[k][start..].to_vec(),
            }
        }
    }
}

/// Options for projecting a signal given as a function of time.
#[derive(Debug, Clone)]
pub struct ProjectionOptions {
    /// Integration end; chosen from the basis decay when absent.
    pub horizon: Option<f64>,
    /// Times where the signal may jump or kink.
    pub breakpoints: Vec<f64>,
    /// Time after which the signal decays like the basis itself.
    pub duration: f64,
    pub reliability_bound: usize,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions {
            horizon: None,
            breakpoints: Vec::new(),
            duration: 0.0,
            reliability_bound: DEFAULT_RELIABILITY_BOUND,
        }
    }
}

impl ProjectionOptions {
    pub fn with_breakpoints(mut self, breakpoints: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(breakpoints);
        self
    }

    pub fn with_duration(mut self, duration: f64) -> Self {
        self.duration = duration;
        self
    }
}

fn finish_projection(params: LaguerreParams, coeffs: Vec<f64>, bound: usize) -> Result<Spectrum> {
    let count = coeffs.len();
    let mut spectrum = Spectrum::new(params, coeffs)?;
    spectrum.beyond_reliability_bound = count > bound;
    Ok(spectrum)
}

/// First `count` Laguerre coefficients of a sampled signal. Samples outside the
/// recorded range are taken as zero.
pub fn project(signal: &SampledSignal, params: &LaguerreParams, count: usize) -> Result<Spectrum> {
    project_with_bound(signal, params, count, DEFAULT_RELIABILITY_BOUND)
}

pub fn project_with_bound(
    signal: &SampledSignal,
    params: &LaguerreParams,
    count: usize,
    reliability_bound: usize,
) -> Result<Spectrum> {
    if count == 0 {
        return Err(invalid("coefficient count must be positive"));
    }
    if signal.domain != params.domain {
        return Err(Error::ParamsMismatch(format!(
            "{} signal projected onto {} basis",
            signal.domain, params.domain
        )));
    }
    let mut coeffs = vec![0.0; count];
    match params.domain {
        Domain::Continuous => {
            if signal.t0 < 0.0 {
                return Err(invalid("continuous signals must start at t >= 0"));
            }
            let weights = signal.weights();
            let mut basis = vec![0.0; count];
            for (i, (w, v)) in weights.iter().zip(&signal.values).enumerate() {
                if *v == 0.0 {
                    continue;
                }
                continuous_basis_values(params.p, signal.t0 + i as f64 * signal.dt, &mut basis);
                for (c, b) in coeffs.iter_mut().zip(&basis) {
                    *c += w * v * b;
                }
            }
        }
        Domain::Discrete => {
            if signal.t0 < 0.0 {
                return Err(invalid("discrete signals must start at t >= 0"));
            }
            let start = signal.t0 as usize;
            let basis = discrete_basis(params.p, count, start + signal.len());
            for (c, b) in coeffs.iter_mut().zip(&basis) {
                *c = signal
                    .values
                    .iter()
                    .zip(&b[start..])
                    .map(|(v, b)| v * b)
                    .sum();
            }
        }
    }
    finish_projection(*params, coeffs, reliability_bound)
}

/// First `count` Laguerre coefficients of a signal given as a function of time.
///
/// Continuous time uses composite Gauss–Legendre panels of width `1/(4p)`, split at
/// the requested breakpoints; discrete time sums over the integer grid.
pub fn project_fn(
    signal: impl Fn(f64) -> f64,
    params: &LaguerreParams,
    count: usize,
    options: &ProjectionOptions,
) -> Result<Spectrum> {
    if count == 0 {
        return Err(invalid("coefficient count must be positive"));
    }
    let p = params.p;
    let mut coeffs = vec![0.0; count];
    match params.domain {
        Domain::Continuous => {
            let end = options
                .horizon
                .unwrap_or_else(|| continuous_horizon(p, count - 1, options.duration));
            let quad = Quadrature::composite(end, 0.25 / p, &options.breakpoints);
            let mut basis = vec![0.0; count];
            for (t, w) in quad.nodes.iter().zip(&quad.weights) {
                let v = signal(*t);
                if v == 0.0 {
                    continue;
                }
                continuous_basis_values(p, *t, &mut basis);
                for (c, b) in coeffs.iter_mut().zip(&basis) {
                    *c += w * v * b;
                }
            }
        }
        Domain::Discrete => {
            let len = match options.horizon {
                Some(h) => h.ceil() as usize + 1,
                None => options.duration.ceil() as usize + discrete_horizon(p, count - 1),
            };
            let basis = discrete_basis(p, count, len);
            let values: Vec<f64> = (0..len).map(|t| signal(t as f64)).collect();
            for (c, b) in coeffs.iter_mut().zip(&basis) {
                *c = values.iter().zip(b).map(|(v, b)| v * b).sum();
            }
        }
    }
    finish_projection(*params, coeffs, options.reliability_bound)
}

/// `Σ_j w_j ℓ_j(t)` (or the discrete counterpart) on `grid`.
pub fn synthesize(spectrum: &Spectrum, grid: &TimeGrid) -> SampledSignal {
    let params = spectrum.params;
    match params.domain {
        Domain::Continuous => {
            let mut basis = vec![0.0; spectrum.len()];
            let values = (0..grid.len)
                .map(|i| {
                    let t = grid.time(i);
                    if t < 0.0 {
                        return 0.0;
                    }
                    continuous_basis_values(params.p, t, &mut basis);
                    basis.iter().zip(&spectrum.coeffs).map(|(b, w)| b * w).sum()
                })
                .collect();
            SampledSignal {
                domain: Domain::Continuous,
                t0: grid.t0,
                dt: grid.dt,
                values,
            }
        }
        Domain::Discrete => {
            let start = grid.t0.max(0.0) as usize;
            let basis = discrete_basis(params.p, spectrum.len(), start + grid.len);
            let mut values = vec![0.0; grid.len];
            for (w, b) in spectrum.coeffs.iter().zip(&basis) {
                for (v, b) in values.iter_mut().zip(&b[start..]) {
                    *v += w * b;
                }
            }
            SampledSignal {
                domain: Domain::Discrete,
                t0: grid.t0,
                dt: 1.0,
                values,
            }
        }
    }
}

/// Parseval norm of a spectrum.
pub fn norm(spectrum: &Spectrum) -> f64 {
    spectrum.norm()
}

/// Time-domain inner product of two signals on the same grid; the shorter one is
/// zero-padded.
pub fn inner(a: &SampledSignal, b: &SampledSignal) -> Result<f64> {
    if a.domain != b.domain
        || (a.dt - b.dt).abs() > 1e-12 * a.dt
        || (a.t0 - b.t0).abs() > 1e-12 * a.dt
    {
        return Err(Error::ParamsMismatch(
            "inner product needs signals on the same grid".into(),
        ));
    }
    let n = a.len().max(b.len());
    let weights = match a.domain {
        Domain::Continuous => uniform_weights(n, a.dt),
        Domain::Discrete => vec![1.0; n],
    };
    Ok(a.values
        .iter()
        .zip(&b.values)
        .zip(&weights)
        .map(|((x, y), w)| w * x * y)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn params_validation() {
        assert!(LaguerreParams::continuous(0.0).is_err());
        assert!(LaguerreParams::continuous(3.0).is_ok());
        assert!(LaguerreParams::discrete(1.0).is_err());
        assert!(LaguerreParams::discrete(0.25).is_ok());
        assert!(LaguerreParams::continuous(f64::NAN).is_err());
        assert_eq!("cont".parse::<Domain>().unwrap(), Domain::Continuous);
        assert_eq!("disc".parse::<Domain>().unwrap(), Domain::Discrete);
        assert!("both".parse::<Domain>().is_err());
    }

    #[test]
    fn continuous_basis_examples() {
        let params = LaguerreParams::continuous(0.5).unwrap();
        let grid = TimeGrid::new(0.0, 0.5, 5).unwrap();
        let l0 = eval_basis(&params, 0, &grid);
        assert_relative_eq!(l0.values[0], 1.0);
        let l1 = eval_basis(&params, 1, &grid);
        assert_relative_eq!(l1.values[0], 1.0);
        // ℓ_1(t) = √(2p) e^{−pt} (1 − 2pt) vanishes at t = 1/(2p) = 1
        assert!(l1.values[2].abs() < 1e-15);
        assert!(l1.values[1] > 0.0 && l1.values[3] < 0.0);
    }

    #[test]
    fn discrete_basis_example() {
        let params = LaguerreParams::discrete(0.25).unwrap();
        let l0 = eval_basis(&params, 0, &TimeGrid::discrete(8));
        assert_eq!(l0.values[0], 0.0);
        for t in 1..8 {
            assert_relative_eq!(
                l0.values[t],
                0.75f64.sqrt() * 0.5f64.powi(t as i32 - 1),
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn spectrum_norms() {
        let params = LaguerreParams::continuous(0.18).unwrap();
        let s = Spectrum::new(params, vec![6.0, -3.0, 2.0, -1.0]).unwrap();
        assert_relative_eq!(norm(&s), 50f64.sqrt());
        assert!((norm(&s) - 7.0711).abs() < 5e-5);
        let s = Spectrum::new(params, vec![3.0, 4.0]).unwrap();
        assert_eq!(s.norm(), 5.0);
        assert!(Spectrum::new(params, vec![]).is_err());
        assert!(Spectrum::new(params, vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn synthesize_single_function_and_zero() {
        let params = LaguerreParams::continuous(0.5).unwrap();
        let grid = TimeGrid::covering(&params, 3);
        let s = synthesize(&Spectrum::new(params, vec![1.0]).unwrap(), &grid);
        assert_relative_eq!(s.values[0], 1.0);
        for (t, v) in s.times().zip(&s.values).step_by(97) {
            assert_relative_eq!(*v, (-0.5 * t).exp(), max_relative = 1e-13);
        }
        let z = synthesize(&Spectrum::zeros(params, 4).unwrap(), &grid);
        assert!(z.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn zero_signal_projects_to_zero() {
        let params = LaguerreParams::discrete(0.3).unwrap();
        let sig = SampledSignal::discrete(vec![0.0; 100]).unwrap();
        let s = project(&sig, &params, 5).unwrap();
        assert!(s.coeffs.iter().all(|c| *c == 0.0));
    }

    #[test]
    fn reliability_flag() {
        let params = LaguerreParams::discrete(0.3).unwrap();
        let sig = SampledSignal::discrete(vec![1.0; 10]).unwrap();
        assert!(!project(&sig, &params, 30).unwrap().beyond_reliability_bound);
        assert!(project(&sig, &params, 31).unwrap().beyond_reliability_bound);
        assert!(!project_with_bound(&sig, &params, 31, 40)
            .unwrap()
            .beyond_reliability_bound);
    }

    #[test]
    fn domain_mismatch_is_rejected() {
        let params = LaguerreParams::continuous(0.3).unwrap();
        let sig = SampledSignal::discrete(vec![1.0; 10]).unwrap();
        assert!(project(&sig, &params, 3).is_err());
        assert!(project(&sig, &LaguerreParams::discrete(0.3).unwrap(), 0).is_err());
    }

    #[test]
    fn delay_pads_with_zeros() {
        let sig = SampledSignal::discrete(vec![1.0, 2.0]).unwrap();
        let d = sig.delayed(3.0).unwrap();
        assert_eq!(d.values, vec![0.0, 0.0, 0.0, 1.0, 2.0]);
        assert_eq!(d.norm(), sig.norm());
        assert!(sig.delayed(1.5).is_err());
        assert!(sig.delayed(-1.0).is_err());
    }

    #[test]
    fn spectrum_json_shape() {
        let params = LaguerreParams::discrete(0.25).unwrap();
        let s = Spectrum::new(params, vec![1.0, -0.5]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"p":0.25,"domain":"discrete","coeffs":[1.0,-0.5]}"#);
        let back: Spectrum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"p":1.5,"domain":"discrete","coeffs":[1.0]}"#;
        assert!(serde_json::from_str::<Spectrum>(bad).is_err());
    }
}
