//! The pure delay as a lower-triangular convolution on Laguerre spectra.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::laguerre_basis::{Domain, LaguerreParams, Spectrum};
use crate::laguerre_poly::{cont_delay_poly_seq, disc_delay_poly};

/// Relative singular-value threshold used for Hankel ranks.
pub const DEFAULT_RANK_TOLERANCE: f64 = 1e-9;

/// A delay `τ` together with the basis it is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelaySpec {
    pub params: LaguerreParams,
    pub tau: f64,
}

impl DelaySpec {
    pub fn new(params: LaguerreParams, tau: f64) -> Result<Self> {
        match params.domain() {
            Domain::Continuous if !(tau.is_finite() && tau >= 0.0) => {
                Err(invalid(format!("continuous delay must be >= 0, got {tau}")))
            }
            Domain::Discrete if !(tau >= 1.0 && tau.fract() == 0.0 && tau < 1e9) => Err(
                invalid(format!("discrete delay must be a positive integer, got {tau}")),
            ),
            _ => Ok(DelaySpec { params, tau }),
        }
    }

    pub fn continuous(p: f64, tau: f64) -> Result<Self> {
        Self::new(LaguerreParams::continuous(p)?, tau)
    }

    pub fn discrete(p: f64, tau: usize) -> Result<Self> {
        Self::new(LaguerreParams::discrete(p)?, tau as f64)
    }

    pub fn domain(&self) -> Domain {
        self.params.domain()
    }

    /// Normalized continuous delay `2pτ`.
    pub fn kappa(&self) -> f64 {
        2.0 * self.params.p() * self.tau
    }

    pub fn xi(&self) -> f64 {
        self.params.xi()
    }

    /// Delay in samples (discrete specs).
    pub fn steps(&self) -> usize {
        self.tau as usize
    }
}

/// Laguerre-domain Markov parameters `h_0, h_1, …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovSequence {
    pub h: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<DelaySpec>,
}

impl MarkovSequence {
    pub fn new(h: Vec<f64>) -> Result<Self> {
        if h.iter().any(|v| !v.is_finite()) {
            return Err(invalid("non-finite Markov parameter"));
        }
        Ok(MarkovSequence { h, origin: None })
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.h.iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

/// `h_k = e^{−κ/2} 𝐋_k(κ)` for `k < count`.
pub fn cont_markov(spec: &DelaySpec, count: usize) -> Result<MarkovSequence> {
    if spec.domain() != Domain::Continuous {
        return Err(Error::ParamsMismatch("continuous Markov parameters need a continuous delay".into()));
    }
    let kappa = spec.kappa();
    let scale = (-0.5 * kappa).exp();
    let mut h = cont_delay_poly_seq(count.saturating_sub(1), kappa);
    h.truncate(count);
    h.iter_mut().for_each(|v| *v *= scale);
    Ok(MarkovSequence {
        h,
        origin: Some(*spec),
    })
}

/// `h_0 = ξ^τ`, `h_j = (1 − p) L_j^(τ)(ξ)`.
pub fn disc_markov(spec: &DelaySpec, count: usize) -> Result<MarkovSequence> {
    if spec.domain() != Domain::Discrete {
        return Err(Error::ParamsMismatch("discrete Markov parameters need a discrete delay".into()));
    }
    let (p, xi, tau) = (spec.params.p(), spec.xi(), spec.steps());
    let mut h = Vec::with_capacity(count);
    if count > 0 {
        h.push(xi.powi(tau as i32));
    }
    for j in 1..count {
        h.push((1.0 - p) * disc_delay_poly(j, tau, xi)?);
    }
    Ok(MarkovSequence {
        h,
        origin: Some(*spec),
    })
}

pub fn markov(spec: &DelaySpec, count: usize) -> Result<MarkovSequence> {
    match spec.domain() {
        Domain::Continuous => cont_markov(spec, count),
        Domain::Discrete => disc_markov(spec, count),
    }
}

/// `y_j = Σ_{k ≤ j} h_{j−k} u_k`, truncated to the input length.
pub fn convolve(h: &[f64], u: &[f64]) -> Vec<f64> {
    (0..u.len())
        .map(|j| (0..=j).map(|k| h[j - k] * u[k]).sum())
        .collect()
}

/// Spectrum of the delayed signal.
pub fn apply_delay(spec: &DelaySpec, u: &Spectrum) -> Result<Spectrum> {
    if u.params != spec.params {
        return Err(Error::ParamsMismatch(format!(
            "spectrum uses p = {} ({}), delay uses p = {} ({})",
            u.params.p(),
            u.params.domain(),
            spec.params.p(),
            spec.domain()
        )));
    }
    let h = markov(spec, u.len())?;
    Spectrum::new(u.params, convolve(&h.h, &u.coeffs))
}

/// `x_{j+1} = F x_j + G u_j`, `y_j = H x_j + J u_j` over the coefficient index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSpaceRealization {
    /// Row-major `n × n`.
    pub f: Vec<Vec<f64>>,
    pub g: Vec<f64>,
    pub h: Vec<f64>,
    pub j: f64,
}

impl StateSpaceRealization {
    pub fn order(&self) -> usize {
        self.g.len()
    }

    fn check(&self) -> Result<()> {
        let n = self.g.len();
        if self.h.len() != n || self.f.len() != n || self.f.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "F is {}x?, G has {} rows, H has {} columns",
                self.f.len(),
                n,
                self.h.len()
            )));
        }
        Ok(())
    }

    /// First `count` Markov parameters `J, HG, HFG, …`.
    pub fn impulse_response(&self, count: usize) -> Result<Vec<f64>> {
        let mut u = vec![0.0; count];
        if count > 0 {
            u[0] = 1.0;
        }
        self.run(&u)
    }

    fn run(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.check()?;
        let n = self.order();
        let mut x = vec![0.0; n];
        let mut out = Vec::with_capacity(u.len());
        for &uj in u {
            let y: f64 = self.h.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() + self.j * uj;
            out.push(y);
            x = (0..n)
                .map(|i| self.f[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() + self.g[i] * uj)
                .collect();
        }
        Ok(out)
    }
}

/// Minimal realization of order `τ` of the discrete delay.
pub fn disc_realization(spec: &DelaySpec) -> Result<StateSpaceRealization> {
    if spec.domain() != Domain::Discrete {
        return Err(Error::ParamsMismatch("state-space realization needs a discrete delay".into()));
    }
    let (p, xi, tau) = (spec.params.p(), spec.xi(), spec.steps());
    let mut f = vec![vec![0.0; tau]; tau];
    for (i, row) in f.iter_mut().enumerate() {
        row[i] = -xi;
        for (j, v) in row.iter_mut().enumerate().skip(i + 1) {
            *v = xi.powi((j - i - 1) as i32) * (1.0 - p);
        }
    }
    let g = (1..=tau).map(|i| (1.0 - p) * xi.powi((tau - i) as i32)).collect();
    let h = (1..=tau).map(|i| xi.powi(i as i32 - 1)).collect();
    Ok(StateSpaceRealization {
        f,
        g,
        h,
        j: xi.powi(tau as i32),
    })
}

pub fn simulate_realization(ss: &StateSpaceRealization, u: &Spectrum) -> Result<Spectrum> {
    Spectrum::new(u.params, ss.run(&u.coeffs)?)
}

/// `n × n` Hankel matrix with entries `h_{i+j}`.
pub fn hankel(h: &MarkovSequence, n: usize) -> Result<DMatrix<f64>> {
    hankel_from(h, n, 0)
}

/// `n × n` Hankel matrix with entries `h_{first+i+j}`. Starting at `h_1` leaves out
/// the direct feedthrough, so the rank then measures the state dimension alone.
pub fn hankel_from(h: &MarkovSequence, n: usize, first: usize) -> Result<DMatrix<f64>> {
    let needed = first + (2 * n).saturating_sub(1);
    if n == 0 || h.len() < needed {
        return Err(Error::InsufficientData {
            needed: needed.max(first + 1),
            available: h.len(),
        });
    }
    Ok(DMatrix::from_fn(n, n, |i, j| h.h[first + i + j]))
}

/// Number of singular values above `tol · σ_max`.
pub fn numerical_rank(matrix: &DMatrix<f64>, tol: f64) -> Result<usize> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(invalid("rank tolerance must be positive"));
    }
    let sv = matrix.singular_values();
    let max = sv.iter().fold(0.0f64, |a, v| a.max(*v));
    if max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|s| **s > tol * max).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn continuous_markov_examples() {
        let spec = DelaySpec::continuous(0.18, 5.0).unwrap();
        let h = cont_markov(&spec, 4).unwrap();
        close(&h.h, &[0.4066, -0.7318, -0.0732, 0.1903], 5e-5);
        let h0 = (-0.9f64).exp();
        close(&h.h, &[h0, -1.8 * h0, -0.18 * h0, 0.468 * h0], 1e-15);
        let h = cont_markov(&DelaySpec::continuous(0.3, 0.0).unwrap(), 3).unwrap();
        assert_eq!(h.h, vec![1.0, 0.0, 0.0]);
        let h = cont_markov(&DelaySpec::continuous(0.4, 1.0).unwrap(), 2).unwrap();
        assert_relative_eq!(h.h[0], (-0.4f64).exp());
        assert_relative_eq!(h.h[1], -0.8 * (-0.4f64).exp());
    }

    #[test]
    fn discrete_markov_examples() {
        let h = disc_markov(&DelaySpec::discrete(0.25, 1).unwrap(), 4).unwrap();
        close(&h.h, &[0.5, 0.75, -0.375, 0.1875], 1e-15);
        let h = disc_markov(&DelaySpec::discrete(0.25, 2).unwrap(), 4).unwrap();
        close(&h.h, &[0.25, 0.75, 0.1875, -0.375], 1e-15);
        let h = disc_markov(&DelaySpec::discrete(0.3, 7).unwrap(), 1).unwrap();
        assert_relative_eq!(h.h[0], 0.3f64.powf(3.5), max_relative = 1e-15);
    }

    #[test]
    fn spec_validation() {
        assert!(DelaySpec::continuous(0.18, -1.0).is_err());
        assert!(DelaySpec::discrete(0.25, 0).is_err());
        let p = LaguerreParams::discrete(0.25).unwrap();
        assert!(DelaySpec::new(p, 1.5).is_err());
        assert!(cont_markov(&DelaySpec::discrete(0.25, 1).unwrap(), 2).is_err());
    }

    #[test]
    fn apply_delay_examples() {
        let params = LaguerreParams::continuous(0.18).unwrap();
        let u = Spectrum::new(params, vec![6.0, -3.0, 2.0, -1.0]).unwrap();
        let y = apply_delay(&DelaySpec::new(params, 0.0).unwrap(), &u).unwrap();
        assert_eq!(y.coeffs, u.coeffs);

        let spec = DelaySpec::discrete(0.25, 1).unwrap();
        let u = Spectrum::new(spec.params, vec![1.0, 1.0]).unwrap();
        let y = apply_delay(&spec, &u).unwrap();
        close(&y.coeffs, &[0.5, 1.25], 1e-15);

        let other = Spectrum::new(LaguerreParams::discrete(0.3).unwrap(), vec![1.0]).unwrap();
        assert!(apply_delay(&spec, &other).is_err());
    }

    #[test]
    fn realization_examples() {
        let ss = disc_realization(&DelaySpec::discrete(0.25, 1).unwrap()).unwrap();
        assert_eq!(ss.f, vec![vec![-0.5]]);
        assert_eq!(ss.g, vec![0.75]);
        assert_eq!(ss.h, vec![1.0]);
        assert_eq!(ss.j, 0.5);

        let ss = disc_realization(&DelaySpec::discrete(0.25, 2).unwrap()).unwrap();
        assert_eq!(ss.f, vec![vec![-0.5, 0.75], vec![0.0, -0.5]]);
        assert_eq!(ss.g, vec![0.375, 0.75]);
        assert_eq!(ss.h, vec![1.0, 0.5]);
        assert_eq!(ss.j, 0.25);
        close(&ss.impulse_response(3).unwrap(), &[0.25, 0.75, 0.1875], 1e-15);
    }

    #[test]
    fn simulation_examples() {
        let spec = DelaySpec::discrete(0.25, 1).unwrap();
        let ss = disc_realization(&spec).unwrap();
        let imp = Spectrum::new(spec.params, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        close(
            &simulate_realization(&ss, &imp).unwrap().coeffs,
            &[0.5, 0.75, -0.375, 0.1875],
            1e-15,
        );
        let zero = Spectrum::zeros(spec.params, 5).unwrap();
        assert!(simulate_realization(&ss, &zero).unwrap().coeffs.iter().all(|v| *v == 0.0));
        let u = Spectrum::new(spec.params, vec![1.0, 1.0]).unwrap();
        close(&simulate_realization(&ss, &u).unwrap().coeffs, &[0.5, 1.25], 1e-15);

        let mut bad = ss.clone();
        bad.h.push(1.0);
        assert!(matches!(
            simulate_realization(&bad, &u),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn hankel_rank_examples() {
        let tol = DEFAULT_RANK_TOLERANCE;
        // with h_0 in the corner the feedthrough adds one to the state dimension
        let h = disc_markov(&DelaySpec::discrete(0.25, 2).unwrap(), 6).unwrap();
        assert_eq!(numerical_rank(&hankel(&h, 3).unwrap(), tol).unwrap(), 3);
        assert_eq!(numerical_rank(&hankel_from(&h, 3, 1).unwrap(), tol).unwrap(), 2);
        let h = disc_markov(&DelaySpec::discrete(0.25, 5).unwrap(), 5).unwrap();
        assert_eq!(numerical_rank(&hankel(&h, 3).unwrap(), tol).unwrap(), 3);
        let h = cont_markov(&DelaySpec::continuous(0.18, 5.0).unwrap(), 9).unwrap();
        assert_eq!(numerical_rank(&hankel(&h, 5).unwrap(), tol).unwrap(), 5);
        assert!(matches!(
            hankel(&h, 6),
            Err(Error::InsufficientData { needed: 11, available: 9 })
        ));
        assert_eq!(numerical_rank(&DMatrix::zeros(3, 3), tol).unwrap(), 0);
    }
}
