//! End-to-end experiments: the τ = 5 reproduction pipeline, disturbance trials
//! and parameter sweeps over exact Markov data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::delay_estimation::{
    estimate_delay, kappa_from_markov, tau_disc_from_markov, DelayEstimate, DEFAULT_M_RANGE,
};
use crate::delay_operator::{apply_delay, cont_markov, markov, DelaySpec};
use crate::error::{invalid, Error, Result};
use crate::laguerre_basis::{
    continuous_horizon, discrete_horizon, project_fn, synthesize, Domain, LaguerreParams,
    ProjectionOptions, Spectrum, TimeGrid, DEFAULT_RELIABILITY_BOUND,
};
use crate::quadrature::Quadrature;
use crate::spectral_inversion::{recover_markov, DEFAULT_ZERO_THRESHOLD};

/// `h_1, h_2, h_3` of the τ = 5 example as printed to four decimals.
pub const REFERENCE_MARKOV: [f64; 3] = [-0.7318, -0.0732, 0.1903];

/// Candidate Laguerre parameters for the τ = 5 example; only the second reproduces
/// [`REFERENCE_MARKOV`].
pub const CANDIDATE_P: [f64; 2] = [0.08, 0.18];

pub const DEFAULT_INPUT: [f64; 4] = [6.0, -3.0, 2.0, -1.0];

/// Raw discrete estimates must lie this close to the true delay.
pub const DISCRETE_SWEEP_TOLERANCE: f64 = 1e-8;
/// Relative tolerance on `κ̂` for continuous sweeps.
pub const CONTINUOUS_SWEEP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub domain: Domain,
    pub p: f64,
    pub tau: f64,
    /// Input spectrum coefficients, placed starting at `input_offset`.
    pub input: Vec<f64>,
    pub input_offset: usize,
    /// Number of spectral coefficients to project.
    pub coeffs: usize,
    pub m_range: Vec<usize>,
    pub seed: u64,
    pub reliability_bound: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            domain: Domain::Continuous,
            p: 0.18,
            tau: 5.0,
            input: DEFAULT_INPUT.to_vec(),
            input_offset: 0,
            coeffs: 25,
            m_range: DEFAULT_M_RANGE.collect(),
            seed: 0,
            reliability_bound: DEFAULT_RELIABILITY_BOUND,
        }
    }
}

impl ExperimentConfig {
    /// Input shifted onto basis indices 4..7, leaving 0..3 to a disturbance.
    pub fn disturbance() -> Self {
        ExperimentConfig {
            input_offset: 4,
            ..Self::default()
        }
    }

    pub fn params(&self) -> Result<LaguerreParams> {
        LaguerreParams::new(self.p, self.domain)
    }

    pub fn delay(&self) -> Result<DelaySpec> {
        DelaySpec::new(self.params()?, self.tau)
    }

    fn validate(&self) -> Result<()> {
        self.delay()?;
        if self.input.iter().all(|c| *c == 0.0) {
            return Err(Error::Config("input spectrum is empty or zero".into()));
        }
        if self.input_offset + self.input.len() > self.coeffs {
            return Err(Error::Config(format!(
                "input occupies indices up to {} but only {} coefficients are projected",
                self.input_offset + self.input.len() - 1,
                self.coeffs
            )));
        }
        if self.coeffs > self.reliability_bound {
            return Err(Error::Config(format!(
                "{} coefficients exceed the reliability bound {}; raise the bound to override",
                self.coeffs, self.reliability_bound
            )));
        }
        if self.m_range.is_empty() || self.m_range.contains(&0) {
            return Err(Error::Config("m range must be nonempty and start at 1 or above".into()));
        }
        Ok(())
    }

    /// Input spectrum padded to `coeffs` entries.
    pub fn input_spectrum(&self) -> Result<Spectrum> {
        let mut c = vec![0.0; self.coeffs.max(self.input_offset + self.input.len())];
        c[self.input_offset..self.input_offset + self.input.len()].copy_from_slice(&self.input);
        Spectrum::new(self.params()?, c)
    }
}

/// Time-domain view of a finite Laguerre series, optionally delayed.
struct SeriesSignal {
    spectrum: Spectrum,
    shift: f64,
    /// Precomputed samples for discrete time.
    table: Vec<f64>,
}

impl SeriesSignal {
    fn new(spectrum: &Spectrum, shift: f64, horizon: usize) -> Self {
        let table = match spectrum.params.domain() {
            Domain::Continuous => Vec::new(),
            Domain::Discrete => synthesize(spectrum, &TimeGrid::discrete(horizon)).values,
        };
        SeriesSignal {
            spectrum: spectrum.clone(),
            shift,
            table,
        }
    }

    fn value(&self, t: f64) -> f64 {
        let s = t - self.shift;
        if s < 0.0 {
            return 0.0;
        }
        match self.spectrum.params.domain() {
            Domain::Continuous => self.spectrum.eval_continuous(s),
            Domain::Discrete => self.table.get(s.round() as usize).copied().unwrap_or(0.0),
        }
    }
}

/// Evaluation horizon (continuous end time, or discrete sample count) for
/// signals of order `< order` delayed by `tau`.
fn horizon(params: &LaguerreParams, order: usize, tau: f64) -> f64 {
    match params.domain() {
        Domain::Continuous => continuous_horizon(params.p(), order, tau),
        Domain::Discrete => tau + discrete_horizon(params.p(), order) as f64,
    }
}

fn projection_options(config: &ExperimentConfig) -> ProjectionOptions {
    ProjectionOptions {
        reliability_bound: config.reliability_bound,
        ..ProjectionOptions::default()
    }
    .with_breakpoints([config.tau])
    .with_duration(config.tau)
}

/// Time-domain 2-norm of `f` on `[0, end]`, split at `breakpoints`.
fn time_norm(f: impl Fn(f64) -> f64, params: &LaguerreParams, end: f64, breakpoints: &[f64]) -> f64 {
    match params.domain() {
        Domain::Continuous => Quadrature::composite(end, 0.25 / params.p(), breakpoints)
            .integrate(|t| f(t).powi(2))
            .sqrt(),
        Domain::Discrete => (0..=end.ceil() as usize)
            .map(|t| f(t as f64).powi(2))
            .sum::<f64>()
            .sqrt(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSample {
    pub t: f64,
    pub input: f64,
    pub output: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PInterpretation {
    pub p: f64,
    pub kappa: f64,
    /// `h_1, h_2, h_3` for this parameter.
    pub markov: Vec<f64>,
    pub max_deviation_from_reference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KappaCheck {
    pub expected: f64,
    pub estimated: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub domain: Domain,
    pub p: f64,
    pub tau: f64,
    pub kappa: f64,
    pub input_norm: f64,
    pub input_norm_time: f64,
    pub output_norm_time: f64,
    pub input_spectrum: Vec<f64>,
    pub output_spectrum: Vec<f64>,
    /// Output spectrum predicted by the Markov convolution.
    pub predicted_output_spectrum: Vec<f64>,
    pub max_output_deviation: f64,
    pub markov: Vec<f64>,
    pub analytic_markov: Vec<f64>,
    pub estimate: DelayEstimate,
    pub kappa_check: KappaCheck,
    pub p_interpretations: Vec<PInterpretation>,
    #[serde(skip)]
    pub samples: Vec<TimeSample>,
}

pub fn run_reproduction(config: &ExperimentConfig) -> Result<ReproductionReport> {
    config.validate()?;
    let params = config.params()?;
    let spec = config.delay()?;
    let u_exact = config.input_spectrum()?;
    let order = config.coeffs.max(u_exact.len());
    let end = horizon(&params, order, config.tau);
    let u_sig = SeriesSignal::new(&u_exact, 0.0, end.ceil() as usize + 1);
    let y_sig = SeriesSignal::new(&u_exact, config.tau, end.ceil() as usize + 1);
    let options = projection_options(config);

    let u = project_fn(|t| u_sig.value(t), &params, config.coeffs, &options)?;
    let y = project_fn(|t| y_sig.value(t), &params, config.coeffs, &options)?;
    let predicted = apply_delay(&spec, &u_exact)?;
    let max_output_deviation = y
        .coeffs
        .iter()
        .zip(&predicted.coeffs)
        .fold(0.0f64, |a, (x, z)| a.max((x - z).abs()));

    let offset = u
        .leading_index(DEFAULT_ZERO_THRESHOLD)
        .ok_or(Error::AllZeroInput)?;
    let markov_count = u.len() - offset;
    let recovered = recover_markov(&u, &y, markov_count)?;
    let analytic = markov(&spec, markov_count)?;
    let estimate = estimate_delay(&u, &y, &config.m_range)?;
    let expected_kappa = spec.kappa();
    let estimated_kappa = match params.domain() {
        Domain::Continuous => estimate.kappa.unwrap_or(f64::NAN),
        Domain::Discrete => 2.0 * params.p() * estimate.value,
    };

    let p_interpretations = if params.domain() == Domain::Continuous {
        CANDIDATE_P
            .iter()
            .map(|&p| {
                let spec = DelaySpec::continuous(p, config.tau)?;
                let h = cont_markov(&spec, 4)?.h[1..].to_vec();
                let dev = h
                    .iter()
                    .zip(REFERENCE_MARKOV)
                    .fold(0.0f64, |a, (x, r)| a.max((x - r).abs()));
                Ok(PInterpretation {
                    p,
                    kappa: spec.kappa(),
                    markov: h,
                    max_deviation_from_reference: dev,
                })
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let plot_end = match params.domain() {
        Domain::Continuous => config.tau + continuous_horizon(params.p(), u_exact.len(), 0.0),
        Domain::Discrete => config.tau + discrete_horizon(params.p(), u_exact.len()) as f64,
    };
    let dt = match params.domain() {
        Domain::Continuous => 0.01 / params.p(),
        Domain::Discrete => 1.0,
    };
    let samples = (0..=(plot_end / dt).ceil() as usize)
        .map(|i| {
            let t = i as f64 * dt;
            TimeSample {
                t,
                input: u_sig.value(t),
                output: y_sig.value(t),
            }
        })
        .collect();

    Ok(ReproductionReport {
        domain: params.domain(),
        p: params.p(),
        tau: config.tau,
        kappa: expected_kappa,
        input_norm: u.norm(),
        input_norm_time: time_norm(|t| u_sig.value(t), &params, end, &[]),
        output_norm_time: time_norm(|t| y_sig.value(t), &params, end, &[config.tau]),
        input_spectrum: u.coeffs,
        output_spectrum: y.coeffs,
        predicted_output_spectrum: predicted.coeffs,
        max_output_deviation,
        markov: recovered.markov.h,
        analytic_markov: analytic.h,
        kappa_check: KappaCheck {
            expected: expected_kappa,
            estimated: estimated_kappa,
            abs_error: (estimated_kappa - expected_kappa).abs(),
        },
        estimate,
        p_interpretations,
        samples,
    })
}

/// Additive disturbance `d = Σ d_i ℓ_{k_i}` with weights drawn uniformly from
/// `[−bound, bound]` by a ChaCha8 generator seeded with `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisturbanceModel {
    pub weights: Vec<f64>,
    pub basis_indices: Vec<usize>,
    pub bound: f64,
    pub seed: u64,
}

impl DisturbanceModel {
    pub fn draw(basis_indices: Vec<usize>, bound: f64, seed: u64) -> Result<Self> {
        if !(bound.is_finite() && bound >= 0.0) {
            return Err(invalid(format!("disturbance bound must be >= 0, got {bound}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights = basis_indices
            .iter()
            .map(|_| rng.random_range(-bound..=bound))
            .collect();
        let model = DisturbanceModel {
            weights,
            basis_indices,
            bound,
            seed,
        };
        model.check_indices()?;
        Ok(model)
    }

    pub fn zero(basis_indices: Vec<usize>) -> Result<Self> {
        let model = DisturbanceModel {
            weights: vec![0.0; basis_indices.len()],
            basis_indices,
            bound: 0.0,
            seed: 0,
        };
        model.check_indices()?;
        Ok(model)
    }

    fn check_indices(&self) -> Result<()> {
        let mut sorted = self.basis_indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.basis_indices.len() || self.weights.len() != sorted.len() {
            return Err(Error::Config("disturbance indices must be distinct".into()));
        }
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum::<f64>().sqrt()
    }

    pub fn spectrum(&self, params: LaguerreParams, len: usize) -> Result<Spectrum> {
        let mut c = vec![0.0; len];
        for (&i, &w) in self.basis_indices.iter().zip(&self.weights) {
            c[i] = w;
        }
        Spectrum::new(params, c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisturbanceReport {
    pub seed: u64,
    pub disturbance: DisturbanceModel,
    pub input_offset: usize,
    pub disturbance_norm: f64,
    pub input_norm: f64,
    pub output_norm: f64,
    /// `‖u‖ / ‖d‖`.
    pub snr: f64,
    /// `‖y‖ / ‖d‖`.
    pub output_to_disturbance: f64,
    pub clean_output_spectrum: Vec<f64>,
    pub output_spectrum: Vec<f64>,
    /// Largest change the disturbance causes in coefficients at or above the
    /// input offset.
    pub max_invariance_deviation: f64,
    pub disturbance_prefix: Vec<f64>,
    pub max_prefix_deviation: f64,
    pub estimate: DelayEstimate,
    pub tau_relative_error: f64,
}

pub fn run_disturbance_trial(
    config: &ExperimentConfig,
    model: &DisturbanceModel,
) -> Result<DisturbanceReport> {
    config.validate()?;
    if let Some(bad) = model.basis_indices.iter().find(|&&i| i >= config.input_offset) {
        return Err(Error::Config(format!(
            "disturbance index {bad} overlaps the input, which starts at index {}",
            config.input_offset
        )));
    }
    let params = config.params()?;
    let u_exact = config.input_spectrum()?;
    let d_exact = model.spectrum(params, config.input_offset.max(1))?;
    let order = config.coeffs.max(u_exact.len());
    let end = horizon(&params, order, config.tau);
    let table_len = end.ceil() as usize + 1;
    let u_sig = SeriesSignal::new(&u_exact, 0.0, table_len);
    let y_sig = SeriesSignal::new(&u_exact, config.tau, table_len);
    let d_sig = SeriesSignal::new(&d_exact, 0.0, table_len);
    let options = projection_options(config);

    let u = project_fn(|t| u_sig.value(t), &params, config.coeffs, &options)?;
    let clean = project_fn(|t| y_sig.value(t), &params, config.coeffs, &options)?;
    let y = project_fn(|t| y_sig.value(t) + d_sig.value(t), &params, config.coeffs, &options)?;

    let offset = config.input_offset;
    let max_invariance_deviation = y.coeffs[offset..]
        .iter()
        .zip(&clean.coeffs[offset..])
        .fold(0.0f64, |a, (x, z)| a.max((x - z).abs()));

    let estimate = estimate_delay(&u, &y, &config.m_range)?;
    let disturbance_prefix = y.coeffs[..estimate.offset].to_vec();
    let max_prefix_deviation = disturbance_prefix
        .iter()
        .enumerate()
        .map(|(i, v)| (v - d_exact.coeffs.get(i).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max);
    let output_norm = time_norm(
        |t| y_sig.value(t) + d_sig.value(t),
        &params,
        end,
        &[config.tau],
    );
    let disturbance_norm = model.norm();
    let input_norm = u.norm();
    Ok(DisturbanceReport {
        seed: model.seed,
        disturbance: model.clone(),
        input_offset: offset,
        disturbance_norm,
        input_norm,
        output_norm,
        snr: input_norm / disturbance_norm,
        output_to_disturbance: output_norm / disturbance_norm,
        clean_output_spectrum: clean.coeffs,
        output_spectrum: y.coeffs,
        max_invariance_deviation,
        disturbance_prefix,
        max_prefix_deviation,
        tau_relative_error: (estimate.value - config.tau).abs() / config.tau,
        estimate,
    })
}

/// Grid of `(p, τ, m)` cases evaluated on exact Markov data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub domain: Domain,
    pub ps: Vec<f64>,
    pub taus: Vec<f64>,
    pub ms: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Miss,
    /// `h_m` vanishes, so the three-term ratio is undefined.
    Singular,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub tau: f64,
    pub m: usize,
    /// `κ̂` (continuous) or raw `τ̂` (discrete).
    pub raw: Option<f64>,
    /// Delay estimate, rounded in discrete time.
    pub estimate: Option<f64>,
    /// Relative `κ` error (continuous) or absolute raw `τ` error (discrete).
    pub error: Option<f64>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub domain: Domain,
    pub rows: Vec<SweepRow>,
    pub misses: usize,
    pub singular: usize,
}

impl SweepReport {
    pub fn all_ok(&self) -> bool {
        self.misses == 0 && self.singular == 0
    }
}

fn sweep_row(domain: Domain, p: f64, tau: f64, m: usize) -> Result<SweepRow> {
    let spec = DelaySpec::new(LaguerreParams::new(p, domain)?, tau)?;
    let h = markov(&spec, m + 2)?;
    let raw = match domain {
        Domain::Continuous => kappa_from_markov(&h, m),
        Domain::Discrete => tau_disc_from_markov(&h, m, p),
    };
    let raw = match raw {
        Ok(v) => v,
        Err(Error::SingularDenominator { .. }) => {
            return Ok(SweepRow {
                p,
                tau,
                m,
                raw: None,
                estimate: None,
                error: None,
                status: RowStatus::Singular,
            })
        }
        Err(e) => return Err(e),
    };
    let (estimate, error, ok) = match domain {
        Domain::Continuous => {
            let kappa = spec.kappa();
            let err = (raw - kappa).abs() / kappa.abs().max(f64::MIN_POSITIVE);
            (raw / (2.0 * p), err, err <= CONTINUOUS_SWEEP_TOLERANCE)
        }
        Domain::Discrete => {
            let err = (raw - tau).abs();
            let rounded = raw.round();
            (rounded, err, rounded == tau && err <= DISCRETE_SWEEP_TOLERANCE)
        }
    };
    Ok(SweepRow {
        p,
        tau,
        m,
        raw: Some(raw),
        estimate: Some(estimate),
        error: Some(error),
        status: if ok { RowStatus::Ok } else { RowStatus::Miss },
    })
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    if config.ps.is_empty() || config.taus.is_empty() || config.ms.is_empty() {
        return Err(Error::Config("sweep grids must be nonempty".into()));
    }
    if config.ms.contains(&0) {
        return Err(Error::Config("m must be at least 1".into()));
    }
    for &p in &config.ps {
        LaguerreParams::new(p, config.domain)?;
        for &tau in &config.taus {
            DelaySpec::new(LaguerreParams::new(p, config.domain)?, tau)?;
        }
    }
    let cases: Vec<(f64, f64, usize)> = config
        .ps
        .iter()
        .flat_map(|&p| {
            config
                .taus
                .iter()
                .flat_map(move |&tau| config.ms.iter().map(move |&m| (p, tau, m)))
        })
        .collect();
    let rows = cases
        .par_iter()
        .map(|&(p, tau, m)| sweep_row(config.domain, p, tau, m))
        .collect::<Result<Vec<_>>>()?;
    let misses = rows.iter().filter(|r| r.status == RowStatus::Miss).count();
    let singular = rows.iter().filter(|r| r.status == RowStatus::Singular).count();
    Ok(SweepReport {
        domain: config.domain,
        rows,
        misses,
        singular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduction_defaults() {
        let r = run_reproduction(&ExperimentConfig::default()).unwrap();
        assert!((r.input_norm - 7.0711).abs() < 1e-4);
        assert!((r.input_norm - 50f64.sqrt()).abs() < 1e-6);
        for (h, want) in r.markov[1..4].iter().zip(REFERENCE_MARKOV) {
            assert!((h - want).abs() < 1e-3, "{h} vs {want}");
        }
        assert!((r.estimate.value - 5.0).abs() < 1e-6, "{}", r.estimate.value);
        assert!(r.kappa_check.abs_error < 1e-6);
        assert!((r.output_norm_time - r.input_norm_time).abs() < 1e-6);
        assert!(r.p_interpretations[0].max_deviation_from_reference > 0.1);
        assert!(r.p_interpretations[1].max_deviation_from_reference < 5e-5);
    }

    #[test]
    fn reproduction_without_delay() {
        let config = ExperimentConfig {
            tau: 0.0,
            m_range: vec![1],
            ..ExperimentConfig::default()
        };
        let r = run_reproduction(&config);
        // zero delay makes every h_m with m >= 1 vanish
        assert!(matches!(r, Err(Error::SingularDenominator { .. })));
        let params = config.params().unwrap();
        let u = config.input_spectrum().unwrap();
        let sig = SeriesSignal::new(&u, 0.0, 0);
        let y = project_fn(|t| sig.value(t), &params, 25, &projection_options(&config)).unwrap();
        for (a, b) in y.coeffs.iter().zip(&u.coeffs) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn disturbance_trial_is_invariant() {
        let config = ExperimentConfig::disturbance();
        let model = DisturbanceModel::draw(vec![0, 1, 2, 3], 15.0, 7).unwrap();
        let r = run_disturbance_trial(&config, &model).unwrap();
        assert!(r.max_invariance_deviation < 1e-9);
        assert!((r.estimate.value - 5.0).abs() < 5e-2);
        assert_eq!(r.estimate.offset, 4);
        assert!(r.max_prefix_deviation < 1e-9);
        assert!(model.weights.iter().all(|w| w.abs() <= 15.0));

        let zero = DisturbanceModel::zero(vec![0, 1, 2, 3]).unwrap();
        let r = run_disturbance_trial(&config, &zero).unwrap();
        assert_eq!(r.output_spectrum, r.clean_output_spectrum);

        let overlap = DisturbanceModel::draw(vec![3, 4], 15.0, 1).unwrap();
        assert!(matches!(
            run_disturbance_trial(&config, &overlap),
            Err(Error::Config(_))
        ));
        assert!(DisturbanceModel::draw(vec![1, 1], 15.0, 1).is_err());
    }

    #[test]
    fn draws_are_reproducible() {
        let a = DisturbanceModel::draw(vec![0, 1, 2, 3], 15.0, 42).unwrap();
        let b = DisturbanceModel::draw(vec![0, 1, 2, 3], 15.0, 42).unwrap();
        let c = DisturbanceModel::draw(vec![0, 1, 2, 3], 15.0, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.weights, c.weights);
    }

    #[test]
    fn sweep_small_grids() {
        let r = run_sweep(&SweepConfig {
            domain: Domain::Continuous,
            ps: vec![0.05, 0.18, 0.5],
            taus: vec![0.5, 5.0, 20.0],
            ms: (1..=5).collect(),
        })
        .unwrap();
        assert_eq!(r.rows.len(), 45);
        // κ = 2pτ = 2 is a root of the second delay polynomial
        let bad: Vec<_> = r.rows.iter().filter(|x| x.status != RowStatus::Ok).collect();
        assert_eq!(bad.len(), 1, "{bad:?}");
        assert_eq!((bad[0].p, bad[0].tau, bad[0].m), (0.05, 20.0, 2));
        assert_eq!(bad[0].status, RowStatus::Singular);

        let r = run_sweep(&SweepConfig {
            domain: Domain::Discrete,
            ps: vec![0.5],
            taus: vec![2.0, 3.0],
            ms: vec![2, 3],
        })
        .unwrap();
        let statuses: Vec<_> = r.rows.iter().map(|x| x.status).collect();
        assert_eq!(
            statuses,
            vec![RowStatus::Ok, RowStatus::Singular, RowStatus::Singular, RowStatus::Ok]
        );
        assert!(!r.all_ok());

        let empty = SweepConfig {
            domain: Domain::Discrete,
            ps: vec![],
            taus: vec![1.0],
            ms: vec![1],
        };
        assert!(matches!(run_sweep(&empty), Err(Error::Config(_))));
    }
}
