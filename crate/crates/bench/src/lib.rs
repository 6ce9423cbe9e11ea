//! Fixtures shared by the benchmarks.

use laguerre_delay::delay_operator::apply_delay;
use laguerre_delay::{DelaySpec, LaguerreParams, SampledSignal, Spectrum};

/// Input spectrum `[6, −3, 2, −1, 0, …]` padded to `len` coefficients.
pub fn input_spectrum(params: LaguerreParams, len: usize) -> Spectrum {
    let mut coeffs = vec![6.0, -3.0, 2.0, -1.0];
    coeffs.resize(len.max(4), 0.0);
    coeffs.truncate(len);
    Spectrum::new(params, coeffs).expect("valid spectrum")
}

/// Input/output spectrum pair for a pure delay.
pub fn delayed_pair(spec: &DelaySpec, len: usize) -> (Spectrum, Spectrum) {
    let u = input_spectrum(spec.params, len);
    let y = apply_delay(spec, &u).expect("delay applies");
    (u, y)
}

/// Damped oscillation sampled with step `dt` on `[0, end]`.
pub fn test_signal(dt: f64, end: f64) -> SampledSignal {
    let n = (end / dt).ceil() as usize + 1;
    let values = (0..n)
        .map(|i| {
            let t = i as f64 * dt;
            (-0.3 * t).exp() * (1.7 * t).cos()
        })
        .collect();
    SampledSignal::continuous(dt, values).expect("valid signal")
}

/// Toeplitz column with geometrically decaying tail.
pub fn decaying_column(len: usize) -> Vec<f64> {
    (0..len)
        .map(|k| if k == 0 { 2.0 } else { 0.5f64.powi(k as i32) * if k % 2 == 0 { 1.0 } else { -1.0 } })
        .collect()
}
