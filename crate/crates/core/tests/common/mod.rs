#![allow(dead_code)]

use rand::Rng;

/// Spectrum-like random sequence: `u_0 = ±U[0.1, 10]`, later entries shrinking
/// geometrically relative to `|u_0|` so the Toeplitz inverse stays bounded.
pub fn decaying_sequence(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    let mag = rng.random_range(0.1..=10.0);
    let u0 = if rng.random_bool(0.5) { mag } else { -mag };
    let mut out = vec![u0];
    for k in 1..len {
        out.push(rng.random_range(-1.0..=1.0) * mag * 0.9 * 0.5f64.powi(k as i32));
    }
    out
}

/// Lower-triangular Toeplitz product `T(a) T(b)` as a dense matrix.
pub fn toeplitz_product(a: &[f64], b: &[f64]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j > i {
                        0.0
                    } else {
                        (j..=i).map(|k| a[i - k] * b[k - j]).sum()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}
