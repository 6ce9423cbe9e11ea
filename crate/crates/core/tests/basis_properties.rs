use laguerre_delay::laguerre_basis::{
    continuous_basis_values, continuous_horizon, discrete_basis, eval_basis, inner, project,
    project_fn, synthesize, ProjectionOptions,
};
use laguerre_delay::quadrature::Quadrature;
use laguerre_delay::{LaguerreParams, SampledSignal, Spectrum, TimeGrid};
use proptest::prelude::*;

fn continuous_gram(p: f64, n: usize) -> Vec<Vec<f64>> {
    let quad = Quadrature::composite(continuous_horizon(p, n - 1, 0.0), 0.25 / p, &[]);
    let mut gram = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    for (t, w) in quad.nodes.iter().zip(&quad.weights) {
        continuous_basis_values(p, *t, &mut b);
        for i in 0..n {
            for j in 0..n {
                gram[i][j] += w * b[i] * b[j];
            }
        }
    }
    gram
}

#[test]
fn continuous_gram_is_identity() {
    for &p in &[0.05, 0.18, 0.5, 2.0] {
        let g = continuous_gram(p, 16);
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() <= 1e-6, "p={p} ({i},{j}) = {v}");
            }
        }
    }
}

#[test]
fn discrete_gram_is_identity() {
    for &p in &[0.1, 0.3, 0.5, 0.7, 0.9] {
        let b = discrete_basis(p, 16, 2000);
        for i in 0..16 {
            for j in 0..16 {
                let v: f64 = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((v - want).abs() <= 1e-6, "p={p} ({i},{j}) = {v}");
            }
        }
    }
}

#[test]
fn sampled_inner_product_of_distinct_functions_vanishes() {
    let params = LaguerreParams::continuous(0.5).unwrap();
    let grid = TimeGrid::covering(&params, 5);
    let a = eval_basis(&params, 2, &grid);
    let b = eval_basis(&params, 5, &grid);
    assert!(inner(&a, &b).unwrap().abs() < 1e-8);
    assert!((inner(&a, &a).unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn discrete_delay_is_an_isometry() {
    let params = LaguerreParams::discrete(0.4).unwrap();
    let w = Spectrum::new(params, vec![1.0, -2.0, 0.5]).unwrap();
    let sig = synthesize(&w, &TimeGrid::covering(&params, 3));
    for tau in [1.0, 4.0, 17.0] {
        assert_eq!(sig.delayed(tau).unwrap().norm(), sig.norm());
    }
}

#[test]
fn continuous_delay_preserves_norm() {
    let p = 0.3;
    let params = LaguerreParams::continuous(p).unwrap();
    let w = Spectrum::new(params, vec![1.0, -2.0, 0.5]).unwrap();
    let end = continuous_horizon(p, 3, 0.0);
    let base = Quadrature::composite(end, 0.25 / p, &[]).integrate(|t| w.eval_continuous(t).powi(2));
    assert!((base - 5.25).abs() < 1e-12);
    for tau in [0.1, 4.0, 17.3] {
        let shifted = Quadrature::composite(end + tau, 0.25 / p, &[tau])
            .integrate(|t| if t < tau { 0.0 } else { w.eval_continuous(t - tau).powi(2) });
        assert!((shifted - base).abs() < 1e-12, "tau={tau}: {shifted}");
    }
}

fn weights() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=15).prop_flat_map(|v| {
        (Just(v), 0.0f64..100.0).prop_map(|(v, scale)| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-12);
            v.iter().map(|x| x / n * scale).collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn continuous_roundtrip(w in weights(), p in 0.05f64..2.0) {
        let params = LaguerreParams::continuous(p).unwrap();
        let s = Spectrum::new(params, w.clone()).unwrap();
        let back = project_fn(|t| s.eval_continuous(t), &params, w.len(), &ProjectionOptions::default()).unwrap();
        for (a, b) in back.coeffs.iter().zip(&w) {
            prop_assert!((a - b).abs() <= 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn discrete_roundtrip(w in weights(), p in 0.05f64..0.9) {
        let params = LaguerreParams::discrete(p).unwrap();
        let s = Spectrum::new(params, w.clone()).unwrap();
        let sig = synthesize(&s, &TimeGrid::covering(&params, w.len()));
        let back = project(&sig, &params, w.len()).unwrap();
        for (a, b) in back.coeffs.iter().zip(&w) {
            prop_assert!((a - b).abs() <= 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn parseval(w in weights(), p in 0.05f64..0.9, discrete in any::<bool>()) {
        let params = if discrete {
            LaguerreParams::discrete(p).unwrap()
        } else {
            LaguerreParams::continuous(p).unwrap()
        };
        let s = Spectrum::new(params, w.clone()).unwrap();
        let sig: SampledSignal = synthesize(&s, &TimeGrid::covering(&params, w.len()));
        prop_assert!((sig.norm() - s.norm()).abs() <= 1e-6, "{} vs {}", sig.norm(), s.norm());
    }
}
