//! Polynomial families behind the delay operator.
//!
//! * associated Laguerre polynomials `L_m(x; α)` from the explicit sum,
//! * the continuous delay polynomials `𝐋_m(κ) = L_m(κ; −1)`, whose scaled values are
//!   the continuous Markov parameters,
//! * the discrete delay polynomials `L_m^(τ)(ξ)`.
//!
//! Closed forms with integer coefficients are evaluated in exact rational arithmetic
//! (the argument is converted from `f64` exactly) and rounded once at the end. The
//! sequence routines use three-term recurrences.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Largest polynomial degree for which the orthogonality integral is evaluated in
/// exact rational arithmetic.
pub const EXACT_ORTHOGONALITY_DEGREE: usize = 20;

/// Binomial coefficient with the integer convention used throughout the crate:
/// `C(n, 0) = 1` for every integer `n` (including negative ones) and `C(n, k) = 0`
/// whenever `k > n` or `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if k == 0 {
        return BigInt::one();
    }
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Splits a finite `f64` into `a / 2^e` with integer `a` and `e ≥ 0`.
fn dyadic(x: f64) -> (BigInt, u64) {
    assert!(x.is_finite(), "finite argument");
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = if exp == 0 {
        (bits & 0xf_ffff_ffff_ffff) << 1
    } else {
        (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
    };
    let exp = exp - 1075;
    let a = BigInt::from(sign) * BigInt::from(mantissa);
    if exp >= 0 {
        (a << exp as u64, 0)
    } else {
        (a, (-exp) as u64)
    }
}

/// Exact value of `Σ coeffs[i] x^i / denom`, rounded once to `f64`.
fn eval_int_poly(coeffs: &[BigInt], denom: &BigInt, x: f64) -> f64 {
    let Some((last, rest)) = coeffs.split_last() else {
        return 0.0;
    };
    let (a, e) = dyadic(x);
    let degree = rest.len() as u64;
    // Horner on Σ c_i a^i 2^{e(d−i)}, which equals 2^{ed} times the polynomial
    let mut acc = last.clone();
    for (i, c) in rest.iter().enumerate().rev() {
        acc = acc * &a + (c << (e * (degree - i as u64)));
    }
    let den = denom << (e * degree);
    to_f64(&BigRational::new_raw(acc, den))
}

/// Generalized binomial `C(x, k) = x (x−1) … (x−k+1) / k!` for real `x`.
fn binomial_real(x: f64, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64) / (i + 1) as f64)
}

/// Associated Laguerre polynomial `L_m(x; α) = Σ_{n=0}^{m} C(m+α, m−n) (−x)^n / n!`.
///
/// Integer `α` is evaluated exactly with the integer binomial convention (so
/// `L_0(x; −1) = 1`); other values use generalized binomials in floating point.
pub fn assoc_laguerre(m: usize, alpha: f64, x: f64) -> f64 {
    if alpha.fract() == 0.0 && alpha.abs() < 1e9 {
        let alpha = alpha as i64;
        // scale by m! so every coefficient C(m+α, m−n) m!/n! is an integer
        let coeffs: Vec<BigInt> = (0..=m)
            .map(|n| {
                let c = binomial(m as i64 + alpha, (m - n) as i64) * factorial(m) / factorial(n);
                if n % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        eval_int_poly(&coeffs, &factorial(m), x)
    } else {
        let mut sum = 0.0;
        let mut power = 1.0;
        let mut fact = 1.0;
        for n in 0..=m {
            if n > 0 {
                power *= -x;
                fact *= n as f64;
            }
            sum += binomial_real(m as f64 + alpha, (m - n) as i64) * power / fact;
        }
        sum
    }
}

/// Ascending coefficients of `L_m(x; α)` for integer `α`.
pub fn assoc_laguerre_coeffs(m: usize, alpha: i64) -> Vec<BigRational> {
    (0..=m)
        .map(|n| {
            let c = binomial(m as i64 + alpha, (m - n) as i64);
            let c = if n % 2 == 1 { -c } else { c };
            BigRational::new(c, factorial(n))
        })
        .collect()
}

/// `𝐋_0(κ) … 𝐋_{m_max}(κ)` with `𝐋_m(κ) = L_m(κ; −1)`, generated by the forward
/// recurrence `(m+1) 𝐋_{m+1} = (2m − κ) 𝐋_m − (m−1) 𝐋_{m−1}` from `𝐋_0 = 1`,
/// `𝐋_1 = −κ`.
pub fn cont_delay_poly_seq(m_max: usize, kappa: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(1.0);
    if m_max == 0 {
        return out;
    }
    out.push(-kappa);
    for m in 1..m_max {
        let mf = m as f64;
        let next = ((2.0 * mf - kappa) * out[m] - (mf - 1.0) * out[m - 1]) / (mf + 1.0);
        out.push(next);
    }
    out
}

fn check_disc_args(tau: usize, xi: f64) -> Result<()> {
    if tau == 0 {
        return Err(invalid("discrete delay must be at least one sample"));
    }
    if !(xi.is_finite() && xi != 0.0 && xi.abs() < 1.0) {
        return Err(invalid(format!("xi must satisfy 0 < |xi| < 1, got {xi}")));
    }
    Ok(())
}

/// Discrete delay polynomial
/// `L_m^(τ)(ξ) = (−ξ)^{m−τ} Σ_{n=0}^{τ−1} C(m+n, n) C(m−1, τ−n−1) (−ξ²)^n` for `m ≥ 1`.
///
/// Only the terms with `n ≥ τ − m` survive, so the value factors as
/// `± ξ^{|m−τ|} P(ξ²)`; `P` is evaluated exactly.
pub fn disc_delay_poly(m: usize, tau: usize, xi: f64) -> Result<f64> {
    if m == 0 {
        return Err(invalid("discrete delay polynomial is defined for m >= 1"));
    }
    check_disc_args(tau, xi)?;
    let n0 = tau.saturating_sub(m);
    // coefficients of P in powers of ξ (only even powers occur)
    let mut coeffs = vec![BigInt::zero(); 2 * (tau - n0) - 1];
    for n in n0..tau {
        let c = binomial((m + n) as i64, n as i64) * binomial(m as i64 - 1, (tau - n - 1) as i64);
        let i = n - n0;
        coeffs[2 * i] = if i % 2 == 1 { -c } else { c };
    }
    let poly = eval_int_poly(&coeffs, &BigInt::one(), xi);
    let parity = (m as i64 - tau as i64 + n0 as i64).rem_euclid(2);
    let sign = if parity == 1 { -1.0 } else { 1.0 };
    let power = m.abs_diff(tau) as i32;
    Ok(sign * xi.powi(power) * poly)
}

fn disc_recurrence_coeffs(m: usize, tau: usize, xi: f64) -> (f64, f64) {
    let (mf, tf) = (m as f64, tau as f64);
    let a = -(mf + tf) / (mf + 1.0) * xi - (mf - tf) / (mf + 1.0) / xi;
    let b = -(mf - 1.0) / (mf + 1.0);
    (a, b)
}

/// `L_1^(τ)(ξ) … L_{m_max}^(τ)(ξ)` (first element is `m = 1`) from the recurrence
/// `L_{m+1} = a_m(ξ) L_m + b_m L_{m−1}` seeded by `L_1^(τ) = τ ξ^{τ−1}`; `b_1 = 0`
/// so `L_0` never enters.
///
/// For `m ≤ τ` the sequence is the dominant solution of the recurrence and is run
/// forward. Past `m = τ` it decays like `ξ^m` while the companion solution grows
/// like `ξ^{−m}`, so that stretch is run backward from closed-form values at
/// `m_max` and `m_max − 1`.
pub fn disc_delay_poly_seq(m_max: usize, tau: usize, xi: f64) -> Result<Vec<f64>> {
    if m_max == 0 {
        return Err(invalid("m_max must be at least 1"));
    }
    check_disc_args(tau, xi)?;
    // out[i] holds L_{i+1}
    let mut out = vec![0.0; m_max];
    out[0] = tau as f64 * xi.powi(tau as i32 - 1);

    let forward_end = if m_max <= tau + 1 { m_max } else { tau };
    for m in 1..forward_end {
        let (a, b) = disc_recurrence_coeffs(m, tau, xi);
        let prev = if m >= 2 { out[m - 2] } else { 0.0 };
        out[m] = a * out[m - 1] + b * prev;
    }

    if m_max > tau + 1 {
        out[m_max - 1] = disc_delay_poly(m_max, tau, xi)?;
        out[m_max - 2] = disc_delay_poly(m_max - 1, tau, xi)?;
        // L_{m-1} = (L_{m+1} - a_m L_m) / b_m, valid for m >= 2
        let mut m = m_max - 1;
        while m - 1 > tau {
            let (a, b) = disc_recurrence_coeffs(m, tau, xi);
            out[m - 2] = (out[m] - a * out[m - 1]) / b;
            m -= 1;
        }
    }
    Ok(out)
}

/// `∫_0^∞ e^{−x}/x · 𝐋_n(x) 𝐋_m(x) dx` for `n, m ≥ 1`.
///
/// `𝐋_k` has no constant term for `k ≥ 1`, so the integrand is a polynomial times
/// `e^{−x}` and the moments `∫ x^k e^{−x} dx = k!` give the value. Products up to
/// degree [`EXACT_ORTHOGONALITY_DEGREE`] are summed exactly.
pub fn orthogonality_integral(n: usize, m: usize) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(invalid(
            "orthogonality integral diverges when either index is zero",
        ));
    }
    let a = assoc_laguerre_coeffs(n, -1);
    let b = assoc_laguerre_coeffs(m, -1);
    debug_assert!(a[0].is_zero() && b[0].is_zero());
    // divide the first factor by x
    let a = &a[1..];
    if n + m - 1 <= EXACT_ORTHOGONALITY_DEGREE {
        let mut sum = BigRational::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate().skip(1) {
                sum += ai * bj * BigRational::from_integer(factorial(i + j));
            }
        }
        Ok(to_f64(&sum))
    } else {
        let a: Vec<f64> = a.iter().map(to_f64).collect();
        let b: Vec<f64> = b.iter().map(to_f64).collect();
        let mut fact = vec![1.0f64; a.len() + b.len()];
        for k in 1..fact.len() {
            fact[k] = fact[k - 1] * k as f64;
        }
        let mut sum = 0.0;
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate().skip(1) {
                sum += ai * bj * fact[i + j];
            }
        }
        Ok(sum)
    }
}
