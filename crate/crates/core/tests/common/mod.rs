//! Reference implementations used only by the tests: a tanh-sinh rule for
//! endpoint-singular integrals and a Stirling-series ln Γ. Both are
//! independent of the library code they check.

#![allow(dead_code)]

pub mod props;

use std::f64::consts::PI;

use kzblocks::blocks::Configuration;
use num_complex::Complex64;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const CASES: u32 = 100;

/// Seeded proptest configuration with `CASES` cases.
pub fn seeded(seed: u64) -> Config {
    Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

/// `∫_a^b g(t) dt` by tanh-sinh. `g` receives `(t, t − a, b − t)` with the
/// endpoint distances computed without cancellation.
pub fn tanh_sinh<G: Fn(f64, f64, f64) -> f64>(g: G, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let h = 1.0 / 64.0;
    let mut sum = 0.0;
    for k in 0.. {
        let s = k as f64 * h;
        let u = 0.5 * PI * s.sinh();
        // 1 − tanh(u) without cancellation
        let e = (-2.0 * u).exp();
        let small = 2.0 * e / (1.0 + e);
        if half * small == 0.0 {
            break;
        }
        let w = 0.5 * PI * s.cosh() * 4.0 * e / (1.0 + e).powi(2);
        let (near, far) = (half * small, half * (2.0 - small));
        sum += w * g(b - near, far, near);
        if k > 0 {
            sum += w * g(a + near, near, far);
        }
    }
    sum * h * half
}

/// ln Γ(x) for x > 0 by recurrence up to x ≥ 25 and the Stirling series.
pub fn stirling_ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0);
    let mut shift = 0.0;
    let mut y = x;
    while y < 25.0 {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // B_{2k} / (2k(2k−1)) for k = 1..8
    let coeffs = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let mut series = 0.0;
    let mut p = inv;
    for c in coeffs {
        series += c * p;
        p *= inv2;
    }
    (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + series - shift
}

pub fn beta_oracle(alpha: f64, beta: f64) -> f64 {
    (stirling_ln_gamma(alpha) + stirling_ln_gamma(beta) - stirling_ln_gamma(alpha + beta)).exp()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Random interleaved configuration with chain gaps in `[lo, hi)`.
pub fn random_configuration(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Configuration {
    let gaps: Vec<f64> = (0..2 * n - 1).map(|_| rng.gen_range(lo..hi)).collect();
    let start = rng.gen_range(-2.0..2.0);
    Configuration::from_chain_gaps(start, &gaps).expect("positive gaps")
}

/// Proptest strategy input turned into an interleaved configuration.
pub fn configuration_from(start: f64, gaps: &[f64]) -> Configuration {
    Configuration::from_chain_gaps(start, gaps).expect("positive gaps")
}
