//! Library values against independent references: mpmath values frozen at
//! 30 digits, a tanh-sinh rule and a Stirling-series ln Γ.

mod common;

use std::f64::consts::PI;

use common::{beta_oracle, c, rel_err, stirling_ln_gamma, tanh_sinh};
use kzblocks::blocks::Configuration;
use kzblocks::branch::{beta_closed_form, constant_c, gamma, log_gamma};
use kzblocks::quadrature::{gauss_jacobi, interval_integral_regular, jacobi_moment, pochhammer_integral};
use kzblocks::verify::asymptotic_constant;
use num_complex::Complex64;

#[test]
fn log_gamma_matches_frozen_values() {
    let frozen = [
        (0.1, 2.252712651734206),
        (0.5, 0.5723649429247001),
        (1.0, 0.0),
        (2.5, 0.2846828704729192),
        (7.25, 7.0521854507385395),
        (30.0, 71.25703896716801),
    ];
    for (x, v) in frozen {
        let got = log_gamma(x).unwrap();
        assert!(
            (got - v).abs() <= 1e-13 * v.abs().max(1.0),
            "ln Γ({x}) = {got}, expected {v}"
        );
    }
    assert!((gamma(-1.0 / 3.0).unwrap() - -4.062353818279202).abs() < 1e-13);
    assert!((gamma(-2.5).unwrap() - -0.9453087204829419).abs() < 1e-13);
}

#[test]
fn log_gamma_matches_stirling_series() {
    for k in 1..400 {
        let x = 0.05 * k as f64;
        let got = log_gamma(x).unwrap();
        let want = stirling_ln_gamma(x);
        assert!(
            (got - want).abs() < 2e-13 * want.abs().max(1.0),
            "x = {x}: {got} vs {want}"
        );
    }
}

#[test]
fn beta_closed_form_matches_frozen_values() {
    let frozen = [
        (
            -1.0 / 3.0,
            -1.0 / 3.0,
            0.0,
            1.0,
            c(2.053390217939177, -3.556576185235585),
        ),
        (
            -1.0 / 3.0,
            2.0 / 3.0,
            0.0,
            1.0,
            c(-1.0266951089695886, 1.7782880926177924),
        ),
        (
            2.0 / 3.0,
            -1.0 / 3.0,
            1.0,
            3.5,
            c(0.5573758581317757, -0.965403305196538),
        ),
        (0.5, 0.25, -2.0, 0.5, c(-2.9489826396119927, -2.9489826396119927)),
        (
            2.0 / 3.0,
            2.0 / 3.0,
            0.0,
            1.0,
            c(1.0266951089695886, -1.7782880926177924),
        ),
    ];
    for (a, b, za, zb, v) in frozen {
        let got = beta_closed_form(a, b, za, zb).unwrap();
        assert!(
            rel_err(got, v) < 1e-13,
            "B({a}, {b}) on ({za}, {zb}): {got} vs {v}"
        );
    }
}

#[test]
fn beta_closed_form_matches_direct_quadrature() {
    // (t − zb)^{β−1} = e^{iπ(β−1)} (zb − t)^{β−1} on the interval
    for &(a, b) in &[
        (0.3, 0.7),
        (0.25, 1.9),
        (1.5, 0.45),
        (2.0 / 3.0, 2.0 / 3.0),
        (3.2, 2.6),
    ] {
        let (za, zb) = (-0.5, 1.75);
        let real = tanh_sinh(|_, da, db| da.powf(a - 1.0) * db.powf(b - 1.0), za, zb);
        let direct = Complex64::from_polar(real, PI * (b - 1.0));
        let got = beta_closed_form(a, b, za, zb).unwrap();
        assert!(rel_err(got, direct) < 1e-11, "({a}, {b}): {got} vs {direct}");
        let modulus = beta_oracle(a, b) * (zb - za).powf(a + b - 1.0);
        assert!((got.norm() - modulus).abs() < 1e-12 * modulus);
    }
}

#[test]
fn gauss_jacobi_matches_tanh_sinh() {
    let g = |x: f64| (1.3 * x).cos() + x.powi(3) * (0.5 * x).exp();
    for &(aj, bj) in &[
        (0.0, 0.0),
        (-1.0 / 3.0, -1.0 / 3.0),
        (-1.0 / 3.0, 2.0 / 3.0),
        (0.75, -0.6),
    ] {
        let rule = gauss_jacobi(24, aj, bj).unwrap();
        let got = rule.integrate(g);
        let want = tanh_sinh(|x, dlo, dhi| dhi.powf(aj) * dlo.powf(bj) * g(x), -1.0, 1.0);
        assert!(
            (got - want).abs() < 1e-13 * want.abs().max(1.0),
            "({aj}, {bj}): {got} vs {want}"
        );
        let moment = jacobi_moment(aj, bj).unwrap();
        let want = tanh_sinh(|_, dlo, dhi| dhi.powf(aj) * dlo.powf(bj), -1.0, 1.0);
        assert!((moment - want).abs() < 1e-13 * want);
    }
}

#[test]
fn interval_engine_matches_tanh_sinh() {
    let f = |t: f64| (0.7 * t).sin() + 2.0;
    let (za, zb, p, q) = (0.5, 2.0, -0.35, 0.4);
    let got = interval_integral_regular(|t| Complex64::new(f(t.re), 0.0), za, zb, (p, q), 40).unwrap();
    let real = tanh_sinh(|t, da, db| da.powf(p) * db.powf(q) * f(t), za, zb);
    let want = Complex64::from_polar(real, PI * q);
    assert!(rel_err(got, want) < 1e-13, "{got} vs {want}");
}

#[test]
fn pochhammer_continuation_matches_frozen_series() {
    // ∫_0^1 t^{−4/3} (t − 1)^{−1/3} e^t, continued; Σ_k B-closed-form(k − 1/3, 2/3)/k!
    let want = c(0.33242265309672786, -0.5757729247503762);
    let got = pochhammer_integral(|t| t.exp(), 0.0, 1.0, (-4.0 / 3.0, -1.0 / 3.0), 256).unwrap();
    assert!(rel_err(got, want) < 1e-10, "{got} vs {want}");
    let want = c(2.053390217939177, -3.556576185235585);
    let got = pochhammer_integral(|_| c(1.0, 0.0), 0.0, 1.0, (-4.0 / 3.0, -4.0 / 3.0), 256).unwrap();
    assert!(rel_err(got, want) < 1e-10, "{got} vs {want}");
}

#[test]
fn normalization_constants_match_frozen_values() {
    let frozen = [
        (1, c(1.7782880926177924, -1.0266951089695886)),
        (2, c(-4.216411387128302, 0.0)),
        (3, c(0.0, -8.65793789713661)),
    ];
    for (n, v) in frozen {
        assert!(rel_err(constant_c(n), v) < 1e-13, "C({n}) = {}", constant_c(n));
    }
    let target = asymptotic_constant(1);
    assert!(rel_err(target, c(-1.7782880926177924, 1.0266951089695886)) < 1e-13);
}

#[test]
fn preset_configurations_are_unit_gap_chains() {
    let z = Configuration::preset(3);
    let x = z.real_points().unwrap();
    assert_eq!(x, vec![0.0, 2.0, 4.0, 1.0, 3.0, 5.0]);
}
