//! Seeded randomized invariants, each run for `CASES` cases.

use std::f64::consts::PI;

use kzblocks::blocks::{build_block_polynomial, prefactor_a, section_s, Configuration};
use kzblocks::branch::{beta_closed_form, branched_pow, log_gamma, track_argument, BranchedValue};
use kzblocks::integrand::{weight_omega, IntegrationPoint};
use kzblocks::kz::{flatness_ratio, holonomy_defect, kz_operator};
use kzblocks::multilinear::{Monomial, MultilinearPoly};
use kzblocks::quadrature::{
    gauss_jacobi, integrate_product, interval_integral_regular, pochhammer_integral,
    pochhammer_integral_with, product_rules, ContourSettings, NodeState, PochhammerOptions,
};
use kzblocks::sl2_rep::{
    conformal_block_space, lowering_raising_matrices, total_operators, BlockParams, RepSpace, SparseOp,
};
use kzblocks::verify::{check_block_properties, identity_record, integral_i, Resolution};
use num_complex::Complex64;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};

use super::{beta_oracle, configuration_from, seeded, tanh_sinh};

type Outcome = Result<(), TestCaseError>;

/// A named property and the seed it runs with.
pub struct Property {
    pub name: &'static str,
    pub module: &'static str,
    pub run: fn(u64) -> Result<(), String>,
}

fn run<S>(seed: u64, strategy: S, test: impl Fn(S::Value) -> Outcome) -> Result<(), String>
where
    S: Strategy,
{
    TestRunner::new(seeded(seed))
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn chain(n: usize, lo: f64, hi: f64) -> impl Strategy<Value = Configuration> {
    (-2.0..2.0f64, vec(lo..hi, 2 * n - 1)).prop_map(|(s, g)| configuration_from(s, &g))
}

fn chain_any(max_n: usize, lo: f64, hi: f64) -> impl Strategy<Value = Configuration> {
    (1..=max_n).prop_flat_map(move |n| chain(n, lo, hi))
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn poly(num_vars: usize) -> impl Strategy<Value = MultilinearPoly> {
    vec(complex(), 1usize << num_vars).prop_map(move |cs| {
        MultilinearPoly::from_terms(
            num_vars,
            cs.into_iter().enumerate().map(|(m, c)| (m as Monomial, c)),
        )
        .expect("masks fit")
    })
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

pub fn branched_pow_additive(seed: u64) -> Result<(), String> {
    let strategy = (-3.0..3.0f64, -20.0..20.0f64, -2.5..2.5f64, -2.5..2.5f64);
    run(seed, strategy, |(lm, arg, a1, a2)| {
        let v = BranchedValue::new(lm, arg);
        let lhs = branched_pow(v, a1 + a2).unwrap();
        let rhs = branched_pow(v, a1).unwrap() * branched_pow(v, a2).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{lhs} vs {rhs}");
        Ok(())
    })
}

pub fn null_loop_tracking(seed: u64) -> Result<(), String> {
    // a circle around `centre` that does not enclose the zero `w` of t − w
    let strategy = (complex(), 0.1..1.0f64, 1.2..4.0f64, 0.0..(2.0 * PI), -7.0..7.0f64);
    run(seed, strategy, |(centre, radius, dist, dir, start)| {
        let w = centre + Complex64::from_polar(dist * radius, dir);
        let path: Vec<Complex64> = (0..=256)
            .map(|k| centre + Complex64::from_polar(radius, 2.0 * PI * k as f64 / 256.0))
            .collect();
        let first = (path[0] - w).arg();
        let base = first + 2.0 * PI * (start / (2.0 * PI)).round();
        let args = track_argument(&path, |t| t - w, base).unwrap();
        prop_assert!((args[256] - args[0]).abs() < 1e-10);
        Ok(())
    })
}

pub fn beta_matches_quadrature(seed: u64) -> Result<(), String> {
    let strategy = (0.2..3.0f64, 0.2..3.0f64);
    run(seed, strategy, |(a, b)| {
        let real = tanh_sinh(|_, da, db| da.powf(a - 1.0) * db.powf(b - 1.0), 0.0, 1.0);
        let direct = Complex64::from_polar(real, PI * (b - 1.0));
        let got = beta_closed_form(a, b, 0.0, 1.0).unwrap();
        prop_assert!(rel(got, direct) < 1e-9, "({a}, {b}): {got} vs {direct}");
        let modulus = beta_oracle(a, b);
        prop_assert!((got.norm() - modulus).abs() < 1e-9 * modulus);
        Ok(())
    })
}

pub fn gamma_reflection(seed: u64) -> Result<(), String> {
    run(seed, 0.01..0.99f64, |x| {
        let lhs = (log_gamma(x).unwrap() + log_gamma(1.0 - x).unwrap()).exp();
        let rhs = PI / (PI * x).sin();
        prop_assert!((lhs - rhs).abs() < 1e-12 * rhs);
        Ok(())
    })
    .and_then(|_| {
        let v = (log_gamma(1.0 / 3.0).unwrap() + log_gamma(2.0 / 3.0).unwrap()).exp();
        let want = PI / (PI / 3.0).sin();
        if (v - want).abs() < 1e-12 * want {
            Ok(())
        } else {
            Err(format!("Γ(1/3)Γ(2/3) = {v}"))
        }
    })
}

pub fn partials_commute(seed: u64) -> Result<(), String> {
    let strategy = (1usize..=6).prop_flat_map(|n| (poly(n), 0..n, 0..n));
    run(seed, strategy, |(p, a, b)| {
        let ab = p.partial_derivative(a).unwrap().partial_derivative(b).unwrap();
        let ba = p.partial_derivative(b).unwrap().partial_derivative(a).unwrap();
        prop_assert_eq!(ab, ba);
        Ok(())
    })
}

pub fn difference_quotient_exact(seed: u64) -> Result<(), String> {
    let strategy = (1usize..=6).prop_flat_map(|n| (poly(n), vec(complex(), n), 0..n));
    run(seed, strategy, |(p, y, a)| {
        let mut moved = y.clone();
        moved[a] += 1.0;
        let quotient = p.evaluate(&moved).unwrap() - p.evaluate(&y).unwrap();
        let derivative = p.partial_derivative(a).unwrap().evaluate(&y).unwrap();
        let scale = p.norm() * y.iter().map(|v| v.norm() + 1.0).product::<f64>();
        prop_assert!((quotient - derivative).norm() < 1e-12 * scale);
        Ok(())
    })
}

pub fn homogeneous_decomposition(seed: u64) -> Result<(), String> {
    let strategy = (1usize..=6).prop_flat_map(|n| (poly(n), vec(complex(), n), complex()));
    run(seed, strategy, |(p, y, lambda)| {
        let n = p.num_vars();
        let scaled: Vec<Complex64> = y.iter().map(|v| v * lambda).collect();
        let lhs = p.evaluate(&scaled).unwrap();
        let rhs: Complex64 = (0..=n)
            .map(|d| lambda.powu(d as u32) * p.homogeneous_component(d).evaluate(&y).unwrap())
            .sum();
        let scale = p.norm() * y.iter().map(|v| v.norm() * lambda.norm() + 1.0).product::<f64>();
        prop_assert!((lhs - rhs).norm() < 1e-12 * scale);
        Ok(())
    })
}

pub fn block_dimension_one(seed: u64) -> Result<(), String> {
    run(seed, chain_any(4, 0.2, 2.5), |z| {
        let space = conformal_block_space(&BlockParams::level_one(z.n_pairs() as u32), z.points()).unwrap();
        prop_assert_eq!(space.dim(), 1);
        Ok(())
    })
}

pub fn commutator_structure(seed: u64) -> Result<(), String> {
    let strategy = vec(1u32..=3, 1..=4).prop_flat_map(|w| {
        let k = w.len();
        (Just(w), 0..k, 0..k)
    });
    run(seed, strategy, |(weights, a, b)| {
        let space = RepSpace::new(&weights);
        let opa = lowering_raising_matrices(&space, a).unwrap();
        let opb = lowering_raising_matrices(&space, b).unwrap();
        let comm = opa.e.compose(&opb.f).add(&opb.f.compose(&opa.e).scale(c(-1.0)));
        let expected = if a == b {
            opa.h.clone()
        } else {
            SparseOp::zero(space.dim())
        };
        prop_assert_eq!(comm.max_abs_diff(&expected), 0.0);
        Ok(())
    })
}

pub fn weight_eigenvalues(seed: u64) -> Result<(), String> {
    let strategy = vec(1u32..=3, 1..=5).prop_flat_map(|w| {
        let dim: usize = w.iter().map(|&m| m as usize + 1).product();
        (Just(w), 0..dim)
    });
    run(seed, strategy, |(weights, idx)| {
        let space = RepSpace::new(&weights);
        let h = total_operators(&space).unwrap().h;
        let mut v = vec![c(0.0); space.dim()];
        v[idx] = c(1.0);
        let hv = h.apply(&v);
        let w = space.weight_of(idx) as f64;
        for (k, x) in hv.iter().enumerate() {
            let want = if k == idx { w } else { 0.0 };
            prop_assert_eq!(*x, c(want));
        }
        Ok(())
    })
}

fn swap_variables(p: &MultilinearPoly, a: usize, b: usize) -> MultilinearPoly {
    let mut out = MultilinearPoly::zero(p.num_vars());
    for (m, v) in p.terms() {
        let (ba, bb) = ((m >> a) & 1, (m >> b) & 1);
        let swapped = (m & !(1 << a) & !(1 << b)) | (ba << b) | (bb << a);
        out.add_term(swapped, v);
    }
    out
}

pub fn p_exchange_antisymmetry(seed: u64) -> Result<(), String> {
    let strategy = (2usize..=4).prop_flat_map(|n| (chain(n, 0.2, 2.5), 0..n, 0..n, any::<bool>()));
    run(seed, strategy, |(z, a, b, second)| {
        prop_assume!(a != b);
        let n = z.n_pairs();
        let (a, b) = if second { (n + a, n + b) } else { (a, b) };
        let mut pts = z.points().to_vec();
        pts.swap(a, b);
        let swapped = build_block_polynomial(&Configuration::new(pts).unwrap()).unwrap();
        let p = build_block_polynomial(&z).unwrap();
        let back = swap_variables(&swapped, a, b);
        let diff = back.add(&p).unwrap().norm();
        prop_assert!(diff < 1e-12 * p.norm(), "defect {diff}");
        Ok(())
    })
}

pub fn generator_properties(seed: u64) -> Result<(), String> {
    run(seed, chain_any(4, 0.2, 2.5), |z| {
        let n = z.n_pairs();
        let p = build_block_polynomial(&z).unwrap();
        prop_assert!(p.is_homogeneous(n));
        prop_assert_eq!(p.vanishing_order_at(z.points(), n).unwrap(), n - 1);
        for r in [p.raise(), p.lower(), p.weight_action()] {
            prop_assert!(r.norm() < 1e-10 * p.norm());
        }
        let record = check_block_properties(&z).unwrap();
        prop_assert!(record.passed, "{:?}", record.details);
        prop_assert!(record.details["collinearity_defect"] < 1e-9);
        Ok(())
    })
}

pub fn prefactor_modulus(seed: u64) -> Result<(), String> {
    run(seed, chain_any(4, 0.2, 2.5), |z| {
        let n = z.n_pairs();
        let x = z.real_points().unwrap();
        let a = prefactor_a(&z).unwrap();
        let mut same = 1.0;
        let mut cross = 1.0;
        for i in 0..2 * n {
            for j in (i + 1)..2 * n {
                let d = (x[j] - x[i]).abs();
                if (i < n) == (j < n) {
                    same *= d;
                } else {
                    cross *= d;
                }
            }
        }
        let v = a.norm_sqr() * same / cross;
        prop_assert!((v - 1.0).abs() < 1e-12, "{v}");
        Ok(())
    })
}

pub fn flatness_second_order(seed: u64) -> Result<(), String> {
    let strategy = (1usize..=2).prop_flat_map(|n| (chain(n, 0.5, 2.0), 0..2 * n));
    run(seed, strategy, |(z, a)| {
        let ratio = flatness_ratio(&z, a, 1e-2).unwrap();
        prop_assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
        let finer = flatness_ratio(&z, a, 5e-3).unwrap();
        prop_assert!((3.5..=4.5).contains(&finer), "ratio {finer}");
        Ok(())
    })
}

pub fn kz_preserves_weight(seed: u64) -> Result<(), String> {
    let strategy = vec(1u32..=2, 2..=5).prop_flat_map(|w| {
        let k = w.len();
        (Just(w), vec(complex(), k), 0..k, vec(complex(), 64))
    });
    run(seed, strategy, |(weights, z, a, coeffs)| {
        for i in 0..z.len() {
            for j in (i + 1)..z.len() {
                prop_assume!((z[i] - z[j]).norm() > 1e-3);
            }
        }
        let space = RepSpace::new(&weights);
        let total: i64 = weights.iter().map(|&m| m as i64).sum();
        let weight = total - 2 * (total / 2);
        let sub = space.weight_subspace(weight);
        let mut v = vec![c(0.0); space.dim()];
        for (k, &idx) in sub.iter().enumerate() {
            v[idx] = coeffs[k % coeffs.len()];
        }
        let mv = kz_operator(&space, &z, a, 1).unwrap().apply(&v);
        let scale = mv.iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
        for (idx, x) in mv.iter().enumerate() {
            if space.weight_of(idx) != weight {
                prop_assert!(x.norm() <= 1e-14 * scale);
            }
        }
        Ok(())
    })
}

pub fn holonomy_small(seed: u64) -> Result<(), String> {
    let strategy = (1usize..=2).prop_flat_map(|n| (chain(n, 0.6, 2.0), 0..2 * n, 0..2 * n));
    run(seed, strategy, |(z, a, b)| {
        prop_assume!(a != b);
        let side = 0.05;
        let defect = holonomy_defect(&z, a, b, side, 8).unwrap();
        prop_assert!(defect < 1e-6 * side * side, "defect {defect}");
        Ok(())
    })
}

fn generic_t(z: &Configuration, raw: &[Complex64]) -> Option<Vec<Complex64>> {
    let ok = raw.iter().enumerate().all(|(i, t)| {
        z.points().iter().all(|p| (t - p).norm() > 1e-2) && raw[..i].iter().all(|s| (t - s).norm() > 1e-2)
    });
    ok.then(|| raw.to_vec())
}

pub fn omega_symmetric(seed: u64) -> Result<(), String> {
    let strategy = (1usize..=3).prop_flat_map(|n| (chain(n, 0.3, 2.0), vec(complex(), n), 0..n, 0..n));
    run(seed, strategy, |(z, raw, i, j)| {
        let Some(t) = generic_t(&z, &raw) else {
            return Err(TestCaseError::reject("t too close to z"));
        };
        let mut swapped = t.clone();
        swapped.swap(i, j);
        let w = weight_omega(&t, &z).unwrap();
        let ws = weight_omega(&swapped, &z).unwrap();
        prop_assert!(w.sub(&ws).unwrap().max_coefficient_modulus() <= 1e-13 * w.max_coefficient_modulus());
        Ok(())
    })
}

pub fn omega_scaling(seed: u64) -> Result<(), String> {
    let strategy =
        (1usize..=3).prop_flat_map(|n| (chain(n, 0.3, 2.0), vec(complex(), n), complex(), 0.2..5.0f64));
    run(seed, strategy, |(z, raw, centre, lambda)| {
        let Some(t) = generic_t(&z, &raw) else {
            return Err(TestCaseError::reject("t too close to z"));
        };
        let n = z.n_pairs();
        let map = |v: Complex64| centre + lambda * (v - centre);
        let zs = Configuration::new(z.points().iter().map(|&p| map(p)).collect()).unwrap();
        let ts: Vec<Complex64> = t.iter().map(|&v| map(v)).collect();
        let w = weight_omega(&t, &z).unwrap();
        let ws = weight_omega(&ts, &zs).unwrap().scale(c(lambda.powi(n as i32)));
        prop_assert!(w.sub(&ws).unwrap().max_coefficient_modulus() <= 1e-12 * w.max_coefficient_modulus());
        Ok(())
    })
}

pub fn phi_continuous_on_cycle(seed: u64) -> Result<(), String> {
    let strategy =
        (1usize..=3).prop_flat_map(|n| (chain(n, 0.3, 2.0), vec(0.02..0.98f64, n), vec(0.02..0.98f64, n)));
    run(seed, strategy, |(z, u0, u1)| {
        let n = z.n_pairs();
        let x = z.real_points().unwrap();
        let at = |s: f64| -> Complex64 {
            let t: Vec<f64> = (0..n)
                .map(|i| {
                    let u = u0[i] + s * (u1[i] - u0[i]);
                    x[i] + u * (x[n + i] - x[i])
                })
                .collect();
            IntegrationPoint::on_cycle(&t, &z).unwrap().master_phi().unwrap()
        };
        let steps = 200;
        let mut prev = at(0.0);
        let phase = prev / prev.norm();
        for k in 1..=steps {
            let cur = at(k as f64 / steps as f64);
            let jump = (cur / prev).arg().abs();
            prop_assert!(jump < 1e-12, "phase jump {jump} at step {k}");
            prop_assert!((cur / cur.norm() - phase).norm() < 1e-12);
            prev = cur;
        }
        Ok(())
    })
}

pub fn gauss_jacobi_invariants(seed: u64) -> Result<(), String> {
    let pairs = [(0.0, 0.0), (-1.0 / 3.0, -1.0 / 3.0), (-1.0 / 3.0, 2.0 / 3.0)];
    let strategy = (0usize..3, 1usize..=64).prop_flat_map(|(p, n)| (Just(p), Just(n), 0..2 * n, 0.0..1.0f64));
    run(seed, strategy, move |(p, n, degree, split)| {
        let (aj, bj) = pairs[p];
        let rule = gauss_jacobi(n, aj, bj).unwrap();
        let moment = super::beta_oracle(aj + 1.0, bj + 1.0) * 2f64.powf(aj + bj + 1.0);
        let sum: f64 = rule.weights().iter().sum();
        prop_assert!((sum - moment).abs() < 1e-13 * moment);
        // (1 − x)^k (1 + x)^j has a positive closed form with no cancellation
        let k = (split * (degree + 1) as f64).floor() as i32;
        let j = degree as i32 - k.min(degree as i32);
        let k = k.min(degree as i32);
        let got = rule.integrate(|x| (1.0 - x).powi(k) * (1.0 + x).powi(j));
        let exact = super::beta_oracle(aj + k as f64 + 1.0, bj + j as f64 + 1.0)
            * 2f64.powf(aj + bj + (j + k) as f64 + 1.0);
        prop_assert!(
            (got - exact).abs() < 1e-11 * exact,
            "n={n} k={k} j={j}: {got} vs {exact}"
        );
        Ok(())
    })
}

pub fn pochhammer_matches_interval(seed: u64) -> Result<(), String> {
    let strategy = (0.2..3.0f64, 0.2..3.0f64, -1.0..1.0f64, 0.5..3.0f64, -1.0..1.0f64);
    run(seed, strategy, |(a, b, za, len, k)| {
        let zb = za + len;
        let f = |t: Complex64| (k * t).exp() + t * t;
        let exps = (a - 1.0, b - 1.0);
        let pochhammer = pochhammer_integral(f, za, zb, exps, 128).unwrap();
        let interval = interval_integral_regular(f, za, zb, exps, 48).unwrap();
        prop_assert!(rel(pochhammer, interval) < 1e-9, "{pochhammer} vs {interval}");
        Ok(())
    })
}

pub fn pochhammer_cycle_invariance(seed: u64) -> Result<(), String> {
    let strategy = (-2.6..2.6f64, -2.6..2.6f64, 0.08..0.35f64, -1.0..1.0f64);
    run(seed, strategy, |(p, q, fraction, k)| {
        let off = |e: f64| (e - e.round()).abs() > 0.05;
        prop_assume!(off(p) && off(q));
        let f = |t: Complex64| (k * t).exp();
        let reference = pochhammer_integral(f, 0.0, 1.5, (p, q), 128).unwrap();
        let doubled = pochhammer_integral(f, 0.0, 1.5, (p, q), 256).unwrap();
        let mut opts = PochhammerOptions::new(160);
        opts.radius_fraction = fraction;
        let moved = pochhammer_integral_with(f, 0.0, 1.5, (p, q), &opts).unwrap();
        prop_assert!(
            rel(doubled, reference) < 1e-9,
            "doubling: {doubled} vs {reference}"
        );
        prop_assert!(
            rel(moved, reference) < 1e-9,
            "radius {fraction}: {moved} vs {reference}"
        );
        Ok(())
    })
}

pub fn product_relabeling(seed: u64) -> Result<(), String> {
    let strategy = (2usize..=3).prop_flat_map(|n| {
        (
            chain(n, 0.6, 2.0),
            vec(any::<bool>(), n),
            -0.5..0.5f64,
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    });
    run(seed, strategy, |(z, divergent, k, perm)| {
        let n = z.n_pairs();
        let exps: Vec<(f64, f64)> = divergent
            .iter()
            .map(|&d| {
                if d {
                    (-4.0 / 3.0, -4.0 / 3.0)
                } else {
                    (-1.0 / 3.0, -1.0 / 3.0)
                }
            })
            .collect();
        let settings = ContourSettings::new(24, 16);
        let rules = product_rules(&z, &exps, &settings).unwrap();
        // symmetric in t: Π_{i<j} (t_j − t_i)² Π e^{k t_i}
        let f = |s: &[NodeState], out: &mut [Complex64]| {
            let mut v = Complex64::new(1.0, 0.0);
            for i in 0..s.len() {
                v *= (k * s[i].t).exp();
                for j in (i + 1)..s.len() {
                    v *= (s[j].t - s[i].t).powu(2);
                }
            }
            out[0] = v;
            Ok(())
        };
        let base = integrate_product(&rules, f, 1).unwrap()[0];
        let permuted: Vec<_> = perm.iter().map(|&i| rules[i].clone()).collect();
        let relabeled = integrate_product(&permuted, f, 1).unwrap()[0];
        prop_assert!(rel(relabeled, base) < 1e-12, "{relabeled} vs {base} (n = {n})");
        Ok(())
    })
}

pub fn integral_in_block_space(seed: u64) -> Result<(), String> {
    run(seed, chain(1, 0.3, 3.0), |z| {
        let started = std::time::Instant::now();
        let result = integral_i(&z, Resolution::for_pairs(1), 1e-8).unwrap();
        prop_assert!(!result.flagged);
        let i = result.to_poly();
        prop_assert!(i.raise().norm() < 1e-8 * i.norm());
        prop_assert!(i.weight_action().norm() == 0.0);
        let record = identity_record(&z, &result, started).unwrap();
        prop_assert!(record.passed, "identity error {}", record.relative_error);
        let s = section_s(&z).unwrap().to_poly();
        prop_assert!(s.norm() > 0.0);
        Ok(())
    })
}

pub fn reports_deterministic(seed: u64) -> Result<(), String> {
    run(seed, chain_any(3, 0.3, 2.0), |z| {
        let a = check_block_properties(&z).unwrap();
        let b = check_block_properties(&z).unwrap();
        prop_assert_eq!(&a.computed, &b.computed);
        prop_assert_eq!(&a.reference, &b.reference);
        prop_assert_eq!(&a.details, &b.details);
        prop_assert_eq!(a.relative_error.to_bits(), b.relative_error.to_bits());
        Ok(())
    })
}

/// Seed of the `k`-th property.
pub fn seed_of(k: usize) -> u64 {
    0x5eed_0000 + k as u64
}

/// Run the named property with its seed.
pub fn check(name: &str) {
    let props = all();
    let k = props.iter().position(|p| p.name == name).expect("known property");
    if let Err(e) = (props[k].run)(seed_of(k)) {
        panic!("{name}: {e}");
    }
}

/// Every property, with its module.
pub fn all() -> Vec<Property> {
    macro_rules! p {
        ($module:literal, $f:ident) => {
            Property {
                name: stringify!($f),
                module: $module,
                run: $f,
            }
        };
    }
    vec![
        p!("branch", branched_pow_additive),
        p!("branch", null_loop_tracking),
        p!("branch", beta_matches_quadrature),
        p!("branch", gamma_reflection),
        p!("multilinear", partials_commute),
        p!("multilinear", difference_quotient_exact),
        p!("multilinear", homogeneous_decomposition),
        p!("sl2_rep", block_dimension_one),
        p!("sl2_rep", commutator_structure),
        p!("sl2_rep", weight_eigenvalues),
        p!("blocks", p_exchange_antisymmetry),
        p!("blocks", generator_properties),
        p!("blocks", prefactor_modulus),
        p!("kz", flatness_second_order),
        p!("kz", kz_preserves_weight),
        p!("kz", holonomy_small),
        p!("integrand", omega_symmetric),
        p!("integrand", omega_scaling),
        p!("integrand", phi_continuous_on_cycle),
        p!("quadrature", gauss_jacobi_invariants),
        p!("quadrature", pochhammer_matches_interval),
        p!("quadrature", pochhammer_cycle_invariance),
        p!("quadrature", product_relabeling),
        p!("verify", integral_in_block_space),
        p!("verify", reports_deterministic),
    ]
}
