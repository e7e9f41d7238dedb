//! The integral `I(z) = ∫ Φ ω` and the checks built on it.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde::Serialize;

use crate::blocks::{build_block_polynomial, section_s, Configuration};
use crate::branch::{constant_c, log_pair_constant, ArgConvention};
use crate::error::{Error, Result};
use crate::integrand::{z_prefactor, StrippedIntegrand};
use crate::kz::{flatness_ratio, flatness_residual};
use crate::multilinear::{Monomial, MultilinearPoly};
use crate::perm::permutations_with_sign;
use crate::quadrature::{product_contour_integral, ContourSettings, NodeState};
use crate::sl2_rep::{
    collinearity_defect, conformal_block_space, poly_to_tensor, tensor_to_poly, weighted_raising, BlockParams,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Local exponent of every integration variable at both of its endpoints
/// once a pole of ω is absorbed.
pub const ENDPOINT_EXPONENT: f64 = -4.0 / 3.0;

/// Acceptance tolerance for `N` pairs.
pub fn default_tolerance(n_pairs: usize) -> f64 {
    match n_pairs {
        0 | 1 => 1e-8,
        2 => 1e-6,
        _ => 1e-4,
    }
}

/// Quadrature resolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Resolution {
    /// Nodes per circle of each double loop; the finer pass doubles it.
    pub samples: usize,
    /// Gauss–Jacobi nodes for variables that need no regularization.
    pub quad_n: usize,
}

impl Resolution {
    pub fn for_pairs(n_pairs: usize) -> Self {
        let samples = match n_pairs {
            0..=2 => 32,
            _ => 24,
        };
        Self { samples, quad_n: 32 }
    }

    pub fn doubled(&self) -> Self {
        Self {
            samples: 2 * self.samples,
            quad_n: 2 * self.quad_n,
        }
    }
}

/// `I(z)` as one complex number per degree-N monomial, with the
/// two-resolution convergence estimate.
#[derive(Debug, Clone, Serialize)]
pub struct IntegralResult {
    pub n_pairs: usize,
    pub monomials: Vec<Monomial>,
    pub values: Vec<Complex64>,
    /// The coarse pass, kept only for error bookkeeping.
    #[serde(skip)]
    pub coarse_values: Vec<Complex64>,
    /// `max_k |I_fine − I_coarse| / max_k |I_fine|`.
    pub convergence_estimate: f64,
    pub coarse: Resolution,
    pub fine: Resolution,
    pub tolerance: f64,
    pub flagged: bool,
}

impl IntegralResult {
    pub fn component(&self, m: Monomial) -> Option<Complex64> {
        self.monomials
            .iter()
            .position(|&k| k == m)
            .map(|k| self.values[k])
    }

    pub fn to_poly(&self) -> MultilinearPoly {
        let mut p = MultilinearPoly::zero(2 * self.n_pairs);
        for (&m, &v) in self.monomials.iter().zip(&self.values) {
            p.add_term(m, v);
        }
        p
    }
}

/// `I(z)` at a single resolution, in the monomial order of
/// [`StrippedIntegrand::monomials`].
pub fn integral_i_at(z: &Configuration, res: Resolution) -> Result<(Vec<Monomial>, Vec<Complex64>)> {
    z.require_interleaved()?;
    let n = z.n_pairs();
    let stripped = StrippedIntegrand::new(z)?;
    let prefactor = z_prefactor(z)?;
    let exps = vec![(ENDPOINT_EXPONENT, ENDPOINT_EXPONENT); n];
    let settings = ContourSettings::new(res.samples, res.quad_n);
    let values = product_contour_integral(
        z,
        |states: &[NodeState], out: &mut [Complex64]| {
            let mut t = [Complex64::new(0.0, 0.0); 16];
            for (slot, s) in t.iter_mut().zip(states) {
                *slot = s.t;
            }
            stripped.eval(&t[..states.len()], out)
        },
        &exps,
        stripped.num_outputs(),
        &settings,
    )?;
    Ok((
        stripped.monomials().to_vec(),
        values.into_iter().map(|v| v * prefactor).collect(),
    ))
}

/// `I(z)` at `res` and `2·res`; the finer values are kept and the result
/// is flagged when the two disagree by more than `tolerance`.
pub fn integral_i(z: &Configuration, res: Resolution, tolerance: f64) -> Result<IntegralResult> {
    if z.n_pairs() > 8 {
        return Err(Error::InvalidParams(format!(
            "N = {} is beyond reach",
            z.n_pairs()
        )));
    }
    let (_, coarse) = integral_i_at(z, res)?;
    let fine_res = res.doubled();
    let (monomials, fine) = integral_i_at(z, fine_res)?;
    let scale = fine.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let diff = fine
        .iter()
        .zip(&coarse)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let estimate = if scale > 0.0 { diff / scale } else { diff };
    Ok(IntegralResult {
        n_pairs: z.n_pairs(),
        monomials,
        values: fine,
        coarse_values: coarse,
        convergence_estimate: estimate,
        coarse: res,
        fine: fine_res,
        tolerance,
        flagged: !(estimate <= tolerance),
    })
}

/// One entry of a [`VerificationReport`].
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub n_pairs: usize,
    pub z: Vec<Complex64>,
    pub resolution: Option<Resolution>,
    pub computed: Vec<Complex64>,
    pub reference: Vec<Complex64>,
    pub difference: Vec<Complex64>,
    pub relative_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Named auxiliary quantities (sub-check residuals, convergence data).
    pub details: BTreeMap<String, f64>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CheckRecord {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: &str,
        z: &Configuration,
        resolution: Option<Resolution>,
        computed: Vec<Complex64>,
        reference: Vec<Complex64>,
        relative_error: f64,
        tolerance: f64,
        extra_ok: bool,
        details: BTreeMap<String, f64>,
        started: Instant,
    ) -> Self {
        let difference = computed.iter().zip(&reference).map(|(a, b)| a - b).collect();
        let finite =
            reference.iter().all(|r| r.re.is_finite() && r.im.is_finite()) && relative_error.is_finite();
        Self {
            name: name.to_string(),
            n_pairs: z.n_pairs(),
            z: z.points().to_vec(),
            resolution,
            computed,
            reference,
            difference,
            relative_error,
            tolerance,
            passed: finite && extra_ok && relative_error < tolerance,
            details,
            wall_time: started.elapsed(),
        }
    }
}

/// All records of a run, ordered by check name.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        Self {
            schema_version: SCHEMA_VERSION,
            records,
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn total_wall_time(&self) -> Duration {
        self.records.iter().map(|r| r.wall_time).sum()
    }
}

// max_k |a_k − b_k| / |b_k|, with components far below the largest
// reference measured against the largest.
fn componentwise_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm() / y.norm().max(1e-12 * scale))
        .fold(0.0, f64::max)
}

fn reference_section(z: &Configuration, monomials: &[Monomial]) -> Result<Vec<Complex64>> {
    let s = section_s(z)?.to_poly();
    let c = constant_c(z.n_pairs());
    Ok(monomials.iter().map(|&m| c * s.coefficient(m)).collect())
}

/// `I(z) = C · s(z)` componentwise, at `res` and `2·res`.
///
/// Details carry the errors of both resolutions and their ratio, the
/// convergence estimate, the proportionality constant `⟨s, I⟩ / ⟨s, s⟩`
/// divided by `C`, the collinearity defect and the residuals of `e` and
/// `(Σ z_a e_a)²` on `I`.
pub fn check_identity(z: &Configuration, res: Resolution, tolerance: f64) -> Result<CheckRecord> {
    let started = Instant::now();
    let result = integral_i(z, res, tolerance)?;
    identity_record(z, &result, started)
}

/// [`check_identity`] on an integral computed elsewhere; `started` marks
/// the beginning of the work the record accounts for.
pub fn identity_record(z: &Configuration, result: &IntegralResult, started: Instant) -> Result<CheckRecord> {
    let tolerance = result.tolerance;
    let reference = reference_section(z, &result.monomials)?;
    let coarse_err = componentwise_error(&result.coarse_values, &reference);
    let fine_err = componentwise_error(&result.values, &reference);

    let dot: Complex64 = reference
        .iter()
        .zip(&result.values)
        .map(|(r, v)| r.conj() * v)
        .sum();
    let rr: f64 = reference.iter().map(|r| r.norm_sqr()).sum();
    let lambda = dot / rr;

    let poly = result.to_poly();
    let tensor = poly_to_tensor(&poly);
    let space = tensor.space().clone();
    let e_res = poly.raise().norm() / poly.norm();
    let ze = weighted_raising(&space, z.points())?;
    let ze2 = tensor.apply(&ze).apply(&ze);
    let zmax = z.points().iter().map(|p| p.norm()).fold(1.0, f64::max);
    let ze2_res = ze2.norm() / (tensor.norm() * zmax * zmax);

    let mut details = BTreeMap::new();
    details.insert("coarse_error".into(), coarse_err);
    details.insert("fine_error".into(), fine_err);
    details.insert("error_ratio".into(), coarse_err / fine_err.max(f64::MIN_POSITIVE));
    details.insert("convergence_estimate".into(), result.convergence_estimate);
    details.insert("flagged".into(), result.flagged as u8 as f64);
    details.insert("proportionality_re".into(), lambda.re);
    details.insert("proportionality_im".into(), lambda.im);
    details.insert(
        "collinearity_defect".into(),
        collinearity_defect(&result.values, &reference),
    );
    details.insert("e_residual".into(), e_res);
    details.insert("ze_squared_residual".into(), ze2_res);
    Ok(CheckRecord::assemble(
        "identity",
        z,
        Some(result.fine),
        result.values.clone(),
        reference,
        fine_err,
        tolerance,
        !result.flagged,
        details,
        started,
    ))
}

/// The right-hand side of the scalar Selberg formula exactly as written:
/// `C Π_cross (z_b − z_a)^{1/3} Π_same (z_b − z_a)^{−2/3} Σ_σ (−1)^σ Π 1/(z_{σ_a} − z_{N+a})`
/// with `arg(z_b − z_a) ∈ {0, π}`.
pub fn selberg_rhs_literal(z: &Configuration) -> Result<Complex64> {
    let x = z.real_points()?;
    let n = z.n_pairs();
    let mut log = Complex64::new(0.0, 0.0);
    for a in 0..2 * n {
        for b in (a + 1)..2 * n {
            let e = if a < n && b >= n { 1.0 / 3.0 } else { -2.0 / 3.0 };
            let d = ArgConvention::difference(x[b], x[a])?;
            log += e * Complex64::new(d.log_modulus, d.argument);
        }
    }
    let det: f64 = permutations_with_sign(n)
        .iter()
        .map(|(sigma, sign)| {
            *sign as f64
                * sigma
                    .iter()
                    .enumerate()
                    .map(|(a, &s)| 1.0 / (x[s] - x[n + a]))
                    .product::<f64>()
        })
        .sum();
    Ok(constant_c(n) * log.exp() * det)
}

/// `e^{−iπ(n_< − n_>)/6}`, where `n_<` (`n_>`) counts pairs `a < b` with
/// `z_a < z_b` (`z_a > z_b`). This is the phase by which the literal
/// right-hand side misses the branch of `Π (z_a − z_b)^{1/6}` that `Φ`
/// carries and the integral on the left omits.
pub fn selberg_phase_correction(z: &Configuration) -> Result<Complex64> {
    let x = z.real_points()?;
    let mut count = 0i64;
    for a in 0..x.len() {
        for b in (a + 1)..x.len() {
            count += if x[a] < x[b] { 1 } else { -1 };
        }
    }
    Ok(Complex64::from_polar(1.0, -PI * count as f64 / 6.0))
}

/// The scalar formula: the `y_1⋯y_N` coefficient of `I(z)` with the
/// constant `Π (z_a − z_b)^{1/6}` divided out, against the right-hand side
/// with its phase corrected.
pub fn check_selberg_scalar(z: &Configuration, res: Resolution, tolerance: f64) -> Result<CheckRecord> {
    let started = Instant::now();
    let result = integral_i(z, res, tolerance)?;
    selberg_record(z, &result, started)
}

/// [`check_selberg_scalar`] on an integral computed elsewhere.
pub fn selberg_record(z: &Configuration, result: &IntegralResult, started: Instant) -> Result<CheckRecord> {
    let n = z.n_pairs();
    let tolerance = result.tolerance;
    let first: Monomial = (1u64 << n) - 1;
    let lhs = result
        .component(first)
        .ok_or_else(|| Error::Domain("missing y_1⋯y_N component".into()))?
        / z_prefactor(z)?;
    let literal = selberg_rhs_literal(z)?;
    let correction = selberg_phase_correction(z)?;
    let rhs = literal * correction;
    let err = (lhs - rhs).norm() / rhs.norm();
    let mut details = BTreeMap::new();
    details.insert("rhs_literal_re".into(), literal.re);
    details.insert("rhs_literal_im".into(), literal.im);
    details.insert("phase_correction".into(), correction.arg());
    details.insert(
        "error_against_literal".into(),
        (lhs - literal).norm() / literal.norm(),
    );
    details.insert("convergence_estimate".into(), result.convergence_estimate);
    details.insert("flagged".into(), result.flagged as u8 as f64);
    Ok(CheckRecord::assemble(
        "selberg_scalar",
        z,
        Some(result.fine),
        vec![lhs],
        vec![rhs],
        err,
        tolerance,
        !result.flagged,
        details,
        started,
    ))
}

/// `e^{−πiN(N−1)/12} e^{5πiN/6} (3Γ(2/3)³ sin(π/3)/π)^N`.
pub fn asymptotic_constant(n_pairs: usize) -> Complex64 {
    let n = n_pairs as f64;
    Complex64::from_polar(
        (n * log_pair_constant()).exp(),
        -PI * n * (n - 1.0) / 12.0 + 5.0 * PI * n / 6.0,
    )
}

/// `z_a = 2(a − 1)`, `z_{N+a} = z_a + ε`.
pub fn asymptotic_template(n_pairs: usize, eps: f64) -> Result<Configuration> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("gap must lie in (0, 1), got {eps}")));
    }
    let pts: Vec<f64> = (0..n_pairs)
        .map(|a| 2.0 * a as f64)
        .chain((0..n_pairs).map(|a| 2.0 * a as f64 + eps))
        .collect();
    Configuration::interleaved(&pts)
}

/// Leading behaviour as all gaps `ε` shrink together: `ε^{N/2}` times the
/// `y_1⋯y_N` coefficient of `I` must approach [`asymptotic_constant`].
///
/// The relative drift must not grow from one gap to the next by more than
/// the certified quadrature error of the two integrals; the error of the
/// record is the drift at the smallest gap.
pub fn check_asymptotics(
    n_pairs: usize,
    gaps: &[f64],
    res: Resolution,
    tolerance: f64,
) -> Result<CheckRecord> {
    let started = Instant::now();
    if gaps.is_empty() {
        return Err(Error::InvalidParams("at least one gap is needed".into()));
    }
    let target = asymptotic_constant(n_pairs);
    let first: Monomial = (1u64 << n_pairs) - 1;
    let mut computed = Vec::new();
    let mut leading = Vec::new();
    let mut noise = Vec::new();
    let mut flagged = false;
    for &eps in gaps {
        let z = asymptotic_template(n_pairs, eps)?;
        let result = integral_i(&z, res, default_tolerance(n_pairs))?;
        flagged |= result.flagged;
        let v = result
            .component(first)
            .ok_or_else(|| Error::Domain("missing y_1⋯y_N component".into()))?;
        leading.push(v);
        computed.push(v * eps.powf(n_pairs as f64 / 2.0));
        noise.push(result.convergence_estimate);
    }
    let drift: Vec<f64> = computed
        .iter()
        .map(|c| (c - target).norm() / target.norm())
        .collect();
    let mut monotone = true;
    let mut details = BTreeMap::new();
    for k in 0..gaps.len() {
        details.insert(format!("drift_{k}"), drift[k]);
        if k + 1 < gaps.len() {
            let slack = 2.0 * (noise[k] + noise[k + 1]) + 1e-14;
            monotone &= drift[k + 1] <= drift[k] + slack;
            details.insert(
                format!("modulus_ratio_{k}"),
                leading[k + 1].norm() / leading[k].norm(),
            );
        }
    }
    details.insert("monotone".into(), monotone as u8 as f64);
    details.insert("flagged".into(), flagged as u8 as f64);
    let z = asymptotic_template(n_pairs, gaps[gaps.len() - 1])?;
    let err = drift[drift.len() - 1];
    Ok(CheckRecord::assemble(
        "asymptotics",
        &z,
        Some(res.doubled()),
        computed,
        vec![target; gaps.len()],
        err,
        tolerance,
        monotone && !flagged,
        details,
        started,
    ))
}

/// Generator properties of `P(y; z)` and its agreement with the kernel.
///
/// Sub-checks: homogeneity of degree N, `e`, `f`, `h` residuals, vanishing
/// order `N − 1` at `y = z`, kernel residuals of `e` and `(Σ z_a e_a)²`, and
/// collinearity with the computed basis of `W(z)` (which must be
/// one-dimensional). The record error is the largest residual.
pub fn check_block_properties(z: &Configuration) -> Result<CheckRecord> {
    let started = Instant::now();
    let n = z.n_pairs();
    let p = build_block_polynomial(z)?;
    let norm = p.norm();
    let homogeneous = p.is_homogeneous(n);
    let e_res = p.raise().norm() / norm;
    let f_res = p.lower().norm() / norm;
    let h_res = p.weight_action().norm() / norm;
    let order = p.vanishing_order_at(z.points(), n)?;

    let tensor = poly_to_tensor(&p);
    let space = tensor.space().clone();
    let ze = weighted_raising(&space, z.points())?;
    let zmax = z.points().iter().map(|v| v.norm()).fold(1.0, f64::max);
    let ze2_res = tensor.apply(&ze).apply(&ze).norm() / (tensor.norm() * zmax * zmax);

    let block = conformal_block_space(&BlockParams::level_one(n as u32), z.points())?;
    let (reference, defect) = match block.basis.as_slice() {
        [k] => {
            let kc = k.components();
            let dot: Complex64 = kc
                .iter()
                .zip(tensor.components())
                .map(|(a, b)| a.conj() * b)
                .sum();
            let kk: f64 = kc.iter().map(|a| a.norm_sqr()).sum();
            let scaled: Vec<Complex64> = kc.iter().map(|a| a * (dot / kk)).collect();
            let d = collinearity_defect(tensor.components(), kc);
            (scaled, d)
        }
        _ => (vec![Complex64::new(f64::NAN, 0.0); space.dim()], f64::INFINITY),
    };
    let as_poly = tensor_to_poly(&tensor)?;
    debug_assert_eq!(as_poly, p);

    let worst = [e_res, f_res, h_res, ze2_res, defect]
        .into_iter()
        .fold(0.0, f64::max);
    let mut details = BTreeMap::new();
    details.insert("homogeneous".into(), homogeneous as u8 as f64);
    details.insert("multilinear".into(), 1.0);
    details.insert("e_residual".into(), e_res);
    details.insert("f_residual".into(), f_res);
    details.insert("h_residual".into(), h_res);
    details.insert("vanishing_order".into(), order as f64);
    details.insert("ze_squared_residual".into(), ze2_res);
    details.insert("kernel_dimension".into(), block.dim() as f64);
    details.insert("collinearity_defect".into(), defect);
    details.insert("kernel_relative_gap".into(), block.relative_gap());
    let extra = homogeneous && order + 1 == n && block.dim() == 1;
    Ok(CheckRecord::assemble(
        "block_properties",
        z,
        None,
        tensor.components().to_vec(),
        reference,
        worst,
        BLOCK_TOLERANCE,
        extra,
        details,
        started,
    ))
}

/// Level-one block-space dimension at each configuration; every one must
/// be exactly 1. The record carries the dimensions as computed values and
/// reports the first configuration.
pub fn check_block_dimensions(configs: &[Configuration]) -> Result<CheckRecord> {
    let started = Instant::now();
    let first = configs
        .first()
        .ok_or_else(|| Error::InvalidParams("no configurations".into()))?;
    let mut computed = Vec::with_capacity(configs.len());
    let mut details = BTreeMap::new();
    for (k, z) in configs.iter().enumerate() {
        let space = conformal_block_space(&BlockParams::level_one(z.n_pairs() as u32), z.points())?;
        computed.push(Complex64::new(space.dim() as f64, 0.0));
        details.insert(format!("relative_gap_{k}"), space.relative_gap());
    }
    let reference = vec![Complex64::new(1.0, 0.0); configs.len()];
    let mismatches = computed.iter().filter(|d| d.re != 1.0).count() as f64;
    Ok(CheckRecord::assemble(
        "block_dimension",
        first,
        None,
        computed,
        reference,
        mismatches,
        0.5,
        true,
        details,
        started,
    ))
}

/// Residual bound for the algebraic block checks.
pub const BLOCK_TOLERANCE: f64 = 1e-9;

/// `flatness_residual` for every index and every step in `steps`; passes
/// when all residuals are below `tolerance`. Consecutive-step ratios are
/// reported per index.
pub fn check_flatness(z: &Configuration, steps: &[f64], tolerance: f64) -> Result<CheckRecord> {
    let started = Instant::now();
    if steps.is_empty() {
        return Err(Error::InvalidParams("at least one step is needed".into()));
    }
    let mut computed = Vec::new();
    let mut details = BTreeMap::new();
    for a in 0..z.len() {
        let res: Vec<f64> = steps
            .iter()
            .map(|&h| flatness_residual(z, a, h))
            .collect::<Result<_>>()?;
        for (k, r) in res.iter().enumerate() {
            details.insert(format!("residual_z{}_h{k}", a + 1), *r);
            if k + 1 < res.len() {
                details.insert(format!("ratio_z{}_h{k}", a + 1), r / res[k + 1]);
            }
        }
        computed.extend(res.into_iter().map(|r| Complex64::new(r, 0.0)));
    }
    let worst = computed.iter().map(|c| c.re).fold(0.0, f64::max);
    let reference = vec![Complex64::new(0.0, 0.0); computed.len()];
    Ok(CheckRecord::assemble(
        "flatness", z, None, computed, reference, worst, tolerance, true, details, started,
    ))
}

/// Central differences are second order: `residual(h) / residual(h/2)`
/// must lie in `[3.5, 4.5]` for every index. The record error is the
/// largest distance of a ratio from 4, against a tolerance of 0.5.
pub fn check_flatness_order(z: &Configuration, h: f64) -> Result<CheckRecord> {
    let started = Instant::now();
    let mut computed = Vec::new();
    let mut details = BTreeMap::new();
    for a in 0..z.len() {
        let ratio = flatness_ratio(z, a, h)?;
        details.insert(format!("ratio_z{}", a + 1), ratio);
        computed.push(Complex64::new(ratio, 0.0));
    }
    let worst = computed.iter().map(|c| (c.re - 4.0).abs()).fold(0.0, f64::max);
    let reference = vec![Complex64::new(4.0, 0.0); computed.len()];
    details.insert("step".into(), h);
    Ok(CheckRecord::assemble(
        "flatness_order",
        z,
        None,
        computed,
        reference,
        worst,
        0.5 + 1e-12,
        true,
        details,
        started,
    ))
}
