//! Gauss–Jacobi rules, Pochhammer double loops, and their tensor products.
//!
//! Every one-dimensional engine is exposed as a [`ComplexRule`]: nodes in
//! the complex plane together with complex weights that already contain the
//! endpoint powers `(t − a)^p (t − b)^q` on the tracked branch. Integrating a
//! single-valued `f` is then a dot product, and an N-fold product of rules
//! integrates functions of `(t_1, …, t_N)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::blocks::Configuration;
use crate::branch::{beta_closed_form, log_gamma, track_argument};
use crate::error::{Error, Result};

/// Variables whose endpoint exponents both exceed this use Gauss–Jacobi
/// instead of a double loop.
pub const REGULAR_EXPONENT_THRESHOLD: f64 = -0.9;

/// Contour radius as a fraction of `b − a` when nothing else is known.
pub const DEFAULT_RADIUS_FRACTION: f64 = 0.2;

/// Nodes and weights of `∫_{−1}^{1} (1 − x)^{α_J} (1 + x)^{β_J} g(x) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    alpha: f64,
    beta: f64,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `(α_J, β_J)`.
    pub fn exponents(&self) -> (f64, f64) {
        (self.alpha, self.beta)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }
}

/// `∫_{−1}^{1} (1 − x)^α (1 + x)^β dx`.
pub fn jacobi_moment(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::NonIntegrable(alpha.min(beta)));
    }
    let ln = (alpha + beta + 1.0) * 2f64.ln() + log_gamma(alpha + 1.0)? + log_gamma(beta + 1.0)?
        - log_gamma(alpha + beta + 2.0)?;
    Ok(ln.exp())
}

/// The n-point Gauss–Jacobi rule (Golub–Welsch, then one Newton polish of
/// each node on the three-term recurrence).
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::InvalidParams("a quadrature rule needs n ≥ 1".into()));
    }
    let mu0 = jacobi_moment(alpha, beta)?;
    let ab = alpha + beta;
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        jm[(k, k)] = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        if k + 1 < n {
            let j = kf + 1.0;
            let b2 = if k == 0 {
                4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * j * (j + alpha) * (j + beta) * (j + ab)
                    / ((2.0 * j + ab).powi(2) * (2.0 * j + ab + 1.0) * (2.0 * j + ab - 1.0))
            };
            jm[(k, k + 1)] = b2.sqrt();
            jm[(k + 1, k)] = b2.sqrt();
        }
    }
    let eig = jm.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    for p in pairs.iter_mut() {
        p.0 = newton_polish(n, alpha, beta, p.0);
    }
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        alpha,
        beta,
    })
}

// P_n^{(α,β)}(x) and its derivative by the standard recurrence.
fn jacobi_p(n: usize, alpha: f64, beta: f64, x: f64) -> (f64, f64) {
    let ab = alpha + beta;
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (alpha - beta + (ab + 2.0) * x);
    if n == 0 {
        return (p0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        let a1 = 2.0 * kf * (kf + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (c - 2.0) * (c - 1.0) * c;
        let a4 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * c;
        let p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = 0.5 * (nf + ab + 1.0) * jacobi_p_shifted(n - 1, alpha + 1.0, beta + 1.0, x);
    (p1, dp)
}

fn jacobi_p_shifted(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let ab = alpha + beta;
    let mut p0 = 1.0;
    if n == 0 {
        return p0;
    }
    let mut p1 = 0.5 * (alpha - beta + (ab + 2.0) * x);
    for k in 2..=n {
        let kf = k as f64;
        let c = 2.0 * kf + ab;
        let a1 = 2.0 * kf * (kf + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (alpha * alpha - beta * beta);
        let a3 = (c - 2.0) * (c - 1.0) * c;
        let a4 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * c;
        let p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn newton_polish(n: usize, alpha: f64, beta: f64, x: f64) -> f64 {
    let (p, dp) = jacobi_p(n, alpha, beta, x);
    if dp == 0.0 || !dp.is_finite() || !p.is_finite() {
        return x;
    }
    let next = x - p / dp;
    if (next - x).abs() < 1e-8 && next.abs() < 1.0 {
        next
    } else {
        x
    }
}

/// Gauss–Legendre on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    gauss_jacobi(n, 0.0, 0.0)
}

/// A node together with the arguments of `t − a` and `t − b` at its first
/// visit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeState {
    pub t: Complex64,
    pub arg_lo: f64,
    pub arg_hi: f64,
}

/// A one-dimensional complex rule whose weights include the endpoint powers.
#[derive(Debug, Clone)]
pub struct ComplexRule {
    nodes: Vec<NodeState>,
    weights: Vec<Complex64>,
}

impl ComplexRule {
    pub fn nodes(&self) -> &[NodeState] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ w_k f(t_k)`; `f` must be single-valued near the contour.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(n, &w)| w * f(n.t))
            .sum()
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParams(format!("need a < b, got ({a}, {b})")));
    }
    Ok(())
}

/// Rule for `∫_a^b (t − a)^p (t − b)^q f(t) dt` with `p, q > −1`,
/// `arg(t − a) = 0` and `arg(t − b) = π` on the interval.
pub fn interval_rule(a: f64, b: f64, exps: (f64, f64), n: usize) -> Result<ComplexRule> {
    check_interval(a, b)?;
    let (p, q) = exps;
    for e in [p, q] {
        if !(e > -1.0) {
            return Err(Error::NonIntegrable(e));
        }
    }
    let rule = gauss_jacobi(n, q, p)?;
    let half = 0.5 * (b - a);
    let scale = Complex64::from_polar(half.powf(p + q + 1.0), PI * q);
    let nodes = rule
        .nodes()
        .iter()
        .map(|&x| NodeState {
            t: Complex64::new(a + half * (1.0 + x), 0.0),
            arg_lo: 0.0,
            arg_hi: PI,
        })
        .collect();
    let weights = rule.weights().iter().map(|&w| scale * w).collect();
    Ok(ComplexRule { nodes, weights })
}

/// `∫_a^b (t − a)^p (t − b)^q f(t) dt` for convergent exponents.
pub fn interval_integral_regular<F>(f: F, a: f64, b: f64, exps: (f64, f64), n: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    Ok(interval_rule(a, b, exps, n)?.integrate(f))
}

/// Interval or double loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Interval,
    DoubleLoop,
}

/// One sample of a [`ContourPath`]; `weight` is zero at junction points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub t: Complex64,
    pub weight: Complex64,
    pub node: usize,
    pub arg_lo: f64,
    pub arg_hi: f64,
}

/// A sampled piecewise-smooth path with the continuous arguments of `t − a`
/// and `t − b` along it.
#[derive(Debug, Clone)]
pub struct ContourPath {
    kind: PathKind,
    a: f64,
    b: f64,
    radius: f64,
    points: Vec<Complex64>,
    samples: Vec<PathSample>,
}

// Gauss–Legendre nodes on [θ0, θ1] of the circle `c + r e^{iθ}`, with the
// weights of dt.
fn arc_nodes(c: f64, r: f64, theta0: f64, theta1: f64, rule: &QuadratureRule) -> Vec<(Complex64, Complex64)> {
    let half = 0.5 * (theta1 - theta0);
    let mid = 0.5 * (theta1 + theta0);
    rule.nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&x, &w)| {
            let e = Complex64::from_polar(1.0, mid + half * x);
            (c + r * e, Complex64::new(0.0, w * half * r) * e)
        })
        .collect()
}

impl ContourPath {
    /// The segment `[a, b]` on Gauss–Legendre nodes.
    pub fn interval(a: f64, b: f64, n: usize) -> Result<Self> {
        check_interval(a, b)?;
        let rule = gauss_legendre(n)?;
        let half = 0.5 * (b - a);
        let points: Vec<Complex64> = rule
            .nodes()
            .iter()
            .map(|&x| Complex64::new(a + half * (1.0 + x), 0.0))
            .collect();
        let samples = points
            .iter()
            .zip(rule.weights())
            .enumerate()
            .map(|(k, (&t, &w))| PathSample {
                t,
                weight: Complex64::new(w * half, 0.0),
                node: k,
                arg_lo: 0.0,
                arg_hi: PI,
            })
            .collect();
        Ok(Self {
            kind: PathKind::Interval,
            a,
            b,
            radius: 0.0,
            points,
            samples,
        })
    }

    /// The Pochhammer double loop based at `a + r`: along the segment,
    /// around `b`, back, around `a`, then the same four legs with both
    /// circles reversed. `samples` nodes per circle; the segment gets half
    /// as many.
    pub fn double_loop(a: f64, b: f64, radius: f64, samples: usize) -> Result<Self> {
        check_interval(a, b)?;
        if !(radius > 0.0 && 2.0 * radius < b - a) {
            return Err(Error::Geometry(format!(
                "radius {radius} does not fit between {a} and {b}"
            )));
        }
        if samples < 8 {
            return Err(Error::InvalidParams(format!(
                "need at least 8 samples per loop, got {samples}"
            )));
        }
        let seg_rule = gauss_legendre(samples / 2)?;
        let arc_rule = gauss_legendre(samples / 4)?;
        let (lo, hi) = (a + radius, b - radius);
        let half = 0.5 * (hi - lo);
        let seg: Vec<(Complex64, Complex64)> = seg_rule
            .nodes()
            .iter()
            .zip(seg_rule.weights())
            .map(|(&x, &w)| {
                (
                    Complex64::new(lo + half * (1.0 + x), 0.0),
                    Complex64::new(w * half, 0.0),
                )
            })
            .collect();
        let quarter = PI / 2.0;
        let circle = |c: f64, start: f64| -> Vec<(Complex64, Complex64)> {
            (0..4)
                .flat_map(|k| {
                    let t0 = start + k as f64 * quarter;
                    arc_nodes(c, radius, t0, t0 + quarter, &arc_rule)
                })
                .collect()
        };
        let around_b = circle(b, PI);
        let around_a = circle(a, 0.0);

        let mut points = vec![Complex64::new(lo, 0.0), Complex64::new(hi, 0.0)];
        let seg_off = points.len();
        points.extend(seg.iter().map(|p| p.0));
        let b_off = points.len();
        points.extend(around_b.iter().map(|p| p.0));
        let a_off = points.len();
        points.extend(around_a.iter().map(|p| p.0));

        // (node, weight) in traversal order
        let zero = Complex64::new(0.0, 0.0);
        let mut order: Vec<(usize, Complex64)> = Vec::new();
        let forward =
            |order: &mut Vec<(usize, Complex64)>, off: usize, list: &[(Complex64, Complex64)], sign: f64| {
                if sign > 0.0 {
                    order.extend(list.iter().enumerate().map(|(k, p)| (off + k, p.1)));
                } else {
                    order.extend(list.iter().enumerate().rev().map(|(k, p)| (off + k, -p.1)));
                }
            };
        order.push((0, zero));
        for sign in [1.0, -1.0] {
            forward(&mut order, seg_off, &seg, 1.0);
            order.push((1, zero));
            forward(&mut order, b_off, &around_b, sign);
            order.push((1, zero));
            forward(&mut order, seg_off, &seg, -1.0);
            order.push((0, zero));
            forward(&mut order, a_off, &around_a, sign);
            order.push((0, zero));
        }

        let path: Vec<Complex64> = order.iter().map(|&(k, _)| points[k]).collect();
        let za = Complex64::new(a, 0.0);
        let zb = Complex64::new(b, 0.0);
        let lo_args = track_argument(&path, |t| t - za, 0.0)?;
        let hi_args = track_argument(&path, |t| t - zb, PI)?;
        let samples = order
            .iter()
            .enumerate()
            .map(|(k, &(node, weight))| PathSample {
                t: points[node],
                weight,
                node,
                arg_lo: lo_args[k],
                arg_hi: hi_args[k],
            })
            .collect();
        Ok(Self {
            kind: PathKind::DoubleLoop,
            a,
            b,
            radius,
            points,
            samples,
        })
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn endpoints(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn samples(&self) -> &[PathSample] {
        &self.samples
    }

    /// Distinct node positions; samples refer to them by index.
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        match (self.samples.first(), self.samples.last()) {
            (Some(s), Some(e)) => (s.t - e.t).norm() == 0.0,
            _ => false,
        }
    }

    /// Net change of `(arg(t − a), arg(t − b))` from the first to the last
    /// sample.
    pub fn net_argument_change(&self) -> (f64, f64) {
        match (self.samples.first(), self.samples.last()) {
            (Some(s), Some(e)) => (e.arg_lo - s.arg_lo, e.arg_hi - s.arg_hi),
            _ => (0.0, 0.0),
        }
    }

    // Σ over visits of weight · (t − a)^p (t − b)^q, merged per node.
    fn merged_rule(&self, exps: (f64, f64)) -> ComplexRule {
        let (p, q) = exps;
        let za = Complex64::new(self.a, 0.0);
        let zb = Complex64::new(self.b, 0.0);
        let mut weights = vec![Complex64::new(0.0, 0.0); self.points.len()];
        let mut first: Vec<Option<(f64, f64)>> = vec![None; self.points.len()];
        for s in &self.samples {
            if first[s.node].is_none() {
                first[s.node] = Some((s.arg_lo, s.arg_hi));
            }
            if s.weight == Complex64::new(0.0, 0.0) {
                continue;
            }
            let log = p * Complex64::new((s.t - za).norm().ln(), s.arg_lo)
                + q * Complex64::new((s.t - zb).norm().ln(), s.arg_hi);
            weights[s.node] += s.weight * log.exp();
        }
        let mut nodes = Vec::new();
        let mut ws = Vec::new();
        for (k, w) in weights.into_iter().enumerate() {
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (arg_lo, arg_hi) = first[k].expect("visited node");
            nodes.push(NodeState {
                t: self.points[k],
                arg_lo,
                arg_hi,
            });
            ws.push(w);
        }
        ComplexRule { nodes, weights: ws }
    }
}

/// Geometry and resolution of a double loop.
#[derive(Debug, Clone, PartialEq)]
pub struct PochhammerOptions {
    /// Nodes per circle.
    pub samples: usize,
    /// Circle radius as a fraction of `b − a`.
    pub radius_fraction: f64,
    /// Further singularities of `f` the contour must keep away from.
    pub singularities: Vec<Complex64>,
}

impl PochhammerOptions {
    pub fn new(samples: usize) -> Self {
        Self {
            samples,
            radius_fraction: DEFAULT_RADIUS_FRACTION,
            singularities: Vec::new(),
        }
    }
}

fn monodromy(alpha: f64) -> Result<Complex64> {
    if (alpha - alpha.round()).abs() < 1e-9 {
        return Err(Error::DegenerateCycle(format!(
            "integer exponent {alpha}: the double loop integrates to zero"
        )));
    }
    Ok(Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, 2.0 * PI * alpha))
}

/// Ratio between the double-loop integral and
/// `(1 − e^{2πiα})(1 − e^{2πiβ}) ∫_a^b`, measured once on the pure beta
/// integral with `α = β = 2/3`.
pub fn monodromy_calibration() -> Complex64 {
    static KAPPA: OnceLock<Complex64> = OnceLock::new();
    *KAPPA.get_or_init(|| {
        let (alpha, beta) = (2.0 / 3.0, 2.0 / 3.0);
        let path = ContourPath::double_loop(0.0, 1.0, DEFAULT_RADIUS_FRACTION, 256).expect("reference loop");
        let raw = path
            .merged_rule((alpha - 1.0, beta - 1.0))
            .integrate(|_| Complex64::new(1.0, 0.0));
        let reference = beta_closed_form(alpha, beta, 0.0, 1.0).expect("reference beta value");
        raw / (monodromy(alpha).expect("non-integer") * monodromy(beta).expect("non-integer") * reference)
    })
}

fn check_clearance(a: f64, b: f64, radius: f64, singularities: &[Complex64]) -> Result<()> {
    for &s in singularities {
        let near_end = (s - a).norm().min((s - b).norm()) < 1.5 * radius;
        let x = s.re.clamp(a, b);
        let near_segment = (s - x).norm() < 0.5 * radius;
        if near_end || near_segment {
            return Err(Error::Geometry(format!(
                "singularity {s} is too close to the double loop around ({a}, {b}) of radius {radius}"
            )));
        }
    }
    Ok(())
}

/// Rule for the analytic continuation of `∫_a^b (t − a)^p (t − b)^q f(t) dt`
/// through a normalized double loop.
pub fn pochhammer_rule(a: f64, b: f64, exps: (f64, f64), opts: &PochhammerOptions) -> Result<ComplexRule> {
    check_interval(a, b)?;
    let (alpha, beta) = (exps.0 + 1.0, exps.1 + 1.0);
    let norm = monodromy(alpha)? * monodromy(beta)? * monodromy_calibration();
    let radius = opts.radius_fraction * (b - a);
    check_clearance(a, b, radius, &opts.singularities)?;
    let path = ContourPath::double_loop(a, b, radius, opts.samples)?;
    let mut rule = path.merged_rule(exps);
    for w in rule.weights.iter_mut() {
        *w /= norm;
    }
    Ok(rule)
}

/// `∫_a^b (t − a)^{α−1} (t − b)^{β−1} f(t) dt` continued in `(α, β)`, with
/// `exps = (α − 1, β − 1)` and the default contour radius.
pub fn pochhammer_integral<F>(f: F, a: f64, b: f64, exps: (f64, f64), samples: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    pochhammer_integral_with(f, a, b, exps, &PochhammerOptions::new(samples))
}

pub fn pochhammer_integral_with<F>(
    f: F,
    a: f64,
    b: f64,
    exps: (f64, f64),
    opts: &PochhammerOptions,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    Ok(pochhammer_rule(a, b, exps, opts)?.integrate(f))
}

/// Resolution of a product of contours.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSettings {
    /// Nodes per circle of each double loop.
    pub samples: usize,
    /// Gauss–Jacobi nodes for convergent variables.
    pub quad_n: usize,
    /// Per-variable radius fractions; chosen from the gaps when absent.
    pub radius_fractions: Option<Vec<f64>>,
}

impl ContourSettings {
    pub fn new(samples: usize, quad_n: usize) -> Self {
        Self {
            samples,
            quad_n,
            radius_fractions: None,
        }
    }
}

/// Radius fractions that keep every loop clear of the foreign points and
/// of its neighbours: `r = min(0.2 L, d / 3.5)` with `d` the distance from
/// the interval to the nearest other point.
pub fn automatic_radius_fractions(x: &[f64]) -> Vec<f64> {
    let n = x.len() / 2;
    (0..n)
        .map(|i| {
            let (a, b) = (x[i], x[n + i]);
            let gap = x
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != n + i)
                .map(|(_, &p)| if p < a { a - p } else { p - b })
                .fold(f64::INFINITY, f64::min);
            let len = b - a;
            (DEFAULT_RADIUS_FRACTION * len).min(gap / 3.5) / len
        })
        .collect()
}

/// The per-variable rules of a product of contours over `t_i ∈ (z_i, z_{N+i})`.
pub fn product_rules(
    z: &Configuration,
    exps: &[(f64, f64)],
    settings: &ContourSettings,
) -> Result<Vec<ComplexRule>> {
    let x = z.real_points()?;
    let n = z.n_pairs();
    if exps.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: exps.len(),
        });
    }
    let fractions = match &settings.radius_fractions {
        Some(f) if f.len() != n => {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: f.len(),
            })
        }
        Some(f) => f.clone(),
        None => automatic_radius_fractions(&x),
    };
    let regular: Vec<bool> = exps
        .iter()
        .map(|&(p, q)| p > REGULAR_EXPONENT_THRESHOLD && q > REGULAR_EXPONENT_THRESHOLD)
        .collect();
    let extent = |i: usize| -> (f64, f64) {
        let r = if regular[i] {
            0.0
        } else {
            fractions[i] * (x[n + i] - x[i])
        };
        (x[i] - r, x[n + i] + r)
    };
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (lo_i, hi_i) = extent(i);
            let (lo_j, _) = extent(j);
            if x[i] < x[j] {
                let margin = 0.25 * ((hi_i - x[n + i]) + (x[j] - lo_j));
                if hi_i + margin >= lo_j {
                    return Err(Error::Geometry(format!(
                        "contours for t_{} and t_{} overlap",
                        i + 1,
                        j + 1
                    )));
                }
            } else if lo_i <= lo_j {
                return Err(Error::Geometry(format!(
                    "contours for t_{} and t_{} overlap",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    (0..n)
        .map(|i| {
            if regular[i] {
                interval_rule(x[i], x[n + i], exps[i], settings.quad_n)
            } else {
                let singularities = (0..2 * n)
                    .filter(|&k| k != i && k != n + i)
                    .map(|k| z.points()[k])
                    .collect();
                let opts = PochhammerOptions {
                    samples: settings.samples,
                    radius_fraction: fractions[i],
                    singularities,
                };
                pochhammer_rule(x[i], x[n + i], exps[i], &opts)
            }
        })
        .collect()
}

/// `∫ Π_i (t_i − z_i)^{p_i} (t_i − z_{N+i})^{q_i} F(t) dt_1 ⋯ dt_N` over the
/// product of regularized cycles, for a vector-valued `F` with `n_out`
/// components.
///
/// `F` receives the node states of all variables and writes its values into
/// the output slice. The outer variable is split across threads; partial
/// sums are added in a fixed order, so the result does not depend on
/// scheduling.
pub fn product_contour_integral<F>(
    z: &Configuration,
    f: F,
    exps: &[(f64, f64)],
    n_out: usize,
    settings: &ContourSettings,
) -> Result<Vec<Complex64>>
where
    F: Fn(&[NodeState], &mut [Complex64]) -> Result<()> + Sync,
{
    let rules = product_rules(z, exps, settings)?;
    integrate_product(&rules, f, n_out)
}

/// Tensor-product integration over prepared rules.
pub fn integrate_product<F>(rules: &[ComplexRule], f: F, n_out: usize) -> Result<Vec<Complex64>>
where
    F: Fn(&[NodeState], &mut [Complex64]) -> Result<()> + Sync,
{
    let zero = Complex64::new(0.0, 0.0);
    let Some((first, rest)) = rules.split_first() else {
        let mut out = vec![zero; n_out];
        f(&[], &mut out)?;
        return Ok(out);
    };
    let partials: Vec<Result<Vec<Complex64>>> = (0..first.len())
        .into_par_iter()
        .map(|k0| {
            let mut acc = vec![zero; n_out];
            let mut vals = vec![zero; n_out];
            let mut states = vec![first.nodes()[k0]; rules.len()];
            let mut idx = vec![0usize; rest.len()];
            if rest.iter().any(|r| r.is_empty()) {
                return Ok(acc);
            }
            loop {
                let mut w = first.weights()[k0];
                for (d, r) in rest.iter().enumerate() {
                    states[d + 1] = r.nodes()[idx[d]];
                    w *= r.weights()[idx[d]];
                }
                f(&states, &mut vals)?;
                for (a, v) in acc.iter_mut().zip(&vals) {
                    *a += w * v;
                }
                // odometer, last variable fastest
                let mut d = rest.len();
                loop {
                    if d == 0 {
                        return Ok(acc);
                    }
                    d -= 1;
                    idx[d] += 1;
                    if idx[d] < rest[d].len() {
                        break;
                    }
                    idx[d] = 0;
                }
            }
        })
        .collect();
    let mut total = vec![zero; n_out];
    for part in partials {
        for (t, v) in total.iter_mut().zip(part?) {
            *t += v;
        }
    }
    Ok(total)
}
