//! Master function `Φ(t; z)` and weight function `ω(t; z)` with explicit
//! per-factor branches.
//!
//! `Φ = Π_{a<b} (z_a − z_b)^{1/6} Π_{i<j} (t_j − t_i)^{2/3} Π_{i,a} (t_i − z_a)^{−1/3}`
//! and `ω = Σ_{|S| = N} Σ_σ Π_i y_{a_i} / (t_{σ_i} − z_{a_i})`.

use num_complex::Complex64;

use crate::blocks::Configuration;
use crate::branch::{ArgConvention, BranchedValue};
use crate::error::{Error, Result};
use crate::multilinear::{monomials_of_degree, Monomial, MultilinearPoly};
use crate::perm::permutations_with_sign;

pub const Z_EXPONENT: f64 = 1.0 / 6.0;
pub const T_EXPONENT: f64 = 2.0 / 3.0;
pub const TZ_EXPONENT: f64 = -1.0 / 3.0;

/// Index of the pair `i < j` in row-major upper-triangular order.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// The chamber argument of `t_i − z_a` when `t_i` sits inside
/// `(z_i, z_{N+i})`.
fn chamber_tz_argument(x: &[f64], n: usize, i: usize, a: usize) -> f64 {
    if a == i {
        0.0
    } else if a == n + i {
        std::f64::consts::PI
    } else {
        // every other point lies on one side of the whole interval
        ArgConvention::difference_argument(x[i], x[a]).expect("distinct points")
    }
}

/// Integration variables together with the argument of every factor of `Φ`.
#[derive(Debug, Clone)]
pub struct IntegrationPoint {
    t: Vec<Complex64>,
    z: Configuration,
    /// `arg(t_j − t_i)` for `i < j`.
    tt_args: Vec<f64>,
    /// `arg(z_a − z_b)` for `a < b`.
    zz_args: Vec<f64>,
    /// `arg(t_i − z_a)` at `i · 2N + a`.
    tz_args: Vec<f64>,
}

impl IntegrationPoint {
    /// A real point of the cycle `t_i ∈ (z_i, z_{N+i})` with the chamber
    /// arguments.
    pub fn on_cycle(t: &[f64], z: &Configuration) -> Result<Self> {
        let x = z.real_points()?;
        let n = z.n_pairs();
        if t.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: t.len(),
            });
        }
        for (i, &ti) in t.iter().enumerate() {
            if !(x[i] < ti && ti < x[n + i]) {
                return Err(Error::Domain(format!(
                    "t_{} = {ti} is outside ({}, {})",
                    i + 1,
                    x[i],
                    x[n + i]
                )));
            }
        }
        let mut tt_args = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                tt_args.push(ArgConvention::difference_argument(t[j], t[i])?);
            }
        }
        let mut tz_args = Vec::with_capacity(n * 2 * n);
        for &ti in t {
            for &xa in &x {
                tz_args.push(ArgConvention::difference_argument(ti, xa)?);
            }
        }
        Ok(Self {
            t: t.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            z: z.clone(),
            tt_args,
            zz_args: chamber_zz_args(&x),
            tz_args,
        })
    }

    /// A complex point reached by continuation from the cycle.
    ///
    /// `endpoint_args[i]` holds the tracked `(arg(t_i − z_i), arg(t_i − z_{N+i}))`;
    /// every other factor is continued from its chamber argument, which
    /// fails with a geometry error if it would have to cross its cut.
    pub fn continued(t: &[Complex64], z: &Configuration, endpoint_args: &[(f64, f64)]) -> Result<Self> {
        let x = z.real_points()?;
        let n = z.n_pairs();
        if t.len() != n || endpoint_args.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: t.len().min(endpoint_args.len()),
            });
        }
        let mut tt_args = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                tt_args.push(ArgConvention::continue_difference(t[j], t[i], 0.0)?.argument);
            }
        }
        let mut tz_args = Vec::with_capacity(n * 2 * n);
        for i in 0..n {
            for a in 0..2 * n {
                let arg = if a == i {
                    endpoint_args[i].0
                } else if a == n + i {
                    endpoint_args[i].1
                } else {
                    let base = chamber_tz_argument(&x, n, i, a);
                    ArgConvention::continue_difference(t[i], z.points()[a], base)?.argument
                };
                tz_args.push(arg);
            }
        }
        Ok(Self {
            t: t.to_vec(),
            z: z.clone(),
            tt_args,
            zz_args: chamber_zz_args(&x),
            tz_args,
        })
    }

    pub fn t(&self) -> &[Complex64] {
        &self.t
    }

    pub fn configuration(&self) -> &Configuration {
        &self.z
    }

    /// The same point with `t_i` and `t_j` exchanged and every argument kept
    /// as stored (no re-tracking).
    pub fn with_swapped_variables(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.t.swap(i, j);
        let m = self.z.len();
        for a in 0..m {
            out.tz_args.swap(i * m + a, j * m + a);
        }
        out
    }

    /// Φ(t; z) on the stored branch.
    pub fn master_phi(&self) -> Result<Complex64> {
        let n = self.t.len();
        let z = self.z.points();
        let mut acc = BranchedValue::new(0.0, 0.0);
        let mut push = |d: Complex64, arg: f64, e: f64, what: &str| -> Result<()> {
            if d.norm() == 0.0 {
                return Err(Error::Singularity(what.to_string()));
            }
            let v = BranchedValue::with_argument(d, arg)?;
            acc = acc.mul(&BranchedValue::new(e * v.log_modulus, e * v.argument));
            Ok(())
        };
        let mut k = 0;
        for a in 0..z.len() {
            for b in (a + 1)..z.len() {
                push(z[a] - z[b], self.zz_args[k], Z_EXPONENT, "z_a = z_b")?;
                k += 1;
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                push(
                    self.t[j] - self.t[i],
                    self.tt_args[pair_index(n, i, j)],
                    T_EXPONENT,
                    "t_i = t_j",
                )?;
            }
        }
        for i in 0..n {
            for a in 0..z.len() {
                push(
                    self.t[i] - z[a],
                    self.tz_args[i * z.len() + a],
                    TZ_EXPONENT,
                    "t_i = z_a",
                )?;
            }
        }
        Ok(acc.value())
    }

    pub fn weight_omega(&self) -> Result<MultilinearPoly> {
        weight_omega(&self.t, &self.z)
    }
}

fn chamber_zz_args(x: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for a in 0..x.len() {
        for b in (a + 1)..x.len() {
            out.push(ArgConvention::difference_argument(x[a], x[b]).expect("distinct points"));
        }
    }
    out
}

/// `Π_{a<b} (z_a − z_b)^{1/6}` on the chamber branch.
pub fn z_prefactor(z: &Configuration) -> Result<Complex64> {
    let x = z.real_points()?;
    let mut acc = BranchedValue::new(0.0, 0.0);
    for a in 0..x.len() {
        for b in (a + 1)..x.len() {
            let d = ArgConvention::difference(x[a], x[b])?;
            acc = acc.mul(&BranchedValue::new(
                Z_EXPONENT * d.log_modulus,
                Z_EXPONENT * d.argument,
            ));
        }
    }
    Ok(acc.value())
}

/// ω(t; z) as a homogeneous degree-N polynomial in `y`.
pub fn weight_omega(t: &[Complex64], z: &Configuration) -> Result<MultilinearPoly> {
    let n = z.n_pairs();
    if t.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: t.len(),
        });
    }
    let inv = inverse_table(t, z.points())?;
    let perms = permutations_with_sign(n);
    let mut p = MultilinearPoly::zero(2 * n);
    for m in monomials_of_degree(2 * n, n) {
        p.add_term(m, permanent_for(m, &inv, &perms, 2 * n));
    }
    Ok(p)
}

fn inverse_table(t: &[Complex64], z: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut inv = Vec::with_capacity(t.len() * z.len());
    for (i, &ti) in t.iter().enumerate() {
        for (a, &za) in z.iter().enumerate() {
            let d = ti - za;
            if d.norm() == 0.0 {
                return Err(Error::Singularity(format!("t_{} = z_{}", i + 1, a + 1)));
            }
            inv.push(1.0 / d);
        }
    }
    Ok(inv)
}

// Σ_σ Π_k inv[σ_k][a_k] over the variables a_1 < … < a_N of `m`.
fn permanent_for(m: Monomial, inv: &[Complex64], perms: &[(Vec<usize>, i32)], width: usize) -> Complex64 {
    let mut vars = [0usize; 64];
    let mut len = 0;
    let mut rest = m;
    while rest != 0 {
        vars[len] = rest.trailing_zeros() as usize;
        len += 1;
        rest &= rest - 1;
    }
    perms
        .iter()
        .map(|(sigma, _)| {
            sigma
                .iter()
                .enumerate()
                .map(|(k, &s)| inv[s * width + vars[k]])
                .product::<Complex64>()
        })
        .sum()
}

/// The analytic part of `Φ·ω` seen by a product of Pochhammer contours.
///
/// For every variable `t_i` the endpoint factors `(t_i − z_i)^{−1/3}` and
/// `(t_i − z_{N+i})^{−1/3}` are removed and replaced by
/// `(t_i − z_i)(t_i − z_{N+i})`, so that the quadrature weight supplies
/// `(t_i − z_i)^{−4/3} (t_i − z_{N+i})^{−4/3}` on the tracked branch. The
/// constant `Π (z_a − z_b)^{1/6}` is left out as well.
#[derive(Debug, Clone)]
pub struct StrippedIntegrand {
    n: usize,
    z: Vec<Complex64>,
    /// chamber argument of `t_i − z_a` for the non-endpoint points
    foreign: Vec<Vec<(usize, f64)>>,
    monomials: Vec<Monomial>,
    perms: Vec<(Vec<usize>, i32)>,
}

impl StrippedIntegrand {
    pub fn new(z: &Configuration) -> Result<Self> {
        let x = z.real_points()?;
        let n = z.n_pairs();
        let foreign = (0..n)
            .map(|i| {
                (0..2 * n)
                    .filter(|&a| a != i && a != n + i)
                    .map(|a| (a, chamber_tz_argument(&x, n, i, a)))
                    .collect()
            })
            .collect();
        Ok(Self {
            n,
            z: z.points().to_vec(),
            foreign,
            monomials: monomials_of_degree(2 * n, n),
            perms: permutations_with_sign(n),
        })
    }

    /// Degree-N monomials in output order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn num_outputs(&self) -> usize {
        self.monomials.len()
    }

    /// Write the stripped integrand at `t` into `out` (one slot per monomial).
    pub fn eval(&self, t: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        let n = self.n;
        let mut log = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in (i + 1)..n {
                let d = ArgConvention::continue_difference(t[j], t[i], 0.0)?;
                log += T_EXPONENT * Complex64::new(d.log_modulus, d.argument);
            }
            for &(a, base) in &self.foreign[i] {
                let d = ArgConvention::continue_difference(t[i], self.z[a], base)?;
                log += TZ_EXPONENT * Complex64::new(d.log_modulus, d.argument);
            }
        }
        let mut common = log.exp();
        for i in 0..n {
            common *= (t[i] - self.z[i]) * (t[i] - self.z[n + i]);
        }
        let inv = inverse_table(t, &self.z)?;
        for (slot, &m) in out.iter_mut().zip(&self.monomials) {
            *slot = common * permanent_for(m, &inv, &self.perms, 2 * n);
        }
        Ok(())
    }
}
