//! Branch-aware special functions.
//!
//! Multivalued powers are evaluated on values that carry their own argument
//! ([`BranchedValue`]). Arguments live on the real line, not on the circle, so
//! a factor that has wound once around its zero raises to a different power
//! than the unwound one.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest admissible phase jump between consecutive samples in
/// [`track_argument`].
pub const PHASE_STEP_LIMIT: f64 = PI / 2.0;

/// A nonzero complex number stored as `log|v| + i·arg v` with an unreduced
/// argument.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BranchedValue {
    pub log_modulus: f64,
    pub argument: f64,
}

impl BranchedValue {
    pub fn new(log_modulus: f64, argument: f64) -> Self {
        Self {
            log_modulus,
            argument,
        }
    }

    /// Attach `argument` to `value`. The argument must agree with the
    /// principal argument of `value` modulo 2π.
    pub fn with_argument(value: Complex64, argument: f64) -> Result<Self> {
        let modulus = value.norm();
        if modulus == 0.0 {
            return Ok(Self::new(f64::NEG_INFINITY, argument));
        }
        let mismatch = wrap_to_pi(argument - value.arg());
        if mismatch.abs() > 1e-8 {
            return Err(Error::Domain(format!(
                "argument {argument} is not a branch of {value}"
            )));
        }
        Ok(Self::new(modulus.ln(), argument))
    }

    /// The principal branch, argument in (−π, π].
    pub fn principal(value: Complex64) -> Self {
        Self::new(value.norm().ln(), value.arg())
    }

    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.log_modulus.exp(), self.argument)
    }

    /// `self^alpha` on the stored branch.
    pub fn pow(&self, alpha: f64) -> Result<Complex64> {
        branched_pow(*self, alpha)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.log_modulus + other.log_modulus,
            self.argument + other.argument,
        )
    }
}

/// Reduce an angle to (−π, π].
pub fn wrap_to_pi(theta: f64) -> f64 {
    let r = theta.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// `exp(α·log|v|)·exp(i·α·arg v)`.
pub fn branched_pow(v: BranchedValue, alpha: f64) -> Result<Complex64> {
    if v.log_modulus == f64::NEG_INFINITY {
        if alpha <= 0.0 {
            return Err(Error::Domain(format!(
                "zero raised to non-positive power {alpha}"
            )));
        }
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(Complex64::from_polar(
        (alpha * v.log_modulus).exp(),
        alpha * v.argument,
    ))
}

/// Argument conventions on the real interleaved chamber.
///
/// Every factor of the master function and of the prefactor is a difference
/// `u − v` of two real numbers; its argument is 0 when `u > v` and π when
/// `u < v`. This covers `(t_j − t_i)` for `j > i` on the cycle, `(z_a − z_b)`
/// and `(t_i − z_a)`, as well as the factors `(z_b − z_a)` of the prefactor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ArgConvention;

impl ArgConvention {
    pub fn difference_argument(u: f64, v: f64) -> Result<f64> {
        if u > v {
            Ok(0.0)
        } else if u < v {
            Ok(PI)
        } else {
            Err(Error::Domain(format!("vanishing difference {u} − {v}")))
        }
    }

    /// The branched value of `u − v` under the chamber convention.
    pub fn difference(u: f64, v: f64) -> Result<BranchedValue> {
        let arg = Self::difference_argument(u, v)?;
        Ok(BranchedValue::new((u - v).abs().ln(), arg))
    }

    /// Continue `u − v` from its chamber argument `base_arg` to complex
    /// points that stay within a quarter turn of the chamber direction.
    pub fn continue_difference(u: Complex64, v: Complex64, base_arg: f64) -> Result<BranchedValue> {
        let d = u - v;
        if d.norm() == 0.0 {
            return Err(Error::Singularity(format!("{u} coincides with {v}")));
        }
        let offset = (d * Complex64::from_polar(1.0, -base_arg)).arg();
        if offset.abs() >= PHASE_STEP_LIMIT {
            return Err(Error::Geometry(format!(
                "difference {u} − {v} turned {offset:.3} rad away from its chamber direction"
            )));
        }
        Ok(BranchedValue::new(d.norm().ln(), base_arg + offset))
    }
}

/// Continuous argument of `f` along the sampled path `path`, starting from
/// `start_argument` at `path[0]`.
///
/// Consecutive samples must not differ in phase by [`PHASE_STEP_LIMIT`] or
/// more; the caller subdivides the path otherwise.
pub fn track_argument<F>(path: &[Complex64], f: F, start_argument: f64) -> Result<Vec<f64>>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut out = Vec::with_capacity(path.len());
    let Some(&first) = path.first() else {
        return Ok(out);
    };
    let mut prev = f(first);
    if prev.norm() == 0.0 {
        return Err(Error::Singularity(format!("factor vanishes at {first}")));
    }
    if wrap_to_pi(start_argument - prev.arg()).abs() > 1e-8 {
        return Err(Error::Domain(format!(
            "start argument {start_argument} is not a branch of {prev}"
        )));
    }
    let mut arg = start_argument;
    out.push(arg);
    for (k, &t) in path.iter().enumerate().skip(1) {
        let cur = f(t);
        if cur.norm() == 0.0 {
            return Err(Error::Singularity(format!("factor vanishes at {t}")));
        }
        let step = (cur / prev).arg();
        if step.abs() >= PHASE_STEP_LIMIT {
            return Err(Error::Refinement { index: k - 1, step });
        }
        arg += step;
        out.push(arg);
        prev = cur;
    }
    Ok(out)
}

const LANCZOS_R: f64 = 10.900511;
const TWO_SQRT_E_OVER_PI: f64 = 1.860_382_734_205_265_7;
const LANCZOS_DK: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS_DK
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_DK[0], |s, (k, d)| s + d / (x + k as f64 - 1.0))
}

// ln Γ(x) for x ≥ 1/2 (Pugh's r = 10.900511 Lanczos fit).
fn ln_gamma_lanczos(x: f64) -> f64 {
    let s = lanczos_sum(x);
    s.ln() + TWO_SQRT_E_OVER_PI.ln() + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).ln()
}

/// ln Γ(x) for real x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma needs x > 0, got {x}")));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps the Lanczos sum on its accurate range.
        return Ok(ln_gamma_lanczos(x + 1.0) - x.ln());
    }
    Ok(ln_gamma_lanczos(x))
}

/// `(ln|Γ(x)|, sign Γ(x))` for real x off the non-positive integers.
pub fn log_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x > 0.0 {
        return Ok((log_gamma(x)?, 1.0));
    }
    if x == x.floor() {
        return Err(Error::Domain(format!("Γ has a pole at {x}")));
    }
    // Reflection: Γ(x) Γ(1 − x) = π / sin(πx).
    let s = (PI * x).sin();
    let ln = PI.ln() - s.abs().ln() - log_gamma(1.0 - x)?;
    Ok((ln, s.signum()))
}

/// Γ(x) for real x off the non-positive integers.
pub fn gamma(x: f64) -> Result<f64> {
    let (ln, sign) = log_gamma_signed(x)?;
    Ok(sign * ln.exp())
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Closed form of `∫_{za}^{zb} (t − za)^{α−1} (t − zb)^{β−1} dt` with
/// `arg(t − za) = 0`, `arg(t − zb) = π` on the interval:
/// `−e^{iπβ} Γ(α)Γ(β)/Γ(α+β) (zb − za)^{α+β−1}`.
///
/// The right-hand side is the analytic continuation in (α, β), so divergent
/// exponents are allowed as long as no Γ hits a pole.
pub fn beta_closed_form(alpha: f64, beta: f64, za: f64, zb: f64) -> Result<Complex64> {
    if is_nonpositive_integer(alpha) || is_nonpositive_integer(beta) {
        return Err(Error::Domain(format!("Γ pole at α = {alpha} or β = {beta}")));
    }
    if is_nonpositive_integer(alpha + beta) {
        return Err(Error::Domain(format!("Γ(α + β) has a pole at {}", alpha + beta)));
    }
    if !(za < zb) {
        return Err(Error::Domain(format!("need za < zb, got {za}, {zb}")));
    }
    let (la, sa) = log_gamma_signed(alpha)?;
    let (lb, sb) = log_gamma_signed(beta)?;
    let (lab, sab) = log_gamma_signed(alpha + beta)?;
    let log_mod = la + lb - lab + (alpha + beta - 1.0) * (zb - za).ln();
    let sign = -sa * sb * sab;
    Ok(sign * Complex64::from_polar(log_mod.exp(), PI * beta))
}

/// `ln(3 Γ(2/3)³ sin(π/3) / π)`, the modulus of the per-pair factor in the
/// normalization constant.
pub fn log_pair_constant() -> f64 {
    3f64.ln() + 3.0 * log_gamma(2.0 / 3.0).expect("positive argument") + (PI / 3.0).sin().ln() - PI.ln()
}

/// `C(N) = e^{−πiN²/3} (3 e^{πi/6} Γ(2/3)³ sin(π/3)/π)^N`.
pub fn constant_c(n: usize) -> Complex64 {
    let nf = n as f64;
    let phase = -PI * nf * nf / 3.0 + PI * nf / 6.0;
    Complex64::from_polar((nf * log_pair_constant()).exp(), phase)
}
