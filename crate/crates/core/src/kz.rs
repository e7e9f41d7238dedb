//! The KZ connection `∂/∂z_a − (1/(ℓ+2)) Σ_{b≠a} Ω^{(a,b)}/(z_a − z_b)` and
//! finite-difference checks that the level-one section is flat.

use num_complex::Complex64;

use crate::blocks::{section_s, Configuration};
use crate::error::{Error, Result};
use crate::sl2_rep::{casimir_mixed, RepSpace, SparseOp, TensorVector};

/// `M_a(z) = (1/(ℓ+2)) Σ_{b≠a} Ω^{(a,b)} / (z_a − z_b)` on a general tensor
/// product.
pub fn kz_operator(space: &RepSpace, z: &[Complex64], a: usize, level: u32) -> Result<SparseOp> {
    if z.len() != space.num_factors() {
        return Err(Error::DimensionMismatch {
            expected: space.num_factors(),
            got: z.len(),
        });
    }
    if a >= z.len() {
        return Err(Error::IndexOutOfRange {
            index: a,
            len: z.len(),
        });
    }
    let k = 1.0 / (level as f64 + 2.0);
    let mut acc = SparseOp::zero(space.dim());
    for b in 0..z.len() {
        if b == a {
            continue;
        }
        let d = z[a] - z[b];
        if d.norm() == 0.0 {
            return Err(Error::SingularConfiguration(a.min(b), a.max(b)));
        }
        acc = acc.add(&casimir_mixed(space, a, b)?.scale(k / d));
    }
    Ok(acc)
}

/// `M_a(z)` on `(V₁)^{⊗2N}`.
pub fn kz_matrix(z: &Configuration, a: usize, level: u32) -> Result<SparseOp> {
    kz_operator(&RepSpace::spin_half_power(z.len()), z.points(), a, level)
}

fn section_vector(z: &Configuration) -> Result<TensorVector> {
    Ok(section_s(z)?.to_tensor())
}

fn shifted_in_chamber(z: &Configuration, a: usize, delta: f64) -> Result<Configuration> {
    let moved = z.shifted(a, Complex64::new(delta, 0.0))?;
    if !moved.is_interleaved() {
        return Err(Error::StepLeavesChamber(format!(
            "moving z_{} by {delta} breaks the interleaving",
            a + 1
        )));
    }
    Ok(moved)
}

/// `‖(s(z + h e_a) − s(z − h e_a))/(2h) − M_a(z) s(z)‖ / ‖s(z)‖` at level one.
///
/// All three sections use the chamber branch of `A`, which is constant along
/// the segment as long as it stays interleaved.
pub fn flatness_residual(z: &Configuration, a: usize, h: f64) -> Result<f64> {
    z.require_interleaved()?;
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let plus = section_vector(&shifted_in_chamber(z, a, h)?)?;
    let minus = section_vector(&shifted_in_chamber(z, a, -h)?)?;
    let s = section_vector(z)?;
    let derivative = plus.sub(&minus)?.scale(Complex64::new(0.5 / h, 0.0));
    let connection = s.apply(&kz_matrix(z, a, 1)?);
    Ok(derivative.sub(&connection)?.norm() / s.norm())
}

/// `flatness_residual(h) / flatness_residual(h/2)`; close to 4 while the
/// truncation error dominates.
pub fn flatness_ratio(z: &Configuration, a: usize, h: f64) -> Result<f64> {
    Ok(flatness_residual(z, a, h)? / flatness_residual(z, a, h / 2.0)?)
}

/// Transport `s(z)` around the square with corner `z` and sides `side` in
/// the `z_a` and `z_b` directions (RK4, `steps` per side) and return the
/// relative distance between the transported and the initial vector.
pub fn holonomy_defect(z: &Configuration, a: usize, b: usize, side: f64, steps: usize) -> Result<f64> {
    z.require_interleaved()?;
    if a == b {
        return Err(Error::Domain("the square needs two distinct coordinates".into()));
    }
    for corner in [(side, 0.0), (side, side), (0.0, side)] {
        let moved = z
            .shifted(a, Complex64::new(corner.0, 0.0))?
            .shifted(b, Complex64::new(corner.1, 0.0))?;
        if !moved.is_interleaved() {
            return Err(Error::StepLeavesChamber(format!(
                "square of side {side} in (z_{}, z_{}) leaves the chamber",
                a + 1,
                b + 1
            )));
        }
    }
    let start = section_vector(z)?;
    let space = start.space().clone();
    let mut v = start.components().to_vec();
    let mut pos = z.clone();
    let dt = side / steps as f64;
    for (dir, sign) in [(a, 1.0), (b, 1.0), (a, -1.0), (b, -1.0)] {
        for _ in 0..steps {
            v = rk4_step(&pos, dir, sign * dt, &v)?;
            pos = pos.shifted(dir, Complex64::new(sign * dt, 0.0))?;
        }
    }
    let end = TensorVector::new(space, v)?;
    Ok(end.sub(&start)?.norm() / start.norm())
}

fn rk4_step(z: &Configuration, dir: usize, dt: f64, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let rhs = |offset: f64, x: &[Complex64]| -> Result<Vec<Complex64>> {
        let zz = z.shifted(dir, Complex64::new(offset, 0.0))?;
        Ok(kz_matrix(&zz, dir, 1)?.apply(x))
    };
    let axpy = |x: &[Complex64], k: &[Complex64], s: f64| -> Vec<Complex64> {
        x.iter().zip(k).map(|(a, b)| a + b * s).collect()
    };
    let k1 = rhs(0.0, v)?;
    let k2 = rhs(dt / 2.0, &axpy(v, &k1, dt / 2.0))?;
    let k3 = rhs(dt / 2.0, &axpy(v, &k2, dt / 2.0))?;
    let k4 = rhs(dt, &axpy(v, &k3, dt))?;
    Ok((0..v.len())
        .map(|i| v[i] + (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0))
        .collect())
}
