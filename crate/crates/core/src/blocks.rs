//! The level-one generator `P(y; z)`, the prefactor `A(z)` and the flat
//! section `s(z) = A(z) P(y; z)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::branch::{ArgConvention, BranchedValue};
use crate::error::{Error, Result};
use crate::multilinear::MultilinearPoly;
use crate::perm::permutations_with_sign;
use crate::sl2_rep::{poly_to_tensor, TensorVector};

/// An ordered tuple of `2N` distinct points.
///
/// Points `0..N` form the first block and `N..2N` the second one. The
/// interleaved flag records `z_1 < z_{N+1} < z_2 < z_{N+2} < ⋯ < z_N < z_{2N}`
/// (1-based), the chamber on which every branch convention is fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    points: Vec<Complex64>,
    interleaved_real: bool,
}

impl Configuration {
    /// Any `2N` pairwise-distinct complex points.
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() || !points.len().is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "a configuration needs 2N ≥ 2 points, got {}",
                points.len()
            )));
        }
        for a in 0..points.len() {
            for b in (a + 1)..points.len() {
                if points[a] == points[b] {
                    return Err(Error::SingularConfiguration(a, b));
                }
            }
        }
        let interleaved_real = points.iter().all(|p| p.im == 0.0)
            && interleaving_violation(&points.iter().map(|p| p.re).collect::<Vec<_>>()).is_none();
        Ok(Self {
            points,
            interleaved_real,
        })
    }

    /// Real points that must satisfy the interleaving chain.
    pub fn interleaved(points: &[f64]) -> Result<Self> {
        let cfg = Self::new(points.iter().map(|&x| Complex64::new(x, 0.0)).collect())?;
        if let Some(msg) = interleaving_violation(points) {
            return Err(Error::NotInterleaved(msg));
        }
        Ok(cfg)
    }

    /// `z_a = 2(a − 1)`, `z_{N+a} = 2(a − 1) + 1`: unit gaps everywhere.
    pub fn preset(n_pairs: usize) -> Self {
        let pts: Vec<f64> = (0..n_pairs)
            .map(|a| 2.0 * a as f64)
            .chain((0..n_pairs).map(|a| 2.0 * a as f64 + 1.0))
            .collect();
        Self::interleaved(&pts).expect("preset is interleaved")
    }

    /// Interleaved configuration from the successive gaps of the chain
    /// `z_1 < z_{N+1} < z_2 < ⋯`, starting at `start`.
    pub fn from_chain_gaps(start: f64, gaps: &[f64]) -> Result<Self> {
        if gaps.len().is_multiple_of(2) {
            return Err(Error::Domain(format!("2N − 1 gaps expected, got {}", gaps.len())));
        }
        let n = gaps.len().div_ceil(2);
        let mut chain = vec![start];
        for g in gaps {
            chain.push(chain.last().unwrap() + g);
        }
        let mut pts = vec![0.0; 2 * n];
        for (k, x) in chain.into_iter().enumerate() {
            let idx = if k % 2 == 0 { k / 2 } else { n + k / 2 };
            pts[idx] = x;
        }
        Self::interleaved(&pts)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `N`.
    pub fn n_pairs(&self) -> usize {
        self.points.len() / 2
    }

    pub fn is_interleaved(&self) -> bool {
        self.interleaved_real
    }

    /// Real parts, for interleaved configurations.
    pub fn real_points(&self) -> Result<Vec<f64>> {
        self.require_interleaved()?;
        Ok(self.points.iter().map(|p| p.re).collect())
    }

    pub fn require_interleaved(&self) -> Result<()> {
        if self.interleaved_real {
            Ok(())
        } else {
            Err(Error::NotInterleaved(format!("{:?}", self.points)))
        }
    }

    /// The same configuration with point `a` moved by `delta`.
    pub fn shifted(&self, a: usize, delta: Complex64) -> Result<Self> {
        if a >= self.points.len() {
            return Err(Error::IndexOutOfRange {
                index: a,
                len: self.points.len(),
            });
        }
        let mut pts = self.points.clone();
        pts[a] += delta;
        Self::new(pts)
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.points.iter().map(|p| p * lambda).collect())
    }
}

fn interleaving_violation(points: &[f64]) -> Option<String> {
    if !points.len().is_multiple_of(2) {
        return Some("odd number of points".into());
    }
    let n = points.len() / 2;
    let chain: Vec<f64> = (0..n).flat_map(|a| [points[a], points[n + a]]).collect();
    chain.windows(2).position(|w| !(w[0] < w[1])).map(|k| {
        format!(
            "chain z₁ < z_(N+1) < z₂ < … broken at position {}: {} ≥ {}",
            k + 1,
            chain[k],
            chain[k + 1]
        )
    })
}

/// `P(y; z) = det_{a,b} ((y_a − y_{N+b}) / (z_a − z_{N+b}))`, expanded over
/// permutations.
pub fn build_block_polynomial(z: &Configuration) -> Result<MultilinearPoly> {
    let n = z.n_pairs();
    let nv = 2 * n;
    let pts = z.points();
    let mut p = MultilinearPoly::zero(nv);
    for (sigma, sign) in permutations_with_sign(n) {
        let mut term = MultilinearPoly::constant(nv, Complex64::new(sign as f64, 0.0));
        for a in 0..n {
            let col = n + a;
            let row = sigma[a];
            let denom = pts[row] - pts[col];
            let factor =
                MultilinearPoly::from_terms(nv, [(1u64 << row, 1.0 / denom), (1u64 << col, -1.0 / denom)])?;
            term = term.mul(&factor)?;
        }
        p = p.add(&term)?;
    }
    Ok(p)
}

/// Exponent of `(z_b − z_a)` in `A(z)` for `a < b` (0-based).
fn prefactor_exponent(n: usize, a: usize, b: usize) -> f64 {
    if a < n && b >= n {
        0.5
    } else {
        -0.5
    }
}

/// `A(z)` on the interleaved chamber, with `arg(z_b − z_a) = 0` if
/// `z_b > z_a` and `π` otherwise.
pub fn prefactor_a(z: &Configuration) -> Result<Complex64> {
    if !z.is_interleaved() {
        return Err(Error::BranchUnspecified(
            "A(z) off the interleaved chamber needs an explicit branch; use prefactor_a_with".into(),
        ));
    }
    let x = z.real_points()?;
    prefactor_a_with(z, |a, b| {
        ArgConvention::difference_argument(x[b], x[a]).expect("distinct points")
    })
}

/// `A(z)` with a caller-supplied argument `arg(z_b − z_a)` for every pair
/// `a < b` (0-based).
pub fn prefactor_a_with<F>(z: &Configuration, arg: F) -> Result<Complex64>
where
    F: Fn(usize, usize) -> f64,
{
    let n = z.n_pairs();
    let pts = z.points();
    let mut acc = BranchedValue::new(0.0, 0.0);
    for a in 0..pts.len() {
        for b in (a + 1)..pts.len() {
            let d = BranchedValue::with_argument(pts[b] - pts[a], arg(a, b))?;
            let e = prefactor_exponent(n, a, b);
            acc = acc.mul(&BranchedValue::new(e * d.log_modulus, e * d.argument));
        }
    }
    Ok(acc.value())
}

/// The pair `(A(z), P(y; z))` whose product is the flat section.
#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub prefactor: Complex64,
    pub polynomial: MultilinearPoly,
}

impl Section {
    pub fn to_poly(&self) -> MultilinearPoly {
        self.polynomial.scale(self.prefactor)
    }

    pub fn to_tensor(&self) -> TensorVector {
        poly_to_tensor(&self.to_poly())
    }
}

pub fn section_s(z: &Configuration) -> Result<Section> {
    Ok(Section {
        prefactor: prefactor_a(z)?,
        polynomial: build_block_polynomial(z)?,
    })
}
