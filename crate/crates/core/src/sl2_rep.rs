//! Finite-dimensional sl₂ representations and the conformal block kernel.
//!
//! `V_m` has basis `v_0, …, v_m` with `h v_k = (m − 2k) v_k`,
//! `f v_k = v_{k+1}` and `e v_k = k (m − k + 1) v_{k−1}`. Tensor products are
//! laid out lexicographically in `(k_1, …, k_n)` with the first factor most
//! significant.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::multilinear::{Monomial, MultilinearPoly};

/// Relative singular value threshold below which a direction counts as
/// belonging to the kernel.
pub const NULL_SPACE_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpace {
    weights: Vec<u32>,
    strides: Vec<usize>,
    dim: usize,
}

impl RepSpace {
    pub fn new(weights: &[u32]) -> Self {
        let mut strides = vec![1usize; weights.len()];
        let mut dim = 1usize;
        for a in (0..weights.len()).rev() {
            strides[a] = dim;
            dim *= weights[a] as usize + 1;
        }
        Self {
            weights: weights.to_vec(),
            strides,
            dim,
        }
    }

    /// `(V₁)^{⊗n}`.
    pub fn spin_half_power(n: usize) -> Self {
        Self::new(&vec![1; n])
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn num_factors(&self) -> usize {
        self.weights.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_spin_half_power(&self) -> bool {
        self.weights.iter().all(|&m| m == 1)
    }

    /// `k_a` of the basis vector `index`.
    pub fn level(&self, index: usize, a: usize) -> u32 {
        ((index / self.strides[a]) % (self.weights[a] as usize + 1)) as u32
    }

    pub fn tuple(&self, index: usize) -> Vec<u32> {
        (0..self.num_factors()).map(|a| self.level(index, a)).collect()
    }

    pub fn index(&self, tuple: &[u32]) -> Result<usize> {
        if tuple.len() != self.num_factors() {
            return Err(Error::DimensionMismatch {
                expected: self.num_factors(),
                got: tuple.len(),
            });
        }
        let mut idx = 0;
        for (a, &k) in tuple.iter().enumerate() {
            if k > self.weights[a] {
                return Err(Error::IndexOutOfRange {
                    index: k as usize,
                    len: self.weights[a] as usize + 1,
                });
            }
            idx += k as usize * self.strides[a];
        }
        Ok(idx)
    }

    /// Eigenvalue of the total `h` on basis vector `index`.
    pub fn weight_of(&self, index: usize) -> i64 {
        (0..self.num_factors())
            .map(|a| self.weights[a] as i64 - 2 * self.level(index, a) as i64)
            .sum()
    }

    pub fn weight_subspace(&self, weight: i64) -> Vec<usize> {
        (0..self.dim).filter(|&i| self.weight_of(i) == weight).collect()
    }

    fn check_factor(&self, a: usize) -> Result<()> {
        if a >= self.num_factors() {
            return Err(Error::IndexOutOfRange {
                index: a,
                len: self.num_factors(),
            });
        }
        Ok(())
    }
}

/// Sparse operator stored as `(row, col, value)` triplets.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOp {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOp {
    pub fn new(dim: usize, mut entries: Vec<(usize, usize, Complex64)>) -> Self {
        entries.retain(|e| e.2 != Complex64::new(0.0, 0.0));
        entries.sort_by_key(|e| (e.0, e.1));
        // merge duplicates
        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(entries.len());
        for e in entries {
            match merged.last_mut() {
                Some(last) if last.0 == e.0 && last.1 == e.1 => last.2 += e.2,
                _ => merged.push(e),
            }
        }
        merged.retain(|e| e.2 != Complex64::new(0.0, 0.0));
        Self { dim, entries: merged }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for &(r, c, x) in &self.entries {
            out[r] += x * v[c];
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(
            self.dim,
            self.entries.iter().map(|&(r, c, x)| (r, c, x * s)).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        Self::new(self.dim, e)
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut by_row: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); self.dim];
        for &(r, c, x) in &other.entries {
            by_row[r].push((c, x));
        }
        let mut out = Vec::new();
        for &(r, k, x) in &self.entries {
            for &(c, y) in &by_row[k] {
                out.push((r, c, x * y));
            }
        }
        Self::new(self.dim, out)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(r, c, x) in &self.entries {
            m[(r, c)] += x;
        }
        m
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
            .entries
            .iter()
            .map(|e| e.2.norm())
            .fold(0.0, f64::max)
    }
}

/// `e_a`, `f_a`, `h_a` acting on factor `a` of a tensor product.
#[derive(Debug, Clone)]
pub struct FactorOperators {
    pub e: SparseOp,
    pub f: SparseOp,
    pub h: SparseOp,
}

pub fn lowering_raising_matrices(space: &RepSpace, a: usize) -> Result<FactorOperators> {
    space.check_factor(a)?;
    let m = space.weights[a];
    let stride = space.strides[a];
    let mut e = Vec::new();
    let mut f = Vec::new();
    let mut h = Vec::new();
    for i in 0..space.dim {
        let k = space.level(i, a);
        h.push((i, i, Complex64::new(m as f64 - 2.0 * k as f64, 0.0)));
        if k > 0 {
            let c = (k * (m - k + 1)) as f64;
            e.push((i - stride, i, Complex64::new(c, 0.0)));
        }
        if k < m {
            f.push((i + stride, i, Complex64::new(1.0, 0.0)));
        }
    }
    Ok(FactorOperators {
        e: SparseOp::new(space.dim, e),
        f: SparseOp::new(space.dim, f),
        h: SparseOp::new(space.dim, h),
    })
}

/// `Σ_a x_a e_a`.
pub fn weighted_raising(space: &RepSpace, coeffs: &[Complex64]) -> Result<SparseOp> {
    if coeffs.len() != space.num_factors() {
        return Err(Error::DimensionMismatch {
            expected: space.num_factors(),
            got: coeffs.len(),
        });
    }
    let mut acc = SparseOp::zero(space.dim);
    for (a, &c) in coeffs.iter().enumerate() {
        acc = acc.add(&lowering_raising_matrices(space, a)?.e.scale(c));
    }
    Ok(acc)
}

/// Total `(e, f, h)` of the diagonal sl₂ action.
pub fn total_operators(space: &RepSpace) -> Result<FactorOperators> {
    let mut e = SparseOp::zero(space.dim);
    let mut f = SparseOp::zero(space.dim);
    let mut h = SparseOp::zero(space.dim);
    for a in 0..space.num_factors() {
        let ops = lowering_raising_matrices(space, a)?;
        e = e.add(&ops.e);
        f = f.add(&ops.f);
        h = h.add(&ops.h);
    }
    Ok(FactorOperators { e, f, h })
}

/// `Ω^{(a,b)} = ½ h_a h_b + e_a f_b + f_a e_b`.
pub fn casimir_mixed(space: &RepSpace, a: usize, b: usize) -> Result<SparseOp> {
    space.check_factor(a)?;
    space.check_factor(b)?;
    if a == b {
        return Err(Error::Domain(format!(
            "Ω^{{(a,b)}} needs two distinct factors, got a = b = {a}"
        )));
    }
    let oa = lowering_raising_matrices(space, a)?;
    let ob = lowering_raising_matrices(space, b)?;
    let half = Complex64::new(0.5, 0.0);
    Ok(oa
        .h
        .compose(&ob.h)
        .scale(half)
        .add(&oa.e.compose(&ob.f))
        .add(&oa.f.compose(&ob.e)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorVector {
    space: RepSpace,
    components: Vec<Complex64>,
}

impl TensorVector {
    pub fn new(space: RepSpace, components: Vec<Complex64>) -> Result<Self> {
        if components.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: components.len(),
            });
        }
        Ok(Self { space, components })
    }

    pub fn zeros(space: RepSpace) -> Self {
        let components = vec![Complex64::new(0.0, 0.0); space.dim()];
        Self { space, components }
    }

    pub fn space(&self) -> &RepSpace {
        &self.space
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn norm(&self) -> f64 {
        self.components
            .iter()
            .fold(0.0, |acc, c| acc + c.norm_sqr())
            .sqrt()
    }

    pub fn apply(&self, op: &SparseOp) -> Self {
        Self {
            space: self.space.clone(),
            components: op.apply(&self.components),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            space: self.space.clone(),
            components: self.components.iter().map(|c| c * s).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::WeightMismatch("vectors live in different spaces".into()));
        }
        Ok(Self {
            space: self.space.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

/// Largest modulus of the 2×2 minors `u_i v_j − u_j v_i` after normalizing
/// both vectors to unit length. Zero iff the vectors are collinear.
pub fn collinearity_defect(u: &[Complex64], v: &[Complex64]) -> f64 {
    let nu = u.iter().fold(0.0, |acc, c| acc + c.norm_sqr()).sqrt();
    let nv = v.iter().fold(0.0, |acc, c| acc + c.norm_sqr()).sqrt();
    if nu == 0.0 || nv == 0.0 {
        return if nu == nv { 0.0 } else { 1.0 };
    }
    let mut worst = 0.0f64;
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            let m = (u[i] * v[j] - u[j] * v[i]).norm() / (nu * nv);
            worst = worst.max(m);
        }
    }
    worst
}

/// `(ℓ, m_1..m_n, N)` subject to `ℓ > 0`, `0 ≤ Σm − 2N ≤ ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockParams {
    pub level: u32,
    pub weights: Vec<u32>,
    pub excitations: u32,
}

impl BlockParams {
    pub fn new(level: u32, weights: &[u32], excitations: u32) -> Result<Self> {
        let p = Self {
            level,
            weights: weights.to_vec(),
            excitations,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters that only need `ℓ > 0`, `Σm − 2N ≥ 0` and `p ≥ 0`, the
    /// conditions under which the kernel problem is well posed. The upper
    /// bound `Σm − 2N ≤ ℓ` is not enforced.
    pub fn relaxed(level: u32, weights: &[u32], excitations: u32) -> Result<Self> {
        let p = Self {
            level,
            weights: weights.to_vec(),
            excitations,
        };
        p.validate_solvable()?;
        Ok(p)
    }

    /// `ℓ = 1`, `n = 2N`, every `m_a = 1`.
    pub fn level_one(n_pairs: u32) -> Self {
        Self {
            level: 1,
            weights: vec![1; 2 * n_pairs as usize],
            excitations: n_pairs,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.level == 0 {
            return Err(Error::InvalidParams("level must be positive".into()));
        }
        let top = self.total_weight() - 2 * self.excitations as i64;
        if top < 0 {
            return Err(Error::InvalidParams(format!("Σm − 2N = {top} is negative")));
        }
        if top > self.level as i64 {
            return Err(Error::InvalidParams(format!(
                "Σm − 2N = {top} exceeds the level {}",
                self.level
            )));
        }
        Ok(())
    }

    fn validate_solvable(&self) -> Result<()> {
        if self.level == 0 {
            return Err(Error::InvalidParams("level must be positive".into()));
        }
        if self.block_weight() < 0 {
            return Err(Error::InvalidParams(format!(
                "Σm − 2N = {} is negative",
                self.block_weight()
            )));
        }
        if self.level as i64 + 1 - self.block_weight() < 0 {
            return Err(Error::InvalidParams("p = ℓ + 1 + 2N − Σm is negative".into()));
        }
        Ok(())
    }

    fn total_weight(&self) -> i64 {
        self.weights.iter().map(|&m| m as i64).sum()
    }

    /// `Σ m_a − 2N`.
    pub fn block_weight(&self) -> i64 {
        self.total_weight() - 2 * self.excitations as i64
    }

    /// `p = ℓ + 1 + 2N − Σ m_a`.
    pub fn p(&self) -> u32 {
        (self.level as i64 + 1 - self.block_weight()) as u32
    }
}

/// An orthonormal basis of `W(z)` together with the spectrum that decided it.
#[derive(Debug, Clone)]
pub struct BlockSpace {
    pub basis: Vec<TensorVector>,
    /// Singular values of the stacked constraint operator, descending.
    pub singular_values: Vec<f64>,
    pub threshold: f64,
}

impl BlockSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Smallest singular value kept out of the kernel, relative to the
    /// largest one. Large gaps between this and the threshold mean a
    /// well-conditioned rank decision.
    pub fn relative_gap(&self) -> f64 {
        let max = self.singular_values.first().copied().unwrap_or(0.0);
        if max == 0.0 {
            return 0.0;
        }
        self.singular_values
            .iter()
            .copied()
            .filter(|&s| s > self.threshold)
            .fold(f64::INFINITY, f64::min)
            / max
    }
}

/// `W(z) = {v : hv = (Σm − 2N)v, ev = 0, (Σ z_a e_a)^p v = 0}`.
pub fn conformal_block_space(params: &BlockParams, z: &[Complex64]) -> Result<BlockSpace> {
    params.validate_solvable()?;
    if z.len() != params.weights.len() {
        return Err(Error::DimensionMismatch {
            expected: params.weights.len(),
            got: z.len(),
        });
    }
    for a in 0..z.len() {
        for b in (a + 1)..z.len() {
            if z[a] == z[b] {
                return Err(Error::SingularConfiguration(a, b));
            }
        }
    }
    let space = RepSpace::new(&params.weights);
    let cols = space.weight_subspace(params.block_weight());
    let e = total_operators(&space)?.e;
    let ze = weighted_raising(&space, z)?;
    let p = params.p();

    let mut images: Vec<(Vec<Complex64>, Vec<Complex64>)> = Vec::with_capacity(cols.len());
    for &c in &cols {
        let mut unit = vec![Complex64::new(0.0, 0.0); space.dim()];
        unit[c] = Complex64::new(1.0, 0.0);
        let ev = e.apply(&unit);
        let mut zv = unit;
        for _ in 0..p {
            zv = ze.apply(&zv);
        }
        images.push((ev, zv));
    }
    // rows that can ever be nonzero
    let row_used = |second: bool| {
        (0..space.dim())
            .filter(|&r| {
                images.iter().any(|(ev, zv)| {
                    let v = if second { zv } else { ev };
                    v[r] != Complex64::new(0.0, 0.0)
                })
            })
            .collect::<Vec<_>>()
    };
    let e_rows = row_used(false);
    let z_rows = row_used(true);
    let n = cols.len();
    let m = (e_rows.len() + z_rows.len()).max(n);
    let mut a = DMatrix::<Complex64>::zeros(m.max(1), n);
    for (j, (ev, zv)) in images.iter().enumerate() {
        for (i, &r) in e_rows.iter().enumerate() {
            a[(i, j)] = ev[r];
        }
        for (i, &r) in z_rows.iter().enumerate() {
            a[(e_rows.len() + i, j)] = zv[r];
        }
    }

    if n == 0 {
        return Ok(BlockSpace {
            basis: Vec::new(),
            singular_values: Vec::new(),
            threshold: 0.0,
        });
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let threshold = NULL_SPACE_RTOL * smax;
    let mut basis = Vec::new();
    for (i, &s) in sv.iter().enumerate() {
        if s <= threshold {
            let mut comps = vec![Complex64::new(0.0, 0.0); space.dim()];
            for (j, &c) in cols.iter().enumerate() {
                comps[c] = v_t[(i, j)].conj();
            }
            basis.push(TensorVector::new(space.clone(), comps)?);
        }
    }
    let mut singular_values = sv;
    singular_values.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(BlockSpace {
        basis,
        singular_values,
        threshold,
    })
}

/// Coefficient of `[V_0]` in `[V_1]^n` in the level-one fusion ring.
pub fn fusion_dim_level1(n: usize) -> usize {
    // (c0, c1) = coefficients of [V_0], [V_1]
    let mut acc = (1usize, 0usize);
    for _ in 0..n {
        // [V_1]·[V_0] = [V_1], [V_1]·[V_1] = [V_0]
        acc = (acc.1, acc.0);
    }
    acc.0
}

fn monomial_of_index(space: &RepSpace, index: usize) -> Monomial {
    let mut m = 0u64;
    for a in 0..space.num_factors() {
        if space.level(index, a) == 1 {
            m |= 1 << a;
        }
    }
    m
}

/// The isomorphism `(V₁)^{⊗n} → ` multilinear polynomials: `v_0 ↦ 1`,
/// `v_1 ↦ y_a` on factor `a`.
pub fn tensor_to_poly(v: &TensorVector) -> Result<MultilinearPoly> {
    let space = v.space();
    if !space.is_spin_half_power() {
        return Err(Error::WeightMismatch(format!(
            "polynomial model needs all weights 1, got {:?}",
            space.weights()
        )));
    }
    let mut p = MultilinearPoly::zero(space.num_factors());
    for (i, &c) in v.components().iter().enumerate() {
        p.add_term(monomial_of_index(space, i), c);
    }
    Ok(p)
}

pub fn poly_to_tensor(p: &MultilinearPoly) -> TensorVector {
    let n = p.num_vars();
    let space = RepSpace::spin_half_power(n);
    let mut comps = vec![Complex64::new(0.0, 0.0); space.dim()];
    for (m, c) in p.terms() {
        let mut idx = 0usize;
        for a in 0..n {
            if m & (1 << a) != 0 {
                idx += space.strides[a];
            }
        }
        comps[idx] = c;
    }
    TensorVector {
        space,
        components: comps,
    }
}
