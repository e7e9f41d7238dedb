//! Polynomials in `y_0, …, y_{n−1}` of degree at most one in each variable.
//!
//! A monomial is a subset of the variables, stored as a bitmask (bit `a` for
//! `y_a`). This is the polynomial model of `(V₁)^{⊗n}`: the constant `1` is the
//! highest weight vector of every factor and `y_a` the lowest weight vector of
//! factor `a`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 64;

/// Bitmask of a set of variables.
pub type Monomial = u64;

/// All monomials of degree `d` in `n` variables, in increasing bitmask order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d > n {
        return out;
    }
    if d == 0 {
        out.push(0);
        return out;
    }
    if d == 64 {
        out.push(u64::MAX);
        return out;
    }
    // Gosper's hack enumerates same-popcount masks in increasing order.
    let mut m: u64 = (1u64 << d) - 1;
    let limit: u128 = 1u128 << n;
    while (m as u128) < limit {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m.wrapping_add(c);
        if r == 0 {
            break;
        }
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearPoly {
    num_vars: usize,
    coeffs: BTreeMap<Monomial, Complex64>,
}

impl MultilinearPoly {
    pub fn zero(num_vars: usize) -> Self {
        assert!(num_vars <= MAX_VARS, "at most {MAX_VARS} variables");
        Self {
            num_vars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Complex64) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(0, c);
        p
    }

    /// The polynomial `y_a`.
    pub fn variable(num_vars: usize, a: usize) -> Result<Self> {
        if a >= num_vars {
            return Err(Error::IndexOutOfRange {
                index: a,
                len: num_vars,
            });
        }
        let mut p = Self::zero(num_vars);
        p.add_term(1 << a, Complex64::new(1.0, 0.0));
        Ok(p)
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut p = Self::zero(num_vars);
        for (m, c) in terms {
            if num_vars < 64 && m >> num_vars != 0 {
                return Err(Error::IndexOutOfRange {
                    index: 63 - m.leading_zeros() as usize,
                    len: num_vars,
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn coefficient(&self, m: Monomial) -> Complex64 {
        self.coeffs.get(&m).copied().unwrap_or_default()
    }

    /// Nonzero terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, Complex64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let e = self.coeffs.entry(m).or_default();
        *e += c;
        if *e == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_coefficient_modulus(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.values().fold(0.0, |acc, c| acc + c.norm_sqr()).sqrt()
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in self.terms() {
            out.add_term(m, c * s);
        }
        out
    }

    /// Product of two polynomials whose monomials never share a variable.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = Self::zero(self.num_vars);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                if m1 & m2 != 0 {
                    return Err(Error::NotMultilinear);
                }
                out.add_term(m1 | m2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, y: &[Complex64]) -> Result<Complex64> {
        if y.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: y.len(),
            });
        }
        Ok(self.terms().map(|(m, c)| c * monomial_value(m, y)).sum())
    }

    pub fn partial_derivative(&self, a: usize) -> Result<Self> {
        if a >= self.num_vars {
            return Err(Error::IndexOutOfRange {
                index: a,
                len: self.num_vars,
            });
        }
        let bit = 1u64 << a;
        let mut out = Self::zero(self.num_vars);
        for (m, c) in self.terms() {
            if m & bit != 0 {
                out.add_term(m & !bit, c);
            }
        }
        Ok(out)
    }

    /// `∂_S p` for the square-free set of variables `s`.
    pub fn mixed_partial(&self, s: Monomial) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in self.terms() {
            if m & s == s {
                out.add_term(m & !s, c);
            }
        }
        out
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms().all(|(m, _)| m.count_ones() as usize == d)
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in self.terms() {
            if m.count_ones() as usize == d {
                out.add_term(m, c);
            }
        }
        out
    }

    /// Largest `k ≤ max_order` such that every mixed partial of total order
    /// below `k` vanishes at `point`.
    ///
    /// A value counts as zero when it is below
    /// `1e−9 · max|coeff| · (1 + |point|_∞)^{num_vars}`.
    pub fn vanishing_order_at(&self, point: &[Complex64], max_order: usize) -> Result<usize> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        if self.is_zero() {
            return Ok(max_order);
        }
        let sup = point.iter().map(|p| p.norm()).fold(0.0, f64::max);
        let tol = 1e-9 * self.max_coefficient_modulus() * (1.0 + sup).powi(self.num_vars as i32);
        for order in 0..max_order.min(self.num_vars + 1) {
            for s in monomials_of_degree(self.num_vars, order) {
                let v = self.mixed_partial(s).evaluate(point)?;
                if v.norm() >= tol {
                    return Ok(order);
                }
            }
        }
        Ok(max_order)
    }

    /// Action of `e = Σ_a ∂/∂y_a`.
    pub fn raise(&self) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in self.terms() {
            let mut rest = m;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                out.add_term(m & !bit, c);
                rest &= !bit;
            }
        }
        out
    }

    /// Action of `f`: on each factor `1 ↦ y_a`, `y_a ↦ 0`.
    pub fn lower(&self) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in self.terms() {
            for a in 0..self.num_vars {
                let bit = 1u64 << a;
                if m & bit == 0 {
                    out.add_term(m | bit, c);
                }
            }
        }
        out
    }

    /// Action of `h`: a degree-`d` monomial has weight `n − 2d`.
    pub fn weight_action(&self) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (m, c) in self.terms() {
            let w = self.num_vars as f64 - 2.0 * m.count_ones() as f64;
            out.add_term(m, c * w);
        }
        out
    }
}

pub(crate) fn monomial_value(m: Monomial, y: &[Complex64]) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    let mut rest = m;
    while rest != 0 {
        let a = rest.trailing_zeros() as usize;
        v *= y[a];
        rest &= rest - 1;
    }
    v
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for a in 0..self.num_vars {
                if m & (1 << a) != 0 {
                    write!(f, "·y{}", a + 1)?;
                }
            }
        }
        Ok(())
    }
}
