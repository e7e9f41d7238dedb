//! Level-one sl₂ conformal blocks on the sphere and the Selberg-type
//! integral that produces them.
//!
//! The crate builds the explicit generator `P(y; z)` of the one-dimensional
//! block space, the multivalued prefactor `A(z)` that turns it into a flat
//! section of the KZ connection, and evaluates the hypergeometric integral
//! `I(z) = ∫ Φ ω` over a product of regularized (Pochhammer) cycles so that
//! the identity `I(z) = C(N) · A(z) P(y; z)` can be checked numerically.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod blocks;
pub mod branch;
pub mod error;
pub mod integrand;
pub mod kz;
pub mod multilinear;
mod perm;
pub mod quadrature;
pub mod sl2_rep;
pub mod verify;

pub use error::{Error, Result};
