//! Realization calculus for matrix-valued rational functions analytic at
//! infinity.
//!
//! The crate provides:
//!
//! * dense complex matrix kernels sized for desk-scale systems
//!   ([`matrix`]);
//! * the [`Realization`] type `(A, B, C, D)` with evaluation, coordinate
//!   changes, inversion, products and affine combinations
//!   ([`realization`]);
//! * structural analysis: controllability/observability tests, minimality,
//!   McMillan degree, spectral projections and partial-fraction forms
//!   ([`spectral`]);
//! * two composition schemes for `F_L(F_R)` with explicit realization
//!   formulas ([`compose`]);
//! * positive-real and Stieltjes function checks, the canonical Stieltjes
//!   realization, compression and composition closure ([`stieltjes`]);
//! * electrical-network and feedback-loop combinators ([`networks`]).
//!
//! With the default `parallel` feature, batch evaluation and large matrix
//! products run on rayon; building with `--no-default-features` gives a
//! fully sequential crate with the same API.

pub mod bulk;
pub mod compose;
pub mod error;
pub mod matrix;
pub mod networks;
pub mod random;
pub mod realization;
pub mod sampling;
pub mod spectral;
pub mod stieltjes;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, PsdStatus, DEFAULT_TOL};
pub use num_complex::Complex64;
pub use realization::Realization;
