//! Computational model of the compact group G2 as the automorphism group of
//! the real octonion division algebra.
//!
//! The crate is organized around a small tower:
//!
//! * [`field`] / [`complex`] / [`matrix`] — scalar backends (exact rationals
//!   or `f64`), complex pairs over them, and dense small-matrix linear
//!   algebra with exact or tolerance-based rank decisions.
//! * [`octonion`] — the Cayley–Dickson algebra engine: multiplication table,
//!   norm, polarized bilinear form, conjugation.
//! * [`subalgebra`] — composition subalgebras, closure generation,
//!   orthogonal complements and doubling.
//! * [`aut`] — certified algebra automorphisms (elements of G2) and the
//!   classical families fixing a quaternion or quadratic subalgebra.
//! * [`derivation`] — the 14-dimensional derivation algebra, commutant
//!   dimensions, matrix exponentials and the seeded element sampler.
//! * [`hermitian`] — the hermitian space on the complement of a quadratic
//!   subalgebra and the SU(3) bridge in both directions.
//! * [`orbit`] — classification of elements into the six orbit types
//!   (conjugacy classes of centralizers) with verification suites.
//! * [`skolem`] — constructive extension of subalgebra isomorphisms to full
//!   automorphisms, and conjugating elements between subalgebras.
//!
//! The crate is `no_std` (with `alloc`); all IO, JSON and CLI plumbing lives
//! in the companion `g2kit` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod aut;
pub mod complex;
pub mod derivation;
pub mod eig3;
pub mod error;
pub mod field;
pub mod hermitian;
pub mod matrix;
pub mod octonion;
pub mod orbit;
pub mod rng;
pub mod skolem;
pub mod subalgebra;

pub use aut::AutMatrix;
pub use complex::Complex;
pub use error::Error;
pub use field::{Field, Rational, Scalar, TOL_EQ, TOL_RESIDUAL, TOL_SPECTRUM};
pub use matrix::Matrix;
pub use octonion::{AlgebraContext, Octonion};
pub use orbit::{ClassificationReport, Classifier, OrbitType};
pub use subalgebra::Subalgebra;
