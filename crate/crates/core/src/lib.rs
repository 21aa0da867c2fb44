//! Fingerprints of polynomial and rational lemniscates.
//!
//! A lemniscate is the level set { z : |m(z)| = 1 } of a polynomial or
//! rational map m. When the sublevel region is a Jordan domain the curve is a
//! smooth shape and carries a fingerprint: the circle diffeomorphism
//! k = phi_+^{-1} o phi_- built from the Riemann maps of the two sides.
//! For a proper polynomial lemniscate of degree n the fingerprint is the n-th
//! root of a Blaschke product B of degree n; for a rational lemniscate it
//! solves A o k = B for a pair of degree-n Blaschke products with A fixing
//! infinity. This crate computes those fingerprints numerically, verifies the
//! structure identities, and reconstructs the polynomial or rational map from
//! given Blaschke data by critical-value homotopy.
//!
//! Module map:
//! - [`algebra`]: complex polynomials, rational maps, Blaschke products.
//! - [`curves`]: level-set tracing, properness, Jordan-curve geometry.
//! - [`conformal`]: numerical Riemann maps (Szego-kernel boundary solver)
//!   and the explicit n-th-root exterior map for polynomial lemniscates.
//! - [`circle`]: circle-map lifts, the conjugacy A o k = B, n-th roots on
//!   the circle, and comparison modulo disk automorphisms.
//! - [`engine`]: forward pipelines producing fingerprint reports.
//! - [`inverse`]: homotopy reconstruction from Blaschke data and class
//!   counting.

pub mod algebra;
pub mod circle;
pub mod conformal;
pub mod curves;
pub mod engine;
pub mod error;
pub mod fourier;
pub mod inverse;
pub mod tol;

pub use algebra::{AnalyticMap, BlaschkeProduct, ComplexPolynomial, RationalMap};




pub use error::{Error, Result};
