//! Exponential factorization for 3-cyclic Lie algebras.
//!
//! A three-generator algebra with `[O_mu, O_nu] = kappa * eps_{mu,nu,lambda} * O_lambda`
//! admits closed-form rewrites of `exp(aX + bY)` and `exp(aX + bY + cZ)` as finite
//! products of single-generator exponentials. This crate provides the abstract
//! algebra and its coefficient-level adjoint rotations ([`algebra`]), dense complex
//! matrix kernels ([`linalg`]), concrete spin and rotation representations
//! ([`representations`]), the factorization itself together with all twelve product
//! orderings ([`factor`]), a truncated Campbell-Baker-Hausdorff-Dynkin series engine
//! for comparison ([`bch`]), and a rotating-frame spin-resonance application
//! ([`dynamics`]).
//!
//! The crate is `no_std`-compatible (it requires `alloc`); the `std` feature is
//! enabled by default.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod bch;
pub mod dynamics;
pub mod factor;
pub mod linalg;
pub mod representations;

pub use num_complex::Complex64;
