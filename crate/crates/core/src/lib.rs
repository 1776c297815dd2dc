//! Birkhoff–Gauss maps and mean curvature of hypersurfaces in `R^{n+1}`
//! equipped with the `2m`-norm `‖x‖ = (Σ x_i^{2m})^{1/2m}`.
//!
//! The crate is `no_std` (it needs `alloc`). It covers
//!
//! * the gauge `Φ(x) = Σ x_i^{2m}`, its gradient and the Birkhoff normal of
//!   graph and implicit hypersurfaces ([`norm`]),
//! * closed-form Weingarten coefficients and mean curvature of translation
//!   and separable hypersurfaces, plus a finite-difference oracle built
//!   directly from `H = trace(dη)/n` ([`curvature`]),
//! * translation minimal hypersurfaces: the minimality residual, profile
//!   ODEs and cylinders ([`translation`], [`ode`]),
//! * separable minimal hypersurfaces through the substitution
//!   `X_i = (f_i')^{2m/(2m-1)}` ([`separable`]).

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod curvature;
pub mod error;
pub mod function;
pub mod linalg;
pub mod norm;
pub mod ode;
pub mod poly;
pub(crate) mod real;
pub mod separable;
pub mod translation;

pub use error::{Error, Result};
pub use norm::{AmbientVector, BirkhoffNormal, NormParams, TwoMNorm};
