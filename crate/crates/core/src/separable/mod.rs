//! Separable hypersurfaces `Σ f_i(x_i) = 0` through the substitution
//! `u_i = f_i(x_i)`, `X_i(u_i) = (f_i')^{2m/(2m-1)}`. In these variables
//! minimality becomes `Σ_j X_j'(A - X_j) = 0` on `Σ u_i = 0`, `A = Σ X_i`.

pub mod ansatz;
pub mod domain;
pub mod examples;
pub mod patch;
pub mod sweep;
mod xprofile;

pub use ansatz::{
    extract_affine_system, extract_exponential_system, extract_quadratic_system, extract_system, AnsatzKind, AnsatzSystem,
    BasisTag,
};
pub use domain::{admissible_domain, AdmissibleBox, AdmissibleDomain, Interval};
pub use examples::{example_surface, ExampleId, SeparableSurface};
pub use patch::{patch_from_xprofiles, InverseQuadrature, PatchPoint, ProfileQuadrature, SeparableMinimalPatch};
pub use sweep::{quadratic_sweep, QuadraticSweep};
pub use xprofile::{Anchor, XProfile};

use crate::{Error, Result};

/// `Σ_j X_j'(u_j) (A - X_j(u_j))` for `n + 1` profiles at `u` (length
/// `n + 1`, `Σ u = 0`).
pub fn minimality_identity_residual(xs: &[XProfile], u: &[f64]) -> Result<f64> {
    if u.len() != xs.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            got: u.len(),
        });
    }
    let sum: f64 = u.iter().sum();
    let scale: f64 = u.iter().map(|x| x.abs()).sum();
    if sum.abs() > 1e-12 * (1.0 + scale) {
        return Err(Error::ConstraintViolated("parameters must sum to zero"));
    }
    let vals = xs
        .iter()
        .zip(u)
        .enumerate()
        .map(|(i, (x, &t))| x.positive_value(i, t))
        .collect::<Result<alloc::vec::Vec<f64>>>()?;
    let a: f64 = vals.iter().sum();
    Ok(xs
        .iter()
        .zip(u)
        .zip(&vals)
        .map(|((x, &t), &v)| x.deriv(t) * (a - v))
        .sum())
}
