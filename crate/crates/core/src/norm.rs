//! The `2m`-norm space, its gauge function and Birkhoff normals.
//!
//! For a positive integer `m` the gauge is `Φ(x) = Σ x_i^{2m}` and the unit
//! sphere is `S = {Φ = 1}`. A unit vector `η ∈ S` is Birkhoff orthogonal to a
//! hyperplane `Π` when `T_η S ∥ Π`, i.e. when `grad Φ(η)` is a positive
//! multiple of the Euclidean normal of `Π`. Solving that condition needs the
//! real odd root `t^{1/(2m-1)}`, which [`signed_pow`] provides.

use alloc::vec::Vec;
use core::ops::Deref;

use crate::real;
use crate::{Error, Result};

/// The `2m`-norm itself, independent of any ambient dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoMNorm {
    m: u32,
}

impl TwoMNorm {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be a positive integer"));
        }
        if m > 64 {
            return Err(Error::InvalidParameter("m is too large"));
        }
        Ok(Self { m })
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// The norm exponent `2m`.
    #[inline]
    pub fn p(&self) -> u32 {
        2 * self.m
    }

    /// The odd root `2m - 1` appearing in every Birkhoff-normal formula.
    #[inline]
    pub fn root(&self) -> u32 {
        2 * self.m - 1
    }

    pub fn phi(&self, x: &[f64]) -> f64 {
        x.iter().map(|&xi| real::powi(xi, self.p())).sum()
    }

    pub fn norm(&self, x: &[f64]) -> f64 {
        let phi = self.phi(x);
        if self.m == 1 {
            real::sqrt(phi)
        } else {
            real::powf(phi, 1.0 / f64::from(self.p()))
        }
    }

    /// `∂Φ/∂x_i = 2m x_i^{2m-1}`.
    pub fn grad_phi(&self, x: &[f64]) -> Vec<f64> {
        let p = f64::from(self.p());
        x.iter().map(|&xi| p * real::powi(xi, self.root())).collect()
    }

    /// Birkhoff normal of the graph `x_{n+1} = f(u)` from the slopes `f_{u_i}`.
    ///
    /// `η = A^{-1/2m} (-(f_{u_1})^{1/(2m-1)}, …, -(f_{u_n})^{1/(2m-1)}, 1)`
    /// with `A = 1 + Σ (f_{u_i})^{2m/(2m-1)}`; the branch with positive last
    /// coordinate is returned.
    pub fn graph_normal(&self, grad_f: &[f64]) -> Result<BirkhoffNormal> {
        if grad_f.iter().any(|g| !g.is_finite()) {
            return Err(Error::NonFinite("graph slopes"));
        }
        let root = self.root();
        let a = 1.0
            + grad_f
                .iter()
                .map(|&g| odd_pow(g, 2 * self.m as i32, root))
                .sum::<f64>();
        let scale = real::powf(a, -1.0 / f64::from(self.p()));
        let mut eta = Vec::with_capacity(grad_f.len() + 1);
        eta.extend(grad_f.iter().map(|&g| -scale * odd_pow(g, 1, root)));
        eta.push(scale);
        Ok(BirkhoffNormal {
            eta: AmbientVector(eta),
            scale,
            a,
        })
    }

    /// Birkhoff normal of the level set `F = 0` from `grad F`, oriented so
    /// that `grad Φ(η)` is a positive multiple of `grad F`.
    pub fn implicit_normal(&self, grad: &[f64]) -> Result<BirkhoffNormal> {
        if grad.iter().any(|g| !g.is_finite()) {
            return Err(Error::NonFinite("implicit gradient"));
        }
        if grad.iter().all(|&g| g == 0.0) {
            return Err(Error::DegeneratePoint);
        }
        let root = self.root();
        let a: f64 = grad
            .iter()
            .map(|&g| odd_pow(g, 2 * self.m as i32, root))
            .sum();
        let scale = real::powf(a, -1.0 / f64::from(self.p()));
        let eta = grad.iter().map(|&g| scale * odd_pow(g, 1, root)).collect();
        Ok(BirkhoffNormal {
            eta: AmbientVector(eta),
            scale,
            a,
        })
    }
}

/// Norm exponent together with the ambient dimension `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormParams {
    norm: TwoMNorm,
    dim: usize,
}

impl NormParams {
    /// `m ≥ 1` and ambient dimension `dim = n + 1 ≥ 3`.
    pub fn new(m: u32, dim: usize) -> Result<Self> {
        let norm = TwoMNorm::new(m)?;
        if dim < 3 {
            return Err(Error::InvalidParameter("ambient dimension must be at least 3"));
        }
        Ok(Self { norm, dim })
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.norm.m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Hypersurface dimension `n = dim - 1`.
    #[inline]
    pub fn n(&self) -> usize {
        self.dim - 1
    }

    #[inline]
    pub fn norm(&self) -> TwoMNorm {
        self.norm
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: len,
            });
        }
        Ok(())
    }
}

/// A point or direction of the ambient space. Entries are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientVector(Vec<f64>);

impl AmbientVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("ambient vector"));
        }
        Ok(Self(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for AmbientVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// The Birkhoff–Gauss normal at a point: `η ∈ S` and its normaliser.
#[derive(Debug, Clone, PartialEq)]
pub struct BirkhoffNormal {
    pub eta: AmbientVector,
    /// `A^{-1/2m}`.
    pub scale: f64,
    /// The gauge sum `A`.
    pub a: f64,
}

pub fn phi(x: &AmbientVector, p: &NormParams) -> Result<f64> {
    p.check(x.len())?;
    Ok(p.norm.phi(x))
}

pub fn norm_2m(x: &AmbientVector, p: &NormParams) -> Result<f64> {
    p.check(x.len())?;
    Ok(p.norm.norm(x))
}

pub fn grad_phi(x: &AmbientVector, p: &NormParams) -> Result<AmbientVector> {
    p.check(x.len())?;
    AmbientVector::new(p.norm.grad_phi(x))
}

/// Graph normal for a hypersurface in `R^{n+1}`; `grad_f` has `n` entries.
pub fn birkhoff_normal_graph(grad_f: &[f64], p: &NormParams) -> Result<BirkhoffNormal> {
    p.check(grad_f.len() + 1)?;
    p.norm.graph_normal(grad_f)
}

/// Normal of the level set of `F` from its gradient (`n + 1` entries).
pub fn birkhoff_normal_implicit(grad: &[f64], p: &NormParams) -> Result<BirkhoffNormal> {
    p.check(grad.len())?;
    p.norm.implicit_normal(grad)
}

/// `sign(x)^num · |x|^{num/den}` for odd `den`: the real branch of `x^{num/den}`.
pub fn signed_pow(x: f64, num: i32, den: u32) -> Result<f64> {
    if den % 2 == 0 {
        return Err(Error::InvalidParameter("denominator must be odd"));
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("signed_pow base"));
    }
    if x == 0.0 && num < 0 {
        return Err(Error::ZeroToNegativePower);
    }
    Ok(odd_pow(x, num, den))
}

/// Unchecked [`signed_pow`]. Returns `inf` for `0^{negative}`; callers rule
/// that case out beforehand.
pub(crate) fn odd_pow(x: f64, num: i32, den: u32) -> f64 {
    debug_assert!(den % 2 == 1);
    if num == 0 {
        return 1.0;
    }
    if x == 0.0 {
        return if num > 0 { 0.0 } else { f64::INFINITY };
    }
    let g = gcd(num.unsigned_abs(), den);
    let (num, den) = (num / g as i32, den / g);
    let mag = x.abs();
    let root = match den {
        1 => mag,
        3 => real::cbrt(mag),
        _ => real::powf(mag, 1.0 / f64::from(den)),
    };
    let v = if num > 0 {
        real::powi(root, num as u32)
    } else {
        1.0 / real::powi(root, num.unsigned_abs())
    };
    if x < 0.0 && num % 2 != 0 {
        -v
    } else {
        v
    }
}

/// `d/dx sign(x)^num |x|^{num/den} = (num/den) · sign(x)^{num-den} |x|^{(num-den)/den}`.
pub(crate) fn odd_pow_deriv(x: f64, num: i32, den: u32) -> f64 {
    if num == 0 {
        return 0.0;
    }
    f64::from(num) / f64::from(den) * odd_pow(x, num - den as i32, den)
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}
