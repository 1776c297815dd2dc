//! Translation hypersurfaces `x_{n+1} = Σ f_i(u_i)`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::curvature::{mean_curvature_translation, primed};
use crate::function::{C3Function, Polynomial, Scaled};
use crate::norm::NormParams;
use crate::ode::{integrate_profile, ProfileCurve, ProfileOdeParams};
use crate::real;
use crate::{Error, Result};

pub type Profile = Arc<dyn C3Function>;

/// A translation graph together with the parameter interval of each
/// profile.
#[derive(Clone)]
pub struct TranslationSurface {
    profiles: Vec<Profile>,
    domains: Vec<(f64, f64)>,
    p: NormParams,
}

impl core::fmt::Debug for TranslationSurface {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("TranslationSurface")
            .field("domains", &self.domains)
            .field("p", &self.p)
            .finish_non_exhaustive()
    }
}

impl TranslationSurface {
    pub fn new(profiles: Vec<Profile>, domains: Vec<(f64, f64)>, p: NormParams) -> Result<Self> {
        if profiles.len() != p.n() {
            return Err(Error::DimensionMismatch {
                expected: p.n(),
                got: profiles.len(),
            });
        }
        if domains.len() != profiles.len() {
            return Err(Error::DimensionMismatch {
                expected: profiles.len(),
                got: domains.len(),
            });
        }
        if domains.iter().any(|&(a, b)| !(a <= b) || !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidParameter("profile domains must be finite intervals"));
        }
        Ok(Self { profiles, domains, p })
    }

    pub fn n(&self) -> usize {
        self.profiles.len()
    }

    pub fn params(&self) -> &NormParams {
        &self.p
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    pub fn domains(&self) -> &[(f64, f64)] {
        &self.domains
    }

    pub fn height(&self, u: &[f64]) -> f64 {
        self.profiles.iter().zip(u).map(|(f, &t)| f.value(t)).sum()
    }

    pub fn mean_curvature(&self, u: &[f64]) -> Result<f64> {
        mean_curvature_translation(&self.profiles, u, &self.p)
    }
}

/// `Σ_j T_j (1 + Σ_{i≠j} X_i)` with `T = (f')^{-(2m-2)/(2m-1)} f''` and
/// `X = (f')^{2m/(2m-1)}`. It equals `-n(2m-1) A^{(2m+1)/2m} H`.
pub fn minimality_residual(ts: &TranslationSurface, u: &[f64]) -> Result<f64> {
    if u.len() != ts.n() {
        return Err(Error::DimensionMismatch {
            expected: ts.n(),
            got: u.len(),
        });
    }
    let d1: Vec<f64> = ts.profiles.iter().zip(u).map(|(f, &t)| f.d1(t)).collect();
    let d2: Vec<f64> = ts.profiles.iter().zip(u).map(|(f, &t)| f.d2(t)).collect();
    if d1.iter().any(|&y| y == 0.0) {
        let index = d1.iter().position(|&y| y == 0.0).unwrap_or(0);
        return Err(Error::SingularConfiguration { index });
    }
    let pr = primed(&d1, &d2, ts.p.m())?;
    let s: f64 = pr.x.iter().sum();
    let r: f64 = pr.t.iter().zip(&pr.x).map(|(t, x)| t * (1.0 + s - x)).sum();
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::NonFinite("minimality residual"))
    }
}

/// Initial data of one profile: the slope `y0 = f'(u0)` and `f(u0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileInit {
    pub u0: f64,
    pub y0: f64,
}

impl ProfileInit {
    pub fn new(u0: f64, y0: f64) -> Self {
        Self { u0, y0 }
    }
}

/// Builds `f = Σ f_i` from the slope ODE family with `k = n - 1`.
///
/// At `n = 2` the profiles carry `+c0` and `-c0`, which makes the residual
/// vanish identically. For `n ≥ 3` all profiles carry `+c0`.
pub fn assemble_separated_surface(
    m: u32,
    n: usize,
    c0: f64,
    inits: &[ProfileInit],
    step: f64,
    max_steps: usize,
) -> Result<TranslationSurface> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2"));
    }
    if inits.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: inits.len(),
        });
    }
    let p = NormParams::new(m, n + 1)?;
    let k = (n - 1) as u32;
    let mut profiles: Vec<Profile> = Vec::with_capacity(n);
    let mut domains = Vec::with_capacity(n);
    for (i, init) in inits.iter().enumerate() {
        let c = if n == 2 && i == 1 { -c0 } else { c0 };
        let params = ProfileOdeParams::new(m, k, c, init.y0)
            .with_start(init.u0, 0.0)
            .with_step(step, max_steps);
        let curve = integrate_profile(&params)?;
        domains.push(curve.domain());
        profiles.push(Arc::new(curve));
    }
    TranslationSurface::new(profiles, domains, p)
}

/// Integrated profile curves of a surface built by
/// [`assemble_separated_surface`], for export.
pub fn separated_profiles(
    m: u32,
    n: usize,
    c0: f64,
    inits: &[ProfileInit],
    step: f64,
    max_steps: usize,
) -> Result<Vec<ProfileCurve>> {
    let k = n.saturating_sub(1) as u32;
    inits
        .iter()
        .enumerate()
        .map(|(i, init)| {
            let c = if n == 2 && i == 1 { -c0 } else { c0 };
            integrate_profile(
                &ProfileOdeParams::new(m, k, c, init.y0)
                    .with_start(init.u0, 0.0)
                    .with_step(step, max_steps),
            )
        })
        .collect()
}

/// Linear profile `a u + b` appended by [`cylinder_over`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSlope {
    pub a: f64,
    pub b: f64,
    pub domain: (f64, f64),
}

impl LinearSlope {
    pub fn new(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            domain: (-1.0, 1.0),
        }
    }
}

/// Extends a two-profile minimal surface to `total_n` profiles by adding
/// linear profiles `a_j u_j + b_j`.
///
/// The base profiles are replaced by `α f_i` with
/// `α = (1 + K)^{(2m-1)/2m}`, `K = Σ_j |a_j|^{2m/(2m-1)}`. Then
/// `X_i ↦ (1 + K) X_i` and `T_i ↦ α^{1/(2m-1)} T_i`, so the extended residual
/// is `α^{1/(2m-1)} (1 + K)` times the base residual. Missing slopes
/// default to `a_j = 1, b_j = 0`.
pub fn cylinder_over(ts2: &TranslationSurface, total_n: usize, slopes: Option<&[LinearSlope]>) -> Result<TranslationSurface> {
    if ts2.n() != 2 {
        return Err(Error::InvalidParameter("cylinder base must have two profiles"));
    }
    if total_n < 3 {
        return Err(Error::InvalidParameter("total_n must be at least 3"));
    }
    let extra = total_n - 2;
    let lin: Vec<LinearSlope> = match slopes {
        Some(s) if s.len() == extra => s.to_vec(),
        Some(s) => {
            return Err(Error::DimensionMismatch {
                expected: extra,
                got: s.len(),
            })
        }
        None => (0..extra).map(|_| LinearSlope::new(1.0, 0.0)).collect(),
    };
    if lin.iter().any(|l| l.a == 0.0 || !l.a.is_finite() || !l.b.is_finite()) {
        return Err(Error::InvalidParameter("cylinder slopes must be nonzero and finite"));
    }
    let m = ts2.p.m();
    let den = 2 * m - 1;
    let q = f64::from(2 * m);
    let k_sum: f64 = lin.iter().map(|l| real::powf(l.a.abs(), q / f64::from(den))).sum();
    let alpha = real::powf(1.0 + k_sum, f64::from(den) / q);
    let mut profiles: Vec<Profile> = ts2
        .profiles
        .iter()
        .map(|f| Arc::new(Scaled::new(f.clone(), alpha, 1.0)) as Profile)
        .collect();
    let mut domains = ts2.domains.clone();
    for l in &lin {
        profiles.push(Arc::new(Polynomial::linear(l.a, l.b)));
        domains.push(l.domain);
    }
    TranslationSurface::new(profiles, domains, NormParams::new(m, total_n + 1)?)
}

/// Tensor grid with `per_axis` points on each (closed) domain interval.
pub fn domain_grid(domains: &[(f64, f64)], per_axis: usize) -> Vec<Vec<f64>> {
    let axis = |&(a, b): &(f64, f64)| -> Vec<f64> {
        if per_axis <= 1 {
            return alloc::vec![0.5 * (a + b)];
        }
        (0..per_axis)
            .map(|i| a + (b - a) * i as f64 / (per_axis - 1) as f64)
            .collect()
    };
    let mut points: Vec<Vec<f64>> = alloc::vec![Vec::new()];
    for d in domains {
        let ax = axis(d);
        points = points
            .into_iter()
            .flat_map(|p| {
                ax.iter().map(move |&t| {
                    let mut q = p.clone();
                    q.push(t);
                    q
                })
            })
            .collect();
    }
    points
}

/// Residual at every point of [`domain_grid`].
pub fn grid_residuals(ts: &TranslationSurface, per_axis: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    domain_grid(&ts.domains, per_axis)
        .into_iter()
        .map(|u| {
            let r = minimality_residual(ts, &u)?;
            Ok((u, r))
        })
        .collect()
}
