//! Explicit separable minimal hypersurfaces `Σ f_i(x_i) = 0` and an
//! on-surface point sampler.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use rand::Rng;

use super::ansatz::extract_affine_system;
use super::domain::Interval;
use super::patch::{InverseQuadrature, ProfileQuadrature};
use super::XProfile;
use crate::function::{C3Function, Jet, LogAbs, Polynomial};
use crate::norm::NormParams;
use crate::real;
use crate::{Error, Result};

/// Which surface to build.
#[derive(Debug, Clone, PartialEq)]
pub enum ExampleId {
    /// Affine case with `p = (1,1,1,1)`, `q = (1,-1,-1,1)`.
    Ex61,
    /// `Σ_{i≤r} x_i^{2m} - Σ_{i≤r} x_{r+i}^{2m} = 0` in `R^{2r}`.
    Ex62 { r: usize },
    /// Affine case with `p = (1,1,3,3,1)`, `q = (1,1,-2,-2,1)`.
    Ex63,
    /// `-c Σ_{i≤r} x_i^{2m} + Σ_{i≤r+1} x_{r+i}^{2m} = 0` in `R^{2r+1}`
    /// with `c = (r/(r-1))^{2m-1}` unless overridden.
    Ex64 { r: usize, coef: Option<f64> },
    /// `X_i = e^{u_i} + e^{-u_i}`, `n = 3`.
    Ex65,
    /// `X = (e^{u_1}, e^{-u_2}, e^{-u_3}, e^{u_4})`.
    Ex66,
    /// Affine X-profiles with arbitrary `(p_i, q_i)`; the coefficient
    /// system must vanish.
    Affine { p: Vec<f64>, q: Vec<f64> },
}

impl ExampleId {
    /// `q_1 = -q_2 = -q_3 = q_4 = q`, `-p_1 + p_2 + p_3 - p_4 = 0`.
    pub fn case_i2(p: [f64; 3], q: f64) -> Self {
        let p4 = -p[0] + p[1] + p[2];
        ExampleId::Affine {
            p: vec![p[0], p[1], p[2], p4],
            q: vec![q, -q, -q, q],
        }
    }

    /// `q_3 = q_4 = -2q_1 = -2q_2 = -2q_5`, `-2p_1 - 2p_2 + p_3 + p_4 - 2p_5 = 0`.
    pub fn case_iii2(p: [f64; 4], q: f64) -> Self {
        let p5 = 0.5 * (-2.0 * p[0] - 2.0 * p[1] + p[2] + p[3]);
        ExampleId::Affine {
            p: vec![p[0], p[1], p[2], p[3], p5],
            q: vec![q, q, -2.0 * q, -2.0 * q, q],
        }
    }

    /// `q_1 = q_5 = -2q_2 = -2q_3 = -2q_4`, `p_1 - 2p_2 - 2p_3 - 2p_4 + p_5 = 0`.
    pub fn case_iii3(p: [f64; 4], q: f64) -> Self {
        let p5 = -p[0] + 2.0 * (p[1] + p[2] + p[3]);
        ExampleId::Affine {
            p: vec![p[0], p[1], p[2], p[3], p5],
            q: vec![q, -0.5 * q, -0.5 * q, -0.5 * q, q],
        }
    }

    /// Parses `6.1`…`6.6`, `i-2`, `iii-2`, `iii-3`; `r` is used by 6.2/6.4.
    pub fn parse(id: &str, r: usize) -> Result<Self> {
        Ok(match id {
            "6.1" => ExampleId::Ex61,
            "6.2" => ExampleId::Ex62 { r },
            "6.3" => ExampleId::Ex63,
            "6.4" => ExampleId::Ex64 { r, coef: None },
            "6.5" => ExampleId::Ex65,
            "6.6" => ExampleId::Ex66,
            "i-2" => ExampleId::case_i2([1.0, 2.0, 0.5], 1.5),
            "iii-2" => ExampleId::case_iii2([1.0, 2.0, 3.0, 4.0], 0.5),
            "iii-3" => ExampleId::case_iii3([3.0, 1.0, 2.0, 0.5], 1.0),
            _ => return Err(Error::InvalidParameter("unknown example id")),
        })
    }
}

/// One profile `f_i` of an example surface.
#[derive(Debug, Clone)]
pub enum Component {
    Poly(Polynomial),
    Log(LogAbs),
    Inverse(InverseQuadrature),
}

impl C3Function for Component {
    fn value(&self, t: f64) -> f64 {
        match self {
            Component::Poly(f) => f.value(t),
            Component::Log(f) => f.value(t),
            Component::Inverse(f) => f.value(t),
        }
    }
    fn d1(&self, t: f64) -> f64 {
        match self {
            Component::Poly(f) => f.d1(t),
            Component::Log(f) => f.d1(t),
            Component::Inverse(f) => f.d1(t),
        }
    }
    fn d2(&self, t: f64) -> f64 {
        match self {
            Component::Poly(f) => f.d2(t),
            Component::Log(f) => f.d2(t),
            Component::Inverse(f) => f.d2(t),
        }
    }
    fn d3(&self, t: f64) -> f64 {
        match self {
            Component::Poly(f) => f.d3(t),
            Component::Log(f) => f.d3(t),
            Component::Inverse(f) => f.d3(t),
        }
    }
    fn jet(&self, t: f64) -> Jet {
        match self {
            Component::Poly(f) => f.jet(t),
            Component::Log(f) => f.jet(t),
            Component::Inverse(f) => f.jet(t),
        }
    }
}

impl Component {
    /// `y > 0` with `f(sign · y) = target`, searched in `range`.
    fn solve(&self, target: f64, sign: f64, range: &Interval) -> Option<f64> {
        if let Component::Inverse(f) = self {
            // The inverse of an inverse quadrature is the quadrature.
            let x = f.sign * f.quad.position(target);
            return (x * sign > 0.0).then_some(x.abs());
        }
        let g = |y: f64| self.value(sign * y) - target;
        let (mut a, mut b) = (range.lo, range.hi);
        let (ga, gb) = (g(a), g(b));
        if !(ga.is_finite() && gb.is_finite()) || ga.signum() == gb.signum() {
            return None;
        }
        let rising = gb > ga;
        for _ in 0..200 {
            let c = 0.5 * (a + b);
            if (g(c) < 0.0) == rising {
                a = c;
            } else {
                b = c;
            }
            if b - a <= 2.0 * f64::EPSILON * b {
                break;
            }
        }
        Some(0.5 * (a + b))
    }
}

/// An implicit separable hypersurface with its profiles.
#[derive(Debug, Clone)]
pub struct SeparableSurface {
    pub label: String,
    pub params: NormParams,
    pub fs: Vec<Component>,
    /// Coordinates may take either sign.
    pub signed: bool,
    /// Magnitude window searched when solving for a coordinate.
    pub solve_range: Interval,
    /// The X-profiles behind the surface, when it comes from an ansatz.
    pub xprofiles: Option<Vec<XProfile>>,
}

fn power_profile(coef: f64, shift: f64, m: u32) -> Component {
    let mut c = vec![0.0; 2 * m as usize + 1];
    c[0] = shift;
    c[2 * m as usize] = coef;
    Component::Poly(Polynomial::new(c))
}

/// Builds the surface `id` in the `2m`-norm.
pub fn example_surface(id: &ExampleId, m: u32) -> Result<SeparableSurface> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be a positive integer"));
    }
    let pm = f64::from(2 * m);
    let b = f64::from(2 * m - 1) / pm;
    let wide = Interval::new(1e-3, 1e3);
    match id {
        ExampleId::Ex61 => affine_surface("6.1", &[1.0; 4], &[1.0, -1.0, -1.0, 1.0], m),
        ExampleId::Ex63 => affine_surface("6.3", &[1.0, 1.0, 3.0, 3.0, 1.0], &[1.0, 1.0, -2.0, -2.0, 1.0], m),
        ExampleId::Affine { p, q } => affine_surface("affine", p, q, m),
        ExampleId::Ex62 { r } => {
            if *r < 2 {
                return Err(Error::InvalidParameter("r must be at least 2"));
            }
            let fs = (0..2 * r)
                .map(|i| power_profile(if i < *r { 1.0 } else { -1.0 }, 0.0, m))
                .collect();
            Ok(SeparableSurface {
                label: format!("6.2 r={r}"),
                params: NormParams::new(m, 2 * r)?,
                fs,
                signed: true,
                solve_range: wide,
                xprofiles: None,
            })
        }
        ExampleId::Ex64 { r, coef } => {
            if *r < 2 {
                return Err(Error::InvalidParameter("r must be at least 2"));
            }
            let rf = *r as f64;
            let c = coef.unwrap_or_else(|| real::powi(rf / (rf - 1.0), 2 * m - 1));
            let fs = (0..2 * r + 1)
                .map(|i| power_profile(if i < *r { -c } else { 1.0 }, 0.0, m))
                .collect();
            Ok(SeparableSurface {
                label: format!("6.4 r={r}"),
                params: NormParams::new(m, 2 * r + 1)?,
                fs,
                signed: true,
                solve_range: wide,
                xprofiles: None,
            })
        }
        ExampleId::Ex65 => {
            let x = XProfile::exponential(1.0, 1.0);
            let inv = InverseQuadrature::new(ProfileQuadrature::around(&x, m, 0.0, 0)?, 1.0);
            let range = inv.x_range();
            let fs = (0..4).map(|_| Component::Inverse(inv.clone())).collect();
            Ok(SeparableSurface {
                label: "6.5".into(),
                params: NormParams::new(m, 4)?,
                fs,
                signed: false,
                solve_range: Interval::new(range.lo + 1e-9, range.hi - 1e-9),
                xprofiles: Some(vec![x; 4]),
            })
        }
        ExampleId::Ex66 => {
            let up = Component::Log(LogAbs { coef: 1.0 / b, k: b });
            let down = Component::Log(LogAbs { coef: -1.0 / b, k: b });
            Ok(SeparableSurface {
                label: "6.6".into(),
                params: NormParams::new(m, 4)?,
                fs: vec![down.clone(), up.clone(), up, down],
                signed: true,
                solve_range: wide,
                xprofiles: Some(vec![
                    XProfile::exponential(1.0, 0.0),
                    XProfile::exponential(0.0, 1.0),
                    XProfile::exponential(0.0, 1.0),
                    XProfile::exponential(1.0, 0.0),
                ]),
            })
        }
    }
}

/// `f_i(x) = ((q_i x / 2m)^{2m} - p_i) / q_i`, the inverse of the closed-form
/// affine position integral.
fn affine_surface(label: &str, p: &[f64], q: &[f64], m: u32) -> Result<SeparableSurface> {
    let n = p.len().saturating_sub(1);
    let sys = extract_affine_system(n, p, q)?;
    let scale = p.iter().chain(q).fold(0.0f64, |a, v| a.max(v.abs()));
    if !sys.is_satisfied(1e-12, scale * scale) {
        return Err(Error::ConstraintViolated("affine parameters do not satisfy the coefficient system"));
    }
    let pm = f64::from(2 * m);
    let fs = p
        .iter()
        .zip(q)
        .map(|(&pi, &qi)| power_profile(real::powi(qi / pm, 2 * m) / qi, -pi / qi, m))
        .collect();
    Ok(SeparableSurface {
        label: label.into(),
        params: NormParams::new(m, n + 1)?,
        fs,
        signed: true,
        solve_range: Interval::new(1e-3, 1e3),
        xprofiles: Some(p.iter().zip(q).map(|(&a, &b)| XProfile::affine(a, b)).collect()),
    })
}

/// Coordinates other than the solved one are drawn from this window.
pub const SAMPLE_WINDOW: (f64, f64) = (0.3, 1.5);
/// Solved coordinates smaller than this are rejected.
pub const MIN_COORD: f64 = 0.1;

impl SeparableSurface {
    pub fn dim(&self) -> usize {
        self.fs.len()
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.fs.iter().zip(x).map(|(f, &t)| f.value(t)).sum()
    }

    /// One attempt: fixes all coordinates but a random one in
    /// [`SAMPLE_WINDOW`] (random signs when allowed) and solves the
    /// monotone slice for the last. The solved coordinate is moved to the
    /// end so the chart `x_{n+1}(x_1, …, x_n)` is regular there.
    pub fn try_sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Vec<f64>> {
        let d = self.dim();
        let k = rng.gen_range(0..d);
        let mut x = vec![0.0; d];
        let mut rest = 0.0;
        for (i, xi) in x.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let mag = rng.gen_range(SAMPLE_WINDOW.0..=SAMPLE_WINDOW.1);
            let s = if self.signed && rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            *xi = s * mag;
            rest += self.fs[i].value(*xi);
        }
        let s = if self.signed && rng.gen_bool(0.5) { -1.0 } else { 1.0 };
        let y = self.fs[k].solve(-rest, s, &self.solve_range)?;
        if !(y >= MIN_COORD) || !y.is_finite() {
            return None;
        }
        x[k] = s * y;
        Some(x)
    }

    /// Draws `count` on-surface points, giving up after `max_tries`.
    pub fn sample_points<R: Rng + ?Sized>(&self, rng: &mut R, count: usize, max_tries: usize) -> Result<Vec<Vec<f64>>> {
        let mut out = Vec::with_capacity(count);
        let mut tries = 0;
        while out.len() < count {
            if tries >= max_tries {
                return Err(Error::RootNotFound("too many rejected slices"));
            }
            tries += 1;
            if let Some(x) = self.try_sample(rng) {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Permutes profiles and coordinates so that the largest `|f_i'|` comes
    /// last; the separable chart solves for that coordinate.
    pub fn chart_order(&self, x: &[f64]) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.dim()).collect();
        let slope = |i: usize| self.fs[i].d1(x[i]).abs();
        let best = (0..self.dim()).fold(0, |b, i| if slope(i) > slope(b) { i } else { b });
        idx.swap(best, self.dim() - 1);
        idx
    }

    /// Profiles reordered by `order`.
    pub fn permuted(&self, order: &[usize]) -> Vec<Component> {
        order.iter().map(|&i| self.fs[i].clone()).collect()
    }
}
