//! Positions `x_i = ± ∫ X_i^{-(2m-1)/2m} du_i` of a separable patch.

use alloc::vec::Vec;

use super::domain::Interval;
use super::xprofile::{Anchor, XProfile};
use super::{admissible_domain, minimality_identity_residual};
use crate::function::C3Function;
use crate::real;
use crate::{Error, Result};

/// Panels of the composite 2-point Gauss–Legendre rule.
pub const QUAD_PANELS: usize = 256;

const GL_NODE: f64 = 0.577_350_269_189_625_8; // 1/sqrt(3)

/// `∫_0^1 g` by composite 2-point Gauss–Legendre; never samples the ends.
fn gauss_unit<G: Fn(f64) -> f64>(g: G, panels: usize) -> f64 {
    let h = 1.0 / panels as f64;
    let mut acc = 0.0;
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * h;
        acc += g(mid - 0.5 * h * GL_NODE) + g(mid + 0.5 * h * GL_NODE);
    }
    0.5 * h * acc
}

/// 8-point Gauss–Legendre nodes and weights on `[-1, 1]`, positive half.
const GL8: [(f64, f64); 4] = [
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
];

/// Antiderivative `F(u) = ∫_{anchor}^u X^{-(2m-1)/2m}` of one profile on
/// one positivity interval.
#[derive(Debug, Clone)]
pub struct ProfileQuadrature {
    pub profile: XProfile,
    pub m: u32,
    pub interval: Interval,
    pub anchor: Anchor,
    pub panels: usize,
}

impl ProfileQuadrature {
    pub fn new(profile: XProfile, m: u32, interval: Interval) -> Self {
        let anchor = profile.anchor(&interval);
        Self {
            profile,
            m,
            interval,
            anchor,
            panels: QUAD_PANELS,
        }
    }

    /// On the positivity interval containing `u`.
    pub fn around(profile: &XProfile, m: u32, u: f64, index: usize) -> Result<Self> {
        let interval = profile
            .interval_containing(u)
            .ok_or(Error::NonPositiveProfile { index, u })?;
        Ok(Self::new(profile.clone(), m, interval))
    }

    fn b(&self) -> f64 {
        f64::from(2 * self.m - 1) / f64::from(2 * self.m)
    }

    /// `X(t)^{-b}`.
    pub fn integrand(&self, t: f64) -> f64 {
        real::powf(self.profile.eval(t), -self.b())
    }

    /// `∫_{-∞}^u`, accurate when the integrand increases up to `u`.
    fn left_tail(&self, u: f64) -> f64 {
        gauss_unit(
            |tau| {
                let s = 1.0 - tau;
                self.integrand(u - tau / s) / (s * s)
            },
            self.panels,
        )
    }

    /// `∫_u^∞`, accurate when the integrand decreases after `u`.
    fn right_tail(&self, u: f64) -> f64 {
        gauss_unit(
            |tau| {
                let s = 1.0 - tau;
                self.integrand(u + tau / s) / (s * s)
            },
            self.panels,
        )
    }

    /// `∫_{-∞}^u`, split at the integrand peak.
    fn from_minus_infinity(&self, u: f64) -> f64 {
        let c = self.profile.integrand_peak();
        if u <= c {
            self.left_tail(u)
        } else {
            self.left_tail(c) + self.right_tail(c) - self.right_tail(u)
        }
    }

    /// `∫_u^∞`, split at the integrand peak.
    fn to_plus_infinity(&self, u: f64) -> f64 {
        let c = self.profile.integrand_peak();
        if u >= c {
            self.right_tail(u)
        } else {
            self.left_tail(c) + self.right_tail(c) - self.left_tail(u)
        }
    }

    pub fn position(&self, u: f64) -> f64 {
        match self.anchor {
            Anchor::Root(a) => {
                // t = a + (u - a) τ^{2m} removes the (t - a)^{-b} singularity.
                let p = 2 * self.m;
                let d = u - a;
                let b = self.b();
                d * f64::from(p)
                    * gauss_unit(
                        |tau| {
                            let tp = real::powi(tau, p - 1);
                            real::powf(self.profile.eval_from_root(a, d * tp * tau), -b) * tp
                        },
                        self.panels,
                    )
            }
            Anchor::Point(a) => (u - a) * gauss_unit(|tau| self.integrand(a + (u - a) * tau), self.panels),
            Anchor::PlusInfinity => -self.to_plus_infinity(u),
            Anchor::MinusInfinity => self.from_minus_infinity(u),
        }
    }

    /// `∫_a^b` of the integrand by composite 8-point Gauss–Legendre with
    /// panels short relative to the distance from finite interval ends.
    /// `None` when the segment gets too close to an end for that to work.
    fn segment(&self, a: f64, b: f64) -> Option<f64> {
        let (l, r) = (a.min(b), a.max(b));
        if l == r {
            return Some(0.0);
        }
        let i = self.interval;
        let dist = (l - i.lo).min(i.hi - r);
        if dist < 1e-3 {
            return None;
        }
        let h_max = 0.25 * dist.min(1.0);
        let panels = real::ceil((r - l) / h_max);
        if !(panels <= 4096.0) {
            return None;
        }
        let panels = (panels as usize).max(1);
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for k in 0..panels {
            let mid = a + (k as f64 + 0.5) * h;
            for &(z, w) in &GL8 {
                acc += w * (self.integrand(mid - 0.5 * h * z) + self.integrand(mid + 0.5 * h * z));
            }
        }
        Some(0.5 * h * acc)
    }

    /// `position(to)` from a known `position(from) = at`.
    fn advance(&self, from: f64, at: f64, to: f64) -> f64 {
        match self.segment(from, to) {
            Some(d) => at + d,
            None => self.position(to),
        }
    }

    /// One Newton step against the full quadrature, removing drift
    /// accumulated by the segment sums.
    fn polish(&self, u: f64, x: f64) -> f64 {
        let next = u - (self.position(u) - x) / self.integrand(u);
        if next.is_finite() && self.interval.contains(next) {
            next
        } else {
            u
        }
    }

    /// Solves `position(u) = x` by safeguarded Newton on the interval.
    /// Positions along the iteration are carried forward by short
    /// segment integrals instead of full quadratures.
    pub fn invert(&self, x: f64) -> Result<f64> {
        let i = self.interval;
        // Bracket in the line coordinate τ with u = i.from_line(τ).
        let mut a = -1.0f64;
        let mut b = 1.0f64;
        let mut ua = i.from_line(a);
        let mut xa = self.position(ua);
        let mut k = 0;
        while xa > x {
            a *= 2.0;
            let next = i.from_line(a);
            xa = self.advance(ua, xa, next);
            ua = next;
            k += 1;
            if k > 10 {
                return Err(Error::RootNotFound("position below the profile range"));
            }
        }
        let mut ub = i.from_line(b);
        let mut xb = self.advance(ua, xa, ub);
        k = 0;
        while xb < x {
            b *= 2.0;
            let next = i.from_line(b);
            xb = self.advance(ub, xb, next);
            ub = next;
            k += 1;
            if k > 10 {
                return Err(Error::RootNotFound("position above the profile range"));
            }
        }
        let (mut lo, mut hi) = (ua, ub);
        // Start from the closer bracket end, whose position is known.
        let (mut u, mut xu) = if (x - xa).abs() <= (xb - x).abs() { (ua, xa) } else { (ub, xb) };
        for _ in 0..100 {
            let f = xu - x;
            if f == 0.0 {
                return Ok(self.polish(u, x));
            }
            if f < 0.0 {
                lo = u;
            } else {
                hi = u;
            }
            let step = f / self.integrand(u);
            let mut next = u - step;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = 0.5 * (lo + hi);
            }
            if (next - u).abs() <= 4.0 * f64::EPSILON * (1.0 + u.abs()) || hi - lo <= 4.0 * f64::EPSILON * (1.0 + u.abs()) {
                return Ok(self.polish(next, x));
            }
            xu = self.advance(u, xu, next);
            u = next;
        }
        Ok(self.polish(u, x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatchPoint {
    /// `(u_1, …, u_{n+1})` with `u_{n+1} = -Σ u_i`.
    pub u: Vec<f64>,
    /// `(x_1, …, x_{n+1})`.
    pub x: Vec<f64>,
}

/// Points of a separable hypersurface parametrized by `u ∈ R^n`.
#[derive(Debug, Clone)]
pub struct SeparableMinimalPatch {
    pub m: u32,
    pub xprofiles: Vec<XProfile>,
    pub signs: Vec<f64>,
    pub points: Vec<PatchPoint>,
}

impl SeparableMinimalPatch {
    /// Largest `|Σ X_j'(A - X_j)|` over the patch.
    pub fn max_identity_residual(&self) -> Result<f64> {
        self.points
            .iter()
            .map(|p| minimality_identity_residual(&self.xprofiles, &p.u).map(f64::abs))
            .try_fold(0.0f64, |a, r| r.map(|r| a.max(r)))
    }
}

/// Integrates every position coordinate at each grid point
/// `(u_1, …, u_n)`; `signs` has `n + 1` entries of `±1`.
pub fn patch_from_xprofiles(xs: &[XProfile], signs: &[f64], m: u32, u_grid: &[Vec<f64>]) -> Result<SeparableMinimalPatch> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be a positive integer"));
    }
    if signs.len() != xs.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            got: signs.len(),
        });
    }
    if signs.iter().any(|&s| s != 1.0 && s != -1.0) {
        return Err(Error::InvalidParameter("signs must be +1 or -1"));
    }
    if admissible_domain(xs)?.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let n = xs.len() - 1;
    let mut points = Vec::with_capacity(u_grid.len());
    for g in u_grid {
        if g.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: g.len() });
        }
        let mut u = g.clone();
        u.push(-g.iter().sum::<f64>());
        let mut x = Vec::with_capacity(n + 1);
        for (i, (prof, &ui)) in xs.iter().zip(&u).enumerate() {
            prof.positive_value(i, ui)?;
            let q = ProfileQuadrature::around(prof, m, ui, i)?;
            x.push(signs[i] * q.position(ui));
        }
        points.push(PatchPoint { u, x });
    }
    Ok(SeparableMinimalPatch {
        m,
        xprofiles: xs.to_vec(),
        signs: signs.to_vec(),
        points,
    })
}

/// `f(x) = u` where `x = s · F(u)`: the separable profile recovered from
/// an X-profile, with `f' = s X^b`, `f'' = b X^{2b-1} X'` and `b = (2m-1)/2m`.
#[derive(Debug, Clone)]
pub struct InverseQuadrature {
    pub quad: ProfileQuadrature,
    pub sign: f64,
}

impl InverseQuadrature {
    pub fn new(quad: ProfileQuadrature, sign: f64) -> Self {
        Self { quad, sign }
    }

    /// Open range of `x` covered by the profile.
    pub fn x_range(&self) -> Interval {
        let i = self.quad.interval;
        let ends = [i.from_line(-700.0), i.from_line(700.0)].map(|u| self.sign * self.quad.position(u));
        Interval::new(ends[0].min(ends[1]), ends[0].max(ends[1]))
    }

    fn parts(&self, x: f64) -> (f64, f64, f64, f64, f64) {
        let u = self.quad.invert(self.sign * x).unwrap_or(f64::NAN);
        let p = &self.quad.profile;
        (u, p.eval(u), p.deriv(u), p.deriv2(u), self.quad.b())
    }
}

impl C3Function for InverseQuadrature {
    fn value(&self, x: f64) -> f64 {
        self.parts(x).0
    }

    fn d1(&self, x: f64) -> f64 {
        let (_, xv, _, _, b) = self.parts(x);
        self.sign * real::powf(xv, b)
    }

    fn d2(&self, x: f64) -> f64 {
        let (_, xv, dx, _, b) = self.parts(x);
        b * real::powf(xv, 2.0 * b - 1.0) * dx
    }

    fn d3(&self, x: f64) -> f64 {
        let (_, xv, dx, d2x, b) = self.parts(x);
        let inner = (2.0 * b - 1.0) * real::powf(xv, 2.0 * b - 2.0) * dx * dx + real::powf(xv, 2.0 * b - 1.0) * d2x;
        b * inner * self.sign * real::powf(xv, b)
    }

    fn jet(&self, x: f64) -> crate::function::Jet {
        let (u, xv, dx, d2x, b) = self.parts(x);
        let d1 = self.sign * real::powf(xv, b);
        let inner = (2.0 * b - 1.0) * real::powf(xv, 2.0 * b - 2.0) * dx * dx + real::powf(xv, 2.0 * b - 1.0) * d2x;
        crate::function::Jet {
            v: u,
            d1,
            d2: b * real::powf(xv, 2.0 * b - 1.0) * dx,
            d3: b * inner * d1,
        }
    }
}
