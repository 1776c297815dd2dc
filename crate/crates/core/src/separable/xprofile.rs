use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::domain::Interval;
use crate::function::C3Function;
use crate::real;
use crate::{Error, Result};

/// `X_i(u_i) = (f_i')^{2m/(2m-1)}` as a function of `u_i = f_i(x_i)`.
#[derive(Clone)]
pub enum XProfile {
    /// `p + q u`
    Affine { p: f64, q: f64 },
    /// `p + q u + r u^2`
    Quadratic { p: f64, q: f64, r: f64 },
    /// `q e^u + r e^{-u}`
    Exponential { q: f64, r: f64 },
    /// Any smooth positive function on `domain`; `anchor` is the lower
    /// limit used for the position quadrature.
    Custom {
        x: Arc<dyn C3Function>,
        domain: Interval,
        anchor: f64,
    },
}

impl core::fmt::Debug for XProfile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            XProfile::Affine { p, q } => write!(f, "Affine({p}, {q})"),
            XProfile::Quadratic { p, q, r } => write!(f, "Quadratic({p}, {q}, {r})"),
            XProfile::Exponential { q, r } => write!(f, "Exponential({q}, {r})"),
            XProfile::Custom { domain, anchor, .. } => write!(f, "Custom({domain:?}, anchor {anchor})"),
        }
    }
}

/// Lower limit of `∫ X^{-(2m-1)/2m}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Anchor {
    /// A simple zero of `X`; the integrand has an integrable singularity.
    Root(f64),
    Point(f64),
    PlusInfinity,
    MinusInfinity,
}

impl XProfile {
    pub fn affine(p: f64, q: f64) -> Self {
        XProfile::Affine { p, q }
    }

    pub fn quadratic(p: f64, q: f64, r: f64) -> Self {
        XProfile::Quadratic { p, q, r }
    }

    pub fn exponential(q: f64, r: f64) -> Self {
        XProfile::Exponential { q, r }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            XProfile::Affine { .. } => "affine",
            XProfile::Quadratic { .. } => "quadratic",
            XProfile::Exponential { .. } => "exponential",
            XProfile::Custom { .. } => "custom",
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        match *self {
            XProfile::Affine { p, q } => p + q * u,
            XProfile::Quadratic { p, q, r } => p + (q + r * u) * u,
            XProfile::Exponential { q, r } => q * real::exp(u) + r * real::exp(-u),
            XProfile::Custom { ref x, .. } => x.value(u),
        }
    }

    pub fn deriv(&self, u: f64) -> f64 {
        match *self {
            XProfile::Affine { q, .. } => q,
            XProfile::Quadratic { q, r, .. } => q + 2.0 * r * u,
            XProfile::Exponential { q, r } => q * real::exp(u) - r * real::exp(-u),
            XProfile::Custom { ref x, .. } => x.d1(u),
        }
    }

    pub fn deriv2(&self, u: f64) -> f64 {
        match *self {
            XProfile::Affine { .. } => 0.0,
            XProfile::Quadratic { r, .. } => 2.0 * r,
            XProfile::Exponential { q, r } => q * real::exp(u) + r * real::exp(-u),
            XProfile::Custom { ref x, .. } => x.d2(u),
        }
    }

    /// `X(a + s)` where `a` is a zero of `X`, without the cancellation in
    /// `X(a) + …` for small `s`.
    pub fn eval_from_root(&self, a: f64, s: f64) -> f64 {
        match *self {
            XProfile::Affine { q, .. } => q * s,
            XProfile::Quadratic { q, r, .. } => (q + 2.0 * r * a + r * s) * s,
            // q e^a = -r e^{-a} =: c, so X(a + s) = 2c sinh(s).
            XProfile::Exponential { q, .. } => 2.0 * q * real::exp(a) * libm::sinh(s),
            XProfile::Custom { ref x, .. } => x.value(a + s),
        }
    }

    /// Location of the minimum of `X` (maximum of `X^{-b}`) for the
    /// exponential family; `±∞` when `X` is monotone.
    pub fn integrand_peak(&self) -> f64 {
        match *self {
            XProfile::Exponential { q, r } if q > 0.0 && r > 0.0 => 0.5 * real::ln(r / q),
            XProfile::Exponential { q, .. } if q > 0.0 => f64::NEG_INFINITY,
            _ => f64::INFINITY,
        }
    }

    /// Maximal open intervals on which `X > 0`, in increasing order.
    pub fn positive_intervals(&self) -> Vec<Interval> {
        const INF: f64 = f64::INFINITY;
        match *self {
            XProfile::Affine { p, q } => {
                if q > 0.0 {
                    vec![Interval::new(-p / q, INF)]
                } else if q < 0.0 {
                    vec![Interval::new(-INF, -p / q)]
                } else if p > 0.0 {
                    vec![Interval::real_line()]
                } else {
                    Vec::new()
                }
            }
            XProfile::Quadratic { p, q, r } => {
                if r == 0.0 {
                    return XProfile::affine(p, q).positive_intervals();
                }
                let disc = q * q - 4.0 * r * p;
                if disc < 0.0 {
                    return if r > 0.0 { vec![Interval::real_line()] } else { Vec::new() };
                }
                let s = real::sqrt(disc);
                // Stable root pair.
                let t = -0.5 * (q + if q >= 0.0 { s } else { -s });
                let (mut a, mut b) = if t != 0.0 { (t / r, p / t) } else { (0.0, 0.0) };
                if a > b {
                    core::mem::swap(&mut a, &mut b);
                }
                if r > 0.0 {
                    vec![Interval::new(-INF, a), Interval::new(b, INF)]
                } else if a < b {
                    vec![Interval::new(a, b)]
                } else {
                    Vec::new()
                }
            }
            XProfile::Exponential { q, r } => {
                if q >= 0.0 && r >= 0.0 {
                    if q > 0.0 || r > 0.0 {
                        vec![Interval::real_line()]
                    } else {
                        Vec::new()
                    }
                } else if q > 0.0 {
                    // q e^{2u} > -r
                    vec![Interval::new(0.5 * real::ln(-r / q), INF)]
                } else if r > 0.0 {
                    vec![Interval::new(-INF, 0.5 * real::ln(r / -q))]
                } else {
                    Vec::new()
                }
            }
            XProfile::Custom { domain, .. } => vec![domain],
        }
    }

    /// The positivity interval containing `u`.
    pub fn interval_containing(&self, u: f64) -> Option<Interval> {
        self.positive_intervals().into_iter().find(|i| i.contains(u))
    }

    /// Natural lower limit of the position integral on `interval`: a
    /// finite simple root if there is one, else an infinite end where the
    /// integrand decays exponentially, else an interior point.
    pub fn anchor(&self, interval: &Interval) -> Anchor {
        if let XProfile::Custom { anchor, .. } = *self {
            return Anchor::Point(anchor);
        }
        let simple_root = |a: f64| a.is_finite() && self.deriv(a) != 0.0;
        if simple_root(interval.lo) {
            return Anchor::Root(interval.lo);
        }
        if simple_root(interval.hi) {
            return Anchor::Root(interval.hi);
        }
        if let XProfile::Exponential { q, r } = *self {
            if r > 0.0 && interval.lo == f64::NEG_INFINITY {
                return Anchor::MinusInfinity;
            }
            if q > 0.0 && interval.hi == f64::INFINITY {
                return Anchor::PlusInfinity;
            }
        }
        Anchor::Point(interval.representative())
    }

    /// `X(u)`, failing unless it is strictly positive.
    pub fn positive_value(&self, index: usize, u: f64) -> Result<f64> {
        let x = self.eval(u);
        if x > 0.0 && x.is_finite() {
            Ok(x)
        } else {
            Err(Error::NonPositiveProfile { index, u })
        }
    }
}
