//! Admissible parameter domains `{u : X_i(u_i) > 0, Σ u_i = 0}`.

use alloc::vec::Vec;

use rand::Rng;

use super::XProfile;
use crate::real;
use crate::{Error, Result};

/// Open interval; endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn real_line() -> Self {
        Self::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    /// Membership with the endpoints pulled inwards by `margin`.
    pub fn contains_with_margin(&self, x: f64, margin: f64) -> bool {
        x > self.lo + margin && x < self.hi - margin
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn negated(&self) -> Self {
        Self::new(-self.hi, -self.lo)
    }

    pub fn intersect(&self, other: &Interval) -> Self {
        Self::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Empty up to a relative slack, so that rounding in `Σ p_i = 0`
    /// cannot open a sliver.
    pub fn is_empty_rel(&self, rel: f64) -> bool {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return !(self.lo < self.hi);
        }
        self.hi - self.lo <= rel * (1.0 + self.lo.abs().max(self.hi.abs()))
    }

    /// A strictly increasing bijection `R → self`.
    pub fn from_line(&self, t: f64) -> f64 {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => self.lo + (self.hi - self.lo) / (1.0 + real::exp(-t)),
            (true, false) => self.lo + real::exp(t),
            (false, true) => self.hi - real::exp(-t),
            (false, false) => t,
        }
    }

    /// A finite point of the interval, preferring the midpoint and `0`.
    pub fn representative(&self) -> f64 {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => 0.5 * (self.lo + self.hi),
            (true, false) => {
                if self.lo < 0.0 {
                    0.0f64.max(self.lo + 1.0)
                } else {
                    self.lo + 1.0
                }
            }
            (false, true) => {
                if self.hi > 0.0 {
                    0.0f64.min(self.hi - 1.0)
                } else {
                    self.hi - 1.0
                }
            }
            (false, false) => 0.0,
        }
    }
}

/// Relative slack used when deciding emptiness.
pub const EMPTY_SLACK: f64 = 1e-9;

/// One convex piece: `u_i ∈ I_i` for `i ≤ n` and `-Σu_i ∈ I_{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleBox {
    pub intervals: Vec<Interval>,
    pub last: Interval,
    /// Admissible values of `Σ_{i≤n} u_i`.
    pub sum_range: Interval,
}

fn sum_range(intervals: &[Interval], last: &Interval) -> Interval {
    let lo: f64 = intervals.iter().map(|i| i.lo).sum();
    let hi: f64 = intervals.iter().map(|i| i.hi).sum();
    Interval::new(lo, hi).intersect(&last.negated())
}

impl AdmissibleBox {
    pub fn new(intervals: Vec<Interval>, last: Interval) -> Self {
        let sum_range = sum_range(&intervals, &last);
        Self {
            intervals,
            last,
            sum_range,
        }
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.iter().any(|i| i.is_empty_rel(0.0)) || self.last.is_empty_rel(0.0) || self.sum_range.is_empty_rel(EMPTY_SLACK)
    }

    /// `u` (length `n`) lies in the piece, with every constraint kept at
    /// least `margin` away from its boundary.
    pub fn contains(&self, u: &[f64], margin: f64) -> bool {
        u.len() == self.n()
            && u.iter().zip(&self.intervals).all(|(&x, i)| i.contains_with_margin(x, margin))
            && self.last.contains_with_margin(-u.iter().sum::<f64>(), margin)
    }

    /// Point with `Σ u_i = target` and `u_i = I_i(t + offsets_i)` for a
    /// common shift `t` found by bisection.
    fn point_with_sum(&self, offsets: &[f64], target: f64) -> Result<Vec<f64>> {
        let at = |t: f64| -> Vec<f64> { self.intervals.iter().zip(offsets).map(|(i, &z)| i.from_line(t + z)).collect() };
        let sum = |t: f64| at(t).iter().sum::<f64>();
        let (mut a, mut b) = (-1.0, 1.0);
        let mut grow = 0;
        while sum(a) > target {
            a *= 2.0;
            grow += 1;
            if grow > 12 {
                return Err(Error::RootNotFound("admissible point"));
            }
        }
        grow = 0;
        while sum(b) < target {
            b *= 2.0;
            grow += 1;
            if grow > 12 {
                return Err(Error::RootNotFound("admissible point"));
            }
        }
        for _ in 0..200 {
            let c = 0.5 * (a + b);
            if sum(c) < target {
                a = c;
            } else {
                b = c;
            }
            if b - a <= 1e-15 * (1.0 + a.abs()) {
                break;
            }
        }
        Ok(at(0.5 * (a + b)))
    }

    pub fn interior_point(&self) -> Result<Vec<f64>> {
        if self.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let offsets = alloc::vec![0.0; self.n()];
        self.point_with_sum(&offsets, self.sum_range.representative())
    }

    /// A random point of the piece. The sum target is drawn inside the
    /// middle of `sum_range` and the per-coordinate offsets from
    /// `[-spread, spread]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, spread: f64) -> Result<Vec<f64>> {
        if self.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let s = self.sum_range;
        let target = match (s.lo.is_finite(), s.hi.is_finite()) {
            (true, true) => s.lo + (s.hi - s.lo) * rng.gen_range(0.1..0.9),
            (true, false) => s.lo + real::exp(rng.gen_range(-2.0..1.0)),
            (false, true) => s.hi - real::exp(rng.gen_range(-2.0..1.0)),
            (false, false) => rng.gen_range(-1.0..1.0),
        };
        let offsets: Vec<f64> = (0..self.n()).map(|_| rng.gen_range(-spread..=spread)).collect();
        self.point_with_sum(&offsets, target)
    }
}

/// Union of convex pieces, one per choice of positivity interval.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleDomain {
    pub pieces: Vec<AdmissibleBox>,
}

impl AdmissibleDomain {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn first(&self) -> Result<&AdmissibleBox> {
        self.pieces.first().ok_or(Error::EmptyDomain)
    }
}

/// Intersects the positivity intervals of `xs` (`n + 1` profiles) with
/// the constraint `u_{n+1} = -Σ_{i≤n} u_i`. Empty pieces are dropped.
pub fn admissible_domain(xs: &[XProfile]) -> Result<AdmissibleDomain> {
    if xs.len() < 2 {
        return Err(Error::InvalidParameter("need at least two X-profiles"));
    }
    let choices: Vec<Vec<Interval>> = xs.iter().map(|x| x.positive_intervals()).collect();
    let mut pieces = Vec::new();
    let mut idx = alloc::vec![0usize; xs.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(AdmissibleDomain { pieces });
    }
    loop {
        let ints: Vec<Interval> = idx.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
        let (last, head) = ints.split_last().expect("non-empty");
        let b = AdmissibleBox::new(head.to_vec(), *last);
        if !b.is_empty() {
            pieces.push(b);
        }
        let mut d = 0;
        loop {
            if d == idx.len() {
                return Ok(AdmissibleDomain { pieces });
            }
            idx[d] += 1;
            if idx[d] < choices[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}
