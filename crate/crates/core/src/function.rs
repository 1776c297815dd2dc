//! Scalar profile functions with derivatives up to third order.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::real;

/// Value and first three derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// A `C^3` function of one real variable.
pub trait C3Function: Send + Sync {
    fn value(&self, t: f64) -> f64;
    fn d1(&self, t: f64) -> f64;
    fn d2(&self, t: f64) -> f64;
    fn d3(&self, t: f64) -> f64;

    fn jet(&self, t: f64) -> Jet {
        Jet {
            v: self.value(t),
            d1: self.d1(t),
            d2: self.d2(t),
            d3: self.d3(t),
        }
    }
}

impl<T: C3Function + ?Sized> C3Function for Box<T> {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn d1(&self, t: f64) -> f64 {
        (**self).d1(t)
    }
    fn d2(&self, t: f64) -> f64 {
        (**self).d2(t)
    }
    fn d3(&self, t: f64) -> f64 {
        (**self).d3(t)
    }
    fn jet(&self, t: f64) -> Jet {
        (**self).jet(t)
    }
}

impl<T: C3Function + ?Sized> C3Function for &T {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn d1(&self, t: f64) -> f64 {
        (**self).d1(t)
    }
    fn d2(&self, t: f64) -> f64 {
        (**self).d2(t)
    }
    fn d3(&self, t: f64) -> f64 {
        (**self).d3(t)
    }
    fn jet(&self, t: f64) -> Jet {
        (**self).jet(t)
    }
}

impl<T: C3Function + ?Sized> C3Function for alloc::sync::Arc<T> {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn d1(&self, t: f64) -> f64 {
        (**self).d1(t)
    }
    fn d2(&self, t: f64) -> f64 {
        (**self).d2(t)
    }
    fn d3(&self, t: f64) -> f64 {
        (**self).d3(t)
    }
    fn jet(&self, t: f64) -> Jet {
        (**self).jet(t)
    }
}

pub type BoxedFn = Box<dyn C3Function>;

/// `Σ c_k t^k`, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn linear(slope: f64, offset: f64) -> Self {
        Self::new(alloc::vec![offset, slope])
    }

    /// `c t^k`.
    pub fn monomial(c: f64, k: usize) -> Self {
        let mut coeffs = alloc::vec![0.0; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn eval_deriv(&self, t: f64, order: usize) -> f64 {
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().skip(order).rev() {
            let mut f = 1.0;
            for j in 0..order {
                f *= (k - j) as f64;
            }
            acc = acc * t + c * f;
        }
        acc
    }
}

impl C3Function for Polynomial {
    fn value(&self, t: f64) -> f64 {
        self.eval_deriv(t, 0)
    }
    fn d1(&self, t: f64) -> f64 {
        self.eval_deriv(t, 1)
    }
    fn d2(&self, t: f64) -> f64 {
        self.eval_deriv(t, 2)
    }
    fn d3(&self, t: f64) -> f64 {
        self.eval_deriv(t, 3)
    }
}

/// Scherk profile `f(t) = -ln(cos(c t)) / c`, so `f' = tan(c t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogCos {
    pub rate: f64,
}

impl C3Function for LogCos {
    fn value(&self, t: f64) -> f64 {
        -real::ln(real::cos(self.rate * t)) / self.rate
    }
    fn d1(&self, t: f64) -> f64 {
        real::tan(self.rate * t)
    }
    fn d2(&self, t: f64) -> f64 {
        let y = real::tan(self.rate * t);
        self.rate * (1.0 + y * y)
    }
    fn d3(&self, t: f64) -> f64 {
        let y = real::tan(self.rate * t);
        2.0 * self.rate * self.rate * y * (1.0 + y * y)
    }
}

/// `f(x) = coef · ln(k |x|)`, defined for `x ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogAbs {
    pub coef: f64,
    pub k: f64,
}

impl C3Function for LogAbs {
    fn value(&self, x: f64) -> f64 {
        self.coef * real::ln(self.k * x.abs())
    }
    fn d1(&self, x: f64) -> f64 {
        self.coef / x
    }
    fn d2(&self, x: f64) -> f64 {
        -self.coef / (x * x)
    }
    fn d3(&self, x: f64) -> f64 {
        2.0 * self.coef / (x * x * x)
    }
}

/// `amp · f(rate · t) + offset`.
pub struct Scaled<F> {
    pub inner: F,
    pub amp: f64,
    pub rate: f64,
    pub offset: f64,
}

impl<F: C3Function> Scaled<F> {
    pub fn new(inner: F, amp: f64, rate: f64) -> Self {
        Self {
            inner,
            amp,
            rate,
            offset: 0.0,
        }
    }
}

impl<F: C3Function> C3Function for Scaled<F> {
    fn value(&self, t: f64) -> f64 {
        self.amp * self.inner.value(self.rate * t) + self.offset
    }
    fn d1(&self, t: f64) -> f64 {
        self.amp * self.rate * self.inner.d1(self.rate * t)
    }
    fn d2(&self, t: f64) -> f64 {
        self.amp * self.rate * self.rate * self.inner.d2(self.rate * t)
    }
    fn d3(&self, t: f64) -> f64 {
        let r = self.rate;
        self.amp * r * r * r * self.inner.d3(r * t)
    }
}

/// Wraps a plain closure; derivatives come from 5-point central stencils.
pub struct FiniteDiff<F> {
    f: F,
}

impl<F: Fn(f64) -> f64 + Send + Sync> FiniteDiff<F> {
    pub fn new(f: F) -> Self {
        Self { f }
    }

    fn stencil(&self, t: f64, h: f64) -> [f64; 5] {
        let f = &self.f;
        [f(t - 2.0 * h), f(t - h), f(t), f(t + h), f(t + 2.0 * h)]
    }
}

// Step sizes balance truncation O(h^4) (O(h^2) for d3) against rounding.
const H1: f64 = 7.4e-4;
const H2: f64 = 2.5e-3;
const H3: f64 = 6.0e-3;

impl<F: Fn(f64) -> f64 + Send + Sync> C3Function for FiniteDiff<F> {
    fn value(&self, t: f64) -> f64 {
        (self.f)(t)
    }
    fn d1(&self, t: f64) -> f64 {
        let h = H1 * (1.0 + t.abs());
        let [a, b, _, d, e] = self.stencil(t, h);
        (a - 8.0 * b + 8.0 * d - e) / (12.0 * h)
    }
    fn d2(&self, t: f64) -> f64 {
        let h = H2 * (1.0 + t.abs());
        let [a, b, c, d, e] = self.stencil(t, h);
        (-a + 16.0 * b - 30.0 * c + 16.0 * d - e) / (12.0 * h * h)
    }
    fn d3(&self, t: f64) -> f64 {
        let h = H3 * (1.0 + t.abs());
        let [a, b, _, d, e] = self.stencil(t, h);
        (-a + 2.0 * b - 2.0 * d + e) / (2.0 * h * h * h)
    }
}

/// Largest relative mismatch between each analytic derivative and a central
/// difference of the derivative one order below, at `t`.
pub fn derivative_defect(f: &dyn C3Function, t: f64) -> f64 {
    let h = 1e-4 * (1.0 + t.abs());
    let fd = |g: &dyn Fn(f64) -> f64| {
        (-g(t + 2.0 * h) + 8.0 * g(t + h) - 8.0 * g(t - h) + g(t - 2.0 * h)) / (12.0 * h)
    };
    let rel = |a: f64, b: f64| (a - b).abs() / (1.0 + b.abs());
    let e1 = rel(fd(&|s| f.value(s)), f.d1(t));
    let e2 = rel(fd(&|s| f.d1(s)), f.d2(t));
    let e3 = rel(fd(&|s| f.d2(s)), f.d3(t));
    e1.max(e2).max(e3)
}
