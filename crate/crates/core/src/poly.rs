//! Sparse multivariate Laurent polynomials with `f64` coefficients.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::real;

/// `Σ c_e · Π x_i^{e_i}` with integer (possibly negative) exponents.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, f64>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: f64) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    pub fn monomial(nvars: usize, c: f64, exps: Vec<i32>) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if c != 0.0 {
            p.terms.insert(exps, c);
        }
        p
    }

    /// `c · x_i^e`.
    pub fn var(nvars: usize, i: usize, c: f64, e: i32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Self::monomial(nvars, c, exps)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], f64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[i32]) -> f64 {
        self.terms.get(exps).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(mut self, c: f64) -> Self {
        for v in self.terms.values_mut() {
            *v *= c;
        }
        self.terms.retain(|_, v| *v != 0.0);
        self
    }

    fn add_term(&mut self, exps: Vec<i32>, c: f64) {
        let slot = self.terms.entry(exps).or_insert(0.0);
        *slot += c;
    }

    fn prune(mut self) -> Self {
        self.terms.retain(|_, v| *v != 0.0);
        self
    }

    /// Drops terms with `|c| ≤ tol`.
    pub fn chop(mut self, tol: f64) -> Self {
        self.terms.retain(|_, v| v.abs() > tol);
        self
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.nvars, "point dimension");
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter().zip(x).fold(c, |acc, (&k, &xi)| {
                    if k >= 0 {
                        acc * real::powi(xi, k as u32)
                    } else {
                        acc / real::powi(xi, k.unsigned_abs())
                    }
                })
            })
            .sum()
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self.prune()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out.prune()
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
