//! Coefficient systems obtained by expanding the minimality identity
//! `Σ X_j'(A - X_j) = 0` on the hyperplane `Σ u_i = 0` for a given ansatz.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::XProfile;
use crate::poly::Poly;
use crate::real;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnsatzKind {
    Affine,
    Quadratic,
    Exponential,
}

impl AnsatzKind {
    pub fn name(&self) -> &'static str {
        match self {
            AnsatzKind::Affine => "affine",
            AnsatzKind::Quadratic => "quadratic",
            AnsatzKind::Exponential => "exponential",
        }
    }
}

/// Basis function of the expanded identity. Indices are 0-based; the
/// display form is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisTag {
    Const,
    /// `u_i`
    Lin(usize),
    /// `u_i^2`
    Sq(usize),
    /// `u_i u_j`, `i < j`
    Cross(usize, usize),
    /// `u_i^2 u_j + u_i u_j^2`, `i < j`
    SymCubic(usize, usize),
    /// `u_1 u_2 u_3`
    Triple,
    /// `e^{s (u_i + u_j)}`, `s = ±1`, `i < j`
    Exp { sign: i8, i: usize, j: usize },
    /// Any other monomial `Π u_i^{e_i}` (or `Π e^{e_i u_i}` for the
    /// exponential ansatz). The derived systems leave these at zero.
    Other(Vec<i32>),
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::Const => write!(f, "P0"),
            BasisTag::Lin(i) => write!(f, "P{}", i + 1),
            BasisTag::Sq(i) => write!(f, "P{}{}", i + 1, i + 1),
            BasisTag::Cross(i, j) => write!(f, "P{}{}", i + 1, j + 1),
            BasisTag::SymCubic(i, j) => write!(f, "P{}{}{}", i + 1, i + 1, j + 1),
            BasisTag::Triple => write!(f, "P123"),
            BasisTag::Exp { sign, i, j } => {
                let s = if *sign > 0 { '+' } else { '-' };
                write!(f, "E{}{}{}", s, i + 1, j + 1)
            }
            BasisTag::Other(e) => {
                write!(f, "M(")?;
                for (k, x) in e.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl BasisTag {
    /// Human-readable basis function.
    pub fn basis_label(&self) -> String {
        use alloc::format;
        match self {
            BasisTag::Const => "1".into(),
            BasisTag::Lin(i) => format!("u{}", i + 1),
            BasisTag::Sq(i) => format!("u{}^2", i + 1),
            BasisTag::Cross(i, j) => format!("u{}*u{}", i + 1, j + 1),
            BasisTag::SymCubic(i, j) => format!("u{a}^2*u{b}+u{a}*u{b}^2", a = i + 1, b = j + 1),
            BasisTag::Triple => "u1*u2*u3".into(),
            BasisTag::Exp { sign, i, j } => {
                let s = if *sign > 0 { "" } else { "-" };
                format!("exp({s}u{}{s2}u{})", i + 1, j + 1, s2 = if *sign > 0 { "+" } else { "-" })
            }
            BasisTag::Other(e) => format!("{}", BasisTag::Other(e.clone())),
        }
    }

    /// Value of the basis function at `u = (u_1, …, u_n)`.
    pub fn eval(&self, kind: AnsatzKind, u: &[f64]) -> f64 {
        match self {
            BasisTag::Const => 1.0,
            BasisTag::Lin(i) => u[*i],
            BasisTag::Sq(i) => u[*i] * u[*i],
            BasisTag::Cross(i, j) => u[*i] * u[*j],
            BasisTag::SymCubic(i, j) => u[*i] * u[*j] * (u[*i] + u[*j]),
            BasisTag::Triple => u[0] * u[1] * u[2],
            BasisTag::Exp { sign, i, j } => real::exp(f64::from(*sign) * (u[*i] + u[*j])),
            BasisTag::Other(e) => match kind {
                AnsatzKind::Exponential => real::exp(e.iter().zip(u).map(|(&k, &x)| f64::from(k) * x).sum()),
                _ => e.iter().zip(u).map(|(&k, &x)| real::powi(x, k as u32)).product(),
            },
        }
    }
}

/// Coefficients of the expanded identity in canonical tag order.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzSystem {
    pub kind: AnsatzKind,
    /// Number of free parameters `u_1, …, u_n`.
    pub n: usize,
    pub coefficients: Vec<(BasisTag, f64)>,
}

impl AnsatzSystem {
    pub fn get(&self, tag: &BasisTag) -> Option<f64> {
        self.coefficients.iter().find(|(t, _)| t == tag).map(|&(_, c)| c)
    }

    /// `Σ c_tag · basis_tag(u)`.
    pub fn reconstruct(&self, u: &[f64]) -> f64 {
        self.coefficients.iter().map(|(t, c)| c * t.eval(self.kind, u)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients.iter().fold(0.0f64, |a, (_, c)| a.max(c.abs()))
    }

    /// All coefficients vanish to `tol · (1 + scale)`, where `scale` is the
    /// size of the parameters that produced them.
    pub fn is_satisfied(&self, tol: f64, scale: f64) -> bool {
        self.max_abs() <= tol * (1.0 + scale)
    }
}

/// `Σ_j X_j'(U_j) (A - X_j(U_j))` where `U_j = u_j` for `j ≤ n` and
/// `U_{n+1} = -Σ u_i`; `x_and_dx(j, U_j)` returns `(X_j, X_j')`.
fn identity_poly<F: Fn(usize, &Poly) -> (Poly, Poly)>(n: usize, x_and_dx: F) -> Poly {
    let mut vars: Vec<Poly> = (0..n).map(|i| Poly::var(n, i, 1.0, 1)).collect();
    let last = vars.iter().fold(Poly::zero(n), |acc, v| acc - v.clone());
    vars.push(last);
    let pairs: Vec<(Poly, Poly)> = vars.iter().enumerate().map(|(j, u)| x_and_dx(j, u)).collect();
    let a = pairs.iter().fold(Poly::zero(n), |acc, (x, _)| acc + x.clone());
    pairs
        .into_iter()
        .fold(Poly::zero(n), |acc, (x, dx)| acc + &dx * &(a.clone() - x))
}

fn unit(n: usize, idx: &[usize]) -> Vec<i32> {
    let mut e = vec![0; n];
    for &i in idx {
        e[i] += 1;
    }
    e
}

fn check_len(name: &'static str, v: &[f64], want: usize) -> Result<()> {
    if v.len() != want {
        return Err(Error::DimensionMismatch {
            expected: want,
            got: v.len(),
        });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite(name));
    }
    Ok(())
}

/// Collects `poly` into `tags` and returns the remaining terms as
/// [`BasisTag::Other`].
fn collect(kind: AnsatzKind, n: usize, mut poly: Poly, tags: Vec<(BasisTag, Vec<Vec<i32>>)>) -> AnsatzSystem {
    let mut coefficients = Vec::with_capacity(tags.len());
    let scale = poly.max_abs_coefficient();
    for (tag, monos) in tags {
        let c = poly.coefficient(&monos[0]);
        for e in &monos {
            // The grouped monomials share the coefficient `c`; keep any
            // mismatch as a leftover term.
            poly = poly - Poly::monomial(n, c, e.clone());
        }
        coefficients.push((tag, c));
    }
    // Grouped monomials agree only up to rounding.
    let poly = poly.chop(64.0 * f64::EPSILON * scale);
    for (e, c) in poly.terms() {
        coefficients.push((BasisTag::Other(e.to_vec()), c));
    }
    AnsatzSystem { kind, n, coefficients }
}

/// Affine ansatz `X_i = p_i + q_i u_i` with `n + 1` profiles.
/// Basis `{1, u_1, …, u_n}`.
pub fn extract_affine_system(n: usize, p: &[f64], q: &[f64]) -> Result<AnsatzSystem> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2"));
    }
    check_len("p", p, n + 1)?;
    check_len("q", q, n + 1)?;
    if q.iter().any(|&x| x == 0.0) {
        return Err(Error::InvalidParameter("affine ansatz needs every q_i nonzero"));
    }
    let poly = identity_poly(n, |j, u| {
        let x = Poly::constant(n, p[j]) + u.clone().scale(q[j]);
        (x, Poly::constant(n, q[j]))
    });
    let mut tags = vec![(BasisTag::Const, vec![vec![0; n]])];
    tags.extend((0..n).map(|i| (BasisTag::Lin(i), vec![unit(n, &[i])])));
    Ok(collect(AnsatzKind::Affine, n, poly, tags))
}

/// Quadratic ansatz `X_i = p_i + q_i u_i + r_i u_i^2`, `n = 3`.
pub fn extract_quadratic_system(p: &[f64], q: &[f64], r: &[f64]) -> Result<AnsatzSystem> {
    let n = 3;
    check_len("p", p, 4)?;
    check_len("q", q, 4)?;
    check_len("r", r, 4)?;
    let poly = identity_poly(n, |j, u| {
        let u2 = u * u;
        let x = Poly::constant(n, p[j]) + u.clone().scale(q[j]) + u2.scale(r[j]);
        let dx = Poly::constant(n, q[j]) + u.clone().scale(2.0 * r[j]);
        (x, dx)
    });
    let mut tags = vec![(BasisTag::Const, vec![vec![0; n]])];
    tags.extend((0..n).map(|i| (BasisTag::Lin(i), vec![unit(n, &[i])])));
    tags.extend((0..n).map(|i| (BasisTag::Sq(i), vec![unit(n, &[i, i])])));
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        tags.push((BasisTag::Cross(i, j), vec![unit(n, &[i, j])]));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        tags.push((BasisTag::SymCubic(i, j), vec![unit(n, &[i, i, j]), unit(n, &[i, j, j])]));
    }
    tags.push((BasisTag::Triple, vec![unit(n, &[0, 1, 2])]));
    Ok(collect(AnsatzKind::Quadratic, n, poly, tags))
}

/// Exponential ansatz `X_i = q_i e^{u_i} + r_i e^{-u_i}`, `n = 3`, expanded
/// in `w_i = e^{u_i}` with `w_4 = 1/(w_1 w_2 w_3)`.
pub fn extract_exponential_system(q: &[f64], r: &[f64]) -> Result<AnsatzSystem> {
    let n = 3;
    check_len("q", q, 4)?;
    check_len("r", r, 4)?;
    let w = |j: usize| -> Poly {
        if j < n {
            Poly::var(n, j, 1.0, 1)
        } else {
            Poly::monomial(n, 1.0, vec![-1; n])
        }
    };
    let winv = |j: usize| -> Poly {
        if j < n {
            Poly::var(n, j, 1.0, -1)
        } else {
            Poly::monomial(n, 1.0, vec![1; n])
        }
    };
    let xs: Vec<(Poly, Poly)> = (0..=n)
        .map(|j| {
            let a = w(j).scale(q[j]);
            let b = winv(j).scale(r[j]);
            (a.clone() + b.clone(), a - b)
        })
        .collect();
    let a = xs.iter().fold(Poly::zero(n), |acc, (x, _)| acc + x.clone());
    let poly = xs
        .into_iter()
        .fold(Poly::zero(n), |acc, (x, dx)| acc + &dx * &(a.clone() - x));
    let mut tags = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        tags.push((BasisTag::Exp { sign: 1, i, j }, vec![unit(n, &[i, j])]));
        let neg: Vec<i32> = unit(n, &[i, j]).into_iter().map(|e| -e).collect();
        tags.push((BasisTag::Exp { sign: -1, i, j }, vec![neg]));
    }
    Ok(collect(AnsatzKind::Exponential, n, poly, tags))
}

/// Builds the system matching the ansatz family of `xs` (all profiles
/// must share it).
pub fn extract_system(xs: &[XProfile]) -> Result<AnsatzSystem> {
    let n = xs.len().saturating_sub(1);
    let mut p = Vec::new();
    let mut q = Vec::new();
    let mut r = Vec::new();
    let kind = match xs.first() {
        Some(XProfile::Affine { .. }) => AnsatzKind::Affine,
        Some(XProfile::Quadratic { .. }) => AnsatzKind::Quadratic,
        Some(XProfile::Exponential { .. }) => AnsatzKind::Exponential,
        _ => return Err(Error::InvalidParameter("no coefficient system for this X-profile family")),
    };
    for x in xs {
        match (*x).clone() {
            XProfile::Affine { p: a, q: b } if kind == AnsatzKind::Affine => {
                p.push(a);
                q.push(b);
            }
            XProfile::Quadratic { p: a, q: b, r: c } if kind == AnsatzKind::Quadratic => {
                p.push(a);
                q.push(b);
                r.push(c);
            }
            XProfile::Exponential { q: b, r: c } if kind == AnsatzKind::Exponential => {
                q.push(b);
                r.push(c);
            }
            _ => return Err(Error::InvalidParameter("mixed X-profile families")),
        }
    }
    match kind {
        AnsatzKind::Affine => extract_affine_system(n, &p, &q),
        AnsatzKind::Quadratic => extract_quadratic_system(&p, &q, &r),
        AnsatzKind::Exponential => extract_exponential_system(&q, &r),
    }
}
