//! Mean curvature of translation and separable hypersurfaces.
//!
//! Two independent routes are provided:
//!
//! * closed forms for the Weingarten coefficients `η_j^k` (defined by
//!   `η_{u_j} = Σ_k η_j^k X_{u_k}`) and for `H = trace(η_j^k) / n`;
//! * [`mean_curvature_oracle`], which differentiates the Birkhoff normal of a
//!   [`Chart`] numerically and expresses each `η_{u_j}` in the basis
//!   `{X_{u_1}, …, X_{u_n}, ν}`.
//!
//! Orientation: graph normals have positive last coordinate; implicit normals
//! point along `grad F`. With these conventions the translation formula
//! carries a leading minus sign and the separable one does not, so at `m = 1`
//! the translation `H` is the negative of the textbook `div(∇f/W)/n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::function::C3Function;
use crate::linalg::Matrix;
use crate::norm::{odd_pow, AmbientVector, BirkhoffNormal, NormParams};
use crate::real;
use crate::{Error, Result};

/// Weingarten coefficients: entry `(j, k)` is `η_j^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeingartenMatrix {
    entries: Matrix,
}

impl WeingartenMatrix {
    pub fn n(&self) -> usize {
        self.entries.size()
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.entries[(j, k)]
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    /// `trace / n`.
    pub fn mean_curvature(&self) -> f64 {
        self.trace() / self.n() as f64
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        (0..n).map(|j| (0..n).map(|k| self.get(j, k)).collect()).collect()
    }
}

/// Per-profile quantities shared by the closed forms.
pub(crate) struct Primed {
    /// `(f')^{1/(2m-1)}`
    pub(crate) root: Vec<f64>,
    /// `X = (f')^{2m/(2m-1)}`
    pub(crate) x: Vec<f64>,
    /// `T = (f')^{-(2m-2)/(2m-1)} f''`
    pub(crate) t: Vec<f64>,
    pub(crate) d1: Vec<f64>,
}

pub(crate) fn primed(d1: &[f64], d2: &[f64], m: u32) -> Result<Primed> {
    let den = 2 * m - 1;
    let neg = -(2 * m as i32 - 2);
    let mut out = Primed {
        root: Vec::with_capacity(d1.len()),
        x: Vec::with_capacity(d1.len()),
        t: Vec::with_capacity(d1.len()),
        d1: d1.to_vec(),
    };
    for (i, (&y, &y2)) in d1.iter().zip(d2).enumerate() {
        if !y.is_finite() || !y2.is_finite() {
            return Err(Error::NonFinite("profile derivatives"));
        }
        // At m = 1 the negative power is y^0 and a zero slope is harmless.
        if y == 0.0 && neg != 0 {
            return Err(Error::SingularConfiguration { index: i });
        }
        out.root.push(odd_pow(y, 1, den));
        out.x.push(odd_pow(y, 2 * m as i32, den));
        out.t.push(odd_pow(y, neg, den) * y2);
    }
    Ok(out)
}

fn derivatives<F: C3Function>(fs: &[F], at: &[f64]) -> (Vec<f64>, Vec<f64>) {
    fs.iter().zip(at).map(|(f, &t)| f.jet(t)).map(|j| (j.d1, j.d2)).unzip()
}

fn check_translation<F>(fs: &[F], u: &[f64], p: &NormParams) -> Result<()> {
    if fs.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            got: fs.len(),
        });
    }
    if u.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            got: u.len(),
        });
    }
    Ok(())
}

/// `A^{-(2m+1)/2m} / (2m-1)`.
fn prefactor(a: f64, m: u32) -> f64 {
    let p = f64::from(2 * m);
    real::powf(a, -(p + 1.0) / p) / f64::from(2 * m - 1)
}

/// Weingarten coefficients of the translation graph `f = Σ f_i(u_i)`.
pub fn weingarten_translation<F: C3Function>(
    fs: &[F],
    u: &[f64],
    p: &NormParams,
) -> Result<WeingartenMatrix> {
    check_translation(fs, u, p)?;
    let (d1, d2) = derivatives(fs, u);
    let q = primed(&d1, &d2, p.m())?;
    let n = p.n();
    let a = 1.0 + q.x.iter().sum::<f64>();
    let c = prefactor(a, p.m());
    let mut w = Matrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            w[(j, k)] = if j == k {
                -c * q.t[j] * (a - q.x[j])
            } else {
                c * q.root[j] * d2[j] * q.root[k]
            };
        }
    }
    finite(WeingartenMatrix { entries: w })
}

/// Closed-form mean curvature of a translation graph:
/// `H = -A^{-(2m+1)/2m} / (n(2m-1)) · Σ_j T_j (1 + Σ_{i≠j} X_i)`.
pub fn mean_curvature_translation<F: C3Function>(fs: &[F], u: &[f64], p: &NormParams) -> Result<f64> {
    check_translation(fs, u, p)?;
    let (d1, d2) = derivatives(fs, u);
    let q = primed(&d1, &d2, p.m())?;
    let a = 1.0 + q.x.iter().sum::<f64>();
    let sum: f64 = (0..p.n()).map(|j| q.t[j] * (a - q.x[j])).sum();
    let h = -prefactor(a, p.m()) * sum / p.n() as f64;
    finite_scalar(h)
}

fn check_separable<F: C3Function>(fs: &[F], x: &[f64], p: &NormParams) -> Result<()> {
    if fs.len() != p.dim() || x.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: fs.len().min(x.len()),
        });
    }
    let (sum, scale) = fs
        .iter()
        .zip(x)
        .fold((0.0, 0.0), |(s, a), (f, &t)| {
            let v = f.value(t);
            (s + v, a + v.abs())
        });
    if !sum.is_finite() {
        return Err(Error::NonFinite("separable surface value"));
    }
    if sum.abs() > 1e-9 * (1.0 + scale) {
        return Err(Error::OffSurface { defect: sum.abs() });
    }
    Ok(())
}

/// Closed-form mean curvature of the separable hypersurface `Σ f_i(x_i) = 0`:
/// `H = A^{-(2m+1)/2m} / (n(2m-1)) · Σ_j T_j (A - X_j)`, `A = Σ X_i`.
pub fn mean_curvature_separable<F: C3Function>(fs: &[F], x: &[f64], p: &NormParams) -> Result<f64> {
    check_separable(fs, x, p)?;
    let (d1, d2) = derivatives(fs, x);
    if d1[p.n()] == 0.0 {
        return Err(Error::SingularConfiguration { index: p.n() });
    }
    let q = primed(&d1, &d2, p.m())?;
    let a: f64 = q.x.iter().sum();
    let sum: f64 = (0..p.dim()).map(|j| q.t[j] * (a - q.x[j])).sum();
    finite_scalar(prefactor(a, p.m()) * sum / p.n() as f64)
}

/// Weingarten coefficients of a separable hypersurface in the chart
/// `x_{n+1} = x_{n+1}(x_1, …, x_n)`, `∂x_{n+1}/∂x_j = -f_j'/f_{n+1}'`.
pub fn weingarten_separable<F: C3Function>(
    fs: &[F],
    x: &[f64],
    p: &NormParams,
) -> Result<WeingartenMatrix> {
    check_separable(fs, x, p)?;
    let (d1, d2) = derivatives(fs, x);
    let last = p.n();
    if d1[last] == 0.0 {
        return Err(Error::SingularConfiguration { index: last });
    }
    let q = primed(&d1, &d2, p.m())?;
    let a: f64 = q.x.iter().sum();
    let c = prefactor(a, p.m());
    let n = p.n();
    let mut w = Matrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            w[(j, k)] = if j == k {
                c * (q.x[j] * q.t[last] + q.t[j] * (a - q.x[j]))
            } else {
                c * q.root[k] * (q.d1[j] * q.t[last] - q.root[j] * d2[j])
            };
        }
    }
    finite(WeingartenMatrix { entries: w })
}

fn finite(w: WeingartenMatrix) -> Result<WeingartenMatrix> {
    let n = w.n();
    for j in 0..n {
        for k in 0..n {
            if !w.get(j, k).is_finite() {
                return Err(Error::NonFinite("Weingarten matrix"));
            }
        }
    }
    Ok(w)
}

fn finite_scalar(h: f64) -> Result<f64> {
    if h.is_finite() {
        Ok(h)
    } else {
        Err(Error::NonFinite("mean curvature"))
    }
}

/// A local parametrisation `u ↦ X(u)` of a hypersurface in `R^{n+1}`.
pub trait Chart {
    /// Number of parameters `n`.
    fn param_dim(&self) -> usize;
    fn position(&self, u: &[f64]) -> Result<Vec<f64>>;
    /// The tangent vectors `X_{u_1}, …, X_{u_n}`.
    fn tangents(&self, u: &[f64]) -> Result<Vec<Vec<f64>>>;
    /// A Euclidean normal `ν` (any length, any sign).
    fn euclidean_normal(&self, u: &[f64]) -> Result<Vec<f64>>;
    fn birkhoff_normal(&self, u: &[f64], p: &NormParams) -> Result<BirkhoffNormal>;
}

/// Graph `u ↦ (u, f(u))` of a function given with its gradient.
pub struct GraphChart<G> {
    n: usize,
    value_and_grad: G,
}

impl<G: Fn(&[f64]) -> (f64, Vec<f64>)> GraphChart<G> {
    pub fn new(n: usize, value_and_grad: G) -> Self {
        Self { n, value_and_grad }
    }
}

fn graph_tangents(grad: &[f64]) -> Vec<Vec<f64>> {
    let n = grad.len();
    (0..n)
        .map(|k| {
            let mut t = vec![0.0; n + 1];
            t[k] = 1.0;
            t[n] = grad[k];
            t
        })
        .collect()
}

fn graph_nu(grad: &[f64]) -> Vec<f64> {
    let mut nu: Vec<f64> = grad.iter().map(|g| -g).collect();
    nu.push(1.0);
    nu
}

impl<G: Fn(&[f64]) -> (f64, Vec<f64>)> Chart for GraphChart<G> {
    fn param_dim(&self) -> usize {
        self.n
    }
    fn position(&self, u: &[f64]) -> Result<Vec<f64>> {
        let mut x = u.to_vec();
        x.push((self.value_and_grad)(u).0);
        Ok(x)
    }
    fn tangents(&self, u: &[f64]) -> Result<Vec<Vec<f64>>> {
        Ok(graph_tangents(&(self.value_and_grad)(u).1))
    }
    fn euclidean_normal(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(graph_nu(&(self.value_and_grad)(u).1))
    }
    fn birkhoff_normal(&self, u: &[f64], p: &NormParams) -> Result<BirkhoffNormal> {
        p.norm().graph_normal(&(self.value_and_grad)(u).1)
    }
}

/// Translation graph `f(u) = Σ f_i(u_i)`.
pub struct TranslationChart<'a, F> {
    fs: &'a [F],
}

impl<'a, F: C3Function> TranslationChart<'a, F> {
    pub fn new(fs: &'a [F]) -> Self {
        Self { fs }
    }

    fn grad(&self, u: &[f64]) -> Vec<f64> {
        self.fs.iter().zip(u).map(|(f, &t)| f.d1(t)).collect()
    }
}

impl<F: C3Function> Chart for TranslationChart<'_, F> {
    fn param_dim(&self) -> usize {
        self.fs.len()
    }
    fn position(&self, u: &[f64]) -> Result<Vec<f64>> {
        let mut x = u.to_vec();
        x.push(self.fs.iter().zip(u).map(|(f, &t)| f.value(t)).sum());
        Ok(x)
    }
    fn tangents(&self, u: &[f64]) -> Result<Vec<Vec<f64>>> {
        Ok(graph_tangents(&self.grad(u)))
    }
    fn euclidean_normal(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(graph_nu(&self.grad(u)))
    }
    fn birkhoff_normal(&self, u: &[f64], p: &NormParams) -> Result<BirkhoffNormal> {
        p.norm().graph_normal(&self.grad(u))
    }
}

/// The separable hypersurface `Σ f_i(x_i) = 0` near a point, parametrised by
/// `(x_1, …, x_n)` with `x_{n+1}` recovered by Newton's method.
pub struct SeparableChart<'a, F> {
    fs: &'a [F],
    seed_last: f64,
}

impl<'a, F: C3Function> SeparableChart<'a, F> {
    /// `base` is an on-surface point with `n + 1` coordinates.
    pub fn new(fs: &'a [F], base: &[f64]) -> Result<Self> {
        if fs.len() != base.len() || fs.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: fs.len(),
                got: base.len(),
            });
        }
        Ok(Self {
            fs,
            seed_last: base[base.len() - 1],
        })
    }

    fn full_point(&self, u: &[f64]) -> Result<Vec<f64>> {
        let n = self.fs.len() - 1;
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: u.len() });
        }
        let last = &self.fs[n];
        let target: f64 = -self.fs[..n].iter().zip(u).map(|(f, &t)| f.value(t)).sum::<f64>();
        let mut t = self.seed_last;
        let mut converged = false;
        for _ in 0..100 {
            let j = last.jet(t);
            let (r, d) = (j.v - target, j.d1);
            if d == 0.0 || !d.is_finite() || !r.is_finite() {
                return Err(Error::RootNotFound("separable chart: vanishing derivative"));
            }
            let step = r / d;
            t -= step;
            if step.abs() <= 4.0 * f64::EPSILON * (1.0 + t.abs()) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::RootNotFound("separable chart: Newton did not converge"));
        }
        let mut x = u.to_vec();
        x.push(t);
        Ok(x)
    }

    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        self.fs.iter().zip(x).map(|(f, &t)| f.d1(t)).collect()
    }
}

impl<F: C3Function> Chart for SeparableChart<'_, F> {
    fn param_dim(&self) -> usize {
        self.fs.len() - 1
    }
    fn position(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.full_point(u)
    }
    fn tangents(&self, u: &[f64]) -> Result<Vec<Vec<f64>>> {
        let x = self.full_point(u)?;
        let g = self.gradient(&x);
        let n = u.len();
        Ok((0..n)
            .map(|k| {
                let mut t = vec![0.0; n + 1];
                t[k] = 1.0;
                t[n] = -g[k] / g[n];
                t
            })
            .collect())
    }
    fn euclidean_normal(&self, u: &[f64]) -> Result<Vec<f64>> {
        Ok(self.gradient(&self.full_point(u)?))
    }
    fn birkhoff_normal(&self, u: &[f64], p: &NormParams) -> Result<BirkhoffNormal> {
        let x = self.full_point(u)?;
        p.norm().implicit_normal(&self.gradient(&x))
    }
}

/// Finite-difference estimate of `H` and the normal-direction defect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEstimate {
    pub h: f64,
    /// Largest `|ν|`-component of any `η_{u_j}` (with `ν` Euclidean-unit).
    pub tangency_defect: f64,
}

/// `H = trace(dη)/n` by central differences of the Birkhoff normal.
///
/// `step = None` picks `ε^{1/3} (1 + |u_j|)` per coordinate.
pub fn mean_curvature_oracle<C: Chart + ?Sized>(
    chart: &C,
    u: &[f64],
    p: &NormParams,
    step: Option<f64>,
) -> Result<OracleEstimate> {
    let n = chart.param_dim();
    if u.len() != n || n + 1 != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.len(),
        });
    }
    if let Some(h) = step {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter("oracle step must be positive"));
        }
    }
    let tangents = chart.tangents(u)?;
    let mut nu = chart.euclidean_normal(u)?;
    let len = real::sqrt(nu.iter().map(|v| v * v).sum());
    if !(len > 0.0) || !len.is_finite() {
        return Err(Error::SingularMatrix);
    }
    nu.iter_mut().for_each(|v| *v /= len);
    let mut cols: Vec<&[f64]> = tangents.iter().map(|t| t.as_slice()).collect();
    cols.push(&nu);
    let basis = Matrix::from_columns(&cols);

    let mut trace = 0.0;
    let mut defect = 0.0f64;
    let mut shifted = u.to_vec();
    for j in 0..n {
        let h = step.unwrap_or(real::cbrt_eps()) * (1.0 + u[j].abs());
        shifted[j] = u[j] + h;
        let plus = chart.birkhoff_normal(&shifted, p)?;
        shifted[j] = u[j] - h;
        let minus = chart.birkhoff_normal(&shifted, p)?;
        shifted[j] = u[j];
        let deta: Vec<f64> = plus
            .eta
            .iter()
            .zip(minus.eta.iter())
            .map(|(a, b)| (a - b) / (2.0 * h))
            .collect();
        if deta.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("oracle stencil"));
        }
        let coeffs = basis.solve(&deta)?;
        trace += coeffs[j];
        defect = defect.max(coeffs[n].abs());
    }
    Ok(OracleEstimate {
        h: trace / n as f64,
        tangency_defect: defect,
    })
}

/// Per-point comparison of the closed form against the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub point: Vec<f64>,
    pub eta: AmbientVector,
    pub weingarten: WeingartenMatrix,
    pub h_analytic: f64,
    pub h_oracle: f64,
    pub tangency_defect: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CurvatureReport {
    fn assemble(
        point: Vec<f64>,
        eta: AmbientVector,
        weingarten: WeingartenMatrix,
        oracle: OracleEstimate,
        tol: f64,
    ) -> Self {
        let h_analytic = weingarten.mean_curvature();
        let pass = (h_analytic - oracle.h).abs() <= tol * (1.0 + h_analytic.abs())
            && oracle.tangency_defect <= tol;
        Self {
            point,
            eta,
            weingarten,
            h_analytic,
            h_oracle: oracle.h,
            tangency_defect: oracle.tangency_defect,
            tol,
            pass,
        }
    }

    pub fn translation<F: C3Function>(fs: &[F], u: &[f64], p: &NormParams, tol: f64) -> Result<Self> {
        let w = weingarten_translation(fs, u, p)?;
        let chart = TranslationChart::new(fs);
        let eta = chart.birkhoff_normal(u, p)?.eta;
        let oracle = mean_curvature_oracle(&chart, u, p, None)?;
        Ok(Self::assemble(u.to_vec(), eta, w, oracle, tol))
    }

    /// `x` is an on-surface point with `n + 1` coordinates.
    pub fn separable<F: C3Function>(fs: &[F], x: &[f64], p: &NormParams, tol: f64) -> Result<Self> {
        let w = weingarten_separable(fs, x, p)?;
        let chart = SeparableChart::new(fs, x)?;
        let params = &x[..x.len() - 1];
        let eta = chart.birkhoff_normal(params, p)?.eta;
        let oracle = mean_curvature_oracle(&chart, params, p, None)?;
        Ok(Self::assemble(x.to_vec(), eta, w, oracle, tol))
    }
}

/// Classical Euclidean mean curvature `trace(g^{-1} h) / n` of the graph of
/// `f`, from its gradient and Hessian, with the upward unit normal.
pub fn euclidean_graph_mean_curvature(grad: &[f64], hessian: &[Vec<f64>]) -> Result<f64> {
    let n = grad.len();
    let w = real::sqrt(1.0 + grad.iter().map(|g| g * g).sum::<f64>());
    let mut g = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = if i == j { 1.0 } else { 0.0 } + grad[i] * grad[j];
        }
    }
    let mut tr = 0.0;
    for k in 0..n {
        let col: Vec<f64> = (0..n).map(|i| hessian[i][k] / w).collect();
        // (g^{-1} h)_{kk}
        tr += g.solve(&col)?[k];
    }
    Ok(tr / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{LogCos, Polynomial, Scaled};
    use alloc::boxed::Box;

    fn params(m: u32, n: usize) -> NormParams {
        NormParams::new(m, n + 1).unwrap()
    }

    fn half_square() -> Polynomial {
        Polynomial::monomial(0.5, 2)
    }

    #[test]
    fn linear_profiles_are_flat() {
        let fs = vec![Polynomial::linear(0.7, 1.0), Polynomial::linear(-1.3, 0.0), Polynomial::linear(2.0, 3.0)];
        let p = params(2, 3);
        let u = [0.1, 0.2, -0.3];
        let w = weingarten_translation(&fs, &u, &p).unwrap();
        assert!(w.rows().iter().flatten().all(|&v| v == 0.0));
        assert_eq!(mean_curvature_translation(&fs, &u, &p).unwrap(), 0.0);
    }

    #[test]
    fn euclidean_weingarten_of_paraboloid() {
        // f = u1^2/2 + u2^2/2 at (1, 1): grad (1, 1), Hessian I.
        // Classical shape operator with upward normal: S = g^{-1} h, and
        // η_{u_j} = -S applied to X_{u_j}, so η_j^k = -(g^{-1}h)_{kj}.
        let fs = vec![half_square(), half_square()];
        let p = params(1, 2);
        let w = weingarten_translation(&fs, &[1.0, 1.0], &p).unwrap();
        let w3 = libm::sqrt(3.0);
        // g = [[2,1],[1,2]], g^{-1} = [[2,-1],[-1,2]]/3, h = I/√3.
        let s = [[2.0 / (3.0 * w3), -1.0 / (3.0 * w3)], [-1.0 / (3.0 * w3), 2.0 / (3.0 * w3)]];
        for j in 0..2 {
            for k in 0..2 {
                assert!((w.get(j, k) + s[k][j]).abs() < 1e-14, "{j}{k}");
            }
        }
    }

    #[test]
    fn trace_matches_closed_form_cubic() {
        let fs: Vec<Polynomial> = (0..3).map(|_| Polynomial::monomial(1.0 / 3.0, 3)).collect();
        let p = params(2, 3);
        let u = [1.0, 1.0, 1.0];
        let w = weingarten_translation(&fs, &u, &p).unwrap();
        let h = mean_curvature_translation(&fs, &u, &p).unwrap();
        assert!((w.mean_curvature() - h).abs() <= 1e-15 * (1.0 + h.abs()));
        // f' = 1, f'' = 2: A = 4, T = 2, A - X = 3.
        let want = -libm::pow(4.0, -5.0 / 4.0) / (3.0 * 3.0) * (3.0 * 2.0 * 3.0);
        assert!((h - want).abs() < 1e-15);
    }

    #[test]
    fn scherk_is_minimal_at_m1() {
        let fs = vec![Scaled::new(LogCos { rate: 1.0 }, 1.0, 1.0), Scaled::new(LogCos { rate: 1.0 }, -1.0, 1.0)];
        let p = params(1, 2);
        let h = mean_curvature_translation(&fs, &[0.3, 0.4], &p).unwrap();
        assert!(h.abs() < 1e-10);
    }

    #[test]
    fn paraboloid_m2_matches_oracle() {
        let fs = vec![half_square(), half_square()];
        let p = params(2, 2);
        let h = mean_curvature_translation(&fs, &[1.0, 1.0], &p).unwrap();
        let o = mean_curvature_oracle(&TranslationChart::new(&fs), &[1.0, 1.0], &p, None).unwrap();
        assert!((h - o.h).abs() <= 1e-8 * (1.0 + h.abs()));
        assert!(o.tangency_defect <= 1e-8);
    }

    #[test]
    fn zero_slope_is_singular_for_m_above_one() {
        let fs = vec![half_square(), half_square()];
        assert_eq!(
            mean_curvature_translation(&fs, &[0.0, 1.0], &params(2, 2)),
            Err(Error::SingularConfiguration { index: 0 })
        );
        // m = 1 has no negative power.
        assert!(mean_curvature_translation(&fs, &[0.0, 1.0], &params(1, 2)).is_ok());
    }

    fn example_62() -> Vec<Polynomial> {
        vec![
            Polynomial::monomial(1.0, 2),
            Polynomial::monomial(1.0, 2),
            Polynomial::monomial(-1.0, 2),
            Polynomial::monomial(-1.0, 2),
        ]
    }

    #[test]
    fn separable_hyperplane_and_quadric_cone() {
        let fs = vec![Polynomial::linear(1.0, 0.0), Polynomial::linear(2.0, 0.0), Polynomial::linear(-3.0, 0.0)];
        let p = params(2, 2);
        let x = [1.0, 1.0, 1.0];
        assert_eq!(mean_curvature_separable(&fs, &x, &p).unwrap(), 0.0);
        assert!(weingarten_separable(&fs, &x, &p).unwrap().rows().iter().flatten().all(|&v| v == 0.0));

        let fs = example_62();
        let p = params(1, 3);
        let x = [1.0, 1.0, 1.0, 1.0];
        assert!(mean_curvature_separable(&fs, &x, &p).unwrap().abs() < 1e-10);
        assert!(weingarten_separable(&fs, &x, &p).unwrap().trace().abs() < 1e-10);
    }

    #[test]
    fn off_surface_is_rejected() {
        let fs = example_62();
        let p = params(1, 3);
        assert!(matches!(
            mean_curvature_separable(&fs, &[1.0, 1.0, 1.0, 0.5], &p),
            Err(Error::OffSurface { .. })
        ));
    }

    #[test]
    fn sphere_curvature_against_oracle() {
        // x^2 + y^2 + z^2 - 1 = 0 at a generic point; curvature is nonzero.
        let fs = vec![
            Polynomial::new(vec![-1.0, 0.0, 1.0]),
            Polynomial::monomial(1.0, 2),
            Polynomial::monomial(1.0, 2),
        ];
        let (a, b) = (0.3, 0.5);
        let x = [a, b, libm::sqrt(1.0 - a * a - b * b)];
        let p = params(1, 2);
        let h = mean_curvature_separable(&fs, &x, &p).unwrap();
        let r = CurvatureReport::separable(&fs, &x, &p, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((h - 1.0).abs() < 1e-12, "unit sphere, outward normal: H = 1, got {h}");
    }

    #[test]
    fn hemisphere_oracle() {
        let chart = GraphChart::new(2, |u: &[f64]| {
            let s = libm::sqrt(1.0 - u[0] * u[0] - u[1] * u[1]);
            (s, vec![-u[0] / s, -u[1] / s])
        });
        let o = mean_curvature_oracle(&chart, &[0.1, 0.2], &params(1, 2), None).unwrap();
        assert!((o.h.abs() - 1.0).abs() < 2e-4, "{o:?}");
    }

    #[test]
    fn hyperplane_oracle() {
        let chart = GraphChart::new(3, |u: &[f64]| (u[0] - 2.0 * u[1] + 0.5 * u[2], vec![1.0, -2.0, 0.5]));
        let o = mean_curvature_oracle(&chart, &[0.3, 0.1, -0.7], &params(3, 3), None).unwrap();
        assert!(o.h.abs() < 1e-12 && o.tangency_defect < 1e-12);
    }

    #[test]
    fn cubic_translation_m2_n3_oracle() {
        let fs = vec![
            Polynomial::new(vec![0.0, 0.5, 0.3, 0.2]),
            Polynomial::new(vec![0.1, -0.8, 0.1, 0.4]),
            Polynomial::new(vec![0.0, 1.2, -0.5, 0.1]),
        ];
        let p = params(2, 3);
        let u = [0.4, -0.3, 0.6];
        let h = mean_curvature_translation(&fs, &u, &p).unwrap();
        let o = mean_curvature_oracle(&TranslationChart::new(&fs), &u, &p, None).unwrap();
        assert!((h - o.h).abs() <= 1e-6, "{h} vs {}", o.h);
    }

    #[test]
    fn separable_weingarten_trace_matches_and_scales() {
        let mut fs: Vec<Box<dyn C3Function>> = vec![
            Box::new(Polynomial::new(vec![0.0, 0.7, 0.4, -0.2])),
            Box::new(Polynomial::new(vec![0.2, -0.9, 0.3])),
            Box::new(Polynomial::new(vec![-0.1, 0.5, 0.0, 0.3])),
        ];
        let x: Vec<f64> = vec![0.4, -0.5, 0.3, 0.8];
        let partial: f64 = fs.iter().zip(&x).map(|(f, &t)| f.value(t)).sum();
        // last profile 1.1 t + 0.6 t^2 + c with c chosen to put x on the surface
        let c = -partial - (1.1 * x[3] + 0.6 * x[3] * x[3]);
        fs.push(Box::new(Polynomial::new(vec![c, 1.1, 0.6])));
        let p = params(2, 3);
        let w = weingarten_separable(&fs, &x, &p).unwrap();
        let h = mean_curvature_separable(&fs, &x, &p).unwrap();
        assert!((w.mean_curvature() - h).abs() <= 1e-14 * (1.0 + h.abs()));

        let scaled: Vec<Scaled<&Box<dyn C3Function>>> = fs.iter().map(|f| Scaled::new(f, 3.7, 1.0)).collect();
        let ws = weingarten_separable(&scaled, &x, &p).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                assert!((ws.get(j, k) - w.get(j, k)).abs() <= 1e-9 * (1.0 + w.get(j, k).abs()));
            }
        }
    }

    #[test]
    fn euclidean_reference_on_paraboloid() {
        let h = euclidean_graph_mean_curvature(&[1.0, 0.0], &[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        // κ = 1 / (1 + 1)^{3/2} along u1, zero along u2.
        assert!((h - 0.5 * libm::pow(2.0, -1.5)).abs() < 1e-15);
    }
}
