//! Small dense linear algebra: enough for the oracle's basis solves and the
//! Gauss–Newton steps of the ansatz sweep.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: alloc::vec![0.0; n * n],
        }
    }

    /// Builds the matrix whose columns are `cols`.
    pub fn from_columns(cols: &[&[f64]]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n);
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), n);
            for i in 0..n {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Solves `A x = b` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let mut a = self.data.clone();
        let mut x = b.to_vec();
        let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::SingularMatrix);
        }
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
                .unwrap_or(col);
            if a[piv * n + col].abs() <= 1e-14 * scale {
                return Err(Error::SingularMatrix);
            }
            if piv != col {
                for k in 0..n {
                    a.swap(piv * n + k, col * n + k);
                }
                x.swap(piv, col);
            }
            let d = a[col * n + col];
            for row in col + 1..n {
                let f = a[row * n + col] / d;
                if f == 0.0 {
                    continue;
                }
                for k in col..n {
                    a[row * n + k] -= f * a[col * n + k];
                }
                x[row] -= f * x[col];
            }
        }
        for row in (0..n).rev() {
            let mut s = x[row];
            for k in row + 1..n {
                s -= a[row * n + k] * x[k];
            }
            x[row] = s / a[row * n + row];
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularMatrix);
        }
        Ok(x)
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Solves the least-squares problem `min ‖J x - r‖` through the normal
/// equations with Levenberg damping `λ`. `jac` is row-major `rows × cols`.
pub fn damped_least_squares(jac: &[f64], rows: usize, cols: usize, r: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let mut jtj = Matrix::zeros(cols);
    let mut jtr = alloc::vec![0.0; cols];
    for i in 0..rows {
        let row = &jac[i * cols..(i + 1) * cols];
        for a in 0..cols {
            jtr[a] += row[a] * r[i];
            for b in 0..cols {
                jtj[(a, b)] += row[a] * row[b];
            }
        }
    }
    for a in 0..cols {
        jtj[(a, a)] += lambda * (1.0 + jtj[(a, a)]);
    }
    jtj.solve(&jtr)
}
