//! Randomized search for solutions of the quadratic-ansatz system, with
//! each converged candidate classified by the two-branch case split on
//! `r_4`.

use alloc::vec::Vec;

use rand::Rng;

use super::ansatz::extract_quadratic_system;
use crate::linalg::damped_least_squares;
use crate::Result;

/// Entries below this count as zero when classifying a candidate.
pub const ZERO_TOL: f64 = 1e-6;
/// Residual (max-norm) below which a run counts as converged.
pub const CONVERGED_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticBranch {
    /// `r_4 = 0`
    R4Zero,
    /// `r_4 ≠ 0`
    R4NonZero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticCandidate {
    pub p: [f64; 4],
    pub q: [f64; 4],
    pub r: [f64; 4],
    pub residual: f64,
    pub branch: QuadraticBranch,
    /// Some `r_i ≠ 0`, and `q_j ≠ 0` whenever `r_j = 0`.
    pub admissible: bool,
    /// The branch's conclusion holds: for `r_4 = 0` a single nonzero
    /// `r_i` with every other `r` and every `q_j` (`j ≠ i`) zero; for
    /// `r_4 ≠ 0`, `r_1 = r_2 = r_3 = 0` and `q_1 = q_2 = q_3 = 0`.
    pub branch_conclusion: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct QuadraticSweep {
    pub trials: usize,
    pub converged: usize,
    pub admissible: usize,
    pub r4_zero: usize,
    pub r4_nonzero: usize,
    pub conclusions_held: usize,
    pub candidates: Vec<QuadraticCandidate>,
}

/// The 14 coefficients plus the normalization `Σ r_i^2 - 1`.
fn residual(v: &[f64]) -> Result<Vec<f64>> {
    let sys = extract_quadratic_system(&v[0..4], &v[4..8], &v[8..12])?;
    // Fixed layout: the 14 tagged coefficients, leftovers are identically
    // zero for this family.
    let mut out: Vec<f64> = sys.coefficients.iter().take(14).map(|(_, c)| *c).collect();
    out.resize(14, 0.0);
    out.push(v[8..12].iter().map(|r| r * r).sum::<f64>() - 1.0);
    Ok(out)
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

/// Levenberg–Marquardt from `start` with a central-difference Jacobian.
fn solve(start: Vec<f64>, iters: usize) -> Result<(Vec<f64>, f64)> {
    let cols = start.len();
    let mut v = start;
    let mut r = residual(&v)?;
    let mut lambda = 1e-3;
    for _ in 0..iters {
        let err = max_abs(&r);
        if err <= CONVERGED_TOL {
            break;
        }
        let rows = r.len();
        let mut jac = alloc::vec![0.0; rows * cols];
        for c in 0..cols {
            let h = 1e-6 * (1.0 + v[c].abs());
            let mut a = v.clone();
            let mut b = v.clone();
            a[c] += h;
            b[c] -= h;
            let (ra, rb) = (residual(&a)?, residual(&b)?);
            for k in 0..rows {
                jac[k * cols + c] = (ra[k] - rb[k]) / (2.0 * h);
            }
        }
        let mut accepted = false;
        for _ in 0..20 {
            let step = match damped_least_squares(&jac, rows, cols, &r, lambda) {
                Ok(s) => s,
                Err(_) => {
                    lambda *= 10.0;
                    continue;
                }
            };
            let trial: Vec<f64> = v.iter().zip(&step).map(|(a, s)| a - s).collect();
            let rt = residual(&trial)?;
            let norm = |x: &[f64]| x.iter().map(|t| t * t).sum::<f64>();
            if norm(&rt) < norm(&r) {
                v = trial;
                r = rt;
                lambda = (lambda * 0.3).max(1e-12);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        if !accepted {
            break;
        }
    }
    let err = max_abs(&r);
    Ok((v, err))
}

fn classify(v: &[f64], residual: f64) -> QuadraticCandidate {
    let mut p = [0.0; 4];
    let mut q = [0.0; 4];
    let mut r = [0.0; 4];
    p.copy_from_slice(&v[0..4]);
    q.copy_from_slice(&v[4..8]);
    r.copy_from_slice(&v[8..12]);
    let zero = |x: f64| x.abs() <= ZERO_TOL;
    let admissible = r.iter().any(|&x| !zero(x)) && (0..4).all(|j| !zero(r[j]) || !zero(q[j]));
    let (branch, branch_conclusion) = if zero(r[3]) {
        let nonzero: Vec<usize> = (0..3).filter(|&i| !zero(r[i])).collect();
        let held = nonzero.len() == 1 && (0..4).filter(|&j| j != nonzero[0]).all(|j| zero(q[j]));
        (QuadraticBranch::R4Zero, held)
    } else {
        let held = (0..3).all(|i| zero(r[i]) && zero(q[i]));
        (QuadraticBranch::R4NonZero, held)
    };
    QuadraticCandidate {
        p,
        q,
        r,
        residual,
        branch,
        admissible,
        branch_conclusion,
    }
}

/// Runs `trials` solver starts drawn uniformly from `[-2, 2]^12`.
pub fn quadratic_sweep<R: Rng + ?Sized>(rng: &mut R, trials: usize) -> Result<QuadraticSweep> {
    let mut out = QuadraticSweep {
        trials,
        ..Default::default()
    };
    for _ in 0..trials {
        let start: Vec<f64> = (0..12).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let (v, err) = solve(start, 200)?;
        if err > CONVERGED_TOL {
            continue;
        }
        let c = classify(&v, err);
        out.converged += 1;
        out.admissible += usize::from(c.admissible);
        match c.branch {
            QuadraticBranch::R4Zero => out.r4_zero += 1,
            QuadraticBranch::R4NonZero => out.r4_nonzero += 1,
        }
        out.conclusions_held += usize::from(c.branch_conclusion);
        out.candidates.push(c);
    }
    Ok(out)
}
