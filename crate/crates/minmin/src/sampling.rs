//! Seeded randomness and random test configurations.
//!
//! Every point draws from its own ChaCha8 stream selected by its index, so
//! results do not depend on the worker count or evaluation order.

use minmin_core::function::{C3Function, Polynomial};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

/// Generator for item `index` of a run seeded with `seed`.
pub fn point_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Evaluates `f(0..count)` on `workers` threads; output is in index order.
pub fn par_map<T, F>(workers: usize, count: usize, f: F) -> CliResult<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> CliResult<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    pool.install(|| (0..count).into_par_iter().map(&f).collect())
}

/// The polynomial with the given value and derivatives at `center`:
/// `Σ_k derivs[k] (t - center)^k / k!`, expanded in powers of `t`.
pub fn taylor_polynomial(center: f64, derivs: &[f64]) -> Polynomial {
    let d = derivs.len();
    let mut coeffs = vec![0.0; d];
    let mut fact = 1.0;
    for (k, &dk) in derivs.iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        let a = dk / fact;
        // (t - c)^k = Σ_j C(k, j) t^j (-c)^{k-j}
        let mut binom = 1.0;
        for j in 0..=k {
            if j > 0 {
                binom = binom * (k - j + 1) as f64 / j as f64;
            }
            coeffs[j] += a * binom * (-center).powi((k - j) as i32);
        }
    }
    Polynomial::new(coeffs)
}

/// Slopes are kept at least this far from zero.
pub const MIN_SLOPE: f64 = 0.2;

fn random_jet<R: Rng + ?Sized>(rng: &mut R, value: f64) -> Vec<f64> {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    vec![
        value,
        sign * rng.gen_range(MIN_SLOPE..1.5),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-1.0..1.0),
    ]
}

/// Quartic profiles `f_1..f_n` and a parameter point `u`.
#[derive(Debug, Clone)]
pub struct TranslationConfig {
    pub profiles: Vec<Polynomial>,
    pub u: Vec<f64>,
}

pub fn random_translation_config<R: Rng + ?Sized>(rng: &mut R, n: usize) -> TranslationConfig {
    let mut profiles = Vec::with_capacity(n);
    let mut u = Vec::with_capacity(n);
    for _ in 0..n {
        let c = rng.gen_range(-1.0..1.0);
        let value = rng.gen_range(-1.0..1.0);
        let jet = random_jet(rng, value);
        profiles.push(taylor_polynomial(c, &jet));
        u.push(c);
    }
    TranslationConfig { profiles, u }
}

/// Quartic profiles `f_1..f_{n+1}` and a point `x` with `Σ f_i(x_i) = 0`.
#[derive(Debug, Clone)]
pub struct SeparableConfig {
    pub profiles: Vec<Polynomial>,
    pub x: Vec<f64>,
}

pub fn random_separable_config<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SeparableConfig {
    let mut profiles = Vec::with_capacity(n + 1);
    let mut x = Vec::with_capacity(n + 1);
    let mut total = 0.0;
    for i in 0..=n {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let c = sign * rng.gen_range(0.3..1.5);
        let value = if i < n { rng.gen_range(-1.0..1.0) } else { -total };
        total += value;
        profiles.push(taylor_polynomial(c, &random_jet(rng, value)));
        x.push(c);
    }
    SeparableConfig { profiles, x }
}

impl SeparableConfig {
    pub fn defect(&self) -> f64 {
        self.profiles.iter().zip(&self.x).map(|(f, &t)| f.value(t)).sum()
    }
}
