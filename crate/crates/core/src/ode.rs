//! Profile curves of separated translation surfaces.
//!
//! The slope `y = f'` of each profile obeys the autonomous ODE
//!
//! ```text
//! y' = (c0 / 2m) · ( y^{(2m-2)/(2m-1)} + k y^2 )
//! ```
//!
//! and `f` is carried along as a second state component. Integration uses
//! the classical fixed-step RK4 scheme; every step is audited against two
//! half steps and integration halts once that local residual exceeds
//! [`STEP_RESIDUAL_LIMIT`].

use alloc::vec::Vec;

use crate::function::C3Function;
use crate::norm::{odd_pow, odd_pow_deriv};
use crate::real;
use crate::{Error, Result};

/// Integration halts when `|f'|` exceeds this.
pub const BLOW_UP_SLOPE: f64 = 1e6;
/// Integration halts when the step-doubling residual exceeds this.
pub const STEP_RESIDUAL_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOdeParams {
    /// Separation constant (its sign selects the branch).
    pub c0: f64,
    /// Coefficient of the `(f')^2` term.
    pub k: u32,
    pub m: u32,
    /// Initial slope `f'(u0)`; must be nonzero.
    pub y0: f64,
    pub u0: f64,
    /// Initial value `f(u0)`.
    pub f0: f64,
    pub step: f64,
    pub max_steps: usize,
}

impl ProfileOdeParams {
    pub fn new(m: u32, k: u32, c0: f64, y0: f64) -> Self {
        Self {
            c0,
            k,
            m,
            y0,
            u0: 0.0,
            f0: 0.0,
            step: 1e-3,
            max_steps: 1000,
        }
    }

    pub fn with_start(mut self, u0: f64, f0: f64) -> Self {
        self.u0 = u0;
        self.f0 = f0;
        self
    }

    pub fn with_step(mut self, step: f64, max_steps: usize) -> Self {
        self.step = step;
        self.max_steps = max_steps;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidParameter("m must be a positive integer"));
        }
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidParameter("step must be positive"));
        }
        if self.y0 == 0.0 || !self.y0.is_finite() {
            return Err(Error::InvalidParameter("initial slope must be nonzero and finite"));
        }
        if !self.c0.is_finite() || !self.u0.is_finite() || !self.f0.is_finite() {
            return Err(Error::NonFinite("ODE parameters"));
        }
        Ok(())
    }

    pub fn slope_field(&self) -> SlopeField {
        SlopeField {
            coef: self.c0 / f64::from(2 * self.m),
            k: f64::from(self.k),
            m: self.m,
        }
    }
}

/// The right-hand side `g(y)` of the slope ODE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeField {
    coef: f64,
    k: f64,
    m: u32,
}

impl SlopeField {
    pub fn eval(&self, y: f64) -> f64 {
        let den = 2 * self.m - 1;
        self.coef * (odd_pow(y, 2 * self.m as i32 - 2, den) + self.k * y * y)
    }

    /// `g'(y)`; at `m ≥ 2` it is singular at `y = 0`.
    pub fn deriv(&self, y: f64) -> f64 {
        let den = 2 * self.m - 1;
        self.coef * (odd_pow_deriv(y, 2 * self.m as i32 - 2, den) + 2.0 * self.k * y)
    }
}

/// Why integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Halt {
    MaxSteps,
    /// The slope reached zero.
    ZeroSlope,
    BlowUp,
    StepResidual,
}

impl Halt {
    pub fn name(&self) -> &'static str {
        match self {
            Halt::MaxSteps => "max_steps",
            Halt::ZeroSlope => "zero_slope",
            Halt::BlowUp => "blow_up",
            Halt::StepResidual => "step_residual",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub u: f64,
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
}

/// An integrated profile on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub samples: Vec<ProfileSample>,
    pub halt: Halt,
    /// Largest accepted step-doubling residual.
    pub max_step_residual: f64,
    step: f64,
    field: SlopeField,
}

fn rk4(field: &SlopeField, state: [f64; 2], h: f64) -> [f64; 2] {
    let rhs = |s: [f64; 2]| [s[1], field.eval(s[1])];
    let k1 = rhs(state);
    let k2 = rhs([state[0] + 0.5 * h * k1[0], state[1] + 0.5 * h * k1[1]]);
    let k3 = rhs([state[0] + 0.5 * h * k2[0], state[1] + 0.5 * h * k2[1]]);
    let k4 = rhs([state[0] + h * k3[0], state[1] + h * k3[1]]);
    [
        state[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        state[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Integrates the profile forward from `u0`.
pub fn integrate_profile(params: &ProfileOdeParams) -> Result<ProfileCurve> {
    params.validate()?;
    let field = params.slope_field();
    let h = params.step;
    let mut state = [params.f0, params.y0];
    let mut samples = Vec::with_capacity(params.max_steps.min(1 << 20) + 1);
    samples.push(ProfileSample {
        u: params.u0,
        f: state[0],
        df: state[1],
        d2f: field.eval(state[1]),
    });
    let mut halt = Halt::MaxSteps;
    let mut max_res = 0.0f64;
    for i in 1..=params.max_steps {
        let full = rk4(&field, state, h);
        let half = rk4(&field, rk4(&field, state, 0.5 * h), 0.5 * h);
        let y = full[1];
        if !y.is_finite() || !full[0].is_finite() || y.abs() > BLOW_UP_SLOPE {
            halt = Halt::BlowUp;
        } else if y == 0.0 || y.signum() != state[1].signum() {
            halt = Halt::ZeroSlope;
        } else {
            let res = (full[1] - half[1]).abs() / (1.0 + half[1].abs())
                + (full[0] - half[0]).abs() / (1.0 + half[0].abs());
            if res > STEP_RESIDUAL_LIMIT {
                if i == 1 {
                    return Err(Error::StepTooLarge { residual: res });
                }
                halt = Halt::StepResidual;
            } else {
                max_res = max_res.max(res);
            }
        }
        if halt != Halt::MaxSteps {
            if i == 1 && halt == Halt::BlowUp {
                return Err(Error::ImmediateBlowUp);
            }
            break;
        }
        state = full;
        samples.push(ProfileSample {
            u: params.u0 + i as f64 * h,
            f: state[0],
            df: state[1],
            d2f: field.eval(state[1]),
        });
    }
    Ok(ProfileCurve {
        samples,
        halt,
        max_step_residual: max_res,
        step: h,
        field,
    })
}

impl ProfileCurve {
    pub fn domain(&self) -> (f64, f64) {
        (self.samples[0].u, self.samples[self.samples.len() - 1].u)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn field(&self) -> SlopeField {
        self.field
    }

    /// Largest relative mismatch `|Dy - g(y)| / (1 + |g(y)|)` over interior
    /// samples, where `Dy` is the 5-point central difference of the stored
    /// slopes. `None` when fewer than five samples exist.
    pub fn ode_residual(&self) -> Option<f64> {
        let s = &self.samples;
        if s.len() < 5 {
            return None;
        }
        let h = self.step;
        let worst = (2..s.len() - 2)
            .map(|i| {
                let dy = (8.0 * (s[i + 1].df - s[i - 1].df) - (s[i + 2].df - s[i - 2].df)) / (12.0 * h);
                (dy - s[i].d2f).abs() / (1.0 + s[i].d2f.abs())
            })
            .fold(0.0f64, f64::max);
        Some(worst)
    }

    fn locate(&self, u: f64) -> (usize, f64) {
        let last = self.samples.len() - 1;
        if last == 0 {
            return (0, 0.0);
        }
        let pos = (u - self.samples[0].u) / self.step;
        let i = (real::floor(pos).max(0.0) as usize).min(last - 1);
        (i, pos - i as f64)
    }
}

/// Observed order of the integrator: runs `params` with steps `h` and
/// `h/2` over the same span and compares the slope error against `exact`
/// at the coarse grid points, returning `log2(err_h / err_{h/2})` together
/// with both errors.
pub fn observed_order<E: Fn(f64) -> f64>(params: &ProfileOdeParams, exact: E) -> Result<(f64, f64, f64)> {
    let coarse = integrate_profile(params)?;
    let fine = integrate_profile(&ProfileOdeParams {
        step: 0.5 * params.step,
        max_steps: 2 * params.max_steps,
        ..*params
    })?;
    let count = coarse.samples.len().min((fine.samples.len() + 1) / 2);
    if count < 2 {
        return Err(Error::RootNotFound("too few samples for an order estimate"));
    }
    let mut e_coarse = 0.0f64;
    let mut e_fine = 0.0f64;
    for i in 1..count {
        let (a, b) = (coarse.samples[i], fine.samples[2 * i]);
        e_coarse = e_coarse.max((a.df - exact(a.u)).abs());
        e_fine = e_fine.max((b.df - exact(b.u)).abs());
    }
    Ok((real::log2(e_coarse / e_fine), e_coarse, e_fine))
}

/// Cubic Hermite interpolation on `[0, 1]` scaled by `h`.
fn hermite(t: f64, h: f64, p0: f64, m0: f64, p1: f64, m1: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * p0 + (t3 - 2.0 * t2 + t) * h * m0 + (-2.0 * t3 + 3.0 * t2) * p1 + (t3 - t2) * h * m1
}

/// The profile as a [`C3Function`]: `f` and `f'` are Hermite-interpolated
/// between samples, and `f''`, `f'''` are taken from the slope ODE itself.
impl C3Function for ProfileCurve {
    fn value(&self, u: f64) -> f64 {
        let (i, t) = self.locate(u);
        if self.samples.len() == 1 {
            let s = self.samples[0];
            return s.f + s.df * (u - s.u);
        }
        let (a, b) = (self.samples[i], self.samples[i + 1]);
        hermite(t, self.step, a.f, a.df, b.f, b.df)
    }

    fn d1(&self, u: f64) -> f64 {
        let (i, t) = self.locate(u);
        if self.samples.len() == 1 {
            return self.samples[0].df;
        }
        let (a, b) = (self.samples[i], self.samples[i + 1]);
        hermite(t, self.step, a.df, a.d2f, b.df, b.d2f)
    }

    fn d2(&self, u: f64) -> f64 {
        self.field.eval(self.d1(u))
    }

    fn d3(&self, u: f64) -> f64 {
        let y = self.d1(u);
        self.field.deriv(y) * self.field.eval(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::derivative_defect;

    /// y = tan(c (u - u0) + atan(y0)) with c = c0 / 2 at m = k = 1.
    fn tan_closed_form(c0: f64, u0: f64, y0: f64, u: f64) -> f64 {
        libm::tan(0.5 * c0 * (u - u0) + libm::atan(y0))
    }

    #[test]
    fn zero_constant_gives_linear_profile() {
        let c = integrate_profile(&ProfileOdeParams::new(2, 2, 0.0, 0.7).with_step(0.01, 100)).unwrap();
        assert_eq!(c.halt, Halt::MaxSteps);
        for s in &c.samples {
            assert_eq!(s.df, 0.7);
            assert!((s.f - 0.7 * s.u).abs() < 1e-13);
            assert_eq!(s.d2f, 0.0);
        }
    }

    #[test]
    fn euclidean_family_follows_tangent() {
        let y0 = libm::tan(0.1);
        let p = ProfileOdeParams::new(1, 1, 1.0, y0).with_start(0.1, 0.0).with_step(1e-3, 2000);
        let c = integrate_profile(&p).unwrap();
        for s in &c.samples {
            let want = tan_closed_form(1.0, 0.1, y0, s.u);
            assert!((s.df - want).abs() <= 1e-6 * (1.0 + want.abs()));
        }
        // c0 = 2 gives exactly f' = tan(u) from the same start.
        let p = ProfileOdeParams { c0: 2.0, ..p };
        let c = integrate_profile(&p).unwrap();
        for s in c.samples.iter().filter(|s| s.u < 1.4) {
            assert!((s.df - libm::tan(s.u)).abs() <= 1e-6 * (1.0 + libm::tan(s.u).abs()));
        }
    }

    #[test]
    fn residual_audit_for_m2() {
        let c = integrate_profile(&ProfileOdeParams::new(2, 2, 1.0, 1.0).with_step(1e-3, 1000)).unwrap();
        assert_eq!(c.halt, Halt::MaxSteps);
        assert!(c.ode_residual().unwrap() <= 1e-8, "{:?}", c.ode_residual());
    }

    #[test]
    fn blow_up_halts() {
        // y' = (1 + y^2)/2 from y0 = 1 blows up at u = π/2.
        let c = integrate_profile(&ProfileOdeParams::new(1, 1, 1.0, 1.0).with_step(1e-3, 10_000)).unwrap();
        assert!(matches!(c.halt, Halt::BlowUp | Halt::StepResidual));
        assert!(c.domain().1 < core::f64::consts::FRAC_PI_2);
        assert!(c.max_step_residual <= STEP_RESIDUAL_LIMIT);
    }

    #[test]
    fn decreasing_slope_stops_at_zero() {
        let c = integrate_profile(&ProfileOdeParams::new(1, 1, -2.0, 0.5).with_step(1e-3, 10_000)).unwrap();
        assert_eq!(c.halt, Halt::ZeroSlope);
        // y = tan(atan(0.5) - u) vanishes at u = atan(0.5)
        assert!((c.domain().1 - libm::atan(0.5)).abs() < 2e-3);
        assert!(c.samples.iter().all(|s| s.df > 0.0));
    }

    #[test]
    fn fourth_order_convergence() {
        let y0 = libm::tan(0.1);
        let p = ProfileOdeParams::new(1, 1, 1.0, y0).with_start(0.1, 0.0).with_step(0.05, 20);
        let (order, ec, ef) = observed_order(&p, |u| tan_closed_form(1.0, 0.1, y0, u)).unwrap();
        assert!(ef < ec);
        assert!((order - 4.0).abs() <= 0.2, "order {order}");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(integrate_profile(&ProfileOdeParams::new(1, 1, 1.0, 0.0)).is_err());
        assert!(integrate_profile(&ProfileOdeParams::new(1, 1, 1.0, 1.0).with_step(-1.0, 10)).is_err());
        assert!(matches!(
            integrate_profile(&ProfileOdeParams::new(1, 1, 1.0, 1e5).with_step(1.0, 10)),
            Err(Error::ImmediateBlowUp) | Err(Error::StepTooLarge { .. })
        ));
    }

    #[test]
    fn interpolated_profile_is_consistent() {
        let c = integrate_profile(&ProfileOdeParams::new(2, 1, 1.0, 0.8).with_step(1e-3, 800)).unwrap();
        for &u in &[0.1234, 0.4, 0.777] {
            assert!(derivative_defect(&c, u) <= 1e-5);
        }
        let s = c.samples[300];
        assert!((c.value(s.u) - s.f).abs() < 1e-14);
        assert!((c.d1(s.u) - s.df).abs() < 1e-14);
    }
}
