use minmin_core::ode::{integrate_profile, ProfileCurve, ProfileOdeParams};
use minmin_core::translation::{assemble_separated_surface, grid_residuals, separated_profiles, ProfileInit};

use super::{at_least, check_common, check_m, config_section, positive, Outcome};
use crate::cli::OdeArgs;
use crate::error::{CliError, CliResult};
use crate::output::{csv_string, write_file};
use crate::report::{Report, Section};

/// Residuals at least this large count as an obstruction witness.
pub const OBSTRUCTION_LEVEL: f64 = 1e-3;

fn integration_error(what: &str, args: &OdeArgs, e: minmin_core::Error) -> CliError {
    CliError::Numerical(format!(
        "{what}: {e} (step {}, max steps {}, y0 {}, c0 {})",
        args.step, args.max_steps, args.y0, args.c0
    ))
}

/// Largest `|f' - tan(c0 (u - u0) / 2 + atan y0)|` over the samples.
fn tan_error(curve: &ProfileCurve, args: &OdeArgs) -> f64 {
    let phase = args.y0.atan();
    curve
        .samples
        .iter()
        .map(|s| (s.df - (0.5 * args.c0 * (s.u - args.u0) + phase).tan()).abs())
        .fold(0.0, f64::max)
}

fn describe(s: &mut Section, curve: &ProfileCurve) {
    let (lo, hi) = curve.domain();
    s.set("halt", curve.halt.name())
        .set("samples", curve.samples.len())
        .set_f64("domain_lo", lo)
        .set_f64("domain_hi", hi)
        .set_f64("max_step_residual", curve.max_step_residual);
}

fn profile_rows(index: Option<usize>, curve: &ProfileCurve) -> Vec<Vec<f64>> {
    curve
        .samples
        .iter()
        .map(|s| {
            let mut row: Vec<f64> = index.map(|i| vec![i as f64]).unwrap_or_default();
            row.extend([s.u, s.f, s.df, s.d2f]);
            row
        })
        .collect()
}

pub fn cmd_ode(args: &OdeArgs) -> CliResult<Outcome> {
    check_common(&args.common)?;
    check_m(args.m)?;
    positive("step", args.step)?;
    at_least("max-steps", args.max_steps, 1)?;
    if !args.c0.is_finite() || !args.y0.is_finite() || !args.u0.is_finite() {
        return Err(CliError::Config("c0, y0 and u0 must be finite".into()));
    }
    match args.n {
        None => single(args),
        Some(n) => assembly(args, n),
    }
}

fn single(args: &OdeArgs) -> CliResult<Outcome> {
    let k = args.k.unwrap_or(1);
    let tol = args.tol.unwrap_or(1e-6);
    positive("tol", tol)?;
    let params = ProfileOdeParams::new(args.m, k, args.c0, args.y0)
        .with_start(args.u0, 0.0)
        .with_step(args.step, args.max_steps);
    let curve = integrate_profile(&params).map_err(|e| match e {
        minmin_core::Error::InvalidParameter(_) => CliError::from(e),
        e => integration_error("integration failed", args, e),
    })?;

    let mut report = Report::new();
    config_section(&mut report, "ode", &args.common)
        .set("mode", "profile")
        .set("m", args.m)
        .set("k", k)
        .set_f64("c0", args.c0)
        .set_f64("y0", args.y0)
        .set_f64("u0", args.u0)
        .set_f64("step", args.step)
        .set("max_steps", args.max_steps)
        .set_f64("tol", tol);
    let s = report.section("profile");
    describe(s, &curve);
    let residual = curve.ode_residual().unwrap_or(0.0);
    s.set_f64("ode_residual", residual);
    let mut worst = residual;
    if args.m == 1 && k == 1 {
        let e = tan_error(&curve, args);
        s.set_f64("closed_form_error", e);
        worst = worst.max(e);
    }
    let passed = worst <= tol;
    s.set("status", if passed { "pass" } else { "fail" });

    if let Some(path) = &args.out {
        let header = ["u", "f", "df", "d2f"].map(String::from);
        write_file(path, &csv_string(&header, &profile_rows(None, &curve)))?;
    }
    Ok(Outcome { report, passed })
}

fn assembly(args: &OdeArgs, n: usize) -> CliResult<Outcome> {
    at_least("n", n, 2)?;
    at_least("grid", args.grid, 2)?;
    let k = n as u32 - 1;
    if args.k.is_some_and(|given| given != k) {
        return Err(CliError::Config(format!("assembly uses k = n - 1 = {k}")));
    }
    let tol = args.tol.unwrap_or(1e-7);
    positive("tol", tol)?;
    let inits: Vec<ProfileInit> = (0..n)
        .map(|i| ProfileInit::new(args.u0, if i % 2 == 0 { args.y0 } else { -args.y0 }))
        .collect();
    let fail = |e| integration_error("assembly failed", args, e);
    let surface = assemble_separated_surface(args.m, n, args.c0, &inits, args.step, args.max_steps).map_err(fail)?;
    let curves = separated_profiles(args.m, n, args.c0, &inits, args.step, args.max_steps).map_err(fail)?;
    let residuals = grid_residuals(&surface, args.grid).map_err(|e| CliError::Numerical(format!("residual grid: {e}")))?;

    let abs: Vec<f64> = residuals.iter().map(|(_, r)| r.abs()).collect();
    let max = abs.iter().copied().fold(0.0, f64::max);
    let min = abs.iter().copied().fold(f64::INFINITY, f64::min);
    let above = abs.iter().filter(|&&r| r >= OBSTRUCTION_LEVEL).count();
    let passed = max <= tol;

    let mut report = Report::new();
    config_section(&mut report, "ode", &args.common)
        .set("mode", "assembly")
        .set("m", args.m)
        .set("n", n)
        .set("k", k)
        .set_f64("c0", args.c0)
        .set_f64("y0", args.y0)
        .set_f64("u0", args.u0)
        .set_f64("step", args.step)
        .set("max_steps", args.max_steps)
        .set("grid", args.grid)
        .set_f64("tol", tol);
    for (i, c) in curves.iter().enumerate() {
        describe(report.section(&format!("profile.{}", i + 1)), c);
    }
    report
        .section("residual")
        .set("grid_points", abs.len())
        .set_f64("max_abs", max)
        .set_f64("min_abs", min)
        .set("above_obstruction_level", above)
        .set_f64("obstruction_level", OBSTRUCTION_LEVEL)
        .set("status", if passed { "pass" } else { "fail" });

    if let Some(path) = &args.out {
        let header = ["profile", "u", "f", "df", "d2f"].map(String::from);
        let rows: Vec<Vec<f64>> = curves
            .iter()
            .enumerate()
            .flat_map(|(i, c)| profile_rows(Some(i + 1), c))
            .collect();
        write_file(path, &csv_string(&header, &rows))?;
    }
    Ok(Outcome { report, passed })
}
