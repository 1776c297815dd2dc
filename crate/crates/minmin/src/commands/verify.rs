use minmin_core::curvature::CurvatureReport;
use minmin_core::separable::{example_surface, ExampleId, SeparableSurface};

use super::{check_common, check_m, config_section, positive, Outcome};
use crate::cli::VerifyArgs;
use crate::error::{CliError, CliResult};
use crate::output::{csv_string, write_file};
use crate::report::{fmt_f64, fmt_vec, Report, Table};
use crate::sampling::{par_map, point_rng};

/// Rejected slices allowed per point before giving up.
const MAX_TRIES: usize = 1000;

#[derive(Debug, Clone)]
struct PointRow {
    x: Vec<f64>,
    eta: Vec<f64>,
    h_analytic: f64,
    h_oracle: f64,
    tangency_defect: f64,
    oracle_ok: bool,
    pass: bool,
}

pub fn build_surface(example: &str, m: u32, r: usize, perturb: Option<f64>) -> CliResult<SeparableSurface> {
    let mut id = ExampleId::parse(example, r).map_err(|_| CliError::Config(format!("unknown example {example:?}")))?;
    if let Some(c) = perturb {
        match id {
            ExampleId::Ex64 { r, .. } => id = ExampleId::Ex64 { r, coef: Some(c) },
            _ => return Err(CliError::Config("--perturb-coef applies to example 6.4 only".into())),
        }
    }
    Ok(example_surface(&id, m)?)
}

fn evaluate(surface: &SeparableSurface, args: &VerifyArgs, index: usize) -> CliResult<PointRow> {
    let mut rng = point_rng(args.common.seed, index);
    let x = (0..MAX_TRIES)
        .find_map(|_| surface.try_sample(&mut rng))
        .ok_or_else(|| CliError::Numerical(format!("point {index}: no on-surface point after {MAX_TRIES} slices")))?;
    let order = surface.chart_order(&x);
    let xs: Vec<f64> = order.iter().map(|&i| x[i]).collect();
    let rep = CurvatureReport::separable(&surface.permuted(&order), &xs, &surface.params, args.oracle_tol)
        .map_err(|e| CliError::Numerical(format!("point {index}: {e}")))?;
    let mut eta = vec![0.0; x.len()];
    for (k, &i) in order.iter().enumerate() {
        eta[i] = rep.eta[k];
    }
    Ok(PointRow {
        h_analytic: rep.h_analytic,
        h_oracle: rep.h_oracle,
        tangency_defect: rep.tangency_defect,
        oracle_ok: rep.pass,
        pass: rep.pass && rep.h_analytic.abs() <= args.tol,
        x,
        eta,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> CliResult<Outcome> {
    check_common(&args.common)?;
    check_m(args.m)?;
    positive("tol", args.tol)?;
    positive("oracle-tol", args.oracle_tol)?;
    if args.points == 0 {
        return Err(CliError::Config("points must be at least 1".into()));
    }
    let surface = build_surface(&args.example, args.m, args.r, args.perturb_coef)?;
    log::info!("verify {}: {} points, m = {}", surface.label, args.points, args.m);
    let rows = par_map(args.common.workers, args.points, |i| evaluate(&surface, args, i))?;

    let mut report = Report::new();
    let cfg = config_section(&mut report, "verify", &args.common);
    cfg.set("example", &args.example)
        .set("surface", &surface.label)
        .set("m", args.m)
        .set("r", args.r)
        .set("dim", surface.dim())
        .set("points", args.points)
        .set_f64("tol", args.tol)
        .set_f64("oracle_tol", args.oracle_tol);
    if let Some(c) = args.perturb_coef {
        cfg.set_f64("perturb_coef", c);
    }

    let pass = rows.iter().filter(|r| r.pass).count();
    let max_h = rows.iter().fold(0.0f64, |a, r| a.max(r.h_analytic.abs()));
    let max_diff = rows.iter().fold(0.0f64, |a, r| a.max((r.h_analytic - r.h_oracle).abs()));
    let max_defect = rows.iter().fold(0.0f64, |a, r| a.max(r.tangency_defect));
    report
        .section("aggregate")
        .set("pass", pass)
        .set("fail", rows.len() - pass)
        .set("oracle_fail", rows.iter().filter(|r| !r.oracle_ok).count())
        .set_f64("max_abs_h", max_h)
        .set_f64("max_abs_oracle_diff", max_diff)
        .set_f64("max_tangency_defect", max_defect)
        .set("status", if pass == rows.len() { "pass" } else { "fail" });

    let mut table = Table::new(&["index", "x", "eta", "h_analytic", "h_oracle", "tangency_defect", "pass"]);
    for (i, r) in rows.iter().enumerate() {
        table.push(vec![
            i.to_string(),
            fmt_vec(&r.x),
            fmt_vec(&r.eta),
            fmt_f64(r.h_analytic),
            fmt_f64(r.h_oracle),
            fmt_f64(r.tangency_defect),
            r.pass.to_string(),
        ]);
    }
    report.section("points").table = Some(table);

    if let Some(path) = &args.out {
        let mut header: Vec<String> = vec!["index".into()];
        header.extend((1..=surface.dim()).map(|i| format!("x{i}")));
        header.extend(["h_analytic", "h_oracle", "tangency_defect", "pass"].map(String::from));
        let data: Vec<Vec<f64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = vec![i as f64];
                v.extend(&r.x);
                v.extend([r.h_analytic, r.h_oracle, r.tangency_defect, f64::from(u8::from(r.pass))]);
                v
            })
            .collect();
        write_file(path, &csv_string(&header, &data))?;
    }
    Ok(Outcome {
        passed: pass == rows.len(),
        report,
    })
}
