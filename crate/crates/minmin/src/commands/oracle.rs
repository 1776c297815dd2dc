use minmin_core::curvature::{euclidean_graph_mean_curvature, mean_curvature_translation, CurvatureReport};
use minmin_core::function::{C3Function, Polynomial};
use minmin_core::NormParams;

use super::{check_common, check_m, config_section, positive, Outcome};
use crate::cli::{OracleArgs, OracleKind};
use crate::error::{CliError, CliResult};
use crate::output::{csv_string, write_file};
use crate::report::{fmt_f64, fmt_vec, Report, Table};
use crate::sampling::{par_map, point_rng, random_separable_config, random_translation_config};

#[derive(Debug, Clone)]
struct Row {
    m: u32,
    n: usize,
    point: Vec<f64>,
    h: f64,
    reference: f64,
    tangency_defect: Option<f64>,
    pass: bool,
}

impl OracleKind {
    fn name(&self) -> &'static str {
        match self {
            OracleKind::Translation => "translation",
            OracleKind::Separable => "separable",
            OracleKind::Euclidean => "euclidean",
        }
    }
}

fn dims(args: &OracleArgs, index: usize) -> (u32, usize) {
    let m = args.m.unwrap_or(1 + (index % 3) as u32);
    let n = args.n.unwrap_or(2 + (index / 3) % 3);
    (m, n)
}

/// `H_euclidean / H` on the graph of `u_1^2 / 2 + u_2 + … + u_n`: the
/// single global sign relating the two conventions.
pub fn euclidean_sign(n: usize) -> CliResult<f64> {
    let mut fs = vec![Polynomial::new(vec![0.0, 0.0, 0.5])];
    fs.extend((1..n).map(|_| Polynomial::linear(1.0, 0.0)));
    let u = vec![0.5; n];
    let h = mean_curvature_translation(&fs, &u, &NormParams::new(1, n + 1)?)?;
    let e = classical(&fs, &u)?;
    Ok(if h * e >= 0.0 { 1.0 } else { -1.0 })
}

fn classical(fs: &[Polynomial], u: &[f64]) -> CliResult<f64> {
    let n = fs.len();
    let grad: Vec<f64> = fs.iter().zip(u).map(|(f, &t)| f.d1(t)).collect();
    let hess: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { fs[i].d2(u[i]) } else { 0.0 }).collect())
        .collect();
    Ok(euclidean_graph_mean_curvature(&grad, &hess)?)
}

fn evaluate(args: &OracleArgs, tol: f64, sign: &[f64], index: usize) -> CliResult<Row> {
    let (m, n) = dims(args, index);
    let mut rng = point_rng(args.common.seed, index);
    let fail = |e: minmin_core::Error| CliError::Numerical(format!("configuration {index}: {e}"));
    match args.kind {
        OracleKind::Translation => {
            let c = random_translation_config(&mut rng, n);
            let rep = CurvatureReport::translation(&c.profiles, &c.u, &NormParams::new(m, n + 1)?, tol).map_err(fail)?;
            Ok(Row {
                m,
                n,
                point: c.u,
                h: rep.h_analytic,
                reference: rep.h_oracle,
                tangency_defect: Some(rep.tangency_defect),
                pass: rep.pass,
            })
        }
        OracleKind::Separable => {
            let c = random_separable_config(&mut rng, n);
            let rep = CurvatureReport::separable(&c.profiles, &c.x, &NormParams::new(m, n + 1)?, tol).map_err(fail)?;
            Ok(Row {
                m,
                n,
                point: c.x,
                h: rep.h_analytic,
                reference: rep.h_oracle,
                tangency_defect: Some(rep.tangency_defect),
                pass: rep.pass,
            })
        }
        OracleKind::Euclidean => {
            let c = random_translation_config(&mut rng, n);
            let h = mean_curvature_translation(&c.profiles, &c.u, &NormParams::new(1, n + 1)?).map_err(fail)?;
            let reference = sign[n] * classical(&c.profiles, &c.u)?;
            Ok(Row {
                m: 1,
                n,
                point: c.u,
                h,
                reference,
                tangency_defect: None,
                pass: (h - reference).abs() <= tol * (1.0 + h.abs()),
            })
        }
    }
}

pub fn cmd_oracle_compare(args: &OracleArgs) -> CliResult<Outcome> {
    check_common(&args.common)?;
    if let Some(m) = args.m {
        check_m(m)?;
        if args.kind == OracleKind::Euclidean && m != 1 {
            return Err(CliError::Config("the euclidean comparison needs m = 1".into()));
        }
    }
    if args.n.is_some_and(|n| n < 2) {
        return Err(CliError::Config("n must be at least 2".into()));
    }
    if args.points == 0 {
        return Err(CliError::Config("points must be at least 1".into()));
    }
    let tol = args.tol.unwrap_or(if args.kind == OracleKind::Euclidean { 1e-9 } else { 1e-6 });
    positive("tol", tol)?;

    let max_n = (0..args.points.min(9)).map(|i| dims(args, i).1).max().unwrap_or(2);
    let sign = if args.kind == OracleKind::Euclidean {
        (0..=max_n).map(|n| if n < 2 { Ok(1.0) } else { euclidean_sign(n) }).collect::<CliResult<Vec<f64>>>()?
    } else {
        Vec::new()
    };
    let rows = par_map(args.common.workers, args.points, |i| evaluate(args, tol, &sign, i))?;

    let mut report = Report::new();
    let cfg = config_section(&mut report, "oracle-compare", &args.common);
    cfg.set("kind", args.kind.name())
        .set("m", args.m.map_or("cycle".to_string(), |m| m.to_string()))
        .set("n", args.n.map_or("cycle".to_string(), |n| n.to_string()))
        .set("points", args.points)
        .set_f64("tol", tol);
    if args.kind == OracleKind::Euclidean {
        cfg.set("sign", fmt_vec(&sign[2..]));
    }
    let pass = rows.iter().filter(|r| r.pass).count();
    let agg = report.section("aggregate");
    agg.set("pass", pass)
        .set("fail", rows.len() - pass)
        .set_f64(
            "max_rel_diff",
            rows.iter().fold(0.0f64, |a, r| a.max((r.h - r.reference).abs() / (1.0 + r.h.abs()))),
        );
    if args.kind != OracleKind::Euclidean {
        agg.set_f64(
            "max_tangency_defect",
            rows.iter().fold(0.0f64, |a, r| a.max(r.tangency_defect.unwrap_or(0.0))),
        );
    }
    agg.set("status", if pass == rows.len() { "pass" } else { "fail" });

    let mut table = Table::new(&["index", "m", "n", "point", "h", "h_reference", "tangency_defect", "pass"]);
    for (i, r) in rows.iter().enumerate() {
        table.push(vec![
            i.to_string(),
            r.m.to_string(),
            r.n.to_string(),
            fmt_vec(&r.point),
            fmt_f64(r.h),
            fmt_f64(r.reference),
            r.tangency_defect.map_or("-".into(), fmt_f64),
            r.pass.to_string(),
        ]);
    }
    report.section("points").table = Some(table);

    if let Some(path) = &args.out {
        let header = ["index", "m", "n", "h", "h_reference", "tangency_defect", "pass"].map(String::from);
        let data: Vec<Vec<f64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                vec![
                    i as f64,
                    f64::from(r.m),
                    r.n as f64,
                    r.h,
                    r.reference,
                    r.tangency_defect.unwrap_or(f64::NAN),
                    f64::from(u8::from(r.pass)),
                ]
            })
            .collect();
        write_file(path, &csv_string(&header, &data))?;
    }
    Ok(Outcome {
        passed: pass == rows.len(),
        report,
    })
}
