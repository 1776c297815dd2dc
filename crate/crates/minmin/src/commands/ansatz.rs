use minmin_core::separable::ExampleId;

use super::{check_common, config_section, positive, Outcome};
use crate::cli::AnsatzArgs;
use crate::error::{CliError, CliResult};
use crate::params::{Family, ProfileParams};
use crate::report::{fmt_f64, Report, Table};

/// Parameters behind the named examples.
pub fn example_params(example: &str) -> CliResult<ProfileParams> {
    let params = |kind, p: Vec<f64>, q: Vec<f64>, r: Vec<f64>| ProfileParams {
        kind: Some(kind),
        p,
        q,
        r,
        signs: None,
    };
    match example {
        "6.5" => Ok(params(Family::Exponential, vec![], vec![1.0; 4], vec![1.0; 4])),
        "6.6" => Ok(params(
            Family::Exponential,
            vec![],
            vec![1.0, 0.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0, 0.0],
        )),
        _ => match ExampleId::parse(example, 2) {
            Ok(ExampleId::Ex61) => Ok(params(Family::Affine, vec![1.0; 4], vec![1.0, -1.0, -1.0, 1.0], vec![])),
            Ok(ExampleId::Ex63) => Ok(params(
                Family::Affine,
                vec![1.0, 1.0, 3.0, 3.0, 1.0],
                vec![1.0, 1.0, -2.0, -2.0, 1.0],
                vec![],
            )),
            Ok(ExampleId::Affine { p, q }) => Ok(params(Family::Affine, p, q, vec![])),
            _ => Err(CliError::Config(format!("example {example:?} has no X-profile parameters"))),
        },
    }
}

pub fn load_params(params: Option<&std::path::Path>, example: Option<&str>) -> CliResult<ProfileParams> {
    match (params, example) {
        (Some(path), None) => ProfileParams::load(path),
        (None, Some(ex)) => example_params(ex),
        _ => Err(CliError::Config("give exactly one of --params or --example".into())),
    }
}

pub fn cmd_ansatz(args: &AnsatzArgs) -> CliResult<Outcome> {
    check_common(&args.common)?;
    positive("tol", args.tol)?;
    let params = load_params(args.params.as_deref(), args.example.as_deref())?;
    let family = params.family(args.kind)?;
    let system = params.system(family)?;
    let scale = params.coefficient_scale();
    let passed = system.is_satisfied(args.tol, scale);

    let mut report = Report::new();
    let cfg = config_section(&mut report, "ansatz", &args.common);
    cfg.set("kind", family.name());
    if let Some(p) = &args.params {
        cfg.set("params", p.display());
    }
    if let Some(e) = &args.example {
        cfg.set("example", e);
    }
    let list = |v: &[f64]| v.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(" ");
    cfg.set("p", list(&params.p))
        .set("q", list(&params.q))
        .set("r", list(&params.r))
        .set_f64("tol", args.tol);

    report
        .section("system")
        .set("n", system.n)
        .set("coefficients", system.coefficients.len())
        .set_f64("max_abs", system.max_abs())
        .set_f64("scale", scale)
        .set("status", if passed { "satisfied" } else { "violated" });
    let mut table = Table::new(&["tag", "basis", "coefficient"]);
    for (tag, c) in &system.coefficients {
        table.push(vec![tag.to_string(), tag.basis_label(), fmt_f64(*c)]);
    }
    report.section("coefficients").table = Some(table);
    Ok(Outcome { report, passed })
}
