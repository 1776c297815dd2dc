use std::path::Path;
use std::sync::Arc;

use minmin_core::function::{LogCos, Scaled};
use minmin_core::separable::{admissible_domain, patch_from_xprofiles, AdmissibleBox};
use minmin_core::translation::{
    assemble_separated_surface, cylinder_over, Profile, ProfileInit, TranslationSurface,
};
use minmin_core::NormParams;

use super::ansatz::load_params;
use super::{at_least, check_common, check_m, config_section, parse_axes, positive, Outcome};
use crate::cli::{MeshArgs, SurfaceKind};
use crate::error::{CliError, CliResult};
use crate::output::{csv_string, write_file, GridMesh};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Obj,
    Csv,
}

fn format_of(path: &Path) -> CliResult<Format> {
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("obj") => Ok(Format::Obj),
        Some("csv") => Ok(Format::Csv),
        _ => Err(CliError::Config(format!("{}: output must end in .obj or .csv", path.display()))),
    }
}

fn linspace(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect()
}

/// A sampled grid. `points` are the coordinates OBJ vertices are taken
/// from; `rows` are the CSV records described by `header`.
struct Sampled {
    label: String,
    params: Vec<[f64; 2]>,
    points: Vec<Vec<f64>>,
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
    slice: [usize; 2],
}

fn translation_grid(label: &str, ts: &TranslationSurface, args: &MeshArgs, window: Option<f64>) -> CliResult<Sampled> {
    let n = ts.n();
    let axes = parse_axes("slice", &args.slice, 2, n)?;
    let (a, b) = (axes[0], axes[1]);
    let doms = ts.domains();
    let range = |i: usize| {
        let (lo, hi) = doms[i];
        match window {
            Some(w) => (lo.max(-w), hi.min(w)),
            None => (lo, hi),
        }
    };
    let (ra, rb) = (range(a), range(b));
    let mut base: Vec<f64> = doms.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect();
    let mut params = Vec::new();
    let mut points = Vec::new();
    for &s in &linspace(ra.0, ra.1, args.grid) {
        for &t in &linspace(rb.0, rb.1, args.grid) {
            base[a] = s;
            base[b] = t;
            let mut p = base.clone();
            p.push(ts.height(&base));
            params.push([s, t]);
            points.push(p);
        }
    }
    let mut header: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    header.push("height".into());
    Ok(Sampled {
        label: label.into(),
        params,
        rows: points.clone(),
        points,
        header,
        slice: [a, b],
    })
}

fn ode_surface(args: &MeshArgs) -> CliResult<TranslationSurface> {
    positive("step", args.step)?;
    at_least("max-steps", args.max_steps, 1)?;
    let n = args.n.unwrap_or(2);
    at_least("n", n, 2)?;
    let inits = [ProfileInit::new(0.0, args.y0), ProfileInit::new(0.0, -args.y0)];
    let ts2 = assemble_separated_surface(args.m, 2, args.c0, &inits, args.step, args.max_steps)
        .map_err(|e| CliError::Numerical(format!("profile integration: {e}")))?;
    if n == 2 {
        Ok(ts2)
    } else {
        Ok(cylinder_over(&ts2, n, None)?)
    }
}

fn scherk(args: &MeshArgs) -> CliResult<TranslationSurface> {
    if args.m != 1 {
        return Err(CliError::Config("the Scherk surface is built for m = 1".into()));
    }
    let f1: Profile = Arc::new(LogCos { rate: 1.0 });
    let f2: Profile = Arc::new(Scaled::new(LogCos { rate: 1.0 }, -1.0, 1.0));
    let half = std::f64::consts::FRAC_PI_2 - 1e-3;
    Ok(TranslationSurface::new(vec![f1, f2], vec![(-half, half); 2], NormParams::new(1, 3)?)?)
}

/// A rectangle in the `(a, b)` parameter plane around `base`, shrunk until
/// its corners lie in `piece`; the piece is convex so the whole rectangle does.
fn patch_window(piece: &AdmissibleBox, base: &[f64], a: usize, b: usize, spread: f64) -> CliResult<[(f64, f64); 2]> {
    let room = |i: usize| {
        let iv = piece.intervals[i];
        0.9 * (base[i] - iv.lo).min(iv.hi - base[i])
    };
    let mut w = spread;
    for _ in 0..80 {
        let (wa, wb) = (w.min(room(a)), w.min(room(b)));
        let ranges = [(base[a] - wa, base[a] + wa), (base[b] - wb, base[b] + wb)];
        let corners_ok = [ranges[0].0, ranges[0].1].iter().all(|&s| {
            [ranges[1].0, ranges[1].1].iter().all(|&t| {
                let mut u = base.to_vec();
                u[a] = s;
                u[b] = t;
                piece.contains(&u, 0.0)
            })
        });
        if corners_ok && wa > 0.0 && wb > 0.0 {
            return Ok(ranges);
        }
        w *= 0.5;
    }
    Err(CliError::Numerical("no admissible parameter rectangle around the base point".into()))
}

fn patch(args: &MeshArgs) -> CliResult<Option<Sampled>> {
    let params = load_params(args.params.as_deref(), args.example.as_deref())?;
    let family = params.family(None)?;
    let xs = params.xprofiles(family)?;
    let k = xs.len();
    let signs = params.signs.clone().unwrap_or_else(|| vec![1.0; k]);
    let domain = admissible_domain(&xs)?;
    let Some(piece) = domain.pieces.first() else {
        return Ok(None);
    };
    let n = k - 1;
    let axes = parse_axes("slice", &args.slice, 2, n)?;
    let (a, b) = (axes[0], axes[1]);
    let base = piece.interior_point()?;
    let [ra, rb] = patch_window(piece, &base, a, b, args.spread)?;
    let mut grid = Vec::with_capacity(args.grid * args.grid);
    let mut pairs = Vec::with_capacity(args.grid * args.grid);
    for &s in &linspace(ra.0, ra.1, args.grid) {
        for &t in &linspace(rb.0, rb.1, args.grid) {
            let mut u = base.clone();
            u[a] = s;
            u[b] = t;
            grid.push(u);
            pairs.push([s, t]);
        }
    }
    let patch = patch_from_xprofiles(&xs, &signs, args.m, &grid)?;
    let mut header = vec![format!("u{}", a + 1), format!("u{}", b + 1)];
    header.extend((1..=k).map(|i| format!("x{i}")));
    let label = args
        .example
        .clone()
        .unwrap_or_else(|| format!("{} params", family.name()));
    let points: Vec<Vec<f64>> = patch.points.into_iter().map(|p| p.x).collect();
    let rows = pairs
        .iter()
        .zip(&points)
        .map(|(uv, x)| uv.iter().chain(x).copied().collect())
        .collect();
    Ok(Some(Sampled {
        label,
        params: pairs,
        points,
        header,
        rows,
        slice: [a, b],
    }))
}

pub fn cmd_mesh(args: &MeshArgs) -> CliResult<Outcome> {
    check_common(&args.common)?;
    check_m(args.m)?;
    at_least("grid", args.grid, 2)?;
    positive("spread", args.spread)?;
    let format = format_of(&args.out)?;

    let mut report = Report::new();
    let cfg = config_section(&mut report, "mesh", &args.common);
    cfg.set(
        "surface",
        match args.surface {
            SurfaceKind::Scherk => "scherk",
            SurfaceKind::Ode => "ode",
            SurfaceKind::Patch => "patch",
        },
    )
    .set("m", args.m)
    .set("grid", args.grid)
    .set("slice", &args.slice)
    .set("out", args.out.display());

    let sampled = match args.surface {
        SurfaceKind::Scherk => Some(translation_grid("scherk", &scherk(args)?, args, Some(args.spread.min(1.5)))?),
        SurfaceKind::Ode => Some(translation_grid("ode", &ode_surface(args)?, args, None)?),
        SurfaceKind::Patch => patch(args)?,
    };
    let Some(sampled) = sampled else {
        log::error!("empty admissible domain: the X-profiles are never simultaneously positive; no file written");
        report.section("mesh").set("status", "empty_domain");
        return Ok(Outcome { report, passed: false });
    };

    let dim = sampled.points[0].len();
    let s = report.section("mesh");
    s.set("label", &sampled.label)
        .set("slice_axes", format!("{},{}", sampled.slice[0] + 1, sampled.slice[1] + 1))
        .set_f64("param_lo_1", sampled.params[0][0])
        .set_f64("param_hi_1", sampled.params[sampled.params.len() - 1][0])
        .set_f64("param_lo_2", sampled.params[0][1])
        .set_f64("param_hi_2", sampled.params[sampled.params.len() - 1][1])
        .set("vertices", sampled.points.len());
    match format {
        Format::Obj => {
            let coords = parse_axes("coords", &args.coords, 3, dim)?;
            let mesh = GridMesh {
                rows: args.grid,
                cols: args.grid,
                vertices: sampled
                    .points
                    .iter()
                    .map(|p| [p[coords[0]], p[coords[1]], p[coords[2]]])
                    .collect(),
            };
            s.set("triangles", mesh.triangles().len()).set("format", "obj");
            write_file(&args.out, &mesh.to_obj())?;
        }
        Format::Csv => {
            s.set("format", "csv");
            write_file(&args.out, &csv_string(&sampled.header, &sampled.rows))?;
        }
    }
    s.set("status", "written");
    Ok(Outcome { report, passed: true })
}
