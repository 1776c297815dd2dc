//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::process::{Command, ExitCode};
use std::time::Instant;

use minmin::sampling::{par_map, point_rng, random_separable_config, random_translation_config};
use minmin_core::curvature::{mean_curvature_separable, mean_curvature_translation, CurvatureReport};
use minmin_core::function::{C3Function, Polynomial};
use minmin_core::ode::{observed_order, ProfileOdeParams};
use minmin_core::separable::{
    admissible_domain, example_surface, extract_affine_system, extract_exponential_system, extract_quadratic_system,
    BasisTag, ExampleId, SeparableSurface, XProfile,
};
use minmin_core::translation::{assemble_separated_surface, cylinder_over, grid_residuals, ProfileInit};
use minmin_core::NormParams;
use rand::Rng;

type Outcome = Result<String, String>;

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn dims(index: usize) -> (u32, usize) {
    (1 + (index % 3) as u32, 2 + (index / 3) % 3)
}

/// Largest oracle disagreement `|H - H_fd| / (1 + |H|)` and tangency defect.
#[derive(Default)]
struct OracleStats {
    worst_rel: f64,
    worst_defect: f64,
    failures: usize,
}

impl OracleStats {
    fn add(&mut self, rep: &CurvatureReport) {
        let rel = (rep.h_analytic - rep.h_oracle).abs() / (1.0 + rep.h_analytic.abs());
        self.worst_rel = self.worst_rel.max(rel);
        self.worst_defect = self.worst_defect.max(rep.tangency_defect);
        if !(rel <= 1e-6) {
            self.failures += 1;
        }
    }
}

const CONFIGS: usize = 200;

fn translation_oracle() -> Result<(OracleStats, f64), String> {
    let start = Instant::now();
    let reps = par_map(workers(), CONFIGS, |i| {
        let (m, n) = dims(i);
        let c = random_translation_config(&mut point_rng(11, i), n);
        Ok(CurvatureReport::translation(&c.profiles, &c.u, &NormParams::new(m, n + 1)?, 1e-6)?)
    })
    .map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let mut stats = OracleStats::default();
    reps.iter().for_each(|r| stats.add(r));
    Ok((stats, secs))
}

fn separable_oracle() -> Result<OracleStats, String> {
    let reps = par_map(workers(), CONFIGS, |i| {
        let (m, n) = dims(i);
        let c = random_separable_config(&mut point_rng(12, i), n);
        Ok(CurvatureReport::separable(&c.profiles, &c.x, &NormParams::new(m, n + 1)?, 1e-6)?)
    })
    .map_err(|e| e.to_string())?;
    let mut stats = OracleStats::default();
    reps.iter().for_each(|r| stats.add(r));
    Ok(stats)
}

fn criterion_1(t: &Result<(OracleStats, f64), String>) -> Outcome {
    let (s, secs) = t.as_ref().map_err(Clone::clone)?;
    let msg = format!("{CONFIGS} configs, max rel diff {:.2e}, {} over 1e-6, {secs:.2} s", s.worst_rel, s.failures);
    if s.failures == 0 && *secs < 10.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_2(s: &Result<OracleStats, String>) -> Outcome {
    let s = s.as_ref().map_err(Clone::clone)?;
    let msg = format!("{CONFIGS} configs, max rel diff {:.2e}, {} over 1e-6", s.worst_rel, s.failures);
    if s.failures == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_3(t: &Result<(OracleStats, f64), String>, s: &Result<OracleStats, String>) -> Outcome {
    let a = t.as_ref().map_err(Clone::clone)?.0.worst_defect;
    let b = s.as_ref().map_err(Clone::clone)?.worst_defect;
    let msg = format!("max defect translation {a:.2e}, separable {b:.2e}");
    if a.max(b) <= 1e-6 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Classical graph mean curvature of `Σ f_i(u_i)`, whose Hessian is
/// diagonal: `(1/n) Σ f_i'' (W² - f_i'²) / W³`.
fn euclidean_h(fs: &[Polynomial], u: &[f64]) -> f64 {
    let d1: Vec<f64> = fs.iter().zip(u).map(|(f, &t)| f.d1(t)).collect();
    let w2 = 1.0 + d1.iter().map(|g| g * g).sum::<f64>();
    let w3 = w2 * w2.sqrt();
    let sum: f64 = fs.iter().zip(u).zip(&d1).map(|((f, &t), g)| f.d2(t) * (w2 - g * g)).sum();
    sum / (fs.len() as f64 * w3)
}

fn criterion_4() -> Outcome {
    let sign_for = |n: usize| -> Result<f64, String> {
        let mut fs = vec![Polynomial::new(vec![0.0, 0.0, 0.5])];
        fs.extend((1..n).map(|_| Polynomial::linear(0.0, 0.0)));
        let u = vec![0.5; n];
        let h = mean_curvature_translation(&fs, &u, &NormParams::new(1, n + 1).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        Ok((h / euclidean_h(&fs, &u)).signum())
    };
    let signs: Vec<f64> = (2..=4).map(sign_for).collect::<Result<_, _>>()?;
    if signs.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!("sign depends on n: {signs:?}"));
    }
    let sign = signs[0];
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = 2 + i % 3;
        let c = random_translation_config(&mut point_rng(13, i), n);
        let h = mean_curvature_translation(&c.profiles, &c.u, &NormParams::new(1, n + 1).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        worst = worst.max((h - sign * euclidean_h(&c.profiles, &c.u)).abs());
    }
    let msg = format!("100 points, global sign {sign:+}, max diff {worst:.2e}");
    if worst <= 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

const EXAMPLE_POINTS: usize = 100;

/// `|H|` at `EXAMPLE_POINTS` sampled points of `surface`, solved in the
/// chart whose last coordinate has the steepest profile.
fn example_h(surface: &SeparableSurface, seed: u64) -> Result<Vec<f64>, String> {
    par_map(workers(), EXAMPLE_POINTS, |i| {
        let mut rng = point_rng(seed, i);
        let x = (0..1000).find_map(|_| surface.try_sample(&mut rng)).ok_or_else(|| {
            minmin::error::CliError::Numerical(format!("{}: no sample for point {i}", surface.label))
        })?;
        let order = surface.chart_order(&x);
        let xs: Vec<f64> = order.iter().map(|&k| x[k]).collect();
        Ok(mean_curvature_separable(&surface.permuted(&order), &xs, &surface.params)?.abs())
    })
    .map_err(|e| e.to_string())
}

fn criterion_5() -> Outcome {
    let ids = [
        ExampleId::Ex62 { r: 2 },
        ExampleId::Ex62 { r: 3 },
        ExampleId::Ex64 { r: 2, coef: None },
        ExampleId::Ex64 { r: 3, coef: None },
        ExampleId::Ex65,
        ExampleId::Ex66,
        ExampleId::parse("i-2", 2).map_err(|e| e.to_string())?,
        ExampleId::parse("iii-2", 2).map_err(|e| e.to_string())?,
    ];
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for m in 1..=3u32 {
        for (k, id) in ids.iter().enumerate() {
            let s = example_surface(id, m).map_err(|e| e.to_string())?;
            let max = example_h(&s, 100 + k as u64)?.into_iter().fold(0.0, f64::max);
            worst = worst.max(max);
            if !(max <= 1e-8) {
                bad.push(format!("{} m={m}: {max:.2e}", s.label));
            }
        }
    }
    let perturbed = example_surface(&ExampleId::Ex64 { r: 2, coef: Some(1.1) }, 1).map_err(|e| e.to_string())?;
    let hs = example_h(&perturbed, 200)?;
    let fraction = hs.iter().filter(|&&h| h > 1e-3).count() as f64 / hs.len() as f64;
    let msg = format!(
        "{} surfaces x m=1..3 x {EXAMPLE_POINTS} points, max |H| {worst:.2e}; perturbed 6.4: {:.0}% of points with |H| > 1e-3",
        ids.len(),
        100.0 * fraction
    );
    if bad.is_empty() && fraction > 0.5 {
        Ok(msg)
    } else {
        Err(format!("{msg}; failing: {bad:?}"))
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
}

fn draw<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect()
}

/// Quadratic-case coefficients as displayed, scaled to expansion
/// coefficients of the identity in the monomial basis.
fn displayed_quadratic(p: &[f64], q: &[f64], r: &[f64]) -> Vec<(BasisTag, f64)> {
    let (p1, p2, p3, p4) = (p[0], p[1], p[2], p[3]);
    let (q1, q2, q3, q4) = (q[0], q[1], q[2], q[3]);
    let (r1, r2, r3, r4) = (r[0], r[1], r[2], r[3]);
    vec![
        (BasisTag::Const, q1 * (p2 + p3 + p4) + q2 * (p1 + p3 + p4) + q3 * (p1 + p2 + p4) + q4 * (p1 + p2 + p3)),
        (BasisTag::Lin(0), (q2 + q3) * (q1 - q4) + 2.0 * r1 * (p2 + p3 + p4) - 2.0 * r4 * (p1 + p2 + p3)),
        (BasisTag::Lin(1), (q1 + q3) * (q2 - q4) + 2.0 * r2 * (p1 + p3 + p4) - 2.0 * r4 * (p1 + p2 + p3)),
        (BasisTag::Lin(2), (q1 + q2) * (q3 - q4) + 2.0 * r3 * (p1 + p2 + p4) - 2.0 * r4 * (p1 + p2 + p3)),
        (BasisTag::Sq(0), (q2 + q3) * (r1 + r4) - q1 * r4 - q4 * r1),
        (BasisTag::Sq(1), (q1 + q3) * (r2 + r4) - q2 * r4 - q4 * r2),
        (BasisTag::Sq(2), (q1 + q2) * (r3 + r4) - q3 * r4 - q4 * r3),
        (BasisTag::Cross(0, 1), 2.0 * ((q2 - q4) * r1 + (q1 - q4) * r2 + q3 * r4)),
        (BasisTag::Cross(0, 2), 2.0 * ((q3 - q4) * r1 + (q1 - q4) * r3 + q2 * r4)),
        (BasisTag::Cross(1, 2), 2.0 * ((q3 - q4) * r2 + (q2 - q4) * r3 + q1 * r4)),
        (BasisTag::SymCubic(0, 1), 2.0 * (r1 * r2 + r1 * r4 + r2 * r4)),
        (BasisTag::SymCubic(0, 2), 2.0 * (r1 * r3 + r1 * r4 + r3 * r4)),
        (BasisTag::SymCubic(1, 2), 2.0 * (r2 * r3 + r2 * r4 + r3 * r4)),
        (BasisTag::Triple, 4.0 * r4 * (r1 + r2 + r3)),
    ]
}

fn criterion_6() -> Outcome {
    let mut rng = point_rng(16, 0);
    let mut mismatches = Vec::new();
    for draw_index in 0..50 {
        for n in [3usize, 4] {
            let p = draw(&mut rng, n + 1);
            let q = draw(&mut rng, n + 1);
            let sys = extract_affine_system(n, &p, &q).map_err(|e| e.to_string())?;
            let (tp, tq): (f64, f64) = (p.iter().sum(), q.iter().sum());
            let mut want = vec![(BasisTag::Const, (0..=n).map(|i| q[i] * (tp - p[i])).sum::<f64>())];
            want.extend((0..n).map(|i| (BasisTag::Lin(i), (tq - q[i] - q[n]) * (q[i] - q[n]))));
            if sys.coefficients.len() != want.len() {
                mismatches.push(format!("affine n={n} draw {draw_index}: {} coefficients", sys.coefficients.len()));
            }
            for (tag, w) in want {
                if !sys.get(&tag).is_some_and(|g| close(g, w)) {
                    mismatches.push(format!("affine n={n} draw {draw_index} {tag}"));
                }
            }
        }

        let (p, q, r) = (draw(&mut rng, 4), draw(&mut rng, 4), draw(&mut rng, 4));
        let sys = extract_quadratic_system(&p, &q, &r).map_err(|e| e.to_string())?;
        if sys.coefficients.len() != 14 {
            mismatches.push(format!("quadratic draw {draw_index}: {} coefficients", sys.coefficients.len()));
        }
        for (tag, w) in displayed_quadratic(&p, &q, &r) {
            if !sys.get(&tag).is_some_and(|g| close(g, w)) {
                mismatches.push(format!("quadratic draw {draw_index} {tag}"));
            }
        }

        let (q, r) = (draw(&mut rng, 4), draw(&mut rng, 4));
        let sys = extract_exponential_system(&q, &r).map_err(|e| e.to_string())?;
        let want = [
            2.0 * (q[0] * q[1] - r[2] * r[3]),
            2.0 * (q[2] * q[3] - r[0] * r[1]),
            2.0 * (q[0] * q[2] - r[1] * r[3]),
            2.0 * (q[1] * q[3] - r[0] * r[2]),
            2.0 * (q[1] * q[2] - r[0] * r[3]),
            2.0 * (q[0] * q[3] - r[1] * r[2]),
        ];
        let got: Vec<f64> = sys.coefficients.iter().map(|(_, c)| *c).collect();
        if got.len() != 6 || got.iter().zip(want).any(|(&g, w)| !close(g, w)) {
            mismatches.push(format!("exponential draw {draw_index}"));
        }
    }
    if mismatches.is_empty() {
        Ok("50 draws each: affine n=3, n=4, quadratic (14 terms), exponential (6 terms) at 1e-12 relative".into())
    } else {
        Err(format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]))
    }
}

const OBSTRUCTION_LEVEL: f64 = 1e-3;

fn alternating(n: usize, y0: f64) -> Vec<ProfileInit> {
    (0..n).map(|i| ProfileInit::new(0.0, if i % 2 == 0 { y0 } else { -y0 })).collect()
}

fn criterion_7() -> Outcome {
    let err = |e: minmin_core::Error| e.to_string();
    let mut min_fraction = 1.0f64;
    let mut max_sep = 0.0f64;
    let mut max_cyl = 0.0f64;
    for m in 1..=3u32 {
        for c0 in [1.0, -1.0, 2.0] {
            for (n, per_axis) in [(3usize, 10usize), (4, 6)] {
                let ts = assemble_separated_surface(m, n, c0, &alternating(n, 0.5), 1e-3, 1000).map_err(err)?;
                let res = grid_residuals(&ts, per_axis).map_err(err)?;
                let above = res.iter().filter(|(_, r)| r.abs() >= OBSTRUCTION_LEVEL).count();
                min_fraction = min_fraction.min(above as f64 / res.len() as f64);
            }
            let ts2 = assemble_separated_surface(m, 2, c0, &alternating(2, 0.5), 1e-3, 1000).map_err(err)?;
            let sep = grid_residuals(&ts2, 20).map_err(err)?;
            max_sep = sep.iter().fold(max_sep, |a, (_, r)| a.max(r.abs()));
            for n in [3usize, 4] {
                let cyl = cylinder_over(&ts2, n, None).map_err(err)?;
                let res = grid_residuals(&cyl, if n == 3 { 10 } else { 6 }).map_err(err)?;
                max_cyl = res.iter().fold(max_cyl, |a, (_, r)| a.max(r.abs()));
            }
        }
    }
    let msg = format!(
        "n=3,4 worst fraction with |residual| >= 1e-3: {:.1}%; n=2 max {max_sep:.2e}; cylinders max {max_cyl:.2e}",
        100.0 * min_fraction
    );
    if min_fraction >= 0.9 && max_sep <= 1e-7 && max_cyl <= 1e-7 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_8() -> Outcome {
    // y' = (1 + y²) from u = 0.1 with y = tan(0.1), so f' = tan(u) on
    // [0.1, 1.1]. Coarser steps are still pre-asymptotic near the pole.
    let params = ProfileOdeParams::new(1, 1, 2.0, 0.1f64.tan())
        .with_start(0.1, 0.0)
        .with_step(0.005, 200);
    let (order, coarse, fine) = observed_order(&params, f64::tan).map_err(|e| e.to_string())?;
    let msg = format!("order {order:.3} (errors {coarse:.2e}, {fine:.2e})");
    if (order - 4.0).abs() <= 0.2 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_9() -> Outcome {
    let mut rng = point_rng(19, 0);
    let mut nonempty = 0;
    let nonzero = |rng: &mut rand_chacha::ChaCha8Rng| {
        let q: f64 = rng.gen_range(0.1..3.0);
        if rng.gen_bool(0.5) {
            q
        } else {
            -q
        }
    };
    for _ in 0..50 {
        for n in [3usize, 4] {
            let q = nonzero(&mut rng);
            let mut p = draw(&mut rng, n);
            p.push(-p.iter().sum::<f64>());
            let xs: Vec<XProfile> = p.iter().map(|&pi| XProfile::affine(pi, q)).collect();
            if !admissible_domain(&xs).map_err(|e| e.to_string())?.is_empty() {
                nonempty += 1;
            }
        }
    }
    let msg = format!("50 draws each of (i-1) and (iii-1), {nonempty} nonempty");
    if nonempty == 0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_minmin"))
        .args(args)
        .env_remove("MINMIN_LOG")
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code().is_some_and(|c| c > 1) || out.status.code().is_none() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

/// The report without the line echoing the worker count.
fn without_workers(report: &[u8]) -> Vec<u8> {
    String::from_utf8_lossy(report)
        .lines()
        .filter(|l| !l.starts_with("workers ="))
        .flat_map(|l| l.bytes().chain([b'\n']))
        .collect()
}

fn criterion_10() -> Outcome {
    let runs: [&[&str]; 4] = [
        &["verify", "--example", "6.4", "--r", "3", "--m", "2", "--points", "30", "--seed", "7"],
        &["oracle-compare", "--kind", "separable", "--points", "30", "--seed", "3"],
        &["oracle-compare", "--kind", "translation", "--points", "30", "--seed", "3"],
        &["ode", "--n", "3", "--c0", "1", "--grid", "8"],
    ];
    for args in runs {
        let first = run_cli(args)?;
        if first.is_empty() {
            return Err(format!("{args:?} produced an empty report"));
        }
        if run_cli(args)? != first {
            return Err(format!("{args:?} differs between identical runs"));
        }
        let mut threaded: Vec<&str> = args.to_vec();
        threaded.extend(["--workers", "4"]);
        if without_workers(&run_cli(&threaded)?) != without_workers(&first) {
            return Err(format!("{args:?} depends on --workers"));
        }
    }
    Ok(format!(
        "{} commands: repeated runs byte-identical, 4 workers match 1 apart from the workers line",
        runs.len()
    ))
}

fn main() -> ExitCode {
    let translation = translation_oracle();
    let separable = separable_oracle();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 translation oracle", criterion_1(&translation)),
        ("2 separable oracle", criterion_2(&separable)),
        ("3 tangency witness", criterion_3(&translation, &separable)),
        ("4 euclidean reduction", criterion_4()),
        ("5 examples minimal", criterion_5()),
        ("6 ansatz systems", criterion_6()),
        ("7 obstruction", criterion_7()),
        ("8 integrator order", criterion_8()),
        ("9 empty domains", criterion_9()),
        ("10 determinism", criterion_10()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("PASS {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
