use std::path::Path;
use std::process::{Command, Output};

fn minmin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minmin"))
        .args(args)
        .env_remove("MINMIN_LOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Value of `key = value` in section `[section]` of a report.
fn field(report: &str, section: &str, key: &str) -> String {
    let mut inside = false;
    for line in report.lines() {
        if line.starts_with('[') {
            inside = line == format!("[{section}]");
        } else if inside {
            if let Some(v) = line.strip_prefix(&format!("{key} = ")) {
                return v.to_string();
            }
        }
    }
    panic!("no {section}.{key} in report:\n{report}");
}

fn num(report: &str, section: &str, key: &str) -> f64 {
    field(report, section, key).parse().unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn verify_second_example_passes() {
    let o = minmin(&["verify", "--example", "6.2", "--r", "2", "--m", "1", "--points", "100", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout(&o);
    assert!(num(&r, "aggregate", "max_abs_h") <= 1e-8);
    assert_eq!(field(&r, "aggregate", "pass"), "100");
    assert_eq!(field(&r, "config", "seed"), "3");
}

#[test]
fn verify_fourth_example_passes_at_m2() {
    let o = minmin(&["verify", "--example", "6.4", "--r", "3", "--m", "2", "--points", "100"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_perturbed_coefficient_fails() {
    let o = minmin(&["verify", "--example", "6.4", "--r", "2", "--points", "30", "--perturb-coef", "1.1"]);
    assert_eq!(o.status.code(), Some(1));
    let r = stdout(&o);
    assert!(num(&r, "aggregate", "max_abs_h") > 1e-3);
    assert_eq!(field(&r, "aggregate", "status"), "fail");
}

#[test]
fn verify_writes_point_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.csv");
    let o = minmin(&["verify", "--example", "6.6", "--m", "2", "--points", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["index", "x1", "x2", "x3", "x4", "h_analytic", "h_oracle", "tangency_defect", "pass"]);
    assert_eq!(rows.len(), 5);
    for row in rows {
        // 6.6 lies on x2 x3 = ±x1 x4.
        assert!(((row[2] * row[3]).abs() - (row[1] * row[4]).abs()).abs() <= 1e-9 * (row[1] * row[4]).abs());
    }
}

#[test]
fn ode_matches_tangent_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    let o = minmin(&["ode", "--m", "1", "--k", "1", "--c0", "1", "--y0", "0.5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["u", "f", "df", "d2f"]);
    assert_eq!(rows.len(), 1001);
    for r in &rows {
        let y = (0.5 * r[0] + 0.5f64.atan()).tan();
        assert!((r[2] - y).abs() <= 1e-6, "u = {}", r[0]);
        // f = ∫ tan = -2 ln cos(u/2 + atan y0) + 2 ln cos(atan y0)
        let f = -2.0 * (0.5 * r[0] + 0.5f64.atan()).cos().ln() + 2.0 * 0.5f64.atan().cos().ln();
        assert!((r[1] - f).abs() <= 1e-6);
    }
}

#[test]
fn ode_with_zero_constant_is_linear() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line.csv");
    let o = minmin(&["ode", "--m", "2", "--k", "1", "--c0", "0", "--y0", "0.7", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(num(&stdout(&o), "profile", "ode_residual"), 0.0);
    let (_, rows) = read_csv(&path);
    for r in rows {
        assert_eq!(r[2], 0.7);
        assert_eq!(r[3], 0.0);
        assert!((r[1] - 0.7 * r[0]).abs() <= 1e-14);
    }
}

#[test]
fn ode_three_profile_assembly_is_obstructed() {
    let o = minmin(&["ode", "--m", "2", "--k", "2", "--c0", "1", "--n", "3", "--grid", "6"]);
    assert_eq!(o.status.code(), Some(1));
    let r = stdout(&o);
    assert!(num(&r, "residual", "max_abs") > 1e-3);
    assert_eq!(field(&r, "residual", "status"), "fail");
}

#[test]
fn ode_two_profile_assembly_is_minimal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.csv");
    let o = minmin(&["ode", "--m", "3", "--c0", "2", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(num(&stdout(&o), "residual", "max_abs") <= 1e-7);
    let (header, rows) = read_csv(&path);
    assert_eq!(header[0], "profile");
    assert!(rows.iter().any(|r| r[0] == 1.0) && rows.iter().any(|r| r[0] == 2.0));
}

#[test]
fn ode_rejects_oversized_step() {
    let o = minmin(&["ode", "--m", "1", "--c0", "1", "--y0", "5", "--step", "1.5"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("step 1.5"), "{err}");
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn ansatz_parameter_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let ex1 = write(d, "ex1.toml", "kind = \"affine\"\np = [1, 1, 1, 1]\nq = [1, -1, -1, 1]\n");
    let ex3 = write(d, "ex3.toml", "p = [1, 1, 3, 3, 1]\nq = [1, 1, -2, -2, 1]\n");
    let ex5 = write(d, "ex5.toml", "kind = \"exponential\"\nq = [1, 1, 1, 1]\nr = [1, 1, 1, 1]\n");
    let bad = write(d, "bad.toml", "kind = \"affine\"\np = [1, 1, 1, 1]\nq = [1, 1, 1, 1]\n");

    assert_eq!(minmin(&["ansatz", "--params", &ex1]).status.code(), Some(0));
    assert_eq!(minmin(&["ansatz", "--kind", "affine", "--params", &ex3]).status.code(), Some(0));
    assert_eq!(minmin(&["ansatz", "--params", &ex5]).status.code(), Some(0));

    let o = minmin(&["ansatz", "--params", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let r = stdout(&o);
    assert_eq!(field(&r, "system", "status"), "violated");
    // Σ_i q_i (Σ_{j≠i} p_j) = 4 · 3
    assert!(r.contains("P0,1,1.200000000000e1"), "{r}");
}

#[test]
fn ansatz_prints_quadratic_list_in_display_order() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "quad.toml",
        "kind = \"quadratic\"\np = [1, 2, 3, 4]\nq = [0.5, -1, 2, 1]\nr = [1, 0, -1, 2]\n",
    );
    let o = minmin(&["ansatz", "--params", &f]);
    let r = stdout(&o);
    let tags: Vec<&str> = r
        .lines()
        .skip_while(|l| !l.starts_with("table = tag"))
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(
        tags,
        ["P0", "P1", "P2", "P3", "P11", "P22", "P33", "P12", "P13", "P23", "P112", "P113", "P223", "P123"]
    );
}

#[test]
fn ansatz_parse_errors_report_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "broken.toml", "kind = \"affine\"\np = [1, 1, 1, 1]\nq = [1, -1,, 1]\n");
    let o = minmin(&["ansatz", "--params", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn mesh_scherk_vertex_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scherk.obj");
    let o = minmin(&["mesh", "--surface", "scherk", "--grid", "50", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let obj = std::fs::read_to_string(&path).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 2500);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2 * 49 * 49);
    for l in obj.lines().filter(|l| l.starts_with("v ")) {
        let v: Vec<f64> = l[2..].split(' ').map(|t| t.parse().unwrap()).collect();
        // z = -ln cos x + ln cos y
        assert!((v[2] + v[0].cos().ln() - v[1].cos().ln()).abs() < 1e-12);
    }
}

#[test]
fn mesh_first_example_patch_satisfies_relation() {
    let dir = tempfile::tempdir().unwrap();
    for m in 1..=2i32 {
        let path = dir.path().join(format!("patch{m}.csv"));
        let ms = m.to_string();
        let o = minmin(&["mesh", "--example", "6.1", "--m", &ms, "--grid", "12", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let (header, rows) = read_csv(&path);
        assert_eq!(header, ["u1", "u2", "x1", "x2", "x3", "x4"]);
        assert_eq!(rows.len(), 144);
        for r in rows {
            let t: Vec<f64> = r[2..].iter().map(|x| x.powi(2 * m)).collect();
            let defect = (t[0] - t[1] - t[2] + t[3]).abs() / t.iter().sum::<f64>();
            assert!(defect <= 1e-6, "m={m} defect {defect}");
        }
    }
}

#[test]
fn mesh_empty_domain_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    // Equal q_i with Σ p_i = 0: the (i-1) configuration.
    let params = write(dir.path(), "i1.toml", "kind = \"affine\"\np = [1, 2, -0.5, -2.5]\nq = [1, 1, 1, 1]\n");
    let out = dir.path().join("never.obj");
    let o = minmin(&["mesh", "--params", &params, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(field(&stdout(&o), "mesh", "status"), "empty_domain");
    assert!(!out.exists());
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.obj");
    let out = out.to_str().unwrap();
    let cases: [&[&str]; 7] = [
        &["verify", "--example", "6.9"],
        &["verify", "--example", "6.2", "--tol", "0"],
        &["verify", "--example", "6.1", "--perturb-coef", "1.1"],
        &["mesh", "--surface", "scherk", "--grid", "1", "--out", out],
        &["mesh", "--surface", "scherk", "--out", "mesh.ply"],
        &["ode", "--n", "3", "--k", "1"],
        &["oracle-compare", "--kind", "euclidean", "--m", "2"],
    ];
    for args in cases {
        assert_eq!(minmin(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn oracle_compare_small_batches_pass() {
    for kind in ["translation", "separable", "euclidean"] {
        let o = minmin(&["oracle-compare", "--kind", kind, "--points", "18"]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
    }
}

#[test]
fn reports_are_reproducible_across_worker_counts() {
    let run = |workers: &str, seed: &str| {
        stdout(&minmin(&[
            "verify", "--example", "6.4", "--r", "3", "--m", "2", "--points", "24", "--seed", seed, "--workers", workers,
        ]))
    };
    let a = run("1", "11");
    assert_eq!(a.as_bytes(), run("1", "11").as_bytes());
    let b = run("4", "11");
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with("workers = ")).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&a), strip(&b));
    assert_ne!(a, run("1", "12"));
}

#[test]
fn report_file_and_timing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let o = minmin(&["ansatz", "--example", "6.5", "--report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("minmin-report 1\n"));
    assert!(!text.contains("[timing]"));
    let timed = stdout(&minmin(&["ansatz", "--example", "6.5", "--timing"]));
    assert!(timed.contains("[timing]\nwall_time_s = "));
}
