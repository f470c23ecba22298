use nullcone::cli::{run, CliError};

fn run_ok(args: &[&str]) -> String {
    let mut out = Vec::new();
    let argv = std::iter::once("nullcone").chain(args.iter().copied());
    run(argv, &mut out).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    String::from_utf8(out).unwrap()
}

fn run_err(args: &[&str]) -> CliError {
    let mut out = Vec::new();
    let argv = std::iter::once("nullcone").chain(args.iter().copied());
    run(argv, &mut out).expect_err("command should fail")
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn embed_grid_satisfies_constraints() {
    let out = run_ok(&["embed", "--k", "0", "--scale", "t^2", "--t", "0.5:2:4", "--chi", "0:2:4"]);
    assert!(!out.contains('\r'));
    let (header, rows) = parse_csv(&out);
    assert_eq!(header.len(), 12);
    assert_eq!(rows.len(), 16);
    let (ci, fi) = (header.iter().position(|h| h == "c").unwrap(), header.iter().position(|h| h == "f").unwrap());
    for r in &rows {
        let y2: f64 = r[4..10].iter().map(|v| v * v).sum();
        assert!(r[ci].abs() < 1e-12 * y2.max(1.0));
        assert!((r[fi] - 1.0).abs() < 1e-10);
    }
}

#[test]
fn csv_is_deterministic_with_full_precision() {
    let args = ["curvature", "--k", "-1", "--scale", "sech(t)", "--t", "-0.5:0.5:3", "--chi", "0.4:1.2:3"];
    let a = run_ok(&args);
    assert_eq!(a, run_ok(&args));
    let field = a.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(field, "-5.0000000000000000e-1");
}

#[test]
fn curvature_on_de_sitter() {
    let out = run_ok(&["curvature", "--k", "+1", "--scale", "ds_kp1", "--t", "0.5:2.5:3", "--chi", "0.5:2:2"]);
    let (header, rows) = parse_csv(&out);
    let s = header.iter().position(|h| h == "scalar").unwrap();
    for r in rows {
        assert!((r[s] + 12.0).abs() < 1e-6);
        for ev in &r[s + 1..s + 5] {
            assert!((ev + 3.0).abs() < 1e-6);
        }
        assert!(r[s + 5] < 1e-5);
    }
}

#[test]
fn metric_matches_closed_form() {
    let out = run_ok(&["metric", "--k", "-1", "--scale", "exp(-t)", "--t", "-1:1:3", "--chi", "0.2:1:3", "--theta", "0.5:2:2"]);
    let (header, rows) = parse_csv(&out);
    assert_eq!(rows.len(), 18);
    let last = header.len() - 1;
    assert_eq!(header[last], "closed_form_residual");
    assert!(rows.iter().all(|r| r[last] < 1e-9));
}

#[test]
fn isometry_of_closed_einstein_space() {
    let out = run_ok(&["isometry", "--k", "+1", "--scale", "1"]);
    assert_eq!(out.lines().next().unwrap(), "dimension=7 classification=einstein");
}

#[test]
fn isometry_reports_offsets() {
    let out = run_ok(&["isometry", "--k", "-1", "--scale", "csch(t - 0.4)", "--t-range", "0.6:2.5"]);
    assert!(out.starts_with("dimension=10 classification=de_sitter"), "{out}");
    let offset: f64 = out.lines().find_map(|l| l.strip_prefix("offset=")).unwrap().parse().unwrap();
    assert!((offset - 0.4).abs() < 1e-6);
}

#[test]
fn propagator_columns() {
    let out = run_ok(&["propagator", "--k", "0", "--scale", "1", "--x", "0,0,0,0", "--tp", "0", "--rp", "1:2:2", "--components", "F0101"]);
    let (header, rows) = parse_csv(&out);
    assert_eq!(header, ["tp", "r1p", "r2p", "r3p", "ydot", "scalar", "F0101"]);
    // Minkowski, spacelike separation |dx|: y.y' = |dx|^2 / 2.
    for r in rows {
        let d = r[1];
        assert!((r[4] - d * d / 2.0).abs() < 1e-12);
        assert!((r[5] - 1.0 / (4.0 * std::f64::consts::PI.powi(2) * d * d)).abs() < 1e-12);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run_err(&["embed", "--k", "2", "--scale", "1"]).exit_code(), 2);
    assert_eq!(run_err(&["embed", "--k", "0"]).exit_code(), 2);
    assert_eq!(run_err(&["embed", "--k", "0", "--scale", "1", "--t", "0:1"]).exit_code(), 2);
    assert_eq!(run_err(&["frobnicate"]).exit_code(), 2);
    let err = run_err(&["embed", "--k", "0", "--scale", "1/t", "--t", "1:-1:3"]);
    assert_eq!(err.exit_code(), 3);
    assert!(err.to_string().contains("point (0, "), "{err}");
    let err = run_err(&["propagator", "--k", "0", "--scale", "1", "--x", "0,0,0,0", "--tp", "1", "--rp", "1"]);
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn verify_list_and_subset() {
    let list = run_ok(&["verify", "--list"]);
    assert_eq!(list.lines().count(), 10);
    let out = run_ok(&["verify", "--only", "1,2,10", "--seed", "7"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 3);
    assert_eq!(run_err(&["verify", "--only", "11"]).exit_code(), 2);
}

#[test]
fn help_succeeds() {
    let out = run_ok(&["embed", "--help"]);
    assert!(out.contains("start:stop:count") || out.contains("Plotting recipe"));
}
