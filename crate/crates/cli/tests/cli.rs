use std::process::{Command, Output};

fn catlaw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catlaw")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn one_line_error(o: &Output) -> String {
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert_eq!(err.trim_end().lines().count(), 1, "diagnostic should be one line: {err}");
    err
}

#[test]
fn coeffs_prints_exact_fractions() {
    let o = catlaw(&["coeffs", "--p", "2", "--k", "1", "--q", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let fracs: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(fracs, ["-1/3", "-1/2", "1", "-1/6"]);
}

#[test]
fn coeffs_centered_second_derivative() {
    let o = catlaw(&["coeffs", "--p", "1", "--k", "2"]);
    let text = stdout(&o);
    let fracs: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(fracs, ["1", "-2", "1"]);
}

#[test]
fn coeffs_out_of_range_fails() {
    one_line_error(&catlaw(&["coeffs", "--p", "1", "--k", "5"]));
}

#[test]
fn stability_csv_has_header_and_samples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h2.csv");
    let o = catlaw(&["stability", "--pmax", "4", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "c,h2_p1,h2_p2,h2_p3,h2_p4");
    assert_eq!(lines.len(), 202);
}

#[test]
fn run_config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{
        "grid": {"n": 40, "x_lo": 0.0, "x_hi": 1.0},
        "model": {"kind": "burgers"},
        "scheme": {"scheme": "fl_cat", "p": 2, "cfl": 0.5},
        "run": {"initial_condition": "square_step", "boundary": "periodic", "t_end": 0.1}
    }"#;
    let path = dir.path().join("burgers.json");
    std::fs::write(&path, cfg).unwrap();
    let out = dir.path().join("out");
    let o = catlaw(&["run", "--config", path.to_str().unwrap(), "--out", out.to_str().unwrap(), "--n", "30"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let files: Vec<_> = std::fs::read_dir(&out).unwrap().collect();
    assert_eq!(files.len(), 1);
    let text = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    assert_eq!(text.lines().count(), 31);
    assert!(text.starts_with("x,u\n"));
}

#[test]
fn run_preset_writes_one_file_per_scheme() {
    let dir = tempfile::tempdir().unwrap();
    let o = catlaw(&["run", "--preset", "fig3_square_compare", "--n", "40", "--t-end", "0.05", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 4);
}

#[test]
fn bad_inputs_give_one_line_diagnostics() {
    let e = one_line_error(&catlaw(&["run", "--preset", "nope"]));
    assert!(e.contains("unknown preset"));
    let e = one_line_error(&catlaw(&["run", "--config", "/nonexistent/cfg.json"]));
    assert!(e.contains("/nonexistent/cfg.json"));
    let e = one_line_error(&catlaw(&["run", "--preset", "fig2_square_lw", "--cfl", "0"]));
    assert!(e.to_lowercase().contains("cfl"));
    one_line_error(&catlaw(&["convergence", "--preset", "sod_450"]));
}

#[test]
fn convergence_preset_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = catlaw(&["convergence", "--preset", "table3_advection_convergence", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("LW-CAT4"));
    let csv = std::fs::read_to_string(dir.path().join("table3_advection_convergence_LW-CAT2.csv")).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "n,dx,l1_error,order");
    assert_eq!(lines.len(), 7);
}

#[test]
fn presets_lists_every_name() {
    let text = stdout(&catlaw(&["presets"]));
    assert_eq!(text.lines().count(), 11);
    assert!(text.contains("shu_osher_450"));
}
