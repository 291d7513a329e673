//! End-to-end command runs against the shipped configs.

use std::path::PathBuf;

use super::run;

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

struct Run {
    code: u8,
    out: String,
    err: String,
}

fn risradar(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("risradar").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn value(out: &str, label: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(label).map(|v| v.trim().parse().unwrap()))
        .unwrap_or_else(|| panic!("no `{label}` in {out}"))
}

#[test]
fn snr_prints_six_labeled_values() {
    let r = risradar(&["snr", &config("dual_r1_250.toml")]);
    assert_eq!(r.code, 0, "{}", r.err);
    let labels = ["pr_w", "pr_dbw", "snr_db", "path_loss_db", "sum1_mag", "sum2_mag"];
    assert_eq!(r.out.lines().count(), 6);
    for (line, label) in r.out.lines().zip(labels) {
        assert!(line.starts_with(label), "{line}");
    }
}

#[test]
fn pt_override_is_linear() {
    let base = risradar(&["snr", &config("dual_r1_250.toml")]);
    let up = risradar(&["snr", &config("dual_r1_250.toml"), "--pt-dbw", "33"]);
    let d = value(&up.out, "pr_dbw") - value(&base.out, "pr_dbw");
    assert!((d - 3.0).abs() < 1e-5, "{d}");
}

#[test]
fn pulses_override() {
    let base = risradar(&["snr", &config("single_r1_250.toml")]);
    let up = risradar(&["snr", &config("single_r1_250.toml"), "--pulses", "40"]);
    let d = value(&up.out, "snr_db") - value(&base.out, "snr_db");
    assert!((d - 16.0206).abs() < 1e-4, "{d}");
    assert!(base.out.contains("sum2_mag         n/a"));
}

#[test]
fn closed_form_method_near_element_sum_in_far_field() {
    let cfg = config("dual_r1_1750.toml");
    let e = risradar(&["snr", &cfg]);
    let c = risradar(&["snr", &cfg, "--method", "closed-form"]);
    let d = value(&e.out, "pr_dbw") - value(&c.out, "pr_dbw");
    assert!(d.abs() < 0.5, "{d}");
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn dual_text() -> String {
    std::fs::read_to_string(config("dual_aligned.toml")).unwrap()
}

#[test]
fn three_panels_exit_2_naming_field() {
    let text = dual_text();
    let block = &text[text.rfind("[[panels]]").unwrap()..text.find("[target]").unwrap()];
    let three = text.replace("[target]", &format!("{block}[target]"));
    let dir = tempfile::tempdir().unwrap();
    let r = risradar(&["snr", &write_temp(&dir, "three.toml", &three)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("`panels`") && r.err.contains("line"), "{}", r.err);
}

#[test]
fn syntax_error_is_line_anchored() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dual_text().replace("rcs_m2 = 0.02", "rcs_m2 = ");
    let r = risradar(&["validate", &write_temp(&dir, "bad.toml", &bad)]);
    assert_eq!(r.code, 2);
    let line = bad.lines().position(|l| l.starts_with("rcs_m2")).unwrap() + 1;
    assert!(r.err.contains(&format!("line {line}")), "{}", r.err);
}

#[test]
fn degenerate_geometry_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // Target on RIS-2's centre.
    let text = dual_text().replace("position = [0.0, 0.0, -50.0]", "position = [0.0, 0.0, 50.0]");
    let r = risradar(&["snr", &write_temp(&dir, "deg.toml", &text)]);
    assert_eq!(r.code, 3, "{}", r.err);
}

#[test]
fn missing_config_exit_4() {
    let r = risradar(&["validate", "/nonexistent/config.toml"]);
    assert_eq!(r.code, 4);
}

#[test]
fn validate_ok() {
    let r = risradar(&["validate", &config("dual_r1_1750.toml")]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("ok: 2 panel(s), 200 cells"));
}

#[test]
fn table2_default_and_check() {
    let r = risradar(&["table2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 6);
    assert_eq!(risradar(&["table2", "--check"]).code, 0);
    let perturbed = format!("{}", ris_radar::DEFAULT_WAVELENGTH * 1.01);
    assert_eq!(risradar(&["table2", "--check", "--wavelength-m", &perturbed]).code, 1);
}

#[test]
fn sweep_fifty_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r2.csv");
    let r = risradar(&[
        "sweep",
        &config("dual_r1_250.toml"),
        "--axis",
        "r2",
        "--from",
        "10",
        "--to",
        "1000",
        "--points",
        "50",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 51);
    assert!(r.out.starts_with("rows: 50, failed: 0"));
}

fn compare_summary(cells: &str) -> String {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let svg = dir.path().join("c.svg");
    let r = risradar(&[
        "sweep",
        &config("dual_r1_250.toml"),
        "--axis",
        "r2",
        "--from",
        "10",
        "--to",
        "1000",
        "--points",
        "30",
        "--cells",
        cells,
        "--compare-single-dual",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let plot = std::fs::read_to_string(svg).unwrap();
    assert_eq!(plot.matches("<polyline").count(), 2);
    assert!(plot.contains("stroke-dasharray"));
    r.out
}

#[test]
fn large_panels_dual_beats_single_in_far_field() {
    assert!(compare_summary("46").contains("dual > single at all"));
}

#[test]
fn small_panels_dual_loses() {
    assert!(compare_summary("10").contains("dual < single at all"));
}

#[test]
fn csv_to_stdout_summary_to_stderr() {
    let r = risradar(&["sweep", &config("single_r1_250.toml"), "--axis", "pulses", "--values", "1,40,80"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out.lines().count(), 4);
    assert!(r.err.starts_with("rows: 3"));
}

#[test]
fn unwritable_output_exit_4() {
    let r = risradar(&[
        "sweep",
        &config("dual_r1_250.toml"),
        "--axis",
        "r1",
        "--values",
        "100,200",
        "--csv",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(r.code, 4);
}

#[test]
fn bad_axis_and_values_exit_2() {
    let cfg = config("dual_r1_250.toml");
    assert_eq!(risradar(&["sweep", &cfg, "--axis", "bogus", "--values", "1,2"]).code, 2);
    assert_eq!(risradar(&["sweep", &cfg, "--axis", "r2", "--values", "5,2"]).code, 2);
    assert_eq!(risradar(&["sweep", &cfg, "--axis", "r2"]).code, 2);
    assert_eq!(risradar(&["frobnicate"]).code, 2);
}
