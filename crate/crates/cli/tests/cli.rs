use std::path::Path;
use std::process::{Command, Output};

fn dcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcross")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_str().unwrap().to_string();
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", &path]);
    let out = dcross(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn gen_and_count() {
    let dir = tempfile::tempdir().unwrap();
    let dc = gen(dir.path(), "dc.json", &["--arr", "dc", "--m", "10", "--n", "10", "--r", "0.3", "--R", "1"]);
    let text = std::fs::read_to_string(&dc).unwrap();
    assert_eq!(text.matches("\"x\"").count(), 20);
    let dpl = gen(dir.path(), "dpl.json", &["--arr", "dpl", "--m", "3", "--n", "3"]);
    assert_eq!(stdout(&dcross(&["count", &dpl])), "9\n");
    let star = gen(dir.path(), "star.json", &["--arr", "dpl", "--m", "1", "--n", "5"]);
    assert_eq!(stdout(&dcross(&["count", &star])), "0\n");
}

#[test]
fn duplicate_points_are_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.json");
    let text = r#"{"part_a":[{"x":0,"y":0},{"x":0,"y":0}],"part_b":[{"x":1,"y":1}],"meta":{"arrangement":"dpl","params":{},"tool_version":"x"}}"#;
    std::fs::write(&path, text).unwrap();
    assert_eq!(dcross(&["count", path.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn unreadable_layout_is_usage_error() {
    assert_eq!(dcross(&["render", "/nonexistent/layout.json"]).status.code(), Some(2));
    assert_eq!(dcross(&["count", "/nonexistent/layout.json"]).status.code(), Some(2));
}

#[test]
fn formulas() {
    let eval = |args: &[&str]| {
        let mut all = vec!["formula"];
        all.extend_from_slice(args);
        stdout(&dcross(&all))
    };
    assert_eq!(eval(&["--which", "dc", "--m", "10", "--n", "10"]), "900\n");
    assert_eq!(eval(&["--which", "zarankiewicz", "--m", "8", "--n", "8"]), "144\n");
    assert_eq!(eval(&["--which", "cyl", "--m", "4", "--n", "4"]), "16\n");
    assert_eq!(eval(&["--which", "tpl", "--c", "14", "--t", "4", "--b", "4"]), "1092\n");
    assert_eq!(eval(&["--which", "dol", "--l", "4", "--rc", "4", "--t", "4", "--b", "4"]), "144\n");
    assert_eq!(eval(&["--which", "lemma1", "--m", "10", "--n", "10", "--r", "1", "--R", "1.05"]), "20 80\n");
    assert_eq!(eval(&["--which", "beta", "--m", "10", "--n", "10", "--r", "1", "--R", "1.05"]), "0 0 1 1\n");
    let bad = dcross(&["formula", "--which", "dc", "--m", "3", "--n", "4"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("m >= n"));
}

#[test]
fn threshold_similarity_and_order() {
    let one = stdout(&dcross(&["threshold", "--m", "4", "--n", "4", "--R", "1"]));
    let two = stdout(&dcross(&["threshold", "--m", "4", "--n", "4", "--R", "2"]));
    let t = |s: &str| s.lines().next().unwrap().parse::<f64>().unwrap();
    assert_eq!(t(&two), 2.0 * t(&one));
    let json: serde_json::Value = serde_json::from_str(one.lines().nth(1).unwrap()).unwrap();
    assert_eq!(json["t_cr"].as_f64(), Some(t(&one)));
    assert_eq!(dcross(&["threshold", "--m", "3", "--n", "4", "--R", "1"]).status.code(), Some(2));
}

#[test]
fn sweep_rows() {
    let single = dcross(&["sweep", "--m", "6", "--n", "6", "--r-from", "0.3", "--r-to", "0.3"]);
    assert_eq!(stdout(&single).lines().count(), 2);
    let out = dcross(&["sweep", "--m", "10", "--n", "10", "--r-from", "0.01", "--r-to", "0.99", "--steps", "50"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(dcross::formats::SWEEP_HEADER));
    let rows: Vec<(u64, u64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 51);
    assert_eq!(rows[0].0, rows[0].1);
    assert!(rows.last().unwrap().0 > rows[0].1);
    assert!(rows.windows(2).all(|w| w[0].0 <= w[1].0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rows 51"));
}

#[test]
fn render_single_edge() {
    let dir = tempfile::tempdir().unwrap();
    let k11 = gen(dir.path(), "k11.json", &["--arr", "dpl", "--m", "1", "--n", "1"]);
    let svg = stdout(&dcross(&["render", &k11, "--width", "200"]));
    assert_eq!(svg.matches("<line ").count(), 1);
    assert_eq!(svg.matches(r#"class="a""#).count() + svg.matches(r#"class="b""#).count(), 2);
    assert_eq!(svg, stdout(&dcross(&["render", &k11, "--width", "200"])));
}

#[test]
fn invalid_flags_exit_two() {
    assert_eq!(dcross(&["gen", "--arr", "dc", "--m", "3"]).status.code(), Some(2));
    assert_eq!(dcross(&["gen", "--arr", "nope"]).status.code(), Some(2));
    assert_eq!(dcross(&["gen", "--arr", "dc", "--m", "4", "--n", "4", "--r", "2", "--R", "1"]).status.code(), Some(2));
}

#[test]
fn degenerate_rotation_is_jittered() {
    // phi_out = 0 puts an outer vertex on an inner line for (4,4) at r = 0.5.
    let out = dcross(&["gen", "--arr", "dc", "--m", "4", "--n", "4", "--r", "0.5", "--phi-out", "0"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["meta"]["params"]["phi_out"].as_f64().unwrap() > 0.0);
}
