use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn pblp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pblp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn solve_example_two_with_adapted_method() {
    let file = data("example2.pblp");
    let out = pblp(&["solve", "--method", "adapted", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["breakpoints"], serde_json::json!(["1", "5"]));
    assert_eq!(v["method"], "adapted");
}

#[test]
fn solve_is_byte_identical_across_runs() {
    let file = data("example1.pblp");
    let a = pblp(&["solve", "--quiet", file.to_str().unwrap()]);
    let b = pblp(&["solve", "--quiet", file.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stderr.is_empty());
}

#[test]
fn check_passes_on_every_bundled_example() {
    for name in [
        "example1.pblp",
        "example1_case2.pblp",
        "example2.pblp",
        "example2_case1.pblp",
    ] {
        let out = pblp(&["check", "--quiet", data(name).to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert_eq!(json(&out)["passed"], true);
    }
}

#[test]
fn missing_file_exits_with_input_error() {
    let out = pblp(&["solve", "missing.pblp"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(pblp(&[]).status.code(), Some(1));
    assert_eq!(
        pblp(&["solve", "--method", "simplex", "x.pblp"])
            .status
            .code(),
        Some(1)
    );
    let file = data("example2.pblp");
    assert_eq!(
        pblp(&["sweep", "--steps", "1", file.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(pblp(&["--help"]).status.code(), Some(0));
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pblp");
    std::fs::write(
        &path,
        "case: 3\nvars: 1\nrow: <= 1 1\nc1: 1\nc2: 1\nd1: 1\n",
    )
    .unwrap();
    let out = pblp(&["solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("case"));
}

#[test]
fn unbounded_scalarization_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unbounded.pblp");
    std::fs::write(
        &path,
        "case: 1\nvars: 1\nrow: >= 1 1\nc1: -1\nc2: 1\nd1: 1\n",
    )
    .unwrap();
    assert_eq!(
        pblp(&["solve", path.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn decompose_writes_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.csv");
    let file = data("example2.pblp");
    let out = pblp(&[
        "decompose",
        "--plot-out",
        plot.to_str().unwrap(),
        "--lambda",
        "1",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["extreme_images"].as_array().unwrap().len(), 3);
    let text = std::fs::read_to_string(&plot).unwrap();
    assert!(text.lines().any(|l| l == "segment,1,0,1/2,1/2,0"));
    assert_eq!(
        text.lines().filter(|l| l.starts_with("polygon,")).count(),
        3
    );
}

#[test]
fn solve_plot_defaults_to_breakpoints() {
    let dir = tempfile::tempdir().unwrap();
    let plot = dir.path().join("plot.csv");
    let file = data("example2_case1.pblp");
    let out = pblp(&[
        "solve",
        "--quiet",
        "--plot-out",
        plot.to_str().unwrap(),
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&plot).unwrap();
    let lambdas: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("segment,"))
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(lambdas, vec!["1", "5/2"]);
}

#[test]
fn sweep_reports_change_cells() {
    let file = data("example2.pblp");
    let out = pblp(&[
        "sweep",
        "--lambda-max",
        "6",
        "--steps",
        "60",
        file.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(
        v["changes"],
        serde_json::json!([{"lower": "1", "upper": "11/10"}, {"lower": "49/10", "upper": "5"}])
    );
}
