mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::data_path;
use cyclopoly::render::inspect::parse;

fn cyclopoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclopoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn error_line(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stderr);
    assert_eq!(text.trim_end().lines().count(), 1, "stderr: {text}");
    serde_json::from_str(text.trim()).expect("stderr is one JSON object")
}

#[test]
fn teaser_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let svg = dir.path().join("t.svg");
    assert!(cyclopoly(&["gen", "teaser", "-o", s(&csv)])
        .status
        .success());
    let out = cyclopoly(&[
        "plot",
        s(&csv),
        "--view",
        "cpp",
        "--scheme",
        "abbc",
        "--out",
        s(&svg),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse(&std::fs::read_to_string(&svg).unwrap());
    assert_eq!(doc.count("polygon"), 2);
    let golden = include_str!("golden/teaser_cpp_abbc.svg");
    assert_eq!(std::fs::read_to_string(&svg).unwrap(), golden);
}

#[test]
fn eval_prints_table_and_json() {
    let out = cyclopoly(&[
        "eval",
        s(&data_path("iris.csv")),
        "--strategy",
        "geometric",
        "--scheme",
        "abcd",
        "--seed",
        "7",
        "--restarts",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("theta (matched)"));
    let json: serde_json::Value = serde_json::from_str(stdout.lines().last().unwrap()).unwrap();
    let theta = json["jaccard_matched"].as_f64().unwrap();
    assert!((theta - 0.92).abs() <= 0.05, "theta {theta}");
    assert_eq!(json["seed"], 7);
}

#[test]
fn same_arguments_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let svg = dir.path().join(name);
        let coords = dir.path().join(format!("{name}.csv"));
        let out = cyclopoly(&[
            "place",
            s(&data_path("wine.csv")),
            "--strategy",
            "angular",
            "--scheme",
            "abbc",
            "--out",
            s(&svg),
            "--coords-out",
            s(&coords),
        ]);
        assert!(out.status.success());
        (std::fs::read(svg).unwrap(), std::fs::read(coords).unwrap())
    };
    assert_eq!(run("a.svg"), run("b.svg"));
    let eval = || {
        cyclopoly(&[
            "eval",
            s(&data_path("wine.csv")),
            "--strategy",
            "statistical",
        ])
        .stdout
    };
    assert_eq!(eval(), eval());
}

#[test]
fn log_scale_with_zero_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("z.csv");
    std::fs::write(&csv, "a,b,c\n1,2,3\n4,0,6\n7,8,9\n0,1,1\n").unwrap();
    let out = cyclopoly(&[
        "plot",
        s(&csv),
        "--scale",
        "log",
        "--out",
        s(&dir.path().join("z.svg")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = error_line(&out);
    assert_eq!(err["error"], "data");
    assert!(
        err["message"].as_str().unwrap().contains("rows 1,3"),
        "{err}"
    );
}

#[test]
fn usage_errors_exit_one() {
    let out = cyclopoly(&["plot", "x.csv", "--out", "y.svg", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_line(&out)["error"], "usage");
    let out = cyclopoly(&["plot", "x.csv", "--view", "spiral", "--out", "y.svg"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cyclopoly(&[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_input_file_exits_two() {
    let out = cyclopoly(&["plot", "/no/such/file.csv", "--out", "/tmp/never.svg"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(error_line(&out)["message"]
        .as_str()
        .unwrap()
        .contains("/no/such/file.csv"));
}

#[test]
fn radar_needs_three_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("two.csv");
    std::fs::write(&csv, "a,b\n1,2\n3,4\n").unwrap();
    let out = cyclopoly(&[
        "plot",
        s(&csv),
        "--view",
        "rc",
        "--out",
        s(&dir.path().join("r.svg")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    error_line(&out);
}

#[test]
fn generators_write_data_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, meta) = (dir.path().join("b.csv"), dir.path().join("b.json"));
    let out = cyclopoly(&[
        "gen",
        "billiard",
        "-o",
        s(&csv),
        "--meta",
        s(&meta),
        "--trajectories",
        "4",
        "--reflections",
        "10",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let ds = cyclopoly::datagen::load_csv(&csv, None).unwrap();
    assert_eq!((ds.len(), ds.dimension()), (12, 20));
    let m: serde_json::Value = serde_json::from_slice(&std::fs::read(&meta).unwrap()).unwrap();
    assert!(m["max_boundary_residual"].as_f64().unwrap() < 1e-9);

    let (csv, meta) = (dir.path().join("s.csv"), dir.path().join("s.json"));
    let out = cyclopoly(&[
        "gen",
        "study",
        "-o",
        s(&csv),
        "--meta",
        s(&meta),
        "--task",
        "vc",
        "--values",
        "0.25,0.75",
        "--scaling",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let m: serde_json::Value = serde_json::from_slice(&std::fs::read(&meta).unwrap()).unwrap();
    assert_eq!(m["insertions"].as_array().unwrap().len(), 2);

    let out = cyclopoly(&["gen", "study", "-o", s(&csv), "--task", "od", "--scaling"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn external_embedding_is_scored() {
    let dir = tempfile::tempdir().unwrap();
    let coords = dir.path().join("c.csv");
    let svg = dir.path().join("p.svg");
    let iris = data_path("iris.csv");
    assert!(cyclopoly(&[
        "place",
        s(&iris),
        "--strategy",
        "statistical",
        "--out",
        s(&svg),
        "--coords-out",
        s(&coords)
    ])
    .status
    .success());
    let a = cyclopoly(&["eval", s(&iris), "--embedding", s(&coords)]);
    let b = cyclopoly(&["eval", s(&iris), "--strategy", "statistical"]);
    let theta = |o: &Output| {
        let text = String::from_utf8_lossy(&o.stdout).to_string();
        let v: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
        v["jaccard_matched"].as_f64().unwrap()
    };
    assert_eq!(theta(&a), theta(&b));
}
