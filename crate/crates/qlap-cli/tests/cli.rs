use std::path::Path;
use std::process::{Command, Output};

fn qlap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn enumerate_reports_the_demo_argmin() {
    let out = qlap(&["enumerate", "--graph", "demo4", "--x", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let argmin_row = text
        .lines()
        .find(|l| l.ends_with('*'))
        .expect("argmin marked");
    assert!(argmin_row.starts_with("1010"));
    assert!(argmin_row.contains("0.92508963442760"));
    assert_eq!(text.lines().filter(|l| l.starts_with('#')).count(), 3);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 7);
}

#[test]
fn enumerate_reads_a_graph_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("triangle.txt");
    std::fs::write(&path, "3 3\n# a comment\n0 1 1.0\n1 2 1.0\n0 2 2.0\n").unwrap();
    let out = qlap(&["enumerate", "--graph", path.to_str().unwrap(), "--x", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("3 vertices, 3 edges"));
    assert_eq!(
        text.lines().filter(|l| !l.starts_with('#')).count(),
        4,
        "header row plus one row per single-edge pattern"
    );
}

#[test]
fn malformed_graph_file_exits_with_a_data_error() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("broken.txt");
    std::fs::write(&path, "2 1\n0 zebra 1.0\n").unwrap();
    let out = qlap(&["enumerate", "--graph", path.to_str().unwrap(), "--x", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn generated_instances_and_bad_specs() {
    let out = qlap(&["enumerate", "--gen", "path:4", "--x", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("4 vertices, 3 edges"));

    let out = qlap(&["enumerate", "--gen", "tree:4", "--x", "1"]);
    assert_eq!(out.status.code(), Some(2), "clap rejects the generator");
}

#[test]
fn oversized_full_search_exits_with_the_capacity_code() {
    let out = qlap(&[
        "minfind", "--graph", "ring9", "--x", "2", "--mode", "full", "--aeps", "16",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("qubits"));
}

#[test]
fn hybrid_search_is_deterministic_and_finds_the_ring_argmin() {
    let args = [
        "minfind", "--graph", "ring9", "--x", "2", "--mode", "hybrid", "--aeps", "16",
        "--seeds", "1,2",
    ];
    let first = qlap(&args);
    assert!(first.status.success());
    let text = stdout(&first);
    assert!(text.contains("101000000"));
    assert!(text.contains("found the argmin in 2/2 runs"));

    let second = qlap(&args);
    assert_eq!(first.stdout, second.stdout, "reruns are byte-identical");
}

#[test]
fn sample_json_is_machine_readable() {
    let out = qlap(&[
        "sample", "--graph", "p3w", "--x", "1", "--shots", "20000", "--seeds", "5",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["provenance"]["command"], "sample");
    let estimates = doc["estimates"].as_array().expect("estimate rows");
    assert_eq!(estimates.len(), 2, "one row per single-edge pattern");
    for e in estimates {
        assert!(e["successes"].as_u64().expect("count") > 0);
        let exact = e["exact"].as_f64().unwrap();
        let estimate = e["estimate"].as_f64().unwrap();
        assert!((estimate - exact).abs() / exact < 0.25);
    }
}

#[test]
fn costmodel_tabulates_crossovers() {
    let out = qlap(&["costmodel", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "x,crossover,quantum_steps,classical_steps,qubits");
    for (row, x) in rows[1..].iter().zip(["1", "2", "3"]) {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[0], x);
        let crossover: u64 = cells[1].parse().expect("a crossover exists");
        assert!(crossover >= 3);
    }
}

#[test]
fn quadform_differences_stay_tiny() {
    let out = qlap(&[
        "quadform", "--graph", "demo4", "--x", "1", "--vectors", "3", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rows = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let diff: f64 = line.split(',').last().unwrap().parse().unwrap();
        assert!(diff < 1e-8, "row `{line}` drifted");
        rows += 1;
    }
    assert_eq!(rows, 4 * 4, "four patterns, three random vectors plus ones");
}

#[test]
fn reports_can_be_written_to_a_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("report.csv");
    let out = qlap(&[
        "enumerate", "--graph", "c5", "--x", "1", "--format", "csv", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "report goes to the file only");
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert!(text.contains("pattern,distance,argmin"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);
}
