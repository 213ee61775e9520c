//! End-to-end tests of the command-line surface: exit codes, report shapes,
//! and the pipelines wiring the subcommands together.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypertrans"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn write_graph(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn measure_reports_graph_transitivity() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k3.txt", "1 2\n1 3\n2 3\n");
    let out = run(&["measure", "--input", input.to_str().unwrap()]);
    let report = stdout_json(&out);
    assert_eq!(report["measure"], "hypertrans");
    assert_eq!(report["score"], "penalized");
    assert!((report["graph_transitivity"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(report["wedge_count"], 3);
    assert_eq!(report["meta"]["seed"], 17);
    assert!(report["meta"]["config_hash"].as_str().unwrap().len() == 16);
    // node keys are original labels
    assert!(report["node_transitivity"].get("1").is_some());
}

#[test]
fn measure_writes_wedge_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "g.txt", "1 2 3\n3 4 5\n1 2 4 5\n");
    let csv = dir.path().join("wedges.csv");
    let out = run(&[
        "measure",
        "--input",
        input.to_str().unwrap(),
        "--wedge-csv",
        csv.to_str().unwrap(),
        "--out",
        dir.path().join("r.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    assert_eq!(lines.next().unwrap(), "wedge_a,wedge_b,body_size,score");
    assert_eq!(lines.count(), 3);
}

#[test]
fn measure_loads_nverts_simplices() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("toy-nverts.txt"), "2\n2\n2\n").unwrap();
    std::fs::write(dir.path().join("toy-simplices.txt"), "1\n2\n1\n3\n2\n3\n").unwrap();
    let stem = dir.path().join("toy");
    let out = run(&[
        "measure",
        "--input",
        stem.to_str().unwrap(),
        "--format",
        "nverts-simplices",
    ]);
    let report = stdout_json(&out);
    assert_eq!(report["wedge_count"], 3);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = run(&["measure", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_measure_name_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k3.txt", "1 2\n1 3\n2 3\n");
    let out = run(&[
        "measure",
        "--input",
        input.to_str().unwrap(),
        "--measure",
        "b17",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_input_is_a_data_error() {
    let out = run(&["measure", "--input", "/nonexistent/graph.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("graph.txt"));
}

#[test]
fn malformed_line_is_a_data_error_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "bad.txt", "1 2\n3 oops\n");
    let out = run(&["measure", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn infeasible_budget_is_exit_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let sizes = write_graph(dir.path(), "sizes.txt", "3 5\n");
    let out = run(&[
        "generate",
        "--model",
        "thera",
        "--n",
        "100",
        "--sizes",
        sizes.to_str().unwrap(),
        "--out",
        dir.path().join("g.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn generate_then_measure_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let sizes = write_graph(dir.path(), "sizes.txt", "3 400\n4 200\n");
    let graph = dir.path().join("thera.txt");
    let meta = dir.path().join("thera.meta.json");
    let out = run(&[
        "generate",
        "--model",
        "thera",
        "--n",
        "200",
        "--sizes",
        sizes.to_str().unwrap(),
        "--community",
        "10",
        "--intra",
        "0.8",
        "--alpha",
        "2",
        "--beta",
        "2",
        "--seed",
        "5",
        "--out",
        graph.to_str().unwrap(),
        "--meta",
        meta.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&graph).unwrap();
    assert_eq!(text.lines().count(), 600);
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(sidecar["model"], "thera");
    assert!(
        sidecar["model_metadata"]["levels"]
            .as_array()
            .unwrap()
            .len()
            > 2
    );

    let measured = stdout_json(&run(&["measure", "--input", graph.to_str().unwrap()]));
    assert!(measured["graph_transitivity"].as_f64().unwrap() > 0.0);
}

#[test]
fn generation_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let sizes = write_graph(dir.path(), "sizes.txt", "3 50\n");
    let mut texts = Vec::new();
    for name in ["a.txt", "b.txt"] {
        let path = dir.path().join(name);
        let out = run(&[
            "generate",
            "--model",
            "naive-thera",
            "--n",
            "30",
            "--sizes",
            sizes.to_str().unwrap(),
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        texts.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn hypercl_requires_ref() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "generate",
        "--model",
        "hypercl",
        "--out",
        dir.path().join("g.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_report_and_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let sizes = write_graph(dir.path(), "sizes.txt", "3 300\n");
    let graph = dir.path().join("g.txt");
    assert!(run(&[
        "generate",
        "--model",
        "thera",
        "--n",
        "120",
        "--sizes",
        sizes.to_str().unwrap(),
        "--seed",
        "3",
        "--out",
        graph.to_str().unwrap(),
    ])
    .status
    .success());

    let csv_dir = dir.path().join("csv");
    let report_path = dir.path().join("report.json");
    let out = run(&[
        "analyze",
        "--input",
        graph.to_str().unwrap(),
        "--null-runs",
        "3",
        "--seed",
        "11",
        "--out",
        report_path.to_str().unwrap(),
        "--csv-dir",
        csv_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["report"]["null_runs"], 3);
    assert!(report["report"]["real"]["graph_transitivity"].is_number());
    assert!(csv_dir.join("degree_profile_real.csv").exists());
    assert!(csv_dir.join("score_histogram_null_2.csv").exists());

    // measure and analyze walk identical wedge enumerations
    let measured = stdout_json(&run(&["measure", "--input", graph.to_str().unwrap()]));
    assert_eq!(measured["wedge_count"], report["wedge_count"]);
}

#[test]
fn axioms_flags_b9_bound_violations() {
    let out = run(&[
        "axioms",
        "--measure",
        "b9",
        "--trials",
        "300",
        "--seed",
        "2",
    ]);
    let report = stdout_json(&out);
    assert_eq!(report["conformance"]["A5"], "violated");
    assert_eq!(report["conformance"]["A7"], "violated");
    assert_eq!(report["conformance"]["A1"], "satisfied");
    // a witness is attached to some violated check
    let checks = report["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["violated"] == true && c["witness"].is_object()));
}

#[test]
fn axioms_all_pass_for_hypertrans() {
    let out = run(&[
        "axioms",
        "--measure",
        "hypertrans",
        "--trials",
        "200",
        "--seed",
        "4",
    ]);
    let report = stdout_json(&out);
    for fam in 1..=7 {
        assert_eq!(report["conformance"][format!("A{fam}")], "satisfied");
    }
}

#[test]
fn bench_emits_paired_records() {
    let dir = tempfile::tempdir().unwrap();
    // mixed sizes: wide wedges from the big edges, narrow candidates from
    // the pair edges, which is where the sweep beats the per-pair scan
    let sizes = write_graph(dir.path(), "sizes.txt", "2 200\n12 100\n");
    let graph = dir.path().join("g.txt");
    assert!(run(&[
        "generate",
        "--model",
        "thera",
        "--n",
        "80",
        "--sizes",
        sizes.to_str().unwrap(),
        "--seed",
        "6",
        "--out",
        graph.to_str().unwrap(),
    ])
    .status
    .success());
    let out = run(&[
        "bench",
        "--input",
        graph.to_str().unwrap(),
        "--compare",
        "--repeats",
        "2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# hypertrans"));
    assert_eq!(
        lines.next().unwrap(),
        "workload,algorithm,wall_ms,wedges,candidate_touches"
    );
    let naive: Vec<&str> = lines.next().unwrap().split(',').collect();
    let fast: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(naive[1], "naive");
    assert_eq!(fast[1], "fast");
    // identical wedge streams
    assert_eq!(naive[3], fast[3]);
    // the sweep touches strictly less than the per-pair scan on wide wings
    let naive_touches: u64 = naive[4].parse().unwrap();
    let fast_touches: u64 = fast[4].parse().unwrap();
    assert!(fast_touches < naive_touches);
}

#[test]
fn ht_threads_env_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_graph(dir.path(), "k3.txt", "1 2\n1 3\n2 3\n");
    let out = bin()
        .env("HT_THREADS", "1")
        .args(["measure", "--input", input.to_str().unwrap()])
        .output()
        .unwrap();
    let report = stdout_json(&out);
    assert_eq!(report["meta"]["threads"], 1);
}
