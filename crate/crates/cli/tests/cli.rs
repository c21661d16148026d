use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cellcode"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn torus_file(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("torus3.json");
    let path = path.to_str().unwrap().to_string();
    let out = run(&["complex", "build", "--graph", "cycle(3)", "--power", "2", "--out", &path], None);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    path
}

#[test]
fn build_pipes_into_betti() {
    let built = run(&["complex", "build", "--graph", "petersen", "--power", "2", "--mod", "2"], None);
    assert!(built.status.success());
    let betti = json(&run(&["complex", "betti"], Some(&built.stdout)));
    assert_eq!(betti["result"]["betti"], serde_json::json!([1, 12, 36]));
    assert_eq!(betti["manifest"]["inputs"][0]["name"], "stdin");
}

#[test]
fn exact_gap_on_the_torus() {
    let dir = tempfile::tempdir().unwrap();
    let path = torus_file(&dir);
    let r = json(&run(&["code", "gap", "--in", &path, "--mode", "exact"], None));
    assert_eq!(r["result"]["gap_distance"], 1);
    assert_eq!(r["result"]["min_eigenvalue"], -7);
    let d = json(&run(&["code", "distance", "--in", &path], None));
    assert_eq!(d["result"]["d"], 3);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = torus_file(&dir);
    let args = ["toric", "ratio", "--in", &path, "--samples", "5", "--seed", "11"];
    let (a, b) = (json(&run(&args, None)), json(&run(&args, None)));
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["manifest"]["report_digest"], b["manifest"]["report_digest"]);
    assert_eq!(a["manifest"]["seed"], 11);
    let c = json(&run(&["toric", "ratio", "--in", &path, "--samples", "5", "--seed", "12"], None));
    assert_ne!(a["manifest"]["report_digest"], c["manifest"]["report_digest"]);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["complex", "betti", "--bogus"], None).status.code(), Some(2));
    assert_eq!(run(&["nonsense"], None).status.code(), Some(2));
    assert_eq!(run(&["complex", "betti"], Some(b"not json")).status.code(), Some(2));
    assert_eq!(run(&["--help"], None).status.code(), Some(0));
}

#[test]
fn failed_checks_exit_with_one() {
    let pass = run(&["verify", "run", "--id", "1"], None);
    assert_eq!(pass.status.code(), Some(0));
    let out = run(&["stat", "ising-verify", "--graph", "petersen"], None);
    assert_eq!(out.status.code(), Some(0));
    let fail = run(&["verify", "run", "--id", "8"], None);
    assert_eq!(fail.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&fail.stderr).contains("[FAIL]"));
}

#[test]
fn csv_curve_for_thermal() {
    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for (name, shape) in [("col", "complete_bipartite(1,2)"), ("row", "complete_bipartite(2,1)")] {
        let g = run(&["graph", "gen", "--name", shape], None);
        let path = dir.path().join(format!("{name}.json")).to_str().unwrap().to_string();
        let built = run(&["complex", "build", "--hypergraph", "--graph-file", "-", "--out", &path], Some(&g.stdout));
        assert!(built.status.success(), "{}", String::from_utf8_lossy(&built.stderr));
        paths.push(path);
    }
    let prod = run(&["complex", "product", "--left", &paths[0], "--right", &paths[1]], None);
    let out = run(&["stat", "thermal", "--dense", "--format", "csv", "--betas", "0,1,2"], Some(&prod.stdout));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("beta,dense_energy,energy,per_term,terms"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn text_output_and_thread_setting() {
    let out = Command::new(env!("CARGO_BIN_EXE_cellcode"))
        .args(["stat", "checkerboard", "--side", "6", "--block", "3", "--format", "text"])
        .env("CELLCODE_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("closed_form.cross_block_edges: 24\n"));
    assert!(text.contains("digest: "));
}

#[test]
fn graph_round_trip_through_json() {
    let g = run(&["graph", "gen", "--regular", "10", "3", "5", "--seed", "1"], None);
    let girth = json(&run(&["graph", "girth"], Some(&g.stdout)));
    assert!(girth["result"]["girth"].as_u64().unwrap() >= 5);
    let edges = run(&["graph", "girth"], Some(b"4\n0 1\n1 2\n2 3\n3 0\n"));
    assert_eq!(json(&edges)["result"]["girth"], 4);
}

fn schema_for(def: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schemas/cellcode.schema.json")).unwrap();
    let mut schema: Value = serde_json::from_str(&text).unwrap();
    schema.as_object_mut().unwrap().remove("oneOf");
    schema["$ref"] = Value::String(format!("#/$defs/{def}"));
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(def: &str, doc: &Value) {
    let v = schema_for(def);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{def}: {errors:?}");
}

#[test]
fn outputs_match_the_shipped_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = torus_file(&dir);
    let complex: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid("complex", &complex);
    assert!(!schema_for("graph").is_valid(&complex));

    let graph = json(&run(&["graph", "gen", "--biregular", "4", "4", "3", "3"], None));
    assert_valid("graph", &graph);

    for args in [
        vec!["code", "params", "--in", &path],
        vec!["code", "census", "--in", &path],
        vec!["toric", "ratio", "--in", &path],
        vec!["sim", "disentangle", "--in", &path],
        vec!["stat", "ising-verify", "--graph", "petersen"],
        vec!["verify", "run", "--id", "6"],
    ] {
        let out = run(&args, None);
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_valid("report", &doc);
    }
}
