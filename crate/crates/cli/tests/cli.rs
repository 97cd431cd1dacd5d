use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use gkmkit::fpdata::parse_str;
use gkmkit_cli::run;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gkmkit(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gkmkit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fixture(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    let mut full = vec!["example", name];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let r = gkmkit(&full);
    assert_eq!(r.code, 0, "{}", r.stderr);
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn example_then_petrie_matches() {
    let dir = TempDir::new().unwrap();
    let cp3 = fixture(&dir, "cpn", &["--n", "3"]);
    let r = gkmkit(&["petrie", p(&cp3)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("verdict: match"), "{}", r.stdout);
    assert!(r.stdout.contains("edge list agrees: true"));
}

#[test]
fn seeded_and_explicit_bases() {
    let dir = TempDir::new().unwrap();
    let seeded = fixture(&dir, "cpn", &["--n", "4", "--seed", "7"]);
    let again = gkmkit(&["example", "cpn", "--n", "4", "--seed", "7"]);
    assert_eq!(fs::read_to_string(&seeded).unwrap(), again.stdout);
    assert_eq!(gkmkit(&["petrie", p(&seeded), "--up-to-gl"]).code, 0);

    let explicit = gkmkit(&["example", "cpn", "--n", "2", "--basis", "1,1;1,2"]);
    assert_eq!(explicit.code, 0);
    let doc = parse_str(&explicit.stdout).unwrap();
    assert_eq!(doc.data.point("p2").unwrap().sorted_weights().len(), 2);

    let bad = gkmkit(&["example", "cpn", "--n", "2", "--basis", "1,0;2,0"]);
    assert_eq!(bad.code, 3, "{}", bad.stderr);
}

#[test]
fn validate_reports_gkm_failure() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "cp3-nongkm", &[]);
    let r = gkmkit(&["validate", p(&f)]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("PASS pairing"));
    assert!(r.stdout.contains("FAIL gkm"));
    assert!(r.stdout.contains("at p2: (-2,0) and (-1,0) are parallel"));
    assert!(r.stdout.contains("PASS describes"));
}

#[test]
fn validate_json_and_classification() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "fano-v5", &[]);
    let r = gkmkit(&["validate", p(&f), "--json"]);
    // circle weights are always parallel, so only the GKM check fails
    assert_eq!(r.code, 2);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["checks"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["gkm"]);

    let two = dir.path().join("two.json");
    fs::write(
        &two,
        r#"{"torus_rank":1,"half_dim":3,"fixed_points":[{"id":"p","weights":[[-3],[1],[2]]},{"id":"q","weights":[[-1],[-2],[3]]}]}"#,
    )
    .unwrap();
    let r = gkmkit(&["validate", p(&two)]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    assert!(r.stdout.contains("classification: dim6-pair(a=1, b=2)"));
    assert!(r.stdout.contains("graph: built with 3 edges"));
}

#[test]
fn fano_dot_has_parallel_edges() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "fano-v5", &[]);
    let r = gkmkit(&["graph", p(&f), "--format", "dot"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("\"p1\" -> \"p4\" [label=\"2\"];"));
    assert!(r.stdout.contains("\"p1\" -> \"p4\" [label=\"3\"];"));
    assert!(r.stdout.contains("\"p2\" -> \"p3\" [label=\"4\"];"));
}

#[test]
fn graph_build_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "s6", &["--a", "2,1", "--b", "-1,3"]);
    let r = gkmkit(&["graph", p(&f), "--format", "json", "--build"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = parse_str(&r.stdout).unwrap();
    assert_eq!(doc.graph.unwrap().edges().len(), 3);
    let dot = gkmkit(&["graph", p(&f), "--build"]);
    assert!(dot.stdout.contains("label=\"(2,1)\""));
}

#[test]
fn genus_output() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "s6-blowup", &[]);
    let r = gkmkit(&["genus", p(&f)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("chi_y: -2*y + 2*y^2"));
    assert!(r.stdout.contains("euler: 4"));
    assert!(r.stdout.contains("SKIP chi_y_positivity"));

    let r = gkmkit(&["genus", p(&f), "--xi", "1,3", "--json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["chi_y"]["coeffs"], serde_json::json!([0, 2, 2, 0]));
    assert_eq!(v["xi"], serde_json::json!([1, 3]));

    // (1,1) pairs to zero with a - b = (1,-1)
    let r = gkmkit(&["genus", p(&f), "--xi", "1,1"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("pairs to zero"));
}

#[test]
fn chern_output_and_modes() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "cpn", &["--n", "2"]);
    let r = gkmkit(&["chern", p(&f), "--all"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("c[2] = 3"));
    assert!(r.stdout.contains("c[1,1] = 9"));
    let r = gkmkit(&["chern", p(&f), "--partition", "1,1", "--mode", "expanded", "--json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["mode"], "expanded");
    assert_eq!(v["values"][0]["value"], 9);
    assert_eq!(gkmkit(&["chern", p(&f), "--partition", "1"]).code, 3);
    assert_eq!(gkmkit(&["chern", p(&f), "--mode", "fast"]).code, 4);
}

#[test]
fn mode_from_environment() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "cpn", &["--n", "2"]);
    let out = Command::new(env!("CARGO_BIN_EXE_gkmkit"))
        .args(["chern", p(&f), "--json"])
        .env("GKMKIT_MODE", "expanded")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["mode"], "expanded");
}

#[test]
fn petrie_exit_codes() {
    let dir = TempDir::new().unwrap();
    let s6 = fixture(&dir, "s6", &[]);
    let r = gkmkit(&["petrie", p(&s6)]);
    assert_eq!(r.code, 3);
    assert!(r.stdout.contains("precondition-failed"));

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"torus_rank":2,"half_dim":2,"torus_manifold":true,"fixed_points":[
            {"id":"p0","weights":[[1,0],[0,1]]},
            {"id":"p1","weights":[[-1,0],[-1,1]]},
            {"id":"p2","weights":[[0,-1],[1,-2]]}]}"#,
    )
    .unwrap();
    let r = gkmkit(&["petrie", p(&bad), "--json"]);
    assert_eq!(r.code, 2);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["verdict"], "no-match");
}

#[test]
fn io_and_usage_errors() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(gkmkit(&["validate", p(&missing)]).code, 4);
    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{ not json").unwrap();
    assert_eq!(gkmkit(&["genus", p(&broken)]).code, 4);
    let zero = dir.path().join("zero.json");
    fs::write(&zero, r#"{"torus_rank":1,"half_dim":1,"fixed_points":[{"id":"p","weights":[[0]]}]}"#).unwrap();
    let r = gkmkit(&["validate", p(&zero)]);
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("zero vector"));

    let r = gkmkit(&["frobnicate"]);
    assert_eq!(r.code, 64);
    assert!(r.stderr.contains("Usage"));
    assert_eq!(gkmkit(&["chern", "x.json", "--colour"]).code, 64);
    assert_eq!(gkmkit(&["--help"]).code, 0);
}

#[test]
fn deterministic_and_read_only() {
    let dir = TempDir::new().unwrap();
    let f = fixture(&dir, "cpn", &["--n", "3", "--seed", "11"]);
    let before = fs::read(&f).unwrap();
    for cmd in ["validate", "genus", "chern", "petrie", "graph"] {
        let a = gkmkit(&[cmd, p(&f)]);
        let b = gkmkit(&[cmd, p(&f)]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert_eq!(a.code, b.code, "{cmd}");
    }
    for cmd in ["validate", "genus", "chern", "petrie"] {
        let r = gkmkit(&[cmd, p(&f), "--json"]);
        serde_json::from_str::<serde_json::Value>(&r.stdout).unwrap_or_else(|e| panic!("{cmd}: {e}"));
    }
    assert_eq!(fs::read(&f).unwrap(), before);
}

#[test]
fn example_to_stdout_is_canonical() {
    for name in ["cp3-nongkm", "s6", "s6-blowup", "fano-v5", "fano-v22"] {
        let r = gkmkit(&["example", name]);
        assert_eq!(r.code, 0);
        let doc = parse_str(&r.stdout).unwrap();
        assert_eq!(doc.to_json(), r.stdout, "{name}");
    }
    assert_eq!(gkmkit(&["example", "s6", "--a", "1,2", "--b", "2,4"]).code, 3);
}
