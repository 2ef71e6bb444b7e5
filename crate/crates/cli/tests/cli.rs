use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn klsparse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klsparse"))
        .args(args)
        .env_remove("SPARSITY_ORACLE_LIMIT")
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fixture_graph(name: &str) -> Value {
    let out = klsparse(&["fixtures", "--dump"]);
    json(&out)
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["name"] == name)
        .unwrap_or_else(|| panic!("no fixture {name}"))
        .clone()
}

#[test]
fn single_edge_is_tight() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k2.txt", "2 1\na b\n");
    let out = klsparse(&[
        "check",
        "--graph",
        s(&g),
        "--k",
        "1",
        "--l",
        "1",
        "--mode",
        "tight",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["holds"], true);

    let g = write(
        &dir,
        "k2.json",
        r#"{"vertices": ["a", "b"], "edges": [["a", "b"]]}"#,
    );
    let out = klsparse(&[
        "check",
        "--graph",
        s(&g),
        "--k",
        "2",
        "--l",
        "3",
        "--mode",
        "tight",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dense_fixture_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let graph = fixture_graph("dense-l3-G")["graph"].to_string();
    let g = write(&dir, "g.json", &graph);
    let out = klsparse(&[
        "check",
        "--graph",
        s(&g),
        "--k",
        "2",
        "--l",
        "3",
        "--method",
        "flow",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"]["sparse"], false);
    let subset: Vec<&str> = v["verdict"]["witness"]["subset"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert!(subset.len() >= 2);
    let edges = v["verdict"]["witness"]["edge_count"].as_i64().unwrap();
    assert!(edges > 2 * subset.len() as i64 - 3);
}

#[test]
fn bad_parameters_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k2.txt", "2 1\na b\n");
    let out = klsparse(&["check", "--graph", s(&g), "--k", "2", "--l", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn malformed_graph_exits_two() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.txt", "3 2\na b\n");
    let out = klsparse(&["check", "--graph", s(&g), "--k", "1", "--l", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let g = write(
        &dir,
        "bad.json",
        "{\"vertices\": [\"a\"], \"edges\": [[\"a\", \"z\"]]}",
    );
    let out = klsparse(&["check", "--graph", s(&g), "--k", "1", "--l", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn built_in_fixtures_agree() {
    let out = klsparse(&["fixtures", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 14 * 3);
    for row in rows {
        for key in ["fixture", "method", "expected", "got"] {
            assert!(row.get(key).is_some(), "missing {key} in {row}");
        }
        assert_eq!(row["expected"], row["got"]);
    }
}

#[test]
fn corrupted_corpus_is_reported() {
    let dir = TempDir::new().unwrap();
    let mut corpus = json(&klsparse(&["fixtures", "--dump"]));
    let h1 = corpus
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|f| f["name"] == "dense-l3-H1")
        .unwrap();
    h1["graph"]["edges"].as_array_mut().unwrap().pop();
    let path = write(&dir, "corpus.json", &corpus.to_string());
    let out = klsparse(&["fixtures", "--corpus", s(&path), "--output", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let rows = json(&out);
    let bad: Vec<&Value> = rows
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["expected"] != r["got"])
        .collect();
    assert_eq!(bad.len(), 3);
    assert!(bad
        .iter()
        .all(|r| r["fixture"] == "dense-l3-H1" && r["got"]["tight"] == false));
}

#[test]
fn star_gadget_fails_dense_set_check() {
    let dir = TempDir::new().unwrap();
    let star = write(
        &dir,
        "star.json",
        r#"{"vertices": ["a", "b", "c", "d", "x"], "edges": [["a", "x"], ["b", "x"], ["c", "x"], ["d", "x"]],
            "terminals": ["a", "b", "c", "d"]}"#,
    );
    let out = klsparse(&[
        "gadget",
        "audit",
        "--gadget",
        s(&star),
        "--k",
        "2",
        "--l",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "refuted");
    assert_eq!(v["failed_check"], "vi");

    let out = klsparse(&[
        "gadget",
        "refute",
        "--gadget",
        s(&star),
        "--k",
        "2",
        "--l",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["refuted"], true);
}

#[test]
fn small_search_has_no_survivors() {
    let out = klsparse(&[
        "gadget",
        "search",
        "--k",
        "2",
        "--l",
        "1",
        "--max-internal",
        "2",
        "--max-multiplicity",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["survivors"].as_array().unwrap().len(), 0);
    assert_eq!(v["candidates"], 137);

    // multi-edge candidates are included by default, up to 2k - l copies
    let out = klsparse(&[
        "gadget",
        "search",
        "--k",
        "2",
        "--l",
        "1",
        "--max-internal",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["max_multiplicity"], 3);
    assert!(v["candidates"].as_u64().unwrap() > 137);

    let out = klsparse(&[
        "gadget",
        "search",
        "--k",
        "2",
        "--l",
        "1",
        "--max-internal",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flow_network_renders_as_dot() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "tri.txt", "3 3\na b\nb c\nc a\n");
    let out = klsparse(&[
        "flow",
        "build",
        "--graph",
        s(&g),
        "--k",
        "2",
        "--l",
        "3",
        "--edge",
        "1",
        "--output",
        "dot",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.trim_end().ends_with('}'));
}

#[test]
fn planar_reports_terminal_face() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c4.txt", "4 4\na c\nc b\nb d\nd a\n");
    let out = klsparse(&["planar", "--graph", s(&g), "--terminals", "a,b,c,d"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["planar"], true);
    assert_eq!(v["terminal_face"], true);
    assert_eq!(v["disjoint_paths"], Value::Null);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let graph = fixture_graph("dense-l0-H2")["graph"].to_string();
    let g = write(&dir, "g.json", &graph);
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "check",
            "--graph",
            s(&g),
            "--k",
            "2",
            "--l",
            "0",
            "--method",
            "brute",
        ],
        vec![
            "gadget",
            "search",
            "--k",
            "2",
            "--l",
            "0",
            "--max-internal",
            "2",
        ],
        vec!["crosscheck", "--seed", "7", "--count", "50"],
    ];
    for args in runs {
        let a = klsparse(&args);
        let b = klsparse(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn oracle_limit_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k2.txt", "2 1\na b\n");
    let out = Command::new(env!("CARGO_BIN_EXE_klsparse"))
        .args([
            "check",
            "--graph",
            s(&g),
            "--k",
            "1",
            "--l",
            "1",
            "--method",
            "brute",
        ])
        .env("SPARSITY_ORACLE_LIMIT", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
