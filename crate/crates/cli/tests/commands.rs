use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equivcurv"))
        .args(args)
        .env_remove("EQUIVCURV_PATH_CAP")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("equivcurv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn edge_set(v: &Value) -> Vec<(String, String)> {
    v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_str().unwrap().to_string(), e[1].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn neigh_hexagon() {
    let c6 = fixture("c6.edges");
    let g2 = json(&["neigh", "--n", "2", "--mode", "path", &c6]);
    assert_eq!(g2["blocks"].as_array().unwrap().len(), 2);
    let g6 = json(&["neigh", "--n", "6", "--mode", "path", &c6]);
    assert_eq!(g6["blocks"].as_array().unwrap().len(), 6);
    let walk = json(&["neigh", "--n", "2", "--mode", "walk", &c6]);
    let walk_edges = edge_set(&walk);
    assert!(edge_set(&g2).iter().all(|e| walk_edges.contains(e)));
}

#[test]
fn curv_examples() {
    let pair = |v: Value| v["pairs"][0]["kappa"].as_str().unwrap().to_string();
    assert_eq!(pair(json(&["curv", &fixture("fig3.edges"), "--pair", "a", "b"])), "1");
    assert_eq!(pair(json(&["curv", &fixture("c6.edges"), "--pair", "1", "2"])), "0");
    let ee = pair(json(&[
        "curv",
        "--hyper",
        &fixture("h1.hyper"),
        "--walk",
        "ee",
        "--pair",
        "x",
        "y",
    ]));
    assert_ne!(ee, "1");
    let en = pair(json(&[
        "curv",
        "--hyper",
        &fixture("h1.hyper"),
        "--walk",
        "en",
        "--pair",
        "x",
        "y",
    ]));
    assert_eq!(en, "1");
}

#[test]
fn curv_all_is_upper_triangular_per_component() {
    let path = temp_file("two.edges", "a b\nb c\nd e\n");
    let v = json(&["curv", &path, "--all"]);
    let pairs: Vec<(&str, &str)> = v["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["x"].as_str().unwrap(), p["y"].as_str().unwrap()))
        .collect();
    assert_eq!(pairs, [("a", "b"), ("a", "c"), ("b", "c"), ("d", "e")]);
}

#[test]
fn partition_examples() {
    let h5 = json(&["partition", "--method", "g2", &fixture("h5.edges")]);
    assert_eq!(h5["blocks"], serde_json::json!([["a", "e"], ["b", "c", "d"]]));
    assert_eq!(h5["verified"], true);

    let p9 = json(&["partition", "--method", "gn", "--n", "4", &fixture("p9.edges")]);
    let min_degree = p9["preconditions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["name"] == "min-degree-2")
        .unwrap();
    assert_eq!(min_degree["met"], false);
    // the computed G_4 partition of this graph turns out to be regular
    assert_eq!(p9["verified"], true);

    let g3 = json(&["partition", "--method", "gn", "--n", "3", &fixture("g3.edges")]);
    assert_eq!(g3["verified"], false);
    assert!(g3["violation"]["pair"].is_array());
}

#[test]
fn partition_removal_and_subcliques() {
    let tri = json(&[
        "partition",
        "--method",
        "triangle-removal",
        "--remove",
        "a:b",
        &fixture("triangle.edges"),
    ]);
    assert_eq!(tri["verified"], true);
    assert_eq!(tri["blocks"].as_array().unwrap().len(), 2);

    let sub = json(&[
        "partition",
        "--method",
        "subcliques",
        "--block",
        "b,c",
        &fixture("h5.edges"),
    ]);
    assert_eq!(sub["verified"], true);

    let out = run(&[
        "partition",
        "--method",
        "kcycle-removal",
        "--k",
        "6",
        "--remove",
        "1:2",
        &fixture("c6.edges"),
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&[
        "partition",
        "--method",
        "triangle-removal",
        "--remove",
        "a:zz",
        &fixture("triangle.edges"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn partition_hypergraph_methods() {
    let h2 = json(&["partition", "--method", "h2", &fixture("h1.hyper")]);
    assert_eq!(h2["method"], "h2-components");
    assert_eq!(h2["verified"], true);
    let hn = json(&["partition", "--method", "hn", "--n", "2", &fixture("hx.hyper")]);
    assert_eq!(hn["method"], "hn-components");
}

#[test]
fn unknown_method_is_input_error() {
    assert_eq!(
        run(&["partition", "--method", "spectral", &fixture("c6.edges")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_examples() {
    let l3 = temp_file("l3.json", r#"{"blocks": [["1","4"],["2","3"]]}"#);
    assert_eq!(
        json(&["verify", &fixture("l3.edges"), &l3, "--notion", "regular"])["verdict"],
        true
    );

    let p9 = temp_file("p9.json", r#"{"blocks": [["3","9"],["1","2","4","5","6","7","8"]]}"#);
    let v = json(&["verify", &fixture("p9.edges"), &p9, "--notion", "regular"]);
    assert_eq!(v["verdict"], false);
    // first witness: 2 reaches 3 in {3,9} (block 1 once renumbered), 1 does not
    assert_eq!(v["violation"]["pair"], serde_json::json!(["1", "2"]));
    assert_eq!(v["violation"]["neighbor"], "3");
    assert_eq!(v["violation"]["block"], 1);

    let singles = temp_file("single.json", r#"{"blocks": [["1"],["2"],["3"],["4"],["5"],["6"]]}"#);
    assert_eq!(
        json(&["verify", &fixture("c6.edges"), &singles, "--notion", "structural"])["verdict"],
        true
    );

    let hx = temp_file("hx.json", r#"{"blocks": [["x","y"],["a"],["b"],["c"]]}"#);
    assert_eq!(
        json(&["verify", &fixture("hx.hyper"), &hx, "--notion", "weak-structural"])["verdict"],
        true
    );
    assert_eq!(
        json(&["verify", &fixture("hx.hyper"), &hx, "--notion", "strong-structural"])["verdict"],
        false
    );
}

#[test]
fn verify_rejects_non_covering_partition() {
    let partial = temp_file("partial.json", r#"{"blocks": [["1","4"]]}"#);
    let out = run(&["verify", &fixture("l3.edges"), &partial, "--notion", "regular"]);
    assert_eq!(out.status.code(), Some(2));
    let garbage = temp_file("garbage.json", "{blocks");
    assert_eq!(
        run(&["verify", &fixture("l3.edges"), &garbage, "--notion", "regular"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sim_examples() {
    let v = json(&["sim", &fixture("c6.edges"), "--pair", "1", "4"]);
    assert_eq!(v[0]["fully_dissimilar"], true);
    let star = json(&["sim", &fixture("star3.edges"), "--pair", "l1", "l2"]);
    assert_eq!(star[0]["sigma_exact"], "1");
    assert_eq!(star[0]["kappa"], "1");
    let out = run(&["sim", &fixture("c6.edges"), "--all", "--check-bounds"]);
    assert!(out.status.success());
}

#[test]
fn exit_codes() {
    let bad = temp_file("bad.edges", "a b c\n");
    assert_eq!(run(&["neigh", "--n", "2", &bad]).status.code(), Some(2));
    assert_eq!(
        run(&["curv", &fixture("c6.edges"), "--pair", "1", "7"]).status.code(),
        Some(2)
    );
    let looped = temp_file("loop.edges", "a a\na b\n");
    assert_eq!(run(&["curv", &looped, "--all"]).status.code(), Some(3));
    assert_eq!(run(&["neigh", "--n", "9", &fixture("c6.edges")]).status.code(), Some(4));
    assert_eq!(
        run(&["neigh", "--n", "9", "--path-cap", "9", &fixture("c6.edges")])
            .status
            .code(),
        Some(0)
    );
    let capped = Command::new(env!("CARGO_BIN_EXE_equivcurv"))
        .args(["neigh", "--n", "4", &fixture("c6.edges")])
        .env("EQUIVCURV_PATH_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(4));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["sim".to_string(), fixture("p9.edges"), "--all".into()],
        vec![
            "curv".into(),
            fixture("h5.edges"),
            "--all".into(),
            "--output".into(),
            "table".into(),
        ],
        vec!["fixtures".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn fixtures_table() {
    let out = run(&["fixtures", "--output", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text
        .lines()
        .any(|l| l.starts_with("PASS") && l.contains("h5-g2-blocks")));
    assert!(text.lines().last().unwrap().ends_with("claims hold"));
}
