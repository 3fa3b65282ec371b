use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn trinet(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trinet"))
        .args(args)
        .env("TRINET_THREADS", "2")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const GOLDEN_JSON: &str = include_str!("golden/triangular_13_3.json");
const GOLDEN_SVG: &str = include_str!("golden/triangular_13_3.svg");

#[test]
fn construct_matches_golden_file() {
    let out = trinet(&["construct", "--family", "triangular", "--p", "13", "--n", "3", "--a", "1", "--b", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), GOLDEN_JSON);
}

#[test]
fn verify_round_trip() {
    let out = trinet(&["verify"], Some(GOLDEN_JSON));
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v, serde_json::json!({"is_net": true, "n": 3}));
}

#[test]
fn every_family_round_trips_through_verify() {
    let cases: [&[&str]; 4] = [
        &["--family", "triangular", "--p", "31", "--n", "5", "--a", "2", "--b", "7"],
        &["--family", "conicline", "--p", "13", "--n", "3", "--u", "1", "--v", "2"],
        &["--family", "algebraic", "--p", "7", "--n", "3", "--curve=-1,0,0,0,0,0,0,1,0,-1"],
        &["--family", "tetrahedron", "--p", "31", "--n", "5"],
    ];
    for args in cases {
        let built = trinet(&[&["construct"], args].concat(), None);
        assert_eq!(built.status.code(), Some(0), "{args:?}");
        let checked = trinet(&["verify"], Some(&stdout(&built)));
        assert_eq!(checked.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn classify_tetrahedron() {
    let built = trinet(&["construct", "--family", "tetrahedron", "--p", "31", "--n", "5"], None);
    let out = trinet(&["classify"], Some(&stdout(&built)));
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["family"], "tetrahedron");
    assert_eq!(v["quadrangle"].as_array().unwrap().len(), 4);
}

#[test]
fn broken_net_exits_with_validation_code() {
    let mut v: Value = serde_json::from_str(GOLDEN_JSON).unwrap();
    v["components"][1][2] = serde_json::json!([0, 1, 5]);
    let out = trinet(&["verify"], Some(&v.to_string()));
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["is_net"], false);
    assert_eq!(trinet(&["classify"], Some(&v.to_string())).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(trinet(&["construct", "--family", "triangular", "--p", "12", "--n", "3"], None).status.code(), Some(1));
    assert_eq!(trinet(&["verify", "--bogus"], None).status.code(), Some(1));
    assert_eq!(trinet(&["verify"], Some("not json")).status.code(), Some(1));
    assert_eq!(trinet(&["search", "--p", "5", "--group", "c:5"], None).status.code(), Some(1));
    assert_eq!(trinet(&["--help"], None).status.code(), Some(0));
}

#[test]
fn search_exit_codes() {
    let done = trinet(&["search", "--p", "11", "--group", "c:3", "--emit", "count"], None);
    assert_eq!(done.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&done)).unwrap();
    assert_eq!(v["exhausted"], true);
    assert!(v["count"].as_u64().unwrap() > 0);

    let partial = trinet(&["search", "--p", "13", "--group", "c:6", "--budget-nodes", "100"], None);
    assert_eq!(partial.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&partial)).unwrap();
    assert_eq!(v["exhausted"], false);
}

#[test]
fn search_reads_a_table_file() {
    let dir = std::env::temp_dir().join(format!("trinet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("klein.json");
    std::fs::write(&path, "[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]").unwrap();
    let group = format!("table:{}", path.display());
    let by_table = trinet(&["search", "--p", "7", "--group", &group, "--emit", "count"], None);
    let by_name = trinet(&["search", "--p", "7", "--group", "cxc:2,2", "--emit", "count"], None);
    assert_eq!(by_table.status.code(), Some(0));
    assert_eq!(stdout(&by_table), stdout(&by_name));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn export_matches_golden_svg_and_is_deterministic() {
    let args = ["export", "--chart", "y", "--scale", "12", "--classify"];
    let first = trinet(&args, Some(GOLDEN_JSON));
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), GOLDEN_SVG);
    assert_eq!(stdout(&trinet(&args, Some(GOLDEN_JSON))), GOLDEN_SVG);
}

#[test]
fn transform_is_seeded_and_preserves_the_net() {
    let a = trinet(&["transform", "--seed", "42"], Some(GOLDEN_JSON));
    let b = trinet(&["transform", "--seed", "42"], Some(GOLDEN_JSON));
    let c = trinet(&["transform", "--seed", "43"], Some(GOLDEN_JSON));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    assert_eq!(trinet(&["verify"], Some(&stdout(&a))).status.code(), Some(0));
}

#[test]
fn symmetries_and_subnets() {
    let out = trinet(&["symmetries"], Some(GOLDEN_JSON));
    assert_eq!(out.status.code(), Some(0));
    let list: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!list.is_empty());
    for inv in &list {
        for key in ["matrix", "center", "axis", "permutation"] {
            assert!(inv.get(key).is_some(), "{key}");
        }
    }

    let net = trinet(&["construct", "--family", "algebraic", "--p", "31", "--n", "12", "--curve=-1,0,0,0,0,0,0,1,0,-1"], None);
    assert_eq!(net.status.code(), Some(0));
    let out = trinet(&["subnets", "--order", "6"], Some(&stdout(&net)));
    assert_eq!(out.status.code(), Some(0));
    let subnets: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(subnets.len(), 4);
    for s in &subnets {
        let checked = trinet(&["verify"], Some(&s["net"].to_string()));
        assert_eq!(checked.status.code(), Some(0));
    }
}
