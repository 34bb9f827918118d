use std::path::Path;
use std::process::{Command, Output};

use origami_monoid::origami::{build_monoid, default_limits};
use origami_monoid::rewriting::EnumerationOptions;
use origami_monoid::FiniteMonoid;
use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::TempDir;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(args)
        .env("ORIGAMI_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let out = run(cache, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(cache: &Path, args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&ok(cache, &a)).unwrap()
}

fn digest(m: &FiniteMonoid) -> Vec<u8> {
    Sha256::digest(serde_json::to_vec(m).unwrap()).to_vec()
}

#[test]
fn reduce_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(ok(d, &["reduce", "--family", "origami", "--n", "6", "a1 b2 a3 b4 a5"]), "a1 a3 a5 b2 b4\n");
    assert_eq!(ok(d, &["reduce", "--family", "origami", "--n", "2", "a1 a1"]), "a1\n");
    assert_eq!(ok(d, &["reduce", "--family", "jones", "--n", "3", "h1 h2 h1"]), "h1\n");
}

#[test]
fn reduce_reorderings_of_interleaved_word() {
    let dir = TempDir::new().unwrap();
    for w in ["a5 b4 a3 b2 a1", "b2 b4 a1 a3 a5", "a3 a1 b4 a5 b2", "b4 a5 b2 a1 a3", "a1 a5 b2 a3 b4"] {
        assert_eq!(ok(dir.path(), &["reduce", "--n", "6", w]), "a1 a3 a5 b2 b4\n", "{w}");
    }
}

#[test]
fn reduce_trace() {
    let dir = TempDir::new().unwrap();
    let text = ok(dir.path(), &["reduce", "--n", "2", "--trace", "b1 a1 b1 a1 a1"]);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 2);
    assert_eq!(*lines.last().unwrap(), "b1 a1");
    let v = json(dir.path(), &["reduce", "--n", "2", "--trace", "b1 a1 b1 a1"]);
    assert_eq!(v["normal_form"], "b1 a1");
    assert_eq!(v["trace"][0]["rule"][0], "b1 a1 b1 a1");
    assert_eq!(v["trace"][0]["result"], "b1 a1");
}

#[test]
fn reduce_errors() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["reduce", "--n", "3", "a3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("a3"));
    assert!(!run(dir.path(), &["reduce", "--n", "3", "a1 x2"]).status.success());
    assert!(!run(dir.path(), &["reduce", "--family", "jones", "--n", "3", "a1"]).status.success());
}

#[test]
fn enumerate_orders_and_cache() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    for (family, n, order) in [("origami", "5", 2180), ("jones", "4", 14), ("origami", "2", 7)] {
        let v = json(d, &["enumerate", "--family", family, "--n", n]);
        assert_eq!(v["order"], order, "{family} {n}");
        assert_eq!(v["cached"], false);
    }
    let v = json(d, &["enumerate", "--family", "origami", "--n", "5"]);
    assert_eq!(v["cached"], true);
    assert_eq!(v["generators"], 8);
    assert_eq!(v["rules"], 416);
    let list = json(d, &["cache", "list"]);
    assert_eq!(list.as_array().unwrap().len(), 3);
    assert_eq!(json(d, &["cache", "clear"])["removed"], 3);
    assert_eq!(json(d, &["cache", "list"]).as_array().unwrap().len(), 0);
}

#[test]
fn cache_round_trip_preserves_monoid() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["enumerate", "--n", "4"]);
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let entry: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(entry["format_version"], 1);
    assert_eq!(entry["family"], "origami");
    let cached: FiniteMonoid = serde_json::from_value(entry["monoid"].clone()).unwrap();
    let fresh = build_monoid(4, &default_limits(), EnumerationOptions::default()).unwrap().monoid;
    assert_eq!(digest(&cached), digest(&fresh));
}

#[test]
fn cache_requires_matching_hash() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["enumerate", "--n", "3"]);
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut entry: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    entry["presentation_hash"] = Value::from("0".repeat(64));
    std::fs::write(&file, entry.to_string()).unwrap();
    assert_eq!(json(dir.path(), &["enumerate", "--n", "3"])["cached"], false);
    assert_eq!(json(dir.path(), &["enumerate", "--n", "3"])["cached"], true);
}

#[test]
fn enumeration_cap_is_an_error_and_flagged() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["enumerate", "--n", "4", "--max-elements", "50"]);
    assert!(!out.status.success());
    let list = json(dir.path(), &["cache", "list"]);
    assert_eq!(list[0]["complete"], false);
    // A partial entry is never a hit.
    assert_eq!(json(dir.path(), &["enumerate", "--n", "4"])["cached"], false);
}

#[test]
fn completion_limit_is_an_error() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["reduce", "--n", "4", "--max-rules", "20", "a1 b1"]);
    assert!(!out.status.success());
}

#[test]
fn green_jones3_egg_box() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = d.join("out");
    ok(d, &["green", "--family", "jones", "--n", "3", "--export", "json", "--out-dir", out.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out.join("jones-3-green.json")).unwrap()).unwrap();
    assert_eq!(v["counts"]["d"], 2);
    let boxes = v["egg_boxes"].as_array().unwrap();
    let big = boxes.iter().find(|b| b["rows"] == 2).unwrap();
    assert_eq!(big["cols"], 2);
    assert_eq!(big["cells"], serde_json::json!([[["h1"], ["h1 h2"]], [["h2 h1"], ["h2"]]]));
}

#[test]
fn green_dot_has_identity_as_unique_source() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    ok(dir.path(), &["green", "--n", "3", "--export", "dot", "--out-dir", out.to_str().unwrap()]);
    let dot = std::fs::read_to_string(out.join("origami-3-dlattice.dot")).unwrap();
    assert!(dot.starts_with("digraph") && dot.trim_end().ends_with('}'));
    let nodes: Vec<&str> = dot.lines().filter(|l| l.contains("[label=")).map(|l| l.trim().split(' ').next().unwrap()).collect();
    let targets: Vec<&str> =
        dot.lines().filter_map(|l| l.split_once("->")).map(|(_, t)| t.trim().trim_end_matches(';')).collect();
    let sources: Vec<&&str> = nodes.iter().filter(|n| !targets.contains(n)).collect();
    assert_eq!(sources.len(), 1);
    let identity_line = dot.lines().find(|l| l.trim().starts_with(&format!("{} ", sources[0]))).unwrap();
    assert!(identity_line.ends_with("\\n1\"];"), "{identity_line}");
}

#[test]
fn green_origami4_singleton_h() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    ok(dir.path(), &["green", "--n", "4", "--export", "json", "--export", "dot", "--out-dir", out.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out.join("origami-4-green.json")).unwrap()).unwrap();
    assert_eq!(v["max_h_size"], 1);
    assert_eq!(v["counts"]["h"], v["order"]);
    for b in v["egg_boxes"].as_array().unwrap() {
        for row in b["cells"].as_array().unwrap() {
            assert!(row.as_array().unwrap().iter().all(|c| c.as_array().unwrap().len() == 1));
        }
    }
    assert!(out.join("origami-4-dlattice.dot").exists());
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let a = d.join("a");
    let b = d.join("b");
    for o in [&a, &b] {
        ok(d, &["green", "--n", "3", "--export", "json", "--export", "dot", "--out-dir", o.to_str().unwrap()]);
    }
    for f in ["origami-3-green.json", "origami-3-dlattice.dot"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap());
    }
    let v1 = ok(d, &["verify", "--n", "2..3", "--format", "json"]);
    let v2 = ok(d, &["verify", "--n", "2..3", "--format", "json"]);
    assert_eq!(v1, v2);
}

#[test]
fn verify_range_passes() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let text = ok(dir.path(), &["verify", "--n", "2..4", "--report", report.to_str().unwrap()]);
    assert!(text.contains("all lemma checks passed"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 3);
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["degrees"][0]["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn verify_degree_two_normal_forms() {
    let dir = TempDir::new().unwrap();
    let v = json(dir.path(), &["verify", "--n", "2"]);
    let c = check(&v, "o2_normal_forms");
    assert_eq!(c["passed"], true);
    for w in ["a1", "b1", "a1 b1", "b1 a1", "a1 b1 a1", "b1 a1 b1"] {
        assert!(c["detail"].as_str().unwrap().contains(&format!("\"{w}\"")));
    }
}

#[test]
fn verify_degree_three_order() {
    let dir = TempDir::new().unwrap();
    let v = json(dir.path(), &["verify", "--n", "3"]);
    assert_eq!(v["degrees"][0]["origami_order"], 45);
    assert_eq!(check(&v, "origami_order")["passed"], true);
}

#[test]
fn verify_rejects_bad_range() {
    let dir = TempDir::new().unwrap();
    assert!(!run(dir.path(), &["verify", "--n", "4..2"]).status.success());
}

#[test]
fn morphism_report_schema() {
    let dir = TempDir::new().unwrap();
    let v = json(dir.path(), &["morphism", "--n", "3"]);
    assert_eq!(v["n"], 3);
    assert_eq!(v["dclass_counts"]["origami"], 4);
    assert_eq!(v["dclass_counts"]["product"], 4);
    assert_eq!(v["bijection"], true);
    assert_eq!(v["singleton_h"], true);
    for m in v["map"].as_array().unwrap() {
        assert!(m["origami_class"].is_u64() && m["product_class"].is_u64() && m["onto"].is_boolean());
    }
    let list = json(dir.path(), &["cache", "list"]);
    assert!(list.as_array().unwrap().iter().any(|e| e["family"] == "product"));
}

#[test]
fn jobs_flag_accepted() {
    let dir = TempDir::new().unwrap();
    assert_eq!(json(dir.path(), &["enumerate", "--n", "3", "--jobs", "2"])["order"], 45);
}
