use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn siltlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_siltlab")).args(args).output().expect("spawn siltlab")
}

fn ok(args: &[&str]) -> String {
    let out = siltlab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.join(name);
    let mut full = vec!["algebra"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", p(&out)]);
    ok(&full);
    out
}

fn poset(dir: &Path, alg: &Path) -> PathBuf {
    let out = dir.join("poset.json");
    ok(&["poset", "--algebra", p(alg), "--out", p(&out)]);
    out
}

#[test]
fn algebra_families_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let lam = build(dir.path(), "lam.json", &["--lambda", "1", "2", "0"]);
    let doc: Value = serde_json::from_slice(&std::fs::read(&lam).unwrap()).unwrap();
    assert_eq!(doc["schema"], "siltlab/1");
    let manifest: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("lam.json.manifest.json")).unwrap()).unwrap();
    for key in ["command", "config_hash", "algebra_hash", "version", "wall_time_ms"] {
        assert!(manifest.get(key).is_some(), "manifest lacks {key}");
    }

    assert_eq!(siltlab(&["algebra", "--lambda", "1", "1", "0"]).status.code(), Some(2));
    assert_eq!(siltlab(&["algebra", "--linear-a", "3", "--orient", "f,x"]).status.code(), Some(2));
    assert_eq!(siltlab(&["verify-cw", "--poset", "/nonexistent/poset.json"]).status.code(), Some(2));
    ok(&["algebra", "--linear-a", "3", "--orient", "f,b"]);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"schema\":\"siltlab/1\"}").unwrap();
    assert_eq!(siltlab(&["enumerate", "--algebra", p(&garbage)]).status.code(), Some(2));
}

#[test]
fn enumerate_counts_and_quiver() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = build(dir.path(), "a2.json", &["--linear-a", "2"]);
    let dot = dir.path().join("q.dot");
    let doc: Value = serde_json::from_str(&ok(&["enumerate", "--algebra", p(&a2), "--dot", p(&dot)])).unwrap();
    assert_eq!(doc["silting"].as_array().unwrap().len(), 5);
    assert_eq!(doc["predicate"], "exact");
    let quiver = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(quiver.matches("->").count(), 5);
}

#[test]
fn verify_cw_and_homology_on_a2() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = build(dir.path(), "a2.json", &["--linear-a", "2"]);
    let pz = poset(dir.path(), &a2);

    let out = siltlab(&["verify-cw", "--poset", p(&pz)]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);

    // the open interval below the top of a 2-cell is a circle
    let h: Value = serde_json::from_str(&ok(&[
        "homology", "--poset", p(&pz), "--interval", "0hat..TOP", "--open",
    ]))
    .unwrap();
    assert_eq!(h["sphere_dimension"], 1);

    let full: Value = serde_json::from_str(&ok(&["homology", "--poset", p(&pz), "--full"])).unwrap();
    assert_eq!(full["verdict"], "CONTRACTIBLE");

    assert_eq!(
        siltlab(&["homology", "--poset", p(&pz), "--interval", "0hat..nonsense"]).status.code(),
        Some(2)
    );
}

#[test]
fn embed_passes_and_is_seed_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = build(dir.path(), "a2.json", &["--linear-a", "2"]);
    let pz = poset(dir.path(), &a2);
    let run = |name: &str| {
        let out = dir.path().join(name);
        ok(&["embed", "--poset", p(&pz), "--samples", "300", "--seed", "7", "--out", p(&out)]);
        std::fs::read(out).unwrap()
    };
    let (a, b) = (run("e1.json"), run("e2.json"));
    assert_eq!(a, b);
    let doc: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["report"]["pass"], true);
    assert_eq!(doc["vertex_charges"].as_object().unwrap().len(), 11);
}

#[test]
fn artifacts_are_byte_identical_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let lam = build(dir.path(), "lam.json", &["--lambda", "1", "2", "0"]);
    let mut outs = Vec::new();
    for jobs in ["1", "4", "4"] {
        let out = dir.path().join(format!("p{}.json", outs.len()));
        ok(&["--jobs", jobs, "poset", "--algebra", p(&lam), "--out", p(&out)]);
        outs.push(std::fs::read(out).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[1], outs[2]);
}

/// (x, y) label → (in_aisle, in_coaisle, heart, heart_simple, silting, cot) from the CLI table.
fn cli_table(tsv: &str) -> BTreeMap<String, Vec<String>> {
    let mut lines = tsv.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split('\t').collect();
    assert_eq!(header[0], "object");
    lines
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].to_string(), f[1..].iter().map(|s| s.to_string()).collect())
        })
        .collect()
}

fn golden_matches(tsv: &str, golden: &str) {
    let table = cli_table(tsv);
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(golden))
        .unwrap();
    let mut rows = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let f: Vec<&str> = line.split('\t').collect();
        let key = format!("({},{})", f[0], f[1]);
        let t = table.get(&key).unwrap_or_else(|| panic!("no row {key}"));
        let shape = match (t[0].as_str(), t[1].as_str()) {
            ("1", "0") => "circle",
            ("0", "1") => "square",
            ("0", "0") => "triangle",
            _ => "both",
        };
        assert_eq!(shape, f[2], "{key} shape");
        assert_eq!(t[4], f[3], "{key} silting");
        assert_eq!(t[3], f[4], "{key} simple");
        assert_eq!(t[2], f[5], "{key} heart");
        assert_eq!(t[5], f[6], "{key} gray");
        rows += 1;
    }
    assert_eq!(rows, 44);
    assert_eq!(table.len(), 44);
}

#[test]
fn classify_reproduces_both_diagrams() {
    let dir = tempfile::tempdir().unwrap();
    let a3 = build(dir.path(), "a3.json", &["--linear-a", "3"]);
    let standard = ok(&["classify", "--algebra", p(&a3)]);
    assert!(standard.contains("UNSOUND-BEYOND-WINDOW"));
    golden_matches(&standard, "appendix_a_standard.tsv");
    // μ keeping P(1) ⊕ P(2)
    golden_matches(&ok(&["classify", "--algebra", p(&a3), "--mutate-keep", "0,1"]), "appendix_a_mutated.tsv");
    assert_eq!(siltlab(&["classify", "--algebra", p(&a3), "--mutate-keep", "7"]).status.code(), Some(2));
}

#[test]
fn classify_falls_back_to_mutation_windows() {
    let dir = tempfile::tempdir().unwrap();
    let lam = build(dir.path(), "lam.json", &["--lambda", "1", "2", "0"]);
    let tsv = ok(&["classify", "--algebra", p(&lam), "--depth", "1"]);
    let table = cli_table(&tsv);
    // the standard heart contains the projectives as silting summands
    assert_eq!(table.values().filter(|t| t[4] == "1").count(), 2);
}

#[test]
fn hammock_queries_and_survivor_dump() {
    let h: Value =
        serde_json::from_str(&ok(&["hammock", "--rnm", "1", "2", "0", "--from", "0,0,0", "--to", "0,1,1"])).unwrap();
    assert_eq!(h["nonzero"], true);
    assert_eq!(h["forward"], true);
    let h: Value =
        serde_json::from_str(&ok(&["hammock", "--rnm", "1", "2", "0", "--from", "0,0,0", "--to", "0,-1,0"])).unwrap();
    assert_eq!(h["nonzero"], false);

    let csv = ok(&["hammock", "--rnm", "2", "3", "0", "--from", "0,0,0", "--survivors", "2", "--radius", "3"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,i,j,lower_hammock,upper_hammock,survivor"));
    assert_eq!(lines.count(), 2 * 7 * 7);
    assert!(csv.contains("0,0,0,0,0,1"), "M_0 itself survives");

    assert_eq!(siltlab(&["hammock", "--rnm", "2", "2", "0", "--from", "0,0,0", "--to", "0,0,0"]).status.code(), Some(2));
    assert_eq!(siltlab(&["hammock", "--rnm", "1", "2", "0", "--from", "0,0"]).status.code(), Some(2));
}
