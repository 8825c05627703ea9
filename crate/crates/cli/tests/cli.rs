use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ydh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ydh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ydh-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const NONTRIVIAL: &str = "search/search_z2_d4_06_nontrivial.ydh";

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_trivial_fixture() {
    let o = ydh(&["verify", &fixture("k_z3.ydh")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn core_of_counit_idempotent() {
    let o = ydh(&["core", &fixture("k_z3.ydh"), "--idempotent", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m"], 1);
    assert_eq!(v["omegas"], serde_json::json!([0]));
}

#[test]
fn analyze_nontrivial_fixture() {
    let out = scratch("analyze").join("out.json");
    let o = ydh(&["analyze", &fixture(NONTRIVIAL), "--json", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("gcd > 1"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["canonical"]["trivial"], false);
    assert_eq!(v["canonical"]["gcd_dim_group"], 2);
    assert!(v["timing"]["total_ms"].is_u64());
}

#[test]
fn canonical_reports_are_byte_identical() {
    let run = || {
        let o = ydh(&["report", &fixture(NONTRIVIAL), &fixture("k_z2.ydh")]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: Vec<serde_json::Value> = serde_json::Deserializer::from_slice(&o.stdout)
            .into_iter()
            .map(|x| x.unwrap())
            .collect();
        v.iter_mut()
            .map(|x| serde_json::to_string(&x["canonical"].take()).unwrap())
            .collect::<Vec<_>>()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.len(), 2);
    assert_eq!(a, b);
}

#[test]
fn dual_of_nontrivial_needs_bigger_field() {
    let dir = scratch("dual");
    let d = dir.join("dual.ydh");
    let o = ydh(&["dualize", &fixture(NONTRIVIAL), "-o", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(ydh(&["analyze", d.to_str().unwrap()]).status.code(), Some(3));
    let o = ydh(&["analyze", d.to_str().unwrap(), "--order", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn axiom_failure_exits_one() {
    let text = std::fs::read_to_string(fixture("k_z2.ydh")).unwrap();
    let broken = text.replace("  1 1 0 1\ncomult", "  1 1 0 2\ncomult");
    assert_ne!(text, broken);
    let p = scratch("broken").join("broken.ydh");
    std::fs::write(&p, broken).unwrap();
    let o = ydh(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(ydh(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ydh(&["verify", "/nonexistent/x.ydh"]).status.code(), Some(2));
    let p = scratch("garbled").join("garbled.ydh");
    std::fs::write(&p, "ydh 1\norder two\n").unwrap();
    let o = ydh(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn search_writes_reproducible_fixtures() {
    let dir = scratch("search");
    let o = ydh(&["search", "--group", "Z/2", "--dim", "2", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for name in ["search_z2_d2_00_trivial.ydh", "search_z2_d2_00_trivial.report.json"] {
        let got = std::fs::read(dir.join(name)).unwrap();
        let want = std::fs::read(fixture(&format!("search/{name}"))).unwrap();
        assert_eq!(got, want, "{name}");
    }
}
