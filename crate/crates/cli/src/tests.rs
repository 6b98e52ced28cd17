//! End-to-end runs of the command line, in process.

use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::commands::{Artifact, Target};
use crate::error::CliError;

fn cmd(args: &[&str]) -> Result<Vec<Artifact>, CliError> {
    let argv = std::iter::once("cmc1").chain(args.iter().copied());
    Ok(crate::execute(argv)?.expect("not a help request"))
}

fn stdout(arts: &[Artifact]) -> &str {
    &arts.iter().find(|a| a.target == Target::Stdout).expect("stdout artifact").contents
}

fn file<'a>(arts: &'a [Artifact], name: &str) -> &'a str {
    let want = PathBuf::from(name);
    &arts.iter().find(|a| a.target == Target::File(want.clone())).unwrap_or_else(|| panic!("no {name}")).contents
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn category(args: &[&str]) -> String {
    let e = cmd(args).err().expect("command should fail");
    let line = e.line();
    assert_eq!(line.lines().count(), 1);
    line.split(':').nth(1).unwrap().trim().to_string()
}

#[test]
fn index_of_catenoid_cousin() {
    let doc = json(stdout(&cmd(&["index", "--example", "catenoid-cousin", "--mu", "2.5"]).unwrap()));
    assert_eq!(doc["report"]["ind_u"], 5);
    assert_eq!((doc["report"]["lo"].as_u64(), doc["report"]["hi"].as_u64()), (Some(4), Some(5)));
    assert_eq!(doc["config"]["mu"].as_f64(), Some(2.5));
}

#[test]
fn index_of_small_mu_is_pinned() {
    let doc = json(stdout(&cmd(&["index", "--mu", "0.5"]).unwrap()));
    assert_eq!((doc["report"]["lo"].as_u64(), doc["report"]["hi"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn spectrum_csv_rows() {
    let arts = cmd(&["spectrum", "--mu", "1", "--cutoff", "3"]).unwrap();
    let mut lines = stdout(&arts).lines();
    assert_eq!(lines.next(), Some("q,rank,lambda_numeric,lambda_analytic,abs_err,multiplicity"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 6));
    assert!(rows.iter().any(|r| r[2].abs() < 1e-3));
    assert!(rows.iter().any(|r| (r[2] - 2.0).abs() < 1e-3));
    assert!(rows.iter().all(|r| r[4] <= 1e-3));
}

#[test]
fn spectrum_file_gets_summary() {
    let arts = cmd(&["spectrum", "--mu", "3", "--out", "s.csv"]).unwrap();
    assert!(file(&arts, "s.csv").starts_with("q,rank,"));
    let summary = json(file(&arts, "s.json"));
    assert_eq!((summary["ind_u_numeric"].as_u64(), summary["nullity_numeric"].as_u64()), (Some(5), Some(3)));
    assert_eq!(summary["config"]["mu"].as_f64(), Some(3.0));
}

#[test]
fn horosphere_surface() {
    let arts = cmd(&["surface", "--example", "horosphere", "--grid", "16x16", "--out", "h.obj"]).unwrap();
    let obj = file(&arts, "h.obj");
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 256);
    assert_eq!(obj.lines().filter(|l| l.starts_with("vn ")).count(), 256);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 225);
    assert!(obj.lines().all(|l| l.starts_with("v ") || l.starts_with("vn ") || l.starts_with("f ")));
    let meta = json(file(&arts, "h.ends.json"));
    assert_eq!(meta["vertex_count"], 256);
    assert_eq!(meta["config"]["grid"], "16x16");
}

#[test]
fn catenoid_surface_sidecar_names_the_ends() {
    let arts = cmd(&["surface", "--example", "catenoid-cousin", "--mu", "0.5", "--grid", "20x16"]).unwrap();
    let meta = json(file(&arts, "surface.ends.json"));
    let loops = meta["boundary"].as_array().unwrap();
    assert_eq!(loops.len(), 2);
    assert!(loops.iter().all(|l| l["facing"]["kind"] == "end"));
    assert_eq!(loops[1]["facing"]["ideal"], "infinity");
}

#[test]
fn horizon_of_catenoid_cousin() {
    let args = ["horizon", "--example", "catenoid-cousin", "--mu", "0.5", "--grid", "40x32", "--out", "d.json"];
    let arts = cmd(&args).unwrap();
    let doc = json(file(&arts, "d.json"));
    assert_eq!((doc["result"]["v"].as_u64(), doc["result"]["v_adj"].as_u64()), (Some(2), Some(2)));
    assert!(file(&arts, "d.obj").lines().any(|l| l.starts_with("f ")));
    let arts = cmd(&["horizon", "--example", "catenoid-cousin", "--mu", "0.5", "--field", "rotation"]).unwrap();
    assert_eq!(json(file(&arts, "horizon.json"))["result"]["degenerate"], true);
}

#[test]
fn ends_documents() {
    let doc = json(stdout(&cmd(&["ends", "--example", "uy-example"]).unwrap()));
    assert_eq!((doc["end"]["m"].as_u64(), doc["end"]["embedded"].as_bool()), (Some(3), Some(false)));
    let doc = json(stdout(&cmd(&["ends", "--mu", "2", "--nu", "-2", "--q-minus2", "0"]).unwrap()));
    assert_eq!(doc["end"]["end_type"], "horosphere");
    assert_eq!((doc["end"]["m1"].as_u64(), doc["end"]["m2"].as_u64()), (Some(1), Some(3)));
    assert_eq!(category(&["ends", "--mu", "1", "--nu", "-3", "--q-minus2", "1"]), "not-regular");
    assert_eq!(category(&["ends", "--mu", "1", "--nu", "-2", "--q-minus2", "0.3"]), "ill-defined-end");
    assert_eq!(category(&["ends", "--example", "horosphere"]), "precondition");
}

#[test]
fn monodromy_is_unitary() {
    for args in [
        &["monodromy", "--example", "catenoid-cousin", "--mu", "0.5"][..],
        &["monodromy", "--example", "uy-example"][..],
        &["monodromy", "--example", "enneper-cousin"][..],
    ] {
        let doc = json(stdout(&cmd(args).unwrap()));
        assert_eq!(doc["in_su2"], true, "{args:?}");
        assert!(doc["defect"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"example": "catenoid-cousin", "mu": 0.5}"#).unwrap();
    let p = path.to_str().unwrap();
    let doc = json(stdout(&cmd(&["index", "--config", p]).unwrap()));
    assert_eq!(doc["report"]["ind_u"], 1);
    let doc = json(stdout(&cmd(&["index", "--config", p, "--mu", "2.5"]).unwrap()));
    assert_eq!(doc["report"]["ind_u"], 5);
    assert_eq!(doc["config"]["example"], "catenoid-cousin");
}

#[test]
fn failures_have_one_category_line() {
    assert_eq!(category(&["index", "--example", "nope"]), "unknown-example");
    assert_eq!(category(&["spectrum", "--mu", "-1"]), "precondition");
    assert_eq!(category(&["surface", "--example", "horosphere", "--grid", "16"]), "config");
    assert_eq!(category(&["horizon", "--example", "horosphere", "--field", "spin"]), "config");
    assert_eq!(category(&["index", "--config", "/nonexistent/c.json"]), "io");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"colour": 1}"#).unwrap();
    assert_eq!(category(&["index", "--config", bad.to_str().unwrap()]), "config");
    assert_eq!(category(&["frobnicate"]), "usage");
    assert_eq!(category(&["spectrum", "--cutoff", "abc"]), "usage");
}

#[test]
fn written_files_land_at_the_requested_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out: PathBuf = dir.path().join("m.obj");
    let arts = cmd(&["surface", "--example", "horosphere", "--grid", "4x4", "--out", out.to_str().unwrap()]).unwrap();
    crate::write_all(&arts).unwrap();
    assert!(out.exists());
    assert!(Path::new(&dir.path().join("m.ends.json")).exists());
}
