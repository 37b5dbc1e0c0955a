use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_inscriber"));
    c.env_remove("INSCRIBER_SEED");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

fn star_and_path(dir: &Path) {
    write(dir, "star.json", r#"{"nodes": 5, "edges": [[0, 1], [0, 2], [0, 3], [0, 4]]}"#);
    write(dir, "path.json", r#"{"nodes": 4, "edges": [[0, 1], [1, 2], [2, 3]]}"#);
}

#[test]
fn decide_exit_codes() {
    let dir = TempDir::new().unwrap();
    star_and_path(dir.path());
    write(dir.path(), "bad.json", r#"{"nodes": 3, "edges": [[0, 1]"#);
    let o = run(dir.path(), &["decide", "star.json"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("node 0 has degree 4"));
    let o = run(dir.path(), &["decide", "star.json", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], "not_inscribable");
    assert_eq!(v["witness"], 0);
    assert_eq!(code(&run(dir.path(), &["decide", "path.json"])), 0);
    assert_eq!(code(&run(dir.path(), &["decide", "bad.json"])), 2);
    assert_eq!(code(&run(dir.path(), &["decide", "missing.json"])), 2);
}

#[test]
fn build_writes_outputs_that_verify_under_every_mode() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["build", "--path", "5", "--d", "3", "--out", "p"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["triangulation.json", "polytope.json", "trace.json"] {
        assert!(dir.path().join("p").join(f).exists());
    }
    for file in ["p/polytope.json", "p/triangulation.json"] {
        for mode in ["inscribed", "delaunay:1", "delaunay:2", "delaunay:3", "delaunay:4"] {
            let o = run(dir.path(), &["verify", file, "--mode", mode]);
            assert_eq!(code(&o), 0, "{file} {mode}: {}", stdout(&o));
        }
    }
    let poly: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("p/polytope.json")).unwrap()).unwrap();
    assert_eq!(poly["vertices"].as_array().unwrap().len(), 9);
    assert_eq!(poly["d"], 3);
}

#[test]
fn build_refuses_unbuildable_plans_and_trees() {
    let dir = TempDir::new().unwrap();
    star_and_path(dir.path());
    write(
        dir.path(),
        "plan.json",
        r#"{"d": 3, "root": 0, "children": {"0": [{"node": 1}, {"node": 2}, {"node": 3}]}}"#,
    );
    let o = run(dir.path(), &["build", "plan.json", "--out", "x"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("node 0"));
    assert!(!dir.path().join("x").exists());
    assert_eq!(code(&run(dir.path(), &["build", "star.json", "--d", "3"])), 1);
    assert_eq!(code(&run(dir.path(), &["build", "path.json"])), 2);
    assert_eq!(code(&run(dir.path(), &["build", "path.json", "--d", "3", "--root", "1"])), 2);
}

#[test]
fn build_from_labeled_plan_and_tree() {
    let dir = TempDir::new().unwrap();
    star_and_path(dir.path());
    write(
        dir.path(),
        "plan.json",
        r#"{"d": 4, "root": 0, "children": {"0": [{"node": 1, "face": 3}, {"node": 2}], "2": [{"node": 3}]}}"#,
    );
    let o = run(dir.path(), &["build", "plan.json", "--out", "a"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let trace: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("a/trace.json")).unwrap()).unwrap();
    assert_eq!(trace["steps"].as_array().unwrap().len(), 4);
    let o = run(dir.path(), &["build", "path.json", "--d", "4", "--root", "3", "--out", "b"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn planar_build_is_a_polygon() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["build", "--path", "3", "--d", "2"]);
    assert_eq!(code(&o), 0);
    assert!(!dir.path().join("triangulation.json").exists());
    let poly: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("polytope.json")).unwrap()).unwrap();
    assert_eq!(poly["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(poly["facets"].as_array().unwrap().len(), 6);
    assert_eq!(code(&run(dir.path(), &["verify", "polytope.json"])), 0);
}

#[test]
fn verify_reports_corruption() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(dir.path(), &["build", "--path", "2", "--d", "3"])), 0);
    let text = fs::read_to_string(dir.path().join("polytope.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["vertices"][1][0] = Value::from("2");
    write(dir.path(), "bad.json", &v.to_string());
    let o = run(dir.path(), &["verify", "bad.json", "--json"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["ok"], false);
    assert!(
        r["violations"].as_array().unwrap().iter().any(|x| x["kind"] == "not_on_sphere" && x["vertex"] == 1),
        "{r}"
    );
    assert_eq!(code(&run(dir.path(), &["verify", "polytope.json", "--mode", "delaunay:9"])), 2);
}

#[test]
fn verify_names_the_failing_spokes_of_a_split_triangle() {
    let dir = TempDir::new().unwrap();
    // A, B, C, x, then the barycenters of xBC, xCA, xAB
    write(
        dir.path(),
        "t.json",
        r#"{"dim": 2,
            "vertices": [["0","0"],["2","0"],["1","7/4"],["1","7/12"],["4/3","7/9"],["2/3","7/9"],["1","7/36"]],
            "facets": [[1,2,4],[1,3,4],[2,3,4],[0,2,5],[0,3,5],[2,3,5],[0,1,6],[0,3,6],[1,3,6]]}"#,
    );
    let o = run(dir.path(), &["verify", "t.json", "--mode", "delaunay:4", "--json"]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let spokes: Vec<&str> =
        r["failing_spokes"].as_array().unwrap().iter().map(|s| s["edge"].as_str().unwrap()).collect();
    assert_eq!(spokes, ["Ax", "Bx", "Cx"]);
    assert_eq!(r["failing_spokes"][0]["vertices"], serde_json::json!([0, 3]));
}

#[test]
fn generate_cyclic_and_fvectors() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["generate", "cyclic", "--method", "spherical", "--d", "4", "--n", "7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(dir.path(), &["verify", "polytope.json"])), 0);
    let poly: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("polytope.json")).unwrap()).unwrap();
    assert_eq!(poly["facets"].as_array().unwrap().len(), 14);
    assert_eq!(code(&run(dir.path(), &["generate", "cyclic", "--method", "trig", "--d", "3", "--n", "6"])), 2);
    let o = run(
        dir.path(),
        &["generate", "cyclic", "--method", "spherical", "--d", "3", "--n", "4", "--params", "1,2,2,3"],
    );
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(dir.path(), &["generate", "fvectors", "--f0-max", "20"])), 0);
    let csv = fs::read_to_string(dir.path().join("fvectors.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("f0,f1,f2,family"));
    for l in lines {
        let f: Vec<u64> = l.split(',').take(3).map(|x| x.parse().unwrap()).collect();
        assert!(f[2] + 4 <= 2 * f[0] && f[0] + 4 <= 2 * f[2] && f[1] + 2 == f[0] + f[2], "{l}");
    }
    assert!(csv.contains("4,6,4,left\n"));
}

#[test]
fn certify_sweeps() {
    let dir = TempDir::new().unwrap();
    star_and_path(dir.path());
    let o = run(dir.path(), &["certify", "star.json", "--d", "3", "--trials", "500", "--out", "r.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("500 of 500"));
    let r: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(r["all_violated"], true);
    let o = run(dir.path(), &["certify", "star.json", "--d", "4", "--trials", "12"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("planar obstruction in 12 trials"), "{}", stdout(&o));
    assert_eq!(code(&run(dir.path(), &["certify", "path.json", "--d", "3"])), 1);
}

#[test]
fn seed_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    star_and_path(dir.path());
    let args = ["certify", "star.json", "--d", "3", "--trials", "2"];
    let o = bin().current_dir(dir.path()).args(args).env("INSCRIBER_SEED", "77").output().unwrap();
    assert!(stdout(&o).contains("(seed 77)"));
    let o =
        bin().current_dir(dir.path()).args(args).env("INSCRIBER_SEED", "77").args(["--seed", "5"]).output().unwrap();
    assert!(stdout(&o).contains("(seed 5)"));
    assert!(stdout(&run(dir.path(), &args)).contains("(seed 0)"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    star_and_path(dir.path());
    for out in ["one", "two"] {
        assert_eq!(code(&run(dir.path(), &["build", "path.json", "--d", "4", "--out", out])), 0);
        let cert = format!("{out}/cert.json");
        assert_eq!(code(&run(dir.path(), &["certify", "star.json", "--d", "4", "--trials", "3", "--out", &cert])), 0);
    }
    for f in ["triangulation.json", "polytope.json", "trace.json", "cert.json"] {
        let a = fs::read(dir.path().join("one").join(f)).unwrap();
        let b = fs::read(dir.path().join("two").join(f)).unwrap();
        assert_eq!(a, b, "{f}");
    }
}

fn parse_ratio(s: &str) -> f64 {
    match s.split_once('/') {
        Some((p, q)) => p.parse::<i64>().unwrap() as f64 / q.parse::<i64>().unwrap() as f64,
        None => s.parse::<i64>().unwrap() as f64,
    }
}

#[test]
fn export_off() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(dir.path(), &["build", "--path", "1", "--d", "3"])), 0);
    let o = run(dir.path(), &["export", "polytope.json", "--digits", "8"]);
    assert_eq!(code(&o), 0);
    let off = stdout(&o);
    let lines: Vec<&str> = off.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines[0], "OFF");
    assert_eq!(lines[1], "5 6 0");
    assert_eq!(lines.len(), 2 + 5 + 6);
    assert!(off.lines().any(|l| l.starts_with("# sha256 ") && l.len() == 9 + 64));

    // points (2t, 1 - t^2) / (1 + t^2) with t = k / 2^19: denominators below 2^40
    let mut vertices = vec![r#"["0","1"]"#.to_string()];
    for k in [1i64, 3, 77, 1000, 123_457] {
        let (p, q) = (k, 1i64 << 19);
        let den = q * q + p * p;
        vertices.push(format!(r#"["{}/{}","{}/{}"]"#, 2 * p * q, den, q * q - p * p, den));
    }
    let facets: Vec<String> = (0..6).map(|i| format!("[{}, {}]", i.min((i + 1) % 6), i.max((i + 1) % 6))).collect();
    let poly =
        format!(r#"{{"d": 2, "north": 0, "vertices": [{}], "facets": [{}]}}"#, vertices.join(","), facets.join(","));
    write(dir.path(), "fine.json", &poly);
    let o = run(dir.path(), &["export", "fine.json", "--digits", "17", "--out", "fine.off"]);
    assert_eq!(code(&o), 0);
    let off = fs::read_to_string(dir.path().join("fine.off")).unwrap();
    let body: Vec<&str> = off.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(&body[..3], ["nOFF", "2", "6 6 0"]);
    let v: Value = serde_json::from_str(&poly).unwrap();
    for (i, line) in body[3..9].iter().enumerate() {
        for (j, x) in line.split(' ').enumerate() {
            let exact = parse_ratio(v["vertices"][i][j].as_str().unwrap());
            assert_eq!(x.parse::<f64>().unwrap(), exact, "{x}");
        }
    }

    write(dir.path(), "empty.json", r#"{"d": 2, "north": 0, "vertices": [["0","1"]], "facets": []}"#);
    assert_eq!(code(&run(dir.path(), &["export", "empty.json"])), 2);
}
