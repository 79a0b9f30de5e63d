use std::process::{Command, Output};

use serde_json::Value;

fn cdlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdlab")).args(args).env_remove("CDLAB_THREADS").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = cdlab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn mul_examples() {
    assert_eq!(stdout(&["--level", "4", "mul", "(o1 - o1234)*(o2 + o34)"]), "0\n");
    assert_eq!(stdout(&["--level", "3", "mul", "o1*o2"]), "o12\n");
    assert_eq!(stdout(&["--level", "3", "mul", "o2*o1"]), "-o12\n");
    assert_eq!(stdout(&["--level", "3", "mul", "o1*o1"]), "-1\n");
    assert_eq!(stdout(&["--sig", "2,1", "mul", "u1*u1"]), "1\n");
    assert_eq!(json(&["--level", "3", "mul", "o1*o2"])["value"], "o12");
}

#[test]
fn classify_examples() {
    let v = json(&["--level", "4", "classify", "--triad", "o1,o2,o34"]);
    assert_eq!(v["type"], "A");
    assert_eq!(v["silo"], "AAA");
    assert_eq!(v["subalgebra"], "P4");
    assert_eq!(v["modes"].as_array().unwrap().len(), 4);

    let v = json(&["--level", "3", "classify", "--triad", "o3,o1,o2"]);
    assert_eq!(v["triad"], "o1,o2,o3");
    assert_eq!(v["type"], "X");
    assert_eq!(v["silo"], "XXX");
    assert_eq!(v["subalgebra"], "O");
    assert_eq!(v["malcev"], true);

    let v = json(&["--level", "4", "classify", "--triad", "o1,o2,o12"]);
    assert_eq!(v["type"], "associative");
    assert_eq!(v["subalgebra"], "H");
    assert_eq!(v["malcev"], false);
}

#[test]
fn triad_census_csv() {
    let csv = stdout(&["--level", "5", "census", "triads", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "structure,count");
    for want in ["AAA,252", "BBA,168", "ACC,84", "CCX,336", "XXX,400", "A,84", "C,252", "X,284", "associative,155"] {
        assert!(rows.contains(&want), "missing {want} in\n{csv}");
    }
}

#[test]
fn triad_census_json_schema() {
    let v = json(&["--level", "4", "census", "triads"]);
    assert_eq!(v["level"], 4);
    assert_eq!(v["silos"]["AAA"], 28);
    assert_eq!(v["nonCycles"].as_object().unwrap().len(), 4);
    assert_eq!(v["associative"], 35);
}

#[test]
fn subalgebra_census_and_guard() {
    let v = json(&["--level", "5", "census", "subalgebras"]);
    assert_eq!((v["O"].as_u64(), v["P4"].as_u64()), (Some(50), Some(63)));
    assert_eq!(cdlab(&["--level", "9", "census", "subalgebras"]).status.code(), Some(2));
}

#[test]
fn sedenion_zero_divisors() {
    let list = json(&["--level", "4", "zd", "enumerate"]);
    let pairs = list.as_array().unwrap();
    assert_eq!(pairs.len(), 84);
    let first = &pairs[0];
    assert_eq!(first["f1"][0][1], 1);
    assert_eq!(first["f1"].as_array().unwrap().len(), 2);
    assert_eq!(first["f2"].as_array().unwrap().len(), 2);
    assert_eq!(json(&["--level", "4", "zd", "count"])["count"], 84);

    let p = json(&["--level", "4", "zd", "primaries"]);
    assert_eq!(p["primaries"].as_array().unwrap().len(), 7);
    assert_eq!(p["count"], 84);
}

#[test]
fn strict_squares_on_split_octonions() {
    let relaxed = json(&["--sig", "0,3", "zd", "count"])["count"].as_u64().unwrap();
    let strict = json(&["--sig", "0,3", "zd", "count", "--strict-squares"])["count"].as_u64().unwrap();
    assert!(strict <= relaxed);
}

#[test]
fn verify_passes_at_four() {
    let out = cdlab(&["--level", "4", "verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn formulas_are_consistent() {
    let out = cdlab(&["formulas", "--max-level", "5"]);
    assert!(out.status.success());
    assert!(!String::from_utf8(out.stdout).unwrap().contains("| no "));
}

#[test]
fn output_is_independent_of_thread_count() {
    let run = |threads: &str| stdout(&["--level", "5", "--threads", threads, "zd", "enumerate", "--format", "csv"]);
    assert_eq!(run("1"), run("4"));
    let env = Command::new(env!("CARGO_BIN_EXE_cdlab"))
        .args(["--level", "5", "--threads", "4", "zd", "enumerate", "--format", "csv"])
        .env("CDLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), run("1"));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let out = cdlab(&["--level", "3", "census", "triads", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["silos"]["XXX"], 8);
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        vec!["--level", "4", "mul", "o1 *"],
        vec!["--level", "4", "mul", "o9"],
        vec!["--level", "4", "classify", "--triad", "o1,o2"],
        vec!["--level", "4", "classify", "--triad", "o1,o1,o2"],
        vec!["--sig", "x", "mul", "1"],
        vec!["--level", "4", "--sig", "4,0", "mul", "1"],
        vec!["mul", "1"],
        vec!["--level", "12", "census", "triads"],
        vec!["--level", "4", "frobnicate"],
    ] {
        assert_eq!(cdlab(&args).status.code(), Some(2), "{args:?}");
    }
}
