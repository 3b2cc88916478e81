use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn genera(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genera"))
        .args(args)
        .env_remove("GENERA_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn sp_verdict_for_k3() {
    let out = genera(&["divis", "verdict", "--structure", "Sp", "--k", "1", "--euler", "24"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["divides"], Value::Bool(true));
    assert_eq!(v["constant"], "24");
}

#[test]
fn failing_verdict_exits_1() {
    let out = genera(&["divis", "verdict", "--structure", "SU", "--k", "2", "--euler", "-25"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["divides"], Value::Bool(false));
}

#[test]
fn k3_euler_number() {
    let out = genera(&["genus", "euler", "--chern", "fixtures/k3.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["euler"], "24");
}

#[test]
fn divisibility_table_is_byte_stable() {
    for fmt in ["json", "csv", "md"] {
        let a = genera(&["divis", "table", "--kmax", "3", "--format", fmt]);
        let b = genera(&["divis", "table", "--kmax", "3", "--format", fmt]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{fmt}");
    }
    let csv = genera(&["divis", "table", "--kmax", "3", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(
        text,
        "k,d_clas,d_su,d_su_easy,d_sp,d_ko\n1,inf,inf,inf,24,inf\n2,12,24,24,12,2\n3,2,2,2,8,inf\n"
    );
    let rows = json(&genera(&["divis", "table", "--kmax", "2"]));
    assert_eq!(rows["rows"][1]["d_sp"], "12");
}

#[test]
fn usage_and_file_errors_exit_2() {
    assert_eq!(genera(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(genera(&["divis", "table", "--kmax", "x"]).status.code(), Some(2));
    let out = genera(&["genus", "euler", "--chern", "no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot read"));
    assert_eq!(genera(&["hk", "solve", "--k", "4"]).status.code(), Some(2));
    assert_eq!(genera(&["jf", "gen", "phi99"]).status.code(), Some(2));
}

#[test]
fn generated_forms_pass_the_check() {
    let dir = tempdir("jf");
    for name in ["a", "phi01", "phi032", "phi02", "phi04"] {
        let out = genera(&["jf", "gen", name, "--qmax", "6"]);
        assert_eq!(out.status.code(), Some(0));
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        let check = genera(&["jf", "check", path.to_str().unwrap()]);
        assert_eq!(check.status.code(), Some(0), "{name}");
        assert_eq!(json(&check)["passed"], Value::Bool(true));
    }
}

#[test]
fn broken_form_fails_the_check() {
    let dir = tempdir("broken");
    let mut rec = json(&genera(&["jf", "gen", "phi01", "--qmax", "4"]));
    rec["terms"][0][2] = Value::String("7".into());
    let path = dir.join("bad.json");
    std::fs::write(&path, rec.to_string()).unwrap();
    let out = genera(&["jf", "check", path.to_str().unwrap(), "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn k3_genus_is_twice_phi01() {
    let g = json(&genera(&["genus", "compute", "--chern", "fixtures/k3.json", "--qmax", "4"]));
    let p = json(&genera(&["jf", "gen", "phi01", "--qmax", "4"]));
    let doubled: Vec<Value> = p["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let c: i64 = t[2].as_str().unwrap().parse().unwrap();
            serde_json::json!([t[0], t[1], (2 * c).to_string()])
        })
        .collect();
    assert_eq!(g["terms"], Value::Array(doubled));
    assert_eq!(g["index2"], 2);
}

#[test]
fn data_dir_from_environment() {
    let dir = tempdir("data");
    std::fs::create_dir_all(dir.join("fixtures")).unwrap();
    std::fs::write(
        dir.join("fixtures/surface.json"),
        r#"{"label": "S", "dimc": 2, "numbers": {"2": 48, "1,1": 0}}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_genera"))
        .args(["genus", "euler", "--chern", "fixtures/surface.json"])
        .env("GENERA_DATA_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["euler"], "48");
}

#[test]
fn cells_commands() {
    let g = json(&genera(&["cells", "homotopy", "--complex", "complexes/tmf_nu.json", "--table", "tables/pi_tmf.json", "--deg", "5"]));
    assert_eq!(g["group"], "Z/2");
    let o = json(&genera(&["cells", "order", "--table", "pi_S", "--element", "3nu"]));
    assert_eq!(o["order"], "8");
    let sub = json(&genera(&["cells", "homotopy", "--complex", "tjf4", "--cells", "1", "3", "--deg", "7"]));
    assert_eq!(sub["group"], "Z/2");
    let easy = genera(&["cells", "dsu-easy", "--kmax", "24"]);
    assert_eq!(easy.status.code(), Some(0));
    assert_eq!(json(&easy)["rows"][9]["d_su"], "24");
}

#[test]
fn hyperkaehler_systems() {
    let s = json(&genera(&["hk", "solve", "--k", "2"]));
    assert_eq!(s["euler_divisor"], "12");
    assert_eq!(s["euler_divisor_without_parity"], "6");
    assert!(s["relations"].as_array().unwrap().iter().any(|r| r == "h22 = 8h11 - 2h12 + 64"));
    assert_eq!(json(&genera(&["hk", "solve", "--k", "3"]))["euler_divisor"], "8");
}

#[test]
fn selftest_status_is_the_conjunction_of_criteria() {
    let out = genera(&["selftest"]);
    let report = json(&out);
    let all = genera::acceptance::run_all().iter().all(|c| c.passed);
    assert_eq!(report["all_passed"], Value::Bool(all));
    assert_eq!(out.status.code(), Some(if all { 0 } else { 1 }));
    assert_eq!(report["criteria"].as_array().unwrap().len(), 14);
}

fn tempdir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("genera-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
