use std::process::{Command, Output};

use serde_json::Value;

fn whg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whg"))
        .args(args)
        .env_remove("WHG_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn verify_algebra_exit_codes() {
    assert_eq!(whg(&["verify-algebra", "--rank", "2", "--level", "3"]).status.code(), Some(0));
    assert_eq!(whg(&["verify-algebra", "--rank", "0", "--level", "3"]).status.code(), Some(2));
    assert_eq!(whg(&["verify-algebra", "--rank", "2", "--level", "11"]).status.code(), Some(2));
    assert_eq!(whg(&["verify-algebra", "-r", "5", "-k", "1"]).status.code(), Some(2));
    assert_eq!(whg(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verify_algebra_json_schema() {
    let out = whg(&["verify-algebra", "--rank", "2", "--level", "3", "--format", "json"]);
    assert!(out.status.success());
    let reports = json(&out);
    let reports = reports.as_array().expect("array of reports");
    assert!(!reports.is_empty());
    for r in reports {
        let obj = r.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 6);
        for key in ["check", "rank", "level", "passed", "max_deviation", "details"] {
            assert!(obj.contains_key(key), "missing {key}");
        }
        assert_eq!(r["rank"], 2);
        assert_eq!(r["level"], 3);
        assert_eq!(r["passed"], true);
        assert_eq!(r["max_deviation"], "0");
        for d in r["details"].as_array().unwrap() {
            assert!(d["relation"].is_string());
            assert_eq!(d["passed"], true);
            assert!(d["witness"].is_null());
        }
    }
}

#[test]
fn qukit_and_bargmann() {
    assert_eq!(whg(&["verify-qukit", "--level", "4"]).status.code(), Some(0));
    assert_eq!(whg(&["verify-qukit", "--level", "13"]).status.code(), Some(2));
    assert_eq!(whg(&["verify-bargmann", "--rank", "2", "--level", "3"]).status.code(), Some(0));
    assert_eq!(whg(&["verify-grassmann", "--level", "5"]).status.code(), Some(0));
}

#[test]
fn coherent_coefficients() {
    let out = whg(&["coherent", "--rank", "1", "--level", "1", "--emit", "coeffs", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0], serde_json::json!({"index":[0],"coefficient":"1","eta_power":0,"z_monomial":[0]}));
    assert_eq!(entries[1], serde_json::json!({"index":[1],"coefficient":"1","eta_power":1,"z_monomial":[1]}));

    let out = whg(&["coherent", "-r", "2", "-k", "2", "--emit", "coeffs", "--format", "json"]);
    let v = json(&out);
    let mixed = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["index"] == serde_json::json!([1, 1]))
        .unwrap();
    assert_eq!(mixed["coefficient"], "1/2*sqrt(2)");
    assert_eq!(mixed["eta_power"], 2);
}

#[test]
fn coherent_resolution_text_reports_exact_identity() {
    let out = whg(&["coherent", "--rank", "2", "--level", "2", "--emit", "resolution"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("identity: exact"), "{text}");
}

#[test]
fn coherent_eigencheck_per_mode() {
    let out = whg(&["coherent", "--rank", "3", "--level", "2", "--emit", "eigencheck", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    let details = v[0]["details"].as_array().unwrap();
    let modes: Vec<_> = details
        .iter()
        .filter(|d| d["relation"].as_str().unwrap().contains("|eta,z> = eta z"))
        .collect();
    assert_eq!(modes.len(), 3);
    assert!(modes.iter().all(|d| d["passed"] == true));
}

#[test]
fn max_dim_caps_the_basis() {
    let run = |cap: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_whg"))
            .args(args)
            .env("WHG_MAX_DIM", cap)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("9", &["verify-algebra", "-r", "2", "-k", "3"]), Some(2));
    assert_eq!(run("10", &["verify-algebra", "-r", "2", "-k", "3"]), Some(0));
    assert_eq!(run("8", &["verify-qukit", "-k", "4"]), Some(2));
    assert_eq!(run("lots", &["verify-qukit", "-k", "2"]), Some(2));
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("whg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = ["verify-bargmann", "-r", "1", "-k", "3", "--format", "json"];
    let direct = whg(&args);
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let written = whg(&with_out);
    assert!(written.status.success());
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_all_is_ordered_and_repeatable() {
    let args = ["verify-all", "--max-rank", "2", "--max-level", "2", "--format", "json"];
    let a = whg(&args);
    let b = whg(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let cells: Vec<(u64, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["rank"].as_u64().unwrap(), r["level"].as_u64().unwrap()))
        .collect();
    let mut sorted = cells.clone();
    sorted.sort();
    assert_eq!(cells, sorted);
    assert!(cells.contains(&(2, 2)));
}

#[test]
fn text_verbosity_lists_relations() {
    let quiet = String::from_utf8(whg(&["verify-grassmann", "-k", "3"]).stdout).unwrap();
    let loud = String::from_utf8(whg(&["verify-grassmann", "-k", "3", "-v"]).stdout).unwrap();
    assert!(!quiet.contains("[PASS]"));
    assert!(loud.contains("[PASS] eta^(k+1) = 0"));
}
