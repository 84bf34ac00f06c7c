use std::process::Command;

use serde_json::Value;

fn qgroup(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_qgroup")).args(args).output().expect("run qgroup");
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

fn result(args: &[&str]) -> Value {
    let (code, out, err) = qgroup(args);
    assert_eq!(code, 0, "{:?}: {}", args, err);
    let v: Value = serde_json::from_str(&out).unwrap();
    v["result"].clone()
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

#[test]
fn dims_examples() {
    assert_eq!(ints(&result(&["dims", "--cartan", "A1", "--l", "5", "--max-depth", "6"])["dims_f"]), vec![1, 1, 1, 1, 1, 0, 0]);
    assert_eq!(ints(&result(&["dims", "--cartan", "A1", "--l", "5", "--weight", "4", "--max-depth", "5"])["dims_l"]), vec![1, 1, 1, 1, 1, 0]);
    assert_eq!(ints(&result(&["dims", "--cartan", "A1", "--l", "5", "--max-depth", "0"])["dims_f"]), vec![1]);
}

#[test]
fn blocks_examples() {
    for (w, d) in [("1,1", 1), ("3,3,3", 0), ("0", 1), ("2,2,2", 1)] {
        let r = result(&["blocks", "--cartan", "A1", "--l", "10", "--weights", w]);
        assert_eq!(r["dim"], d, "{}", w);
        assert_eq!(r["alcove_ok"], true);
    }
    let (code, _, err) = qgroup(&["blocks", "--cartan", "A1", "--l", "10", "--weights", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("alcove"));
}

#[test]
fn arrcoh_examples() {
    let star = |w: &str| ints(&result(&["arrcoh", "--cartan", "A1", "--l", "5", "--nu", "1", "--weight", w, "--ext", "star"])["cohomology"]);
    assert_eq!(star("2"), vec![0, 0]);
    assert_eq!(star("0"), vec![1, 1]);
    assert_eq!(ints(&result(&["arrcoh", "--cartan", "A1", "--l", "5", "--nu", "0", "--ext", "ic"])["cohomology"]), vec![1]);
    // skew ic cohomology is the f-Tor of the Verma side
    let ic = result(&["arrcoh", "--cartan", "A1", "--l", "5", "--nu", "3", "--weight", "2", "--ext", "ic", "--skew"]);
    let tor = result(&["tor", "--cartan", "A1", "--l", "5", "--weights", "2", "--nu", "3"]);
    assert_eq!(ic["cohomology"], tor["f"]);
}

#[test]
fn gram_and_verma() {
    let g = result(&["gram", "--cartan", "A2", "--l", "5", "--nu", "1,1", "--weight", "1,0"]);
    assert_eq!(g["basis"].as_array().unwrap().len(), 2);
    assert_eq!(g["rank_s"], 2);
    let v = result(&["verma", "--cartan", "A2", "--l", "5", "--weight", "1,2", "--max-depth", "4"]);
    let rows = v["weights"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert_eq!(rows[0]["dim_l"], 1);
}

#[test]
fn verify_suites() {
    assert_eq!(result(&["verify", "--cartan", "A1", "--l", "5", "--suite", "forms"])["pass"], true);
    assert_eq!(result(&["verify", "--cartan", "A1", "--l", "5", "--suite", "comparison", "--max-depth", "4"])["pass"], true);
    let r = result(&["verify", "--cartan", "A2", "--l", "5"]);
    assert_eq!(r["pass"], true);
    let tags: Vec<String> = r["suites"]["coaction"].as_array().unwrap().iter().map(|c| c["tag"].as_str().unwrap().to_string()).collect();
    assert!(tags.contains(&"adjunction".to_string()));
    let (code, _, err) = qgroup(&["verify", "--cartan", "A1", "--l", "5", "--suite", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown suite"));
}

#[test]
fn usage_errors() {
    assert_eq!(qgroup(&["dims", "--l", "5"]).0, 2);
    assert_eq!(qgroup(&["dims", "--cartan", "A1", "--l", "10", "--k", "5"]).0, 2);
    assert_eq!(qgroup(&["dims", "--cartan", "X7", "--l", "5"]).0, 2);
    assert_eq!(qgroup(&["tor", "--cartan", "A1", "--l", "5", "--weights", "1"]).0, 2);
    assert_eq!(qgroup(&["frobnicate"]).0, 2);
}

#[test]
fn output_is_deterministic_and_echoes_config() {
    let args = ["tor", "--cartan", "A2", "--l", "5", "--weights", "1,0;0,2", "--nu", "1,1"];
    let (_, a, _) = qgroup(&args);
    let (_, b, _) = qgroup(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["config"]["weights"], "1,0;0,2");
    assert_eq!(v["config"]["k"], 1);
    assert_eq!(v["field"]["N"], 30);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("qgroup-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let toml = dir.join("job.toml");
    std::fs::write(&toml, "cartan = \"A1\"\nl = 10\nweights = \"3,3,3\"\n").unwrap();
    let p = toml.to_str().unwrap();
    assert_eq!(result(&["blocks", "--config", p])["dim"], 0);
    assert_eq!(result(&["blocks", "--config", p, "--weights", "2,2,2"])["dim"], 1);
    let js = dir.join("job.json");
    std::fs::write(&js, r#"{"cartan": "A1", "l": 5, "max_depth": 6}"#).unwrap();
    assert_eq!(ints(&result(&["dims", "--config", js.to_str().unwrap()])["dims_f"]), vec![1, 1, 1, 1, 1, 0, 0]);
    let out = dir.join("out.json");
    let (code, stdout, _) = qgroup(&["blocks", "--config", p, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["dim"], 0);
    std::fs::write(&toml, "cartan = 3").unwrap();
    assert_eq!(qgroup(&["blocks", "--config", p]).0, 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_seeds_decode_and_roundtrip() {
    let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/decode_config");
    let mut n = 0;
    for e in std::fs::read_dir(&dir).unwrap() {
        let text = std::fs::read_to_string(e.unwrap().path()).unwrap();
        let cfg = qgroup_cli::decode_config(&text).unwrap();
        let js = serde_json::to_string(&cfg).unwrap();
        assert_eq!(qgroup_cli::decode_config(&js).unwrap(), cfg);
        assert!(qgroup_cli::Job::new(cfg).is_ok(), "{}", text);
        n += 1;
    }
    assert!(n >= 4);
    for bad in ["", "l = \"five\"", "{\"l\": 5,", "unknown = 1", "[[x]]"] {
        assert!(qgroup_cli::decode_config(bad).map(qgroup_cli::Job::new).map_or(true, |j| j.is_err()), "{:?}", bad);
    }
}
