use std::process::{Command, Output};

fn spincons(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spincons")).args(args).env_remove("SPINCONS_SEED").output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_chiral_three_halves() {
    let out = spincons(&["verify", "--spin", "3/2", "--current", "V", "--order", "1", "--seed", "7", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert!(v["result"]["residual_max"].as_f64().unwrap() <= 1e-6);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["config"]["twice_spin"], 3);
    assert_eq!(v["result"]["parity"]["duality"], -1);
}

#[test]
fn broken_coefficient_fails() {
    let out = spincons(&["verify", "--spin", "1", "--current", "T", "--order", "0", "--break-coeff", "0.01"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn spin_zero_is_a_usage_error() {
    let out = spincons(&["verify", "--spin", "0", "--current", "T"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn count_tables() {
    let out = spincons(&["count", "--spin", "1", "--max-order", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = &v["result"]["counts"];
    assert_eq!((c[0]["t"].as_u64(), c[1]["t"].as_u64()), (Some(15), Some(300)));
    assert_eq!((c[0]["z"].as_u64(), c[0]["v"].as_u64()), (Some(84), Some(378)));
    assert!(v["result"]["weights"].as_array().unwrap().iter().all(|r| r["ok"] == true));

    let out = spincons(&["count", "--spin", "1/2", "--max-order", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,T,Z,V\n0,1,15,140\n"), "{text}");
}

#[test]
fn quantities_zero_amplitude_and_half_spin() {
    let out = spincons(&["quantities", "--spin", "1", "--omega", "3", "--amp", "0+0i", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    for r in json(&out)["result"]["rows"].as_array().unwrap() {
        assert_eq!(r["point"].as_f64(), Some(0.0));
    }
    let out = spincons(&["quantities", "--spin", "1/2", "--omega", "2", "--amp", "1-1i", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["hybrid"], true);
    // t^{AA'} φ_A φ̄_{A'} for one mode: positive
    assert!(v["result"]["rows"][0]["point"].as_f64().unwrap() > 0.0);
}

#[test]
fn basis_listing_and_rank() {
    let out = spincons(&["basis", "--spin", "1", "--weight", "0", "--seed", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["currents"].as_array().unwrap().len(), 15);
    assert_eq!(v["result"]["rank"], 15);

    let out = spincons(&["basis", "--spin", "1/2", "--weight", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\ncount,rank,pass\n1,1,true\n"));

    assert_eq!(spincons(&["basis", "--spin", "1", "--weight", "7"]).status.code(), Some(2));
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("spincons-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count.json");
    let args = ["count", "--spin", "3/2", "--format", "json"];
    let out = spincons(&args);
    let mut with_path = args.to_vec();
    let p = path.to_str().unwrap();
    with_path.extend(["--output", p]);
    let quiet = spincons(&with_path);
    assert_eq!(quiet.status.code(), Some(0));
    assert!(quiet.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
