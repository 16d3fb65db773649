use std::process::Command;

use serde_json::Value;

fn run(args: &[&str], cache: Option<&std::path::Path>) -> (i32, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_grassqde"));
    cmd.args(args).env_remove("GRASSQDE_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("GRASSQDE_CACHE_DIR", dir);
    }
    let out = cmd.output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn without_runtime(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("runtime");
    v
}

#[test]
fn partitions_table() {
    let (code, v) = run(&["partitions", "--k", "2", "--n", "4"], None);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "grassqde-report/1");
    let rows = v["result"]["partitions"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[4]["lambda"], serde_json::json!([2, 1]));
    assert_eq!(rows[4]["frame"], serde_json::json!([2, 4]));
}

#[test]
fn qde_verify_example() {
    let args = ["qde", "verify", "--theory", "k", "--k", "1", "--n", "2", "--order", "3", "--mode", "exact_q", "--u", "2,5"];
    let (code, v) = run(&args, None);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["seed"], 0);
    let entries = v["result"]["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["exact_zero"] == true));
}

#[test]
fn cohomology_verify_with_eps() {
    let args = ["qde", "verify", "--theory", "coh", "--k", "2", "--n", "3", "--order", "2", "--u", "2,3,5", "--eps", "1"];
    let (code, v) = run(&args, None);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["eps"], "1");
}

#[test]
fn reports_are_deterministic() {
    let args = ["qde", "verify", "--k", "2", "--n", "3", "--order", "2", "--mode", "numeric", "--seed", "11"];
    let (_, a) = run(&args, None);
    let (_, b) = run(&args, None);
    assert_eq!(without_runtime(a.clone()), without_runtime(b));
    assert_eq!(a["result"]["seed"], 11);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["partitions", "--k", "5", "--n", "3"], None).0, 2);
    assert_eq!(run(&["partitions", "--k", "1", "--n", "9"], None).0, 2);
    assert_eq!(run(&["frobnicate"], None).0, 2);
    assert_eq!(run(&["qde", "verify", "--k", "1", "--n", "2", "--order", "7"], None).0, 2);
    assert_eq!(run(&["qde", "verify", "--k", "1", "--n", "2", "--u", "3,3"], None).0, 2);
    assert_eq!(run(&["qde", "verify", "--k", "1", "--n", "2", "--mode", "numeric"], None).0, 2);
    let (code, v) = run(&["qde", "verify", "--theory", "coh", "--k", "1", "--n", "2", "--eps", "0"], None);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "usage");
}

#[test]
fn check_failure_exits_1() {
    // an absurd tolerance makes the numeric residual check fail
    let args = ["qde", "verify", "--k", "2", "--n", "3", "--order", "2", "--mode", "numeric", "--seed", "3", "--tol", "0"];
    let (code, v) = run(&args, None);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
}

#[test]
fn op_cache_hit_miss_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let d = Some(dir.path());
    let (code, first) = run(&["op", "--k", "2", "--n", "4"], d);
    assert_eq!(code, 0);
    assert_eq!(first["runtime"]["cache"], "miss");
    let (_, second) = run(&["op", "--k", "2", "--n", "4"], d);
    assert_eq!(second["runtime"]["cache"], "hit");
    assert_eq!(without_runtime(first.clone()), without_runtime(second));
    let (_, other) = run(&["op", "--k", "2", "--n", "5"], d);
    assert_eq!(other["runtime"]["cache"], "miss");

    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replacen("\"1\"", "\"2\"", 1)).unwrap();
    }
    let (_, after) = run(&["op", "--k", "2", "--n", "4"], d);
    assert_eq!(after["runtime"]["cache"], "corrupt");
    assert_eq!(without_runtime(after), without_runtime(first));
}

#[test]
fn polys_keyed_by_partition() {
    let (code, v) = run(&["polys", "--k", "2", "--n", "4", "--theory", "coh", "--lambda", "1,1"], None);
    assert_eq!(code, 0);
    let map = v["result"]["polynomials"].as_object().unwrap();
    assert_eq!(map.keys().collect::<Vec<_>>(), vec!["(1,1)"]);
}

#[test]
fn bethe_and_lattice_commands() {
    let (code, v) = run(&["bethe", "eigen", "--theory", "coh", "--k", "1", "--n", "3", "--z", "0.01"], None);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["pairs"].as_array().unwrap().len(), 3);
    let (code, v) = run(&["bethe", "solve", "--k", "2", "--n", "4", "--lambda", "2,1"], None);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["roots"][0]["frame"], serde_json::json!([2, 4]));
    assert_eq!(run(&["lattice", "ybe", "--theory", "k"], None).0, 0);
    assert_eq!(run(&["lattice", "transfer", "--n", "4", "--seed", "2"], None).0, 0);
    let (code, v) = run(&["lattice", "probe", "--k", "2", "--n", "4"], None);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["asserted"], false);
}

#[test]
fn selftest_single_criterion() {
    let (code, v) = run(&["selftest", "--criterion", "7"], None);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["criteria"][0]["status"], "pass");
}
