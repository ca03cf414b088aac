use gs_growth::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String) {
    run(std::iter::once("gsg").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out) = call(&a);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

#[test]
fn hilbert_single_commutator() {
    let (code, v) = json(&["hilbert", "--gens", "2", "--relation", "y*x", "--max-degree", "12"]);
    assert_eq!(code, 0);
    let series: Vec<u64> = serde_json::from_value(v["result"]["series"].clone()).unwrap();
    assert_eq!(series, (2..=13).collect::<Vec<_>>());
    assert_eq!(v["result"]["attains_minimum"], true);
    assert_eq!(v["schema"], "gsg-report/1");
    assert_eq!(v["seed"], 0);
    assert!(v["conditions"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn relations_from_file() {
    let path = std::env::temp_dir().join(format!("gsg-rels-{}.txt", std::process::id()));
    std::fs::write(&path, "x*y - y*x\n").unwrap();
    let (code, v) = json(&["hilbert", "--gens", "2", "--relations", path.to_str().unwrap(), "--max-degree", "6", "--field", "rational"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let series: Vec<u64> = serde_json::from_value(v["result"]["series"].clone()).unwrap();
    assert_eq!(series, vec![2, 3, 4, 5, 6, 7]);
}

fn temp_file(tag: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("gsg-{tag}-{}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn certify_exit_codes() {
    let cubic = temp_file("cubic", r#"{"d":2,"degree_counts":{"3":1}}"#);
    let (code, v) = json(&["certify", "--profile", cubic.to_str().unwrap(), "--partial-degree", "3"]);
    std::fs::remove_file(&cubic).ok();
    assert_eq!(code, 0, "{v}");
    let quadratic = temp_file("quadratic", r#"{"d":2,"degree_counts":{"2":1}}"#);
    let (code, v) = json(&["certify", "--profile", quadratic.to_str().unwrap(), "--partial-degree", "2"]);
    std::fs::remove_file(&quadratic).ok();
    assert_eq!(code, 1, "{v}");
    assert_eq!(v["status"], "failed");
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["bogus"]).0, 2);
    assert_eq!(call(&["certify"]).0, 2);
    assert_eq!(call(&["hilbert", "--gens", "2", "--relation", "x*?"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn schedule_and_bounds() {
    let (code, v) = json(&["schedule", "--level", "30=2^1000"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["schedule"]["levels"][0]["e"], 12);
    let (code, v) = json(&["bounds", "--level", "8=2^16", "--n", "1024", "--toy"]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn quotient_commutative_example() {
    let (code, v) = json(&["quotient", "--relation", "x*y-y*x", "--relation", "x^2", "--relation", "y^2", "--precision", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["findim"]["k"], 3);
    assert_eq!(v["result"]["commutativity"]["status"], "commutative-at-precision-8");
}

#[test]
fn byte_identical_reruns() {
    for args in [
        &["ladder", "--levels", "3", "--strategy", "random", "--seed", "7", "--json"][..],
        &["c35", "--json"][..],
        &["schedule", "--level", "30=2^1000", "--text"][..],
    ] {
        let a = call(args);
        let b = call(args);
        assert_eq!(a, b, "{args:?}");
    }
}
