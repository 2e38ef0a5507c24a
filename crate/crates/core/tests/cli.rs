//! Exit codes and payload shape of the command-line front end.

use forms_density::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, Value, String) {
    let r = run(std::iter::once("forms-density").chain(args.iter().copied()));
    let v = if r.payload.is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&r.payload).unwrap()
    };
    (r.exit_code, v, r.diagnostics)
}

fn write(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("forms-density-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn zero_coefficient_is_invalid_input() {
    let path = write("bad.json", r#"{"n":2,"rows":[{"degree":1,"coeffs":[1,0]},{"degree":2,"coeffs":[1,1]}]}"#);
    let (code, v, _) = call(&["solve", "diagonal", "--system", &path, "--field", "Fp:5", "--seed", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "degenerate");
}

#[test]
fn exhausted_budget_names_the_stage() {
    let sys = r#"{"forms":[
      {"vars":4,"degree":1,"terms":[{"coeff":1,"exp":[1,0,0,0]},{"coeff":1,"exp":[0,1,0,0]},{"coeff":1,"exp":[0,0,1,0]},{"coeff":1,"exp":[0,0,0,1]}]},
      {"vars":4,"degree":2,"terms":[{"coeff":1,"exp":[2,0,0,0]},{"coeff":-1,"exp":[0,2,0,0]},{"coeff":2,"exp":[0,0,2,0]},{"coeff":-3,"exp":[0,0,0,2]}]}]}"#;
    let path = write("sys.json", sys);
    let (code, v, diag) = call(&["construct", "pipeline", "--system", &path, "--m", "8", "--seed", "1", "--budget", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "not-found");
    assert!(diag.contains("dm_search"), "{diag}");
}

#[test]
fn missing_seed_is_rejected() {
    let (code, _, diag) = call(&["phi", "--field", "Fp:3", "--d", "2"]);
    assert_eq!(code, 2);
    assert!(diag.contains("--seed"));
}

#[test]
fn diagonal_solution_carries_verification() {
    let path = write("ok.json", r#"{"n":3,"rows":[{"degree":1,"coeffs":[1,1,1]},{"degree":2,"coeffs":[1,2,3]}]}"#);
    let (code, v, _) = call(&["solve", "diagonal", "--system", &path, "--field", "Fp:5", "--budget", "1e6", "--seed", "42"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "forms-density/1");
    assert_eq!(v["result"]["verification"]["ok"], true);
}

#[test]
fn interval_payloads_are_decimal_pairs() {
    let (code, v, _) = call(&["bounds", "main", "--d", "2", "--s", "1", "--phi", "list:4"]);
    assert_eq!(code, 0);
    let iv = v["result"]["interval"].as_array().unwrap();
    let lo: f64 = iv[0].as_str().unwrap().parse().unwrap();
    assert!((8.0e6..8.2e6).contains(&lo));
}
