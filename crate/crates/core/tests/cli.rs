use std::path::PathBuf;
use std::process::{Command, Output};

use latcross::{ArrayPair, QTPoly, TwoRowedArray};

fn latcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcross"))
        .args(args)
        .env("LATCROSS_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latcross-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const FIG3: &str = r#"{"bracket":"XU_YV","x":1,"y":0,"u":7,"v":8,"c":[2,3,4,6],"d":[0,1,4,5]}"#;
const FIG5_PAIR: &str = r#"{"first":{"bracket":"XU_YV","x":0,"y":2,"u":10,"v":7,"c":[3,6],"d":[2,4]},"second":{"bracket":"XU_YV","x":2,"y":0,"u":8,"v":8,"c":[3,4,7,8],"d":[2,5,6,7]},"k":0}"#;

#[test]
fn documented_examples() {
    let o = latcross(&["stats", "--path", "DUDUUUDUDDUUUD", "--ud", "--line", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("des=4 maj=21 "), "{text}");
    assert!(text.lines().next().unwrap().ends_with("crossings=3"));
    assert_eq!(stdout(&latcross(&["gpoly", "--a", "1", "--b", "1", "--ell", "0", "--r", "0"])), "1 + t*q\n");
    assert_eq!(stdout(&latcross(&["gpoly", "--a", "0", "--b", "0", "--ell", "0", "--r", "1"])), "0\n");
}

#[test]
fn oracle_and_formula_outputs_are_identical() {
    for (a, b, ell, r) in [(3, 4, 1, 2), (5, 2, -1, 1), (4, 4, 0, 3), (2, 6, -3, 2)] {
        let args = ["gpoly", "--a", &a.to_string(), "--b", &b.to_string(), "--ell", &ell.to_string(), "--r", &r.to_string()];
        let formula = latcross(&args);
        let mut with_oracle = args.to_vec();
        with_oracle.push("--oracle");
        assert_eq!(formula.stdout, latcross(&with_oracle).stdout);
    }
    let args = ["hpoly", "--a1", "0,1", "--a2", "1,0", "--bp", "3,3", "--bq", "4,2", "--r", "1"];
    let mut with_oracle = args.to_vec();
    with_oracle.push("--oracle");
    assert_eq!(latcross(&args).stdout, latcross(&with_oracle).stdout);
}

#[test]
fn json_outputs_round_trip() {
    let o = latcross(&["gpoly", "--a", "2", "--b", "3", "--ell", "1", "--r", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let poly: QTPoly = serde_json::from_value(v["poly"].clone()).unwrap();
    assert_eq!(poly.to_string(), v["text"].as_str().unwrap());
    assert_eq!(v["source"], "formula");

    let o = latcross(&["encode", "--path", "ENENNNENEENNNE", "--start", "1,0", "--format", "json"]);
    assert_eq!(stdout(&o).trim(), FIG3);
    let arr: TwoRowedArray = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(arr.crossings().len(), 3);

    let o = latcross(&["stats", "--path", "ENNE", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["crossings"][0]["kind"], "upward");
}

#[test]
fn biject_traces() {
    let input = scratch("fig3.json", FIG3);
    let o = latcross(&["biject", "--map", "beta", "--r", "2", "--input", input.to_str().unwrap(), "--chain"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.ends_with(
        "beta_2 acts on downward crossing at d_4 = 5\nalpha_1 acts on upward crossing at c_2 = 3\n"
    ));

    let o = latcross(&["biject", "--map", "beta", "--r", "2", "--input", input.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let img: TwoRowedArray = serde_json::from_value(v["image"].clone()).unwrap();
    assert_eq!(img.beta(2).unwrap(), serde_json::from_str::<TwoRowedArray>(FIG3).unwrap());

    let pair = scratch("fig5.json", FIG5_PAIR);
    let o = latcross(&["biject", "--map", "gamma", "--r", "2", "--input", pair.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let img: ArrayPair = serde_json::from_value(v["image"].clone()).unwrap();
    assert_eq!(img.k(), -1);
    assert_eq!(v["trace"][0], "gamma_2 acts on upward crossing at (c_2, f_3) = (6,6)");

    let gz = scratch(
        "zigzag.json",
        r#"{"first":{"bracket":"XU_YV","x":0,"y":0,"u":4,"v":3,"c":[2,4],"d":[1]},"second":{"bracket":"XU_YV","x":0,"y":0,"u":4,"v":3,"c":[2],"d":[1,2]},"k":-1}"#,
    );
    let o = latcross(&["biject", "--map", "gamma0", "--input", gz.to_str().unwrap()]);
    assert!(stdout(&o).contains("d_2 = 3 > 2 = f_2"));
}

#[test]
fn usage_errors_exit_two() {
    let input = scratch("fig3-err.json", FIG3);
    let cases: Vec<Vec<&str>> = vec![
        vec!["gpoly", "--a", "1", "--b", "1", "--ell", "0", "--unknown"],
        vec!["stats", "--path", "NXE"],
        vec!["stats", "--path", "NE", "--format", "latex"],
        vec!["hpoly", "--a1", "0,0", "--a2", "1,0", "--bp", "3,3", "--bq", "4,2"],
        vec!["biject", "--map", "alpha", "--r", "2", "--input", input.to_str().unwrap()],
        vec!["biject", "--map", "gamma", "--input", input.to_str().unwrap()],
        vec!["biject", "--map", "alpha", "--input", "/nonexistent/file.json"],
        vec!["verify", "everything"],
    ];
    for args in cases {
        let o = latcross(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn small_verify_runs_pass() {
    let o = latcross(&["verify", "line", "--max-a", "4", "--max-b", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS line sweep"));
    let o = latcross(&["verify", "pairs", "--window", "3", "--pair-r-cap", "4", "--jsonl"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["equal"], true);
    let o = latcross(&["verify", "bijections", "--array-window", "4", "--pair-window", "3", "--random", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
