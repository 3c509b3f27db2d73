use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descent-algebra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn strip_millis(s: &str) -> String {
    s.lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["millis"] = 0.into();
            v.to_string() + "\n"
        })
        .collect()
}

fn weights_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("descent-algebra-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn spectrum_examples() {
    let out = stdout(&["spectrum", "--n", "4", "--alpha", "2,2"]);
    assert!(out.contains("knapsack: {0 (9), 2 (42), 6 (24)}"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "spectrum", "--n", "5", "--alpha", "1,4", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(
        v["signed"]["values"],
        serde_json::json!(["-3", "-1", "0", "1", "2", "5"])
    );
    let out = stdout(&["spectrum", "--n", "4", "--alpha", "4", "--format", "csv"]);
    assert_eq!(out.lines().nth(1), Some("knapsack,1,75"));
    assert_eq!(
        stdout(&["spectrum", "--n", "5", "--alpha", "1,4", "--format", "json"]),
        golden("spectrum_n5_alpha14.json")
    );
}

#[test]
fn minpoly_examples() {
    assert_eq!(
        stdout(&["minpoly", "--n", "4", "--element", "T1"]),
        "x(x - 1)(x - 2)(x - 4)\n"
    );
    assert_eq!(
        stdout(&["minpoly", "--n", "2", "--element", "w0T1"]),
        "x(x - 2)\n"
    );
    assert_eq!(
        stdout(&[
            "minpoly",
            "--n",
            "4",
            "--element",
            "w0Balpha",
            "--alpha",
            "1,3"
        ]),
        "(x + 2)x(x - 1)(x - 4)\n"
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "minpoly",
        "--n",
        "4",
        "--element",
        "w0T1",
        "--field",
        "Fp",
        "--p",
        "3",
        "--format",
        "json",
    ]))
    .unwrap();
    // x(x - 1)^2 = x^3 - 2x^2 + x over F3
    assert_eq!(v["coefficients"], serde_json::json!(["0", "1", "1", "1"]));
    assert_eq!(v["factored"], serde_json::Value::Null);
    let csv = stdout(&[
        "minpoly",
        "--n",
        "2",
        "--element",
        "T1w0",
        "--format",
        "csv",
    ]);
    assert_eq!(csv, "degree,coefficient\n0,0\n1,-2\n2,1\n");
}

#[test]
fn weighted_inputs() {
    let g = weights_file("g.json", r#"{"1,2": "1", "2,1": "2", "1,1,1": "1/3"}"#);
    let g = g.to_str().unwrap();
    let out = stdout(&["spectrum", "--n", "3", "--gamma", g]);
    assert!(out.contains("signed:   {-3 (6), 0 (1), 11 (6)}"), "{out}");
    assert_eq!(
        stdout(&["minpoly", "--n", "3", "--element", "w0Bgamma", "--gamma", g]),
        "(x + 3)x(x - 11)\n"
    );
    assert_eq!(
        code(&["verify", "--n", "3", "--claim", "weighted", "--gamma", g]),
        0
    );
    let bad = weights_file("bad.json", r#"{"1,2": "-1"}"#);
    assert_eq!(
        code(&["spectrum", "--n", "3", "--gamma", bad.to_str().unwrap()]),
        2
    );
    let unknown = weights_file("unknown.json", r#"{"1,3": "1"}"#);
    assert_eq!(
        code(&["spectrum", "--n", "3", "--gamma", unknown.to_str().unwrap()]),
        2
    );
}

#[test]
fn verify_reports() {
    let out = stdout(&["verify", "--n", "4", "--claim", "ttr", "--format", "json"]);
    assert_eq!(out.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["result"]["factored"], "(x + 2)x(x - 1)(x - 4)");
    assert_eq!(code(&["verify", "--n", "4", "--all"]), 0);
    let all = stdout(&["verify", "--n", "3", "--all", "--format", "json"]);
    assert_eq!(strip_millis(&all), golden("verify_n3_all.jsonl"));
    let csv = stdout(&["verify", "--n", "3", "--claim", "altsum", "--format", "csv"]);
    assert_eq!(
        csv.lines().next(),
        Some("claim,params,result,millis,witness")
    );
}

#[test]
fn faces_listing() {
    assert_eq!(stdout(&["faces", "--n", "3"]), golden("faces_n3.txt"));
    assert_eq!(stdout(&["faces", "--n", "3"]).lines().count(), 14);
    let csv = stdout(&["faces", "--n", "4", "--alpha", "2,2", "--format", "csv"]);
    assert!(csv.contains("\"(3,2,1,4)\",\"1,1,1,1\",4,6,6\n"));
    assert!(csv.contains("\"(4,23,1)\",\"1,2,1\",3,2,-2\n"));
    assert!(csv.contains("\"(123,4)\",\"3,1\",2,0,0\n"));
    assert_eq!(csv, golden("faces_n4_alpha22.csv"));
    assert_eq!(
        stdout(&["faces", "--n", "0", "--format", "json"]),
        "{\"face\":\"()\",\"length\":0,\"type\":\"\"}\n"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "--n", "1", "--claim", "ttr"]), 2);
    assert_eq!(code(&["verify", "--n", "7", "--claim", "ttr"]), 3);
    assert_eq!(code(&["verify", "--n", "4"]), 2);
    assert_eq!(code(&["verify", "--n", "4", "--claim", "ttr", "--all"]), 2);
    assert_eq!(code(&["minpoly", "--n", "4", "--element", "w0Balpha"]), 2);
    assert_eq!(code(&["minpoly", "--n", "4", "--element", "Bgamma"]), 2);
    assert_eq!(
        code(&["minpoly", "--n", "4", "--element", "T1", "--field", "Fp"]),
        2
    );
    assert_eq!(
        code(&[
            "minpoly",
            "--n",
            "4",
            "--element",
            "T1",
            "--field",
            "Fp",
            "--p",
            "4"
        ]),
        2
    );
    assert_eq!(code(&["minpoly", "--n", "8", "--element", "T1"]), 3);
    assert_eq!(code(&["spectrum", "--n", "4", "--alpha", "2,1"]), 2);
    assert_eq!(code(&["spectrum", "--n", "4", "--alpha", "2,x"]), 2);
    assert_eq!(code(&["spectrum", "--n", "9", "--alpha", "9"]), 3);
    assert_eq!(code(&["spectrum", "--n", "4"]), 2);
    assert_eq!(code(&["faces", "--n", "9"]), 3);
    assert_eq!(code(&["verify", "--n", "9", "--all"]), 3);
    assert_eq!(
        code(&[
            "minpoly",
            "--n",
            "7",
            "--element",
            "T1",
            "--max-n-override",
            "7"
        ]),
        0
    );
}
