use std::process::{Command, Output};

fn agcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agcode"))
        .args(args)
        .env_remove("AGCODE_FORMAT")
        .output()
        .expect("run agcode")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const H2: &str = "x_q2r(2,1)";

#[test]
fn dim_of_hermitian_q2() {
    let o = agcode(&["dim", H2, "--lambda", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn preset_spellings_agree() {
    let a = agcode(&["points", "x_q2r(2,1)"]);
    let b = agcode(&["points", "x_q2r:2,1"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 9);
}

#[test]
fn unknown_preset_is_usage_error() {
    let o = agcode(&["orbits", "nosuchcurve(2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nosuchcurve"));
}

#[test]
fn lambda_must_be_below_n() {
    for cmd in ["dim", "genmat", "diagram", "gb", "verify"] {
        let o = agcode(&[cmd, H2, "--lambda", "8"]);
        assert_eq!(o.status.code(), Some(2), "{cmd}");
    }
    assert_eq!(agcode(&["dim", H2, "--lambda", "7"]).status.code(), Some(0));
}

#[test]
fn orbit_table() {
    let o = agcode(&["orbits", H2]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).take(4).collect();
    assert!(rows[0].contains("long") && rows[0].contains(" 3 "));
    assert!(rows[3].contains("short"));
    assert!(text.contains("rho = (1, 2, 0)"));
}

#[test]
fn genmat_rows_are_codes() {
    let o = agcode(&["genmat", H2, "--lambda", "4"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.split(' ').count() == 8));
    assert_eq!(text.lines().next().unwrap(), "1 1 1 1 1 1 1 1");
    let csv = stdout(&agcode(&["--format", "csv", "genmat", H2, "--lambda", "4"]));
    assert_eq!(csv.replace(',', " "), text);
}

#[test]
fn diagram_both_has_empty_diff() {
    let o = agcode(&["diagram", H2, "--lambda", "4", "--method", "both"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.ends_with("DIFF\n"), "{text}");
    assert!(text.contains("2 long  . X X"));
}

#[test]
fn gb_check_and_json() {
    let o = agcode(&["gb", "quotient_hermitian(5,3)", "--lambda", "20", "--check"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("check: same module"));
    let o = agcode(&["--format", "json", "gb", H2, "--lambda", "4", "--method", "oracle"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["basis"]["elements"][0], serde_json::json!([[1], [1], [1], [1]]));
    assert_eq!(v["check"], serde_json::Value::Null);
}

#[test]
fn encode_both_agree_and_systematic() {
    let o = agcode(&["--format", "json", "encode", H2, "--lambda", "4", "--message", "3,0,1,2", "--method", "both"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
    let c = v["codeword_gb"].as_array().unwrap();
    let cols = v["info_columns"].as_array().unwrap();
    let msg: Vec<u64> = cols.iter().map(|i| c[i.as_u64().unwrap() as usize].as_u64().unwrap()).collect();
    assert_eq!(msg, vec![3, 0, 1, 2]);
}

#[test]
fn encode_rejects_bad_messages() {
    assert_eq!(agcode(&["encode", H2, "--lambda", "4", "--message", "1,2"]).status.code(), Some(2));
    assert_eq!(agcode(&["encode", H2, "--lambda", "4", "--message", "1,2,3,9"]).status.code(), Some(2));
    assert_eq!(agcode(&["encode", H2, "--lambda", "4", "--message", "1,x,3,0"]).status.code(), Some(2));
}

#[test]
fn format_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_agcode"))
        .args(["dim", H2, "--lambda", "4"])
        .env("AGCODE_FORMAT", "json")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["k"], 4);
}

#[test]
fn bench_sweep_csv() {
    let o = agcode(&["bench", H2, "--lambda-sweep", "--reps", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "lambda,k,n,gb_coeffs,genmat_coeffs,encode_ns_gb,encode_ns_genmat");
    let rows: Vec<Vec<u64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 8);
    for (l, r) in rows.iter().enumerate() {
        assert_eq!(r[0], l as u64);
        assert_eq!(r[4], r[1] * r[2]);
    }
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["verify", "x_q2r(3,1)", "--lambda", "9", "--seed", "7", "--trials", "10"];
    let a = agcode(&args);
    let b = agcode(&args);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    assert!(text.ends_with("verify: all 9 checks passed\n"));
}

#[test]
fn curve_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("agcode-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h2.json");
    std::fs::write(&path, r#"{"preset": "x_q2r", "q": 2, "r": 1}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&agcode(&["points", p])), stdout(&agcode(&["points", H2])));
    let o = agcode(&["curve", "validate", p]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("valid"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_curve_file_fails_validation() {
    let dir = std::env::temp_dir().join(format!("agcode-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    // alpha = 0 gives no automorphism
    std::fs::write(&path, r#"{"p": 2, "m": 2, "f": [0, 0, 1], "g": [0, 0, 0, 1], "alpha": 0, "t_exp": 1}"#).unwrap();
    let o = agcode(&["curve", "validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("alpha-zero"));
    std::fs::remove_dir_all(&dir).unwrap();
}
