use std::process::{Command, Output};

fn mindeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mindeg")).args(args).env_remove("MINDEG_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn mu_prints_the_degree() {
    let o = mindeg(&["mu", "--spec", "G(7,7,3)"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("mu(G(7,7,3)) = 14"), "{}", stdout(&o));
}

#[test]
fn sandwich_from_the_command_line() {
    let o = mindeg(&["mu", "--spec", "G(3,3,5)", "--method", "sandwich", "--subgroup", "H(3,5)", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mu"], 15);
    assert_eq!(v["method"], "sandwich");
    assert_eq!(v["lower_bound_evidence"]["certificate"]["group"], "H(3,5)");

    let o = mindeg(&["mu", "--spec", "G(5,5,3)", "--method", "sandwich", "--subgroup", "A(5,5,3)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("10 <= mu(G(5,5,3)) <= 15"));
}

#[test]
fn parse_errors_point_at_the_token() {
    let o = mindeg(&["construct", "--spec", "G(5,5"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("column 6") && err.contains("     ^"), "{err}");

    let o = mindeg(&["construct", "--spec", "A(4,3,2)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_reports_the_order() {
    let o = mindeg(&["construct", "--spec", "H(2,7)"]);
    assert!(stdout(&o).starts_with("H(2,7): order 448, degree 14"), "{}", stdout(&o));
}

#[test]
fn factor_cyclotomic_and_seed_from_environment() {
    let a = mindeg(&["factor-cyclotomic", "7", "2", "--json"]);
    let b = Command::new(env!("CARGO_BIN_EXE_mindeg"))
        .args(["factor-cyclotomic", "7", "2", "--json"])
        .env("MINDEG_SEED", "99")
        .output()
        .unwrap();
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(vb["seed"], 99);
    assert_eq!(va["factors"], vb["factors"]);
    assert_eq!(va["factors"], serde_json::json!([[1, 0, 1, 1], [1, 1, 0, 1]]));
}

#[test]
fn write_then_verify() {
    let dir = std::env::temp_dir().join(format!("mindeg-bin-{}", std::process::id()));
    let o = mindeg(&["mu", "--spec", "X(D(4),C(3))", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success());
    let path = dir.join("X(D(4),C(3)).json");
    let o = mindeg(&["verify", path.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("ok: mu(X(D(4),C(3))) = 7"), "{}", stdout(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}
