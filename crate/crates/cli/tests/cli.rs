use std::process::{Command, Output};

fn bookx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bookx")).args(args).env("BOOKX_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zk_prints_value() {
    let o = bookx(&["zk", "--n", "14", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "53\n");
}

#[test]
fn two_page_row_in_table_one() {
    let o = bookx(&["tables", "--which", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let row: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .filter(|l| l.starts_with("2,"))
        .map(|l| l.split(',').nth(2).unwrap().to_string())
        .collect();
    assert_eq!(row.join(" "), "1 3 9 18 36 60 100 150 225 315 441 588 784 1008 1296 1620 2025 2475");
}

#[test]
fn unknown_flag_is_usage_error() {
    let o = bookx(&["zk", "--n", "5", "--k", "2", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(bookx(&["--help"]).status.code(), Some(0));
}

#[test]
fn invalid_input_exits_one() {
    assert_eq!(bookx(&["zk", "--n", "2", "--k", "2"]).status.code(), Some(1));
    assert_eq!(bookx(&["emax", "--ell", "5", "--n", "9", "--method", "closed"]).status.code(), Some(1));
    assert_eq!(bookx(&["coeff", "--k", "14", "--scan", "9"]).status.code(), Some(1));
    assert_eq!(bookx(&["construct", "--n", "13", "--k", "5", "--order", "4,4,4,2"]).status.code(), Some(1));
}

#[test]
fn bounds_only_exit_two() {
    let o = bookx(&["emax", "--ell", "4", "--n", "22", "--method", "compose"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "49\n");
    assert_eq!(bookx(&["emax", "--ell", "2", "--n", "9", "--method", "upper"]).status.code(), Some(2));
    assert_eq!(bookx(&["emax", "--ell", "4", "--n", "11", "--max-nodes", "10"]).status.code(), Some(2));
}

#[test]
fn exact_search_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("s7.json");
    let o = bookx(&["emax", "--ell", "4", "--n", "7", "--certificate", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "11\n");
    let g: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(g["edges"].as_array().unwrap().len(), 11);
    let manifest = dir.path().join("s7.json.manifest.json");
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(manifest).unwrap()).unwrap();
    assert_eq!(m["subcommand"], "emax");
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let o = bookx(&["construct", "--n", "13", "--k", "5", "--order", "2,3,2,3,3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = bookx(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "crossings 15\nzk 15\nrelation equal\n");
}

#[test]
fn estar_and_coeff() {
    assert_eq!(stdout(&bookx(&["estar", "--n", "8"])), "10\n");
    let o = bookx(&["coeff", "--k", "14", "--emit", "csv"]);
    assert_eq!(stdout(&o), "k,coefficient,nprime,m\n14,4406/1282975,76,5\n");
}

#[test]
fn optimize_is_byte_stable() {
    let args = ["optimize", "--n", "10", "--k", "3", "--restarts", "2", "--seed", "7", "--budget", "100000"];
    let a = bookx(&args);
    let b = bookx(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["count"], 20);
}

#[test]
fn optimize_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    bookx(&["construct", "--n", "9", "--k", "3", "--out", path.to_str().unwrap()]);
    let o = bookx(&["optimize", "--n", "9", "--k", "3", "--from", path.to_str().unwrap(), "--emit", "csv"]);
    assert_eq!(stdout(&o), "n,k,count,zk,lower_bound\n9,3,9,9,9\n");
    let wrong = bookx(&["optimize", "--n", "10", "--k", "3", "--from", path.to_str().unwrap()]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn table_file_gets_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t2.csv");
    let o = bookx(&["tables", "--which", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("k,new_lower,upper,ratio,"));
    assert!(dir.path().join("t2.csv.manifest.json").exists());
}

#[test]
fn repro_subset() {
    let o = bookx(&["repro", "--only", "6,7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.contains("PASS")));
    assert_eq!(bookx(&["repro"]).status.code(), Some(1));
}
