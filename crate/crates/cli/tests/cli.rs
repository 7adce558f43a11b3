use std::process::{Command, Output};

fn zamp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zamp"))
        .args(args)
        .env_remove("ZAMP_ORDER")
        .env_remove("ZAMP_TEXT")
        .env_remove("ZAMP_CONFIG")
        .output()
        .expect("zamp runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn coeff_c_top_entry_is_two() {
    let o = zamp(&["--text", "coeff", "C", "--p", "0", "--q", "5", "--r", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
    let j: serde_json::Value = serde_json::from_str(stdout(&zamp(&["coeff", "C", "--p", "0", "--q", "5", "--r", "4"])).trim()).unwrap();
    assert_eq!(j["value"], "2");
    assert_eq!(j["schema"], 1);
}

#[test]
fn laurent_d3_generating() {
    let o = zamp(&["--text", "laurent", "d", "--l", "3", "--route", "generating"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(1/3780)*Y^3 + (ζ3)*Y^0 + (3*ζ5)*Y^-2");
}

#[test]
fn verify_sv_b_passes() {
    let o = zamp(&["verify", "svB", "--max-l", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l["pass"] == true));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["verify", "thm3", "--max-weight", "15"];
    assert_eq!(zamp(&args).stdout, zamp(&args).stdout);
    let args = ["expand", "wcl", "--order", "6"];
    assert_eq!(zamp(&args).stdout, zamp(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(zamp(&["bogus"]).status.code(), Some(2));
    assert_eq!(zamp(&["coeff", "C", "--p", "0", "--q", "1", "--r", "3"]).status.code(), Some(2));
    assert_eq!(zamp(&["coeff", "C", "--p", "0"]).status.code(), Some(2));
    assert_eq!(zamp(&["oracle", "d", "--tau", "1"]).status.code(), Some(2));
    assert_eq!(zamp(&["oracle", "green", "--re", "0", "--im", "0"]).status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    // One digit of working precision cannot certify the 1e-20 tolerance.
    let o = zamp(&["verify", "thm1", "--precision", "1", "--max-weight", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"pass\":false"));
}

#[test]
fn config_file_then_flags_then_env() {
    let dir = std::env::temp_dir().join(format!("zamp-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "order = 4\n").unwrap();
    let p = path.to_str().unwrap();
    let from_file = stdout(&zamp(&["--config", p, "expand", "vop"]));
    assert!(from_file.contains("\"order\":4"));
    let from_flag = stdout(&zamp(&["--config", p, "--order", "5", "expand", "vop"]));
    assert!(from_flag.contains("\"order\":5"));
    let o = Command::new(env!("CARGO_BIN_EXE_zamp"))
        .args(["expand", "vop"])
        .env("ZAMP_ORDER", "3")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("\"order\":3"));
    std::fs::write(&path, "order = four\n").unwrap();
    assert_eq!(zamp(&["--config", p, "expand", "vop"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn all_passes_with_defaults() {
    let o = zamp(&["all"]);
    let out = stdout(&o);
    let summaries: Vec<&str> = out.lines().filter(|l| l.contains("\"check\":\"criterion_")).collect();
    assert_eq!(summaries.len(), 12);
    assert!(summaries.iter().all(|l| l.contains("\"pass\":true")), "{summaries:#?}");
    assert_eq!(o.status.code(), Some(0));
}
