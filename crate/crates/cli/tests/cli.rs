use std::process::{Command, Output};

fn parakl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parakl")).args(args).output().expect("run parakl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poly_all_methods_match() {
    let o = parakl(&["poly", "--sign", "+", "--method", "all", "++--", "-+-+"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.matches("t^-3 + t^-1").count(), 4);
    assert!(out.ends_with("MATCH\n"));
}

#[test]
fn poly_single_values() {
    assert_eq!(stdout(&parakl(&["poly", "--sign", "-", "−−++", "++--"])), "t^-2\n");
    assert_eq!(stdout(&parakl(&["poly", "--sign", "+", "+-+-", "+-+-"])), "1\n");
    assert_eq!(stdout(&parakl(&["poly", "--sign", "+", "--method", "rule1", "1212", "1122"])), "0\n");
}

#[test]
fn order_violation_is_zero_with_a_note() {
    let o = parakl(&["poly", "--sign", "+", "--method", "all", "--++", "++--"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("MATCH\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not below"));
}

#[test]
fn exit_codes() {
    assert_eq!(parakl(&["poly", "--sign", "+", "+-", "+--+"]).status.code(), Some(2));
    assert_eq!(parakl(&["poly", "--sign", "+", "+x", "-+"]).status.code(), Some(2));
    assert_eq!(parakl(&["table", "13", "6", "--method", "hecke"]).status.code(), Some(2));
    assert_eq!(parakl(&["table", "11", "5", "--method", "rule1"]).status.code(), Some(2));
    assert_eq!(parakl(&["verify", "bridge", "6", "3"]).status.code(), Some(2));
    assert_eq!(parakl(&["verify", "nosuch", "4"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    for args in [["verify", "duality", "8", "3"], ["verify", "inversion", "6", "3"], ["verify", "bridge", "4", "2"]] {
        let o = parakl(&args);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("pass"));
    }
    let o = parakl(&["--json", "verify", "all", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn biject_examples() {
    let link = stdout(&parakl(&["biject", "2112212111", "--to", "link", "--sign", "-"]));
    assert_eq!(link, "{\"pairings\":[[1,2],[4,9],[5,6],[7,8]],\"unpaired\":[3,10]}\n");
    let g = stdout(&parakl(&["biject", "2112212111", "--to", "grassmannian"]));
    assert_eq!(g, "(2,3,6,8,9,10,1,4,5,7)\n");
    assert_eq!(stdout(&parakl(&["biject", "+---", "--to", "string", "--sign", "-"])), "2111\n");
    let back = stdout(&parakl(&["biject", "(2,3,6,8,9,10,1,4,5,7)", "--ones", "6", "--to", "string"]));
    assert_eq!(back, "2112212111\n");
}

#[test]
fn tables() {
    assert_eq!(stdout(&parakl(&["table", "1", "0"])), "\t-\n-\t1\n");
    let latex = stdout(&parakl(&["table", "4", "2", "--sign", "+", "--format", "latex", "--method", "lstree"]));
    assert!(latex.contains("\\vc{\\path{+,+,-,-}}&$1$&$t^{-1}$&$t^{-2}$&$t^{-2}$&$t^{-3}(1+t^2)$&$t^{-4}$\\\\"));
    let tsv = stdout(&parakl(&["table", "4", "2", "--sign", "-", "--method", "rule2"]));
    assert_eq!(tsv.lines().count(), 7);
    assert_eq!(tsv.lines().nth(3).unwrap(), "-++-\t\t\t1\t\tt^-1\t0");
}

#[test]
fn config_file_limits() {
    let dir = std::env::temp_dir().join(format!("parakl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("limits.conf");
    std::fs::write(&file, "# sizes\nlimit.hecke = 3\n").unwrap();
    let f = file.to_str().unwrap();
    assert_eq!(parakl(&["--config", f, "table", "4", "2"]).status.code(), Some(2));
    assert!(parakl(&["--config", f, "table", "3", "1"]).status.success());
    std::fs::write(&file, "hecke 3\n").unwrap();
    assert_eq!(parakl(&["--config", f, "table", "3", "1"]).status.code(), Some(2));
}

#[test]
fn tree_and_configurations() {
    let o = parakl(&["tree", "--labellings", "-++-+--+", "++++----"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("5 labellings"));
    let o = parakl(&["config-render", "-++-+--+", "++++----"]);
    assert_eq!(stdout(&o).matches("configuration ").count(), 5);
    let o = parakl(&["config-render", "--labelling", "1,1,1", "-++-+--+", "++++----"]);
    assert!(stdout(&o).contains("2 strips"));
    let o = parakl(&["--json", "config-render", "--rule", "ii", "-+-+", "++--"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "6", "3", "--sign", "+", "--format", "json"];
    assert_eq!(parakl(&args).stdout, parakl(&args).stdout);
}
