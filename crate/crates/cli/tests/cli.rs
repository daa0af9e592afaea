use std::process::{Command, Output};

fn flagcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagcoh")).args(args).output().expect("run flagcoh")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/table.schema.json");
    let value: serde_json::Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&value).expect("valid schema")
}

#[test]
fn torsion_indices() {
    for (t, want) in [("A2", "1"), ("A3", "1"), ("B2", "1"), ("C3", "1"), ("G2", "2"), ("B3", "2")] {
        let o = flagcoh(&["torsion", "--type", t]);
        assert!(o.status.success(), "{t}");
        assert_eq!(stdout(&o).trim(), want, "{t}");
    }
}

#[test]
fn a2_text_table() {
    let o = flagcoh(&["table", "--type", "A2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("Z_121 = 1 + a2*Z_1"));
    assert!(text.contains("Z_12*Z_21 = Z_1 + Z_2 + a1*pt"));
}

#[test]
fn json_output_validates_and_round_trips() {
    let validator = schema();
    for args in [
        vec!["table", "--type", "A2", "--format", "json"],
        vec!["table", "--type", "B2", "--format", "json", "--theory", "chow"],
        vec!["table", "--type", "A2", "--format", "json", "--raw-basis", "--all-pairs"],
        vec!["table", "--type", "B2", "--format", "json", "--theory", "ktheory:2"],
    ] {
        let o = flagcoh(&args);
        assert!(o.status.success(), "{args:?}");
        let text = stdout(&o);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        let doc = flagcoh_core::flagring::TableDocument::validate(&text).expect("library validator");
        assert_eq!(serde_json::to_value(&doc).unwrap(), value, "{args:?}");
    }
}

#[test]
fn schema_rejects_unknown_fields() {
    let o = flagcoh(&["table", "--type", "A2", "--format", "json"]);
    let mut value: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    value["extra"] = serde_json::json!(1);
    assert!(!schema().is_valid(&value));
    assert!(flagcoh_core::flagring::TableDocument::validate(&value.to_string()).is_err());
}

#[test]
fn output_is_deterministic_across_modes() {
    let a = flagcoh(&["table", "--type", "B2", "--format", "json"]);
    let b = flagcoh(&["table", "--type", "B2", "--format", "json", "--sequential"]);
    let c = flagcoh(&["table", "--type", "B2", "--format", "json", "--seed", "99"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("flagcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.txt");
    let o = flagcoh(&["table", "--type", "A2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let direct = flagcoh(&["table", "--type", "A2"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn torsion_from_cartan_file() {
    let dir = std::env::temp_dir().join(format!("flagcoh-cartan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b2.json");
    std::fs::write(&path, "[[2, -2], [-1, 2]]").unwrap();
    let a = flagcoh(&["torsion", "--cartan", path.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(stdout(&a).trim(), "1");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    let bad_type = flagcoh(&["torsion", "--type", "X9"]);
    assert_eq!(bad_type.status.code(), Some(1));
    let bad_theory = flagcoh(&["table", "--type", "A2", "--theory", "nonsense"]);
    assert_eq!(bad_theory.status.code(), Some(1));
    let low = flagcoh(&["table", "--type", "A2", "--trunc", "3"]);
    assert_eq!(low.status.code(), Some(1));
    let short = flagcoh(&["table", "--type", "G2", "--trunc", "7"]);
    assert_eq!(short.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&short.stderr).contains("--trunc 13"));
    let ln = flagcoh(&["ln", "--type", "A2", "--theory", "chow"]);
    assert_eq!(ln.status.code(), Some(1));
}

#[test]
fn check_reports_one_line_per_property() {
    let o = flagcoh(&["check", "--type", "A2", "--theory", "chow"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().count() > 20);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn bs_and_ln_run() {
    let bs = flagcoh(&["bs", "--type", "A2", "--word", "121"]);
    assert!(bs.status.success());
    assert!(!stdout(&bs).is_empty());
    let ln = flagcoh(&["ln", "--type", "A2", "--bound", "1", "--word", "12"]);
    assert!(ln.status.success());
    assert!(!stdout(&ln).is_empty());
}
