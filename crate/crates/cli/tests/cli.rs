use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reprzeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("reprzeta-cli-{}-{name}", std::process::id()))
}

#[test]
fn compute_presets() {
    let o = run(&["compute", "--preset", "L_{3,2}"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "s/(s - 1)");
    assert_eq!(lines[1], "omega 1");
    assert_eq!(lines[2], "weight 0");
    assert!(lines[3].starts_with("time "));

    let o = run(&["compute", "--preset", "abelian:5"]);
    assert_eq!(stdout(&o).lines().next(), Some("1"));

    let o = run(&["compute", "--preset", "L_{4,3}", "--eps"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("2*(4*s^2 - 6*s + 1)*s/(2*s - 3)^3"));
}

#[test]
fn compute_from_file_and_formats() {
    let path = temp("heis.json");
    std::fs::write(&path, r#"{"name": "H", "dim": 3, "brackets": {"[1,2]": {"3": "1"}}}"#).unwrap();
    let o = run(&["compute", "--input", path.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["zeta"], serde_json::json!({"num": [0, 1], "den": [-1, 1]}));
    assert_eq!(v["omega"], "1");
    assert_eq!(v["weight"], 0);
    let o = run(&["compute", "--input", path.to_str().unwrap(), "--format", "latex"]);
    assert!(stdout(&o).contains("\\frac"));
    std::fs::remove_file(path).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["compute", "--preset", "L_{9,9}"]).status.code(), Some(1));
    assert_eq!(run(&["compute", "--input", "/nonexistent/file.json"]).status.code(), Some(1));
    let path = temp("jacobi.json");
    std::fs::write(&path, r#"{"dim": 4, "brackets": {"[1,2]": {"3": "1"}, "[1,3]": {"4": "1"}, "[2,3]": {"4": "1"}, "[1,4]": {"2": "1"}}}"#).unwrap();
    assert_eq!(run(&["compute", "--input", path.to_str().unwrap()]).status.code(), Some(1));
    std::fs::remove_file(path).ok();
    let o = run(&["compute", "--preset", "L_{5,7}", "--eps", "--depth", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("reduction"));
    assert_eq!(run(&["compute"]).status.code(), Some(1));
}

#[test]
fn corpus_subcommand() {
    let o = run(&["corpus", "--filter", "L_{4,"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("L_{4,3}") && out.contains("ok"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact matches"));

    let o = run(&["corpus", "--dim", "5", "--group", "table1", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v.as_array().unwrap().iter().all(|e| e["name"].as_str().unwrap().starts_with("L_{5,")));

    let path = temp("corpus.json");
    std::fs::write(&path, r#"[{"name": "bad", "algebra": "L_{4,3}", "expected_zeta": "s/(s-1)", "source": "x"}]"#).unwrap();
    let o = run(&["corpus", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
    std::fs::remove_file(path).ok();
}

#[test]
fn check_subcommand() {
    let o = run(&["check", "--preset", "L_{6,22}(0)"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("2*s/(2*s - 3)\n"), "{out}");
    assert!(out.contains("degree_zero") && out.contains("pass"));
    assert!(out.contains("poles_rational_bounded   pass  3/2 <= 2"), "{out}");
    assert!(out.contains("omega_positive           holds  3/2"), "{out}");
}

#[test]
fn trace_file() {
    let path = temp("trace.jsonl");
    let o = run(&["compute", "--preset", "L_{5,7}", "--eps", "--trace", path.to_str().unwrap(), "--oracle", "crosscheck"]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let events: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(events[0]["event"], "start");
    assert_eq!(events[0]["name"], "L_{5,7}[ε]");
    for kind in ["evaluated", "reduced", "simplified", "stratum"] {
        assert!(events.iter().any(|e| e["event"] == kind), "no {kind} event");
    }
    std::fs::remove_file(path).ok();
}
