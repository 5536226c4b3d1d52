use std::path::PathBuf;
use std::process::Command as Process;

use germlab::report::{ReportFile, Status};
use germlab::{run, text, to_json, Command, Flags};
use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.json"))
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn report_validator() -> jsonschema::Validator {
    let problem = schema("problem.v1.schema.json");
    let id = problem["$id"].as_str().unwrap().to_string();
    jsonschema::options()
        .with_resource(id, jsonschema::Resource::from_contents(problem).unwrap())
        .build(&schema("report.v1.schema.json"))
        .unwrap()
}

fn germlab(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_germlab")).args(args).env_remove("GERMLAB_SEED").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_file(cmd: Command, name: &str, flags: &Flags) -> ReportFile {
    run(cmd, &std::fs::read_to_string(corpus(name)).unwrap(), flags)
}

#[test]
fn exit_codes() {
    let path = |n: &str| corpus(n).display().to_string();
    assert_eq!(germlab(&["analyze", &path("e6_surface"), "--format", "json"]).0, 0);
    assert_eq!(germlab(&["analyze", &path("degenerate_fxx")]).0, 2);
    assert_eq!(germlab(&["analyze", &path("bad_variable")]).0, 1);
    assert_eq!(germlab(&["analyze", "/nonexistent/problem.json"]).0, 1);
    assert_eq!(germlab(&["wh", &path("wh_fractional")]).0, 2);
    assert_eq!(germlab(&["wh", &path("e6_surface")]).0, 1);
    assert_eq!(germlab(&["family", &path("family_without_parameter")]).0, 1);
    assert_eq!(germlab(&["zariski", &path("constant_family")]).0, 1);
}

#[test]
fn e6_surface_report() {
    let (code, out) = germlab(&["analyze", &corpus("e6_surface").display().to_string(), "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["analysis"]["c"], "8");
    assert_eq!(v["analysis"]["d"], "0");
    assert_eq!(v["identity_checks"]["all"], true);
}

#[test]
fn reports_follow_the_schema_and_reparse() {
    let validator = report_validator();
    let flags = Flags::default();
    let cases = [
        (Command::Analyze, "e6_surface"),
        (Command::Analyze, "cusp"),
        (Command::Analyze, "degenerate_fxx"),
        (Command::Analyze, "bad_variable"),
        (Command::Wh, "wh_cone"),
        (Command::Wh, "wh_cusp_signature"),
        (Command::Wh, "wh_fractional"),
        (Command::Family, "smooth_family"),
        (Command::Family, "constant_family"),
        (Command::Family, "family_without_parameter"),
    ];
    for (cmd, name) in cases {
        let report = run_file(cmd, name, &flags);
        let json = to_json(&report);
        let value: Value = serde_json::from_str(&json).unwrap();
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
        let back: ReportFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
    let problem = jsonschema::validator_for(&schema("problem.v1.schema.json")).unwrap();
    for entry in std::fs::read_dir(corpus("x").parent().unwrap()).unwrap() {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        assert!(problem.is_valid(&v));
    }
}

fn without_time(r: &ReportFile) -> String {
    let mut r = r.clone();
    r.wall_time_seconds.clear();
    to_json(&r)
}

#[test]
fn same_seed_gives_identical_json() {
    let flags = Flags { seed: Some(99), ..Flags::default() };
    for name in ["e6_surface", "cone"] {
        let a = run_file(Command::Analyze, name, &flags);
        let b = run_file(Command::Analyze, name, &flags);
        assert_eq!(without_time(&a), without_time(&b));
    }
}

#[test]
fn text_and_json_carry_the_same_numbers() {
    fn numbers(s: &str) -> Vec<String> {
        // row indices of the text form are layout, not content
        let s = (0..100).fold(s.to_string(), |acc, i| acc.replace(&format!("[{i}] "), ""));
        let numeric = |t: &&str| {
            t.split('/')
                .all(|p| p.trim_start_matches('-').chars().all(|c| c.is_ascii_digit() || c == '.') && p.chars().any(|c| c.is_ascii_digit()))
        };
        let mut out: Vec<String> =
            s.split(|c: char| !(c.is_ascii_alphanumeric() || "-/_.".contains(c))).filter(numeric).map(String::from).collect();
        out.sort();
        out
    }
    for (cmd, name) in [(Command::Analyze, "e6_surface"), (Command::Wh, "wh_cone"), (Command::Family, "smooth_family")] {
        let mut r = run_file(cmd, name, &Flags::default());
        r.wall_time_seconds = "0.000".into();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(numbers(&text::render(&r)), numbers(&json), "{name}");
    }
}

#[test]
fn seed_precedence() {
    let env = Flags { env_seed: Some("17".into()), ..Flags::default() };
    assert_eq!(run_file(Command::Analyze, "cone", &env).seed, "17");
    let flag = Flags { seed: Some(5), env_seed: Some("17".into()), ..Flags::default() };
    assert_eq!(run_file(Command::Analyze, "cone", &flag).seed, "5");
    assert_eq!(run_file(Command::Analyze, "cone", &Flags::default()).seed, "20240101");
    let bad = Flags { env_seed: Some("seventeen".into()), ..Flags::default() };
    assert_eq!(run_file(Command::Analyze, "cone", &bad).status, Status::InputError);
}

#[test]
fn family_flags() {
    let flags = Flags { t: Some(vec!["0".into(), "1/2".into(), "-3".into()]), ..Flags::default() };
    let r = run_file(Command::Family, "constant_family", &flags);
    assert_eq!(r.status, Status::Ok);
    let fam = r.family.unwrap();
    assert_eq!(fam.t_samples, ["0", "1/2", "-3"]);
    assert_eq!(fam.verdicts.zariski, Some(true));
    assert!(r.warnings.iter().any(|w| w.contains("add nonzero samples")));
    let no_zero = Flags { t: Some(vec!["1".into(), "2".into()]), ..Flags::default() };
    assert_eq!(run_file(Command::Family, "constant_family", &no_zero).status, Status::InputError);
}

#[test]
fn wh_reports() {
    let r = run_file(Command::Wh, "wh_cusp_signature", &Flags::default());
    assert_eq!(r.weighted.unwrap().invariants.mu_delta, "2");
    let r = run_file(Command::Wh, "wh_cone", &Flags::default());
    assert!(r.weighted.unwrap().cross_validation.unwrap().all_equal);
}
