use std::path::Path;
use std::process::{Command, Output};

fn polyalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyalg"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn scratch(name: &str, src: &str) -> String {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, src).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_accepts_corpus() {
    for entry in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")).unwrap() {
        let path = entry.unwrap().path();
        let o = polyalg(&["check", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
}

#[test]
fn syntax_error_reports_position_and_expected_tokens() {
    let file = scratch("caret.pa", "algebra bad { phi = P0^^2; }\n");
    let o = polyalg(&["check", &file]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains(":1:24:"), "{err}");
    assert!(err.contains("expected") && err.contains("`^`"), "{err}");
}

#[test]
fn unknown_and_duplicate_names_exit_2() {
    let file = scratch("unknown.pa", "show nope;\n");
    let o = polyalg(&["eval", &file]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown identifier `nope`"));

    let file = scratch("dup.pa", "algebra x { phi = 1; }\nalgebra x { phi = 2; }\n");
    let o = polyalg(&["check", &file]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("already defined at 1:9"), "{}", stderr(&o));
}

#[test]
fn eval_text_reports_g() {
    let file = scratch("g.pa", "algebra su2 { phi = 2*P0; }\ng su2;\n");
    let o = polyalg(&["eval", &file]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P0^2 + P0"), "{}", stdout(&o));
}

#[test]
fn eval_latex_emits_higgs_type_fusion() {
    let file = scratch("latex.pa", "fuse(J, su2, su11);\n");
    let o = polyalg(&["eval", "--format", "latex", &file]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(r"4 \mu^{2} P_0^{3}"), "{out}");
    assert!(out.contains(r"\Lambda^{2}"), "{out}");
}

#[test]
fn eval_json_is_parseable() {
    let o = polyalg(&["eval", "--format", "json", "corpus/su2_boson.pa"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn failed_expectation_exits_1() {
    let file = scratch("expect.pa", "expect su2 = 2*P0 + 1;\n");
    let o = polyalg(&["eval", &file]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_fused_with_params() {
    let file = scratch("verify.pa", "verify fuse(J, su2, boson) with (j = 1, cutoff = 10, mu = 1);\n");
    let o = polyalg(&["verify", &file]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = polyalg(&["verify", &file, "--params", "j=5/2,mu=0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("j=2.5"), "{}", stdout(&o));
}

#[test]
fn verify_tolerance_override_can_fail() {
    let file = scratch("strict.pa", "verify boson with (cutoff = 12, tol = 0);\n");
    let o = polyalg(&["verify", &file]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn verify_usage_errors_exit_2() {
    let file = scratch("noverify.pa", "show su2;\n");
    assert_eq!(polyalg(&["verify", &file]).status.code(), Some(2));
    let file = scratch("params.pa", "verify su2 with (j = 1);\n");
    assert_eq!(polyalg(&["verify", &file, "--params", "j=1/0"]).status.code(), Some(2));
    assert_eq!(polyalg(&["verify", &file, "--params", "spin=1"]).status.code(), Some(2));
    assert_eq!(polyalg(&["eval", "does/not/exist.pa"]).status.code(), Some(2));
    assert_eq!(polyalg(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn specializing_then_verifying_is_a_runtime_error() {
    let file = scratch("spec.pa", "verify specialize(fuse(J, su2, boson), mu2 = 1);\n");
    let o = polyalg(&["verify", &file]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":1:1:"), "{}", stderr(&o));
}

#[test]
fn selftest_exit_status_matches_its_report() {
    let o = polyalg(&["selftest"]);
    let out = stdout(&o);
    for n in 1..=8 {
        assert!(out.contains(&format!("criterion {n}:")), "{out}");
    }
    assert_eq!(out.matches("round-trip ").count(), polyalg_cli::corpus::CORPUS.len());
    let ok = out.trim_end().ends_with("selftest: ok");
    assert_eq!(o.status.code(), Some(if ok { 0 } else { 1 }), "{out}");
}
