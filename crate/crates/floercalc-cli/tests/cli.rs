//! End-to-end tests against the compiled binary: output shapes, JSON mode,
//! the exit-code contract, and the frozen numbers of the headline commands.

use std::process::{Command, Output};

fn floercalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floercalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout parses as JSON")
}

#[test]
fn tangle_expand_prints_word_and_connectivity() {
    let out = floercalc(&["tangle", "expand", "21/16"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("h^1 v^3 h^5 Th"), "{text}");
    assert!(text.contains("[1, 3, 5]"), "{text}");
    assert!(text.contains("NW-SW NE-SE"), "{text}");

    let out = floercalc(&["--json", "tangle", "expand", "-1/2"]);
    let v = json(&out);
    assert_eq!(v["fraction"], "-1/2");
    assert_eq!(v["exponents"], serde_json::json!([-1, 2]));
}

#[test]
fn tangle_proper_follows_the_denominator() {
    for (f, want) in [("1/2", "true"), ("1/3", "false"), ("3", "false"), ("inf", "true")] {
        let out = floercalc(&["tangle", "proper", f]);
        assert!(out.status.success());
        assert!(
            stdout(&out).contains(&format!("proper = {want}")),
            "{f}: {}",
            stdout(&out)
        );
    }
}

#[test]
fn pattern_commands_enforce_the_numerator_parity() {
    let out = floercalc(&["--json", "pattern", "whitehead", "--clasps", "1", "--twists", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["coefficient"]["num"], 1);
    assert_eq!(v["coefficient"]["den"], 2);
    assert_eq!(v["linking"], 1);

    // 4/2 reduces to 2, whose branched cover is not a Z/2 homology sphere.
    let out = floercalc(&["pattern", "declare", "--pq", "4/2", "--ell", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("even numerator"), "{}", stderr(&out));
}

#[test]
fn knot_eval_reports_invariants() {
    let out = floercalc(&["--json", "knot", "eval", "cable(2,7;T(2,3))"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["canonical"], "cable(2,7; T(2,3))");
    assert_eq!(v["tau"], 5);
    assert_eq!(v["genus"], 5);

    let out = floercalc(&["knot", "eval", "T(2,4)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("coprime"), "{}", stderr(&out));
}

#[test]
fn surgery_class_and_witness_agree_on_the_index() {
    let out = floercalc(&["--json", "surgery", "class", "--knot", "2*T(2,3)", "--pq", "1/2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["parity"], "Even");
    assert_eq!(v["s"], 0);
    assert_eq!(v["v_s"], 2);
    assert_eq!(v["d_invariant"], "-4");

    let out = floercalc(&["--json", "surgery", "witness", "--knot", "2*T(2,3)", "--pq", "1/2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["index"], 2);
    assert_eq!(v["witness"]["verified"], true);
}

#[test]
fn surgery_d_matches_the_formula() {
    let out = floercalc(&["surgery", "d", "--M", "3", "--knot", "T(2,3)"]);
    assert!(out.status.success());
    assert!(stdout(&out).trim().ends_with("= -3/2"), "{}", stdout(&out));

    let out = floercalc(&["surgery", "d", "--M", "-3", "--knot", "T(2,3)"]);
    assert!(out.status.success());
    assert!(stdout(&out).trim().ends_with("= -1/2"), "{}", stdout(&out));
}

#[test]
fn cobordism_commands_reproduce_the_fixtures() {
    let out = floercalc(&["--json", "cobordism", "check", "--M", "1", "--N1", "3", "--N2", "-1", "--ell", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["trace_term"], 8);
    assert_eq!(v["det_term"], 3);
    assert_eq!(v["negative_definite"], true);
    assert_eq!(v["twisting_exponent"], -2);

    let out = floercalc(&["--json", "cobordism", "find", "--M", "1", "--ell", "1"]);
    let v = json(&out);
    assert_eq!(v["N1"], 3);
    assert_eq!(v["N2"], -1);

    let out = floercalc(&["--json", "cobordism", "bound", "--knot", "3*T(2,3)", "--ell", "1"]);
    let v = json(&out);
    assert_eq!(v["gap"], 2);
    assert_eq!(v["n1"], 3);
    assert_eq!(v["chern_shift"], -2);
}

#[test]
fn reproduce_all_passes_and_reports_each_target() {
    let out = floercalc(&["reproduce", "all"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    for target in [
        "doubled-torus-v0",
        "sum-vs-cable-grid",
        "rank-certificate",
        "independence-report",
        "even-reduction-thresholds",
        "definite-form-grid",
        "tangle-parity-law",
    ] {
        assert!(text.contains(&format!("== {target} ==")), "missing {target}");
    }
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn reproduce_writes_a_json_report() {
    let path = std::env::temp_dir().join("floercalc-repro-report.json");
    let _ = std::fs::remove_file(&path);
    let out = floercalc(&[
        "--out",
        path.to_str().unwrap(),
        "reproduce",
        "rank-certificate",
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).expect("report file exists");
    let v: serde_json::Value = serde_json::from_str(&body).expect("report parses");
    assert_eq!(v[0]["target"], "rank-certificate");
    assert_eq!(v[0]["passed"], true);
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_with_two() {
    let out = floercalc(&["reproduce", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown target"), "{}", stderr(&out));

    let out = floercalc(&["knot", "eval", "T(0,1)"]);
    assert_eq!(out.status.code(), Some(2));

    let out = floercalc(&["tangle", "expand", "x/y"]);
    assert_eq!(out.status.code(), Some(2));
}
