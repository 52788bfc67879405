//! The CLI formats library results; each test diffs against a direct call.

use rvt_core::cli::run;
use rvt_core::{count_words, parse_word, pfaffian_system, rc_code};

fn rvt(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rvt").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn planes_json_is_exact() {
    let (code, out, _) = rvt(&["planes", "RVLL2", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim_end(),
        r#"{"word":["R","V","L1","L2"],"planes":{"vertical":"d0_4","t1":["d2_2"],"t2":["d3_1"]},"lines":["L1","L2","L3"]}"#
    );
}

#[test]
fn planes_json_is_byte_stable() {
    let a = rvt(&["planes", "RVT1L1T2L3", "--trace", "--format", "json"]);
    let b = rvt(&["planes", "RVT1L1T2L3", "--trace", "--format", "json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert!(v["sources"]["t2"].is_array());
    assert!(v["dead"].is_array());
}

#[test]
fn planes_text() {
    let (code, out, _) = rvt(&["planes", "RVLT2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "word RVL1T2\nvertical d0_4\nT1 -\nT2 d3_1\nlines L3\n");
}

#[test]
fn invalid_word_reports_position() {
    let (code, out, err) = rvt(&["validate", "RRT1", "--format", "json"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"], "misspelled");
    assert_eq!(v["position"], 3);

    let (code, _, err) = rvt(&["validate", "RVX"]);
    assert_eq!(code, 1);
    assert!(err.contains("position 3"));
}

#[test]
fn validate_ok() {
    let (code, out, _) = rvt(&["validate", "RVL1T2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "valid RVL1T2\nplanes {V,T2}\n");
}

#[test]
fn count_and_enum() {
    let (code, out, _) = rvt(&["count", "--level", "4"]);
    assert_eq!((code, out.as_str()), (0, "23\n"));
    let (_, out, _) = rvt(&["count", "--level", "8", "--format", "json"]);
    assert_eq!(
        out.trim_end(),
        format!(r#"{{"level":8,"count":"{}"}}"#, count_words(8))
    );
    let (_, out, _) = rvt(&["enum", "--level", "3"]);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().any(|l| l == "RVL1"));
}

#[test]
fn letters_after_t2() {
    let (_, out, _) = rvt(&["letters", "RVLT2"]);
    assert_eq!(out, "{R,V,T2,L3}\n");
}

#[test]
fn pfaffian_and_rc_match_library() {
    let word = parse_word("RVLT2").unwrap();
    let (_, out, _) = rvt(&["pfaffian", "RVLT2"]);
    assert_eq!(out, pfaffian_system(&word).unwrap().to_string());
    let (_, out, _) = rvt(&["pfaffian", "RVLT2", "--format", "json"]);
    assert_eq!(
        out.trim_end(),
        serde_json::to_string(&pfaffian_system(&word).unwrap()).unwrap()
    );
    let (_, out, _) = rvt(&["rc", "RVLT2"]);
    assert_eq!(out.trim_end(), rc_code(&word).unwrap().to_string());
}

#[test]
fn automaton_views() {
    let (code, out, _) = rvt(&["automaton", "--derived"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("derived automaton: 5 states, 18 edges"));
    let (_, reference, _) = rvt(&["automaton", "--reference", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&reference).unwrap();
    assert_eq!(v["states"].as_array().unwrap().len(), 5);
    let (code, _, _) = rvt(&["automaton", "--derived", "--reference"]);
    assert_eq!(code, 64);
}

#[test]
fn dot_output() {
    let (code, out, _) = rvt(&["dot", "RVLT2"]);
    assert_eq!(code, 0);
    let config = rvt_core::configuration(&parse_word("RVLT2").unwrap()).unwrap();
    assert_eq!(out, rvt_core::dot::configuration_dot(&config));
    let (same_code, same, _) = rvt(&["planes", "RVLT2", "--format", "dot"]);
    assert_eq!((same_code, same), (0, out));
}

#[test]
fn table2_command() {
    let (code, out, _) = rvt(&["table2", "--max-m", "0", "--max-s", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("Rw'L2T1"));
    assert!(out.contains("note Rw'L2T1 T1 d^3_{k-3}(p_{k+3})"));
}

#[test]
fn usage_errors() {
    assert_eq!(rvt(&[]).0, 64);
    assert_eq!(rvt(&["frobnicate"]).0, 64);
    assert_eq!(rvt(&["count"]).0, 64);
    assert_eq!(rvt(&["table2", "--max-s", "1"]).0, 64);
    assert_eq!(rvt(&["count", "--level", "3", "--format", "dot"]).0, 64);
    let (code, out, _) = rvt(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("planes"));
    assert_eq!(rvt(&["--version"]).0, 0);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("rvt-cli-test-{}.json", std::process::id()));
    let (code, out, _) = rvt(&[
        "planes",
        "RVL",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.starts_with(r#"{"word":["R","V","L1"]"#));
}
