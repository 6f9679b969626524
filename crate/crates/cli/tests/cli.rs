use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn observa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_observa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn observa_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_observa"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = observa(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn analyze_regex_matches_golden() {
    let text = ok(&["analyze", "-e", "(a|b)a*", "-a", "a,b"]);
    assert_eq!(text, golden("analyze_m1.txt"));
    assert!(text.contains("so_index: 1\n"));
}

#[test]
fn analyze_file_agrees_with_regex() {
    let from_file = ok(&["analyze", &path("m1.dfa")]);
    assert_eq!(from_file, golden("analyze_m1_file.txt"));
    let summary = |t: &str| -> Vec<String> {
        t.lines()
            .filter(|l| !l.starts_with("state "))
            .map(String::from)
            .collect()
    };
    assert_eq!(summary(&from_file), summary(&golden("analyze_m1.txt")));
}

#[test]
fn union_piped_into_analyze() {
    let union = ok(&["op", "union", &path("m1.dfa"), &path("m2.dfa")]);
    assert_eq!(union, golden("union.dfa"));
    let out = observa_stdin(&["analyze", "-"], &union);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("so_index: 2\n"));
}

#[test]
fn plus_of_m1_equals_sigma_plus() {
    let plus = ok(&["op", "plus", &path("m1.dfa")]);
    let out = observa_stdin(&["eq", "-", &path("sigma-plus.dfa")], &plus);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "equivalent: true\n");
    assert_eq!(
        ok(&["eq", &path("m1.dfa"), &path("m2.dfa")]),
        "equivalent: false\n"
    );
}

#[test]
fn raw_plus_keeps_subset_names() {
    let text = ok(&["op", "plus", &path("m1.dfa"), "--no-min"]);
    assert_eq!(text, golden("plus_raw.dfa"));
}

#[test]
fn hom_and_invhom() {
    let image = ok(&["op", "hom", &path("m1.dfa"), "-m", &path("ab.hom")]);
    let words = observa_stdin(&["enum", "-", "-n", "4"], &image);
    assert_eq!(stdout(&words), "b\nab\nbab\nabab\n");
    let back = ok(&["op", "invhom", &path("m1.dfa"), "-m", &path("ab.hom")]);
    let words = observa_stdin(&["enum", "-", "-n", "3"], &back);
    assert_eq!(stdout(&words), "b\n");
}

#[test]
fn op_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("u.dfa");
    let printed = ok(&[
        "op",
        "union",
        &path("m1.dfa"),
        &path("m2.dfa"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(printed.is_empty());
    assert_eq!(fs::read_to_string(out).unwrap(), golden("union.dfa"));
}

#[test]
fn min_enum_and_embed() {
    assert_eq!(
        ok(&["min", &path("sigma-plus.dfa")]),
        golden("sigma_plus_min.dfa")
    );
    assert_eq!(ok(&["enum", &path("m1.dfa"), "-n", "2"]), "a\nb\naa\nba\n");
    let wide = ok(&["embed", &path("m1.dfa"), "-a", "a,b,c"]);
    let report = observa_stdin(&["analyze", "-"], &wide);
    assert!(stdout(&report).contains("alphabet: a,b,c\n"));
    assert!(stdout(&report).contains("minimal_alphabet: a,b\n"));
}

#[test]
fn gen_hierarchy_has_exact_index() {
    for k in 0..=4 {
        let dfa = ok(&["gen-hierarchy", "-k", &k.to_string()]);
        let report = observa_stdin(&["analyze", "-"], &dfa);
        assert!(
            stdout(&report).contains(&format!("so_index: {k}\n")),
            "k={k}"
        );
    }
    let two = ok(&["gen-hierarchy", "-k", "2"]);
    let out = observa_stdin(&["eq", "-", &path("union_table.dfa")], &two);
    assert_eq!(stdout(&out), "equivalent: true\n");
}

#[test]
fn complete_flag_adds_sink() {
    let out = observa(&["analyze", &path("partial.dfa")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("partial.dfa"));
    let text = ok(&["analyze", "--complete", &path("partial.dfa")]);
    assert!(text.contains("so_index: 2\n"));
}

#[test]
fn format_errors_carry_file_and_line() {
    let out = observa(&["analyze", &path("bad.dfa")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("bad.dfa:6:"), "{}", stderr(&out));
    let out = observa_stdin(&["min", "-"], "alphabet: a\nstates p\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("<stdin>:2:"), "{}", stderr(&out));
    let out = observa(&["analyze", "-e", "(a|", "-a", "a,b"]);
    assert_eq!(out.status.code(), Some(2));
    let out = observa(&["analyze", "no-such-file.dfa"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["frobnicate"][..],
        &["analyze", "--bogus", "x"],
        &["op", "shuffle", "x.dfa"],
        &["gen-hierarchy", "-k", "63"],
        &["witness", "T9-nothing"],
        &["op", "union", "x"],
    ] {
        let args: Vec<&str> = args.to_vec();
        let out = if args.len() == 3 && args[0] == "op" && args[1] == "union" {
            observa(&["op", "union", &path("m1.dfa")])
        } else {
            observa(&args)
        };
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
    }
    let help = observa(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn witness_writes_report_and_automata() {
    let dir = tempfile::tempdir().unwrap();
    let out = observa(&["witness", "T1-union", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = fs::read_to_string(dir.path().join("witness.txt")).unwrap();
    assert_eq!(stdout(&out), report);
    assert_eq!(report, golden("witness_T1-union.txt"));
    let inputs = [dir.path().join("input0.dfa"), dir.path().join("input1.dfa")];
    let u = ok(&[
        "op",
        "union",
        inputs[0].to_str().unwrap(),
        inputs[1].to_str().unwrap(),
    ]);
    assert_eq!(
        u,
        fs::read_to_string(dir.path().join("result.dfa")).unwrap()
    );
    assert!(
        ok(&["analyze", &dir.path().join("result.dfa").to_string_lossy()])
            .contains("so_index: 2\n")
    );
}

#[test]
fn witness_homomorphism_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let text = ok(&["witness", "T1-invhom", "--out", d, "--workers", "2"]);
    assert!(text.contains("homomorphism: a -> ab; b -> bb\n"), "{text}");
    let input = dir.path().join("input0.dfa");
    let hom = dir.path().join("hom.txt");
    let back = ok(&[
        "op",
        "invhom",
        input.to_str().unwrap(),
        "-m",
        hom.to_str().unwrap(),
    ]);
    assert_eq!(
        back,
        fs::read_to_string(dir.path().join("result.dfa")).unwrap()
    );
}

#[test]
fn exhausted_bounds_exit_three() {
    let out = observa(&["witness", "T1-union", "--max-states", "2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("no witness within bounds"));
}

#[test]
fn small_suite_skips_at_scale_and_is_deterministic() {
    let args = [
        "suite",
        "--sweep-states",
        "2",
        "--witness-max-states",
        "1",
        "--budget-seconds",
        "30",
    ];
    let first = ok(&args);
    assert!(
        first.contains("SKIPPED-AT-SCALE witness-T2-plus"),
        "{first}"
    );
    assert!(!first.contains("FAILED"));
    assert_eq!(first, ok(&args));
    let mut json_args = args.to_vec();
    json_args.push("--json");
    let json: serde_json::Value = serde_json::from_str(&ok(&json_args)).unwrap();
    let assertions = json["assertions"].as_array().unwrap();
    assert_eq!(assertions.len(), first.lines().count() - 1);
    assert_eq!(assertions[0]["name"], "m1-so-index");
    assert_eq!(assertions[0]["outcome"], "PASSED");
}

#[test]
fn analyze_json_mirrors_text() {
    let text = ok(&["analyze", &path("union_table.dfa"), "--json"]);
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["so_index"], 2);
    assert_eq!(json["states"], 5);
    assert_eq!(json["per_state"][2]["class"], "semi-observable");
    assert_eq!(json["per_state"][2]["state"], "3");
}
