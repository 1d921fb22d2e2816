use std::path::PathBuf;
use std::process::{Command, Output};

fn rbx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbx")).args(args).output().unwrap()
}

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn passing_cosystem_exits_zero() {
    let o = rbx(&["check", "rb-cosystem", &corpus("ex3.6-qt.json"), "--Q", "Q2", "--T", "T2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().last().unwrap().ends_with("rb-cosystem PASS"));
}

// The first (Q, T) pair of the T₂ list fails as printed.
#[test]
fn first_listed_cosystem_exits_one() {
    let o = rbx(&["check", "rb-cosystem", &corpus("ex3.6-qt.json"), "--Q", "Q1", "--T", "T1"]);
    assert_eq!(code(&o), 1);
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.starts_with("ENTRY "), "{last}");
    assert!(last.ends_with("rb-cosystem FAIL residual-at=0,2,2"), "{last}");
}

#[test]
fn positional_inputs_match_roles() {
    let o = rbx(&["check", "rb-cosystem", &corpus("ex3.6-qt.json"), "--op", "Q8", "--op", "T8"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn usage_errors_exit_two() {
    let f = corpus("ex3.6-qt.json");
    for args in [
        vec!["check", "rb-cosystem", f.as_str(), "--Q", "Q1"],
        vec!["check", "rb-cosystem", f.as_str(), "--Q", "Q1", "--T", "T1", "--R", "Q1"],
        vec!["check", "no-such-checker", f.as_str()],
        vec!["check", "rb-cosystem", f.as_str(), "--Q", "Q1", "--T", "nope"],
        vec!["check", "rb-coalgebra", f.as_str(), "--Q", "Q1"],
        vec!["frobnicate"],
    ] {
        let o = rbx(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn parse_errors_exit_three() {
    let bad = tmp("bad-coeff.json");
    std::fs::write(
        &bad,
        r#"{"format":"rbx-structure/1","convention":"columns","dimension":1,"basis":["a"],"comul":[[0,0,0,"1/"]]}"#,
    )
    .unwrap();
    assert_eq!(code(&rbx(&["check", "coassociativity", bad.to_str().unwrap()])), 3);

    let range = tmp("bad-index.json");
    std::fs::write(
        &range,
        r#"{"format":"rbx-structure/1","convention":"columns","dimension":1,"basis":["a"],"comul":[[0,0,1,"1"]]}"#,
    )
    .unwrap();
    assert_eq!(code(&rbx(&["check", "coassociativity", range.to_str().unwrap()])), 3);

    let missing = tmp("does-not-exist.json");
    assert_eq!(code(&rbx(&["check", "coassociativity", missing.to_str().unwrap()])), 3);
}

#[test]
fn eval_specializes_a_symbolic_pass() {
    let f = corpus("ex3.6-qt.json");
    let o = rbx(&["eval", "--set", "q1=2,q2=3", "check", "rb-cosystem", &f, "--Q", "Q2", "--T", "T2"]);
    assert_eq!(code(&o), 0);
    let o = rbx(&["eval", "--set", "q1=-1/2,q2=7", "check", "rb-cosystem", &f, "--Q", "Q8", "--T", "T8"]);
    assert_eq!(code(&o), 0);
    // q1 = q2 removes the residual q1*q2 - q2^2 of the failing pair
    let o = rbx(&["eval", "--set", "q1=3,q2=3", "check", "rb-cosystem", &f, "--Q", "Q1", "--T", "T1"]);
    assert_eq!(code(&o), 0);
    let o = rbx(&["eval", "--set", "q1=2,q2=3", "check", "rb-cosystem", &f, "--Q", "Q1", "--T", "T1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn bad_assignment_is_a_usage_error() {
    let f = corpus("ex3.6-qt.json");
    let o = rbx(&["eval", "--set", "zz=1", "check", "rb-cosystem", &f, "--Q", "Q2", "--T", "T2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn construct_output_reparses() {
    let out = tmp("star.json");
    let o = rbx(&[
        "construct",
        "star-coproduct",
        &corpus("ex3.6-qt.json"),
        "--Q",
        "Q2",
        "--T",
        "T2",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = rbx(&["check", "coassociativity", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let again = tmp("star-cop.json");
    let o = rbx(&["construct", "cop", out.to_str().unwrap(), "-o", again.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&rbx(&["check", "coassociativity", again.to_str().unwrap()])), 0);
}

#[test]
fn corpus_verify_matches_golden() {
    let o = rbx(&["corpus", "verify", "--golden"]);
    assert_eq!(code(&o), 0);
    let golden = include_str!("../../core/tests/golden/corpus.txt");
    assert_eq!(stdout(&o), golden);
}

#[test]
fn corpus_filter_and_list() {
    let o = rbx(&["corpus", "verify", "--filter", "ex5.9.*"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ENTRY ex5.9.sigma aybe PASS"));
    let o = rbx(&["corpus", "list", "--filter", "sec6.dim2.RR.*"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().all(|l| l.starts_with("sec6.dim2.RR.")));
}
