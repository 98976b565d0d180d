//! Integration tests for the command-line surface: exit codes, stream
//! discipline, and pipe composability.

use std::io::Write;
use std::process::{Command, Stdio};

use autmin::format::{parse_automaton, parse_lasso, parse_partition};

const P2_GRAPH: &str = "graph\nvertices v0 v1\ninitial v0\nedge v0 v1\n";
const RAW_GRAPH: &str = "graph\nvertices a b\nedge a b\n";
const INF_A: &str = "daut 1\nalphabet a b\nstates 2\ninitial 0\nacceptance buchi 0\n\
                     trans 0 a 0\ntrans 0 b 1\ntrans 1 a 0\ntrans 1 b 1\n";
const INF_B: &str = "daut 1\nalphabet a b\nstates 2\ninitial 1\nacceptance buchi 0\n\
                     trans 0 a 1\ntrans 0 b 0\ntrans 1 a 1\ntrans 1 b 0\n";

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn autmin(args: &[&str], stdin: Option<&str>, envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_autmin"));
    cmd.args(args)
        .env_remove("AUTMIN_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn autmin");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .expect("piped stdin")
            .write_all(text.as_bytes())
            .expect("write stdin");
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().expect("wait for autmin");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn write_file(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, content).expect("write temp file");
    path.to_string_lossy().into_owned()
}

#[test]
fn info_reports_basic_facts() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_file(&dir, "p2.graph", P2_GRAPH);
    let gen = autmin(&["gen-vc", &g], None, &[]);
    assert_eq!(gen.code, 0);
    let a = parse_automaton(&gen.stdout).expect("gen-vc output parses");
    assert_eq!(a.state_count(), 6);

    let daut = write_file(&dir, "p2.daut", &gen.stdout);
    let info = autmin(&["info", &daut], None, &[]);
    assert_eq!(info.code, 0);
    assert!(info.stdout.contains("states: 6"));
    assert!(info.stdout.contains("acceptance: buchi"));
    assert!(info.stdout.contains("weak: false"));
}

#[test]
fn equiv_exit_codes_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(&dir, "a.daut", INF_A);
    let b = write_file(&dir, "b.daut", INF_B);

    let same = autmin(&["equiv", &a, &a, "--mode", "omega"], None, &[]);
    assert_eq!(same.code, 0);
    assert!(same.stdout.is_empty());

    let diff = autmin(&["equiv", &a, &b, "--witness"], None, &[]);
    assert_eq!(diff.code, 1);
    assert!(diff.stdout.is_empty(), "verdict commands keep stdout clean");
    let line = diff.stderr.lines().next().expect("witness on stderr");
    let lasso = parse_lasso(line.split(": ").nth(1).expect("witness payload")).unwrap();
    let a = parse_automaton(INF_A).unwrap();
    let b = parse_automaton(INF_B).unwrap();
    let (first, second) = if line.contains("first") {
        (&a, &b)
    } else {
        (&b, &a)
    };
    assert!(first.run_lasso(&lasso).unwrap().accepted);
    assert!(!second.run_lasso(&lasso).unwrap().accepted);
}

#[test]
fn rel_min_is_idempotent_and_deterministic_through_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(&dir, "a.daut", INF_A);
    let once = autmin(&["rel-min", &a], None, &[]);
    assert_eq!(once.code, 0);
    let twice = autmin(&["rel-min", "-"], Some(&once.stdout), &[]);
    assert_eq!(twice.code, 0);
    assert_eq!(once.stdout, twice.stdout, "idempotence, byte for byte");
    let again = autmin(&["rel-min", &a], None, &[]);
    assert_eq!(once.stdout, again.stdout, "determinism, byte for byte");
}

#[test]
fn transform_outputs_feed_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(&dir, "a.daut", INF_A);
    let reduced = autmin(&["reduce", &a, "--weak-normalize", "--greedy"], None, &[]);
    assert_eq!(reduced.code, 0);
    let min = autmin(&["min-dfa", "-"], Some(&reduced.stdout), &[]);
    assert_eq!(min.code, 0);
    parse_automaton(&min.stdout).expect("min-dfa output parses");
    let quot = autmin(
        &["quotient", "-", "--relation", "omega"],
        Some(&reduced.stdout),
        &[],
    );
    assert_eq!(quot.code, 0);
    parse_partition(&quot.stdout).expect("quotient output parses");
}

#[test]
fn diff_prints_replayable_lasso_or_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(&dir, "a.daut", INF_A);
    let b = write_file(&dir, "b.daut", INF_B);
    let none = autmin(&["diff", &a, &a], None, &[]);
    assert_eq!(none.code, 1);
    assert!(none.stdout.is_empty());
    let some = autmin(&["diff", &a, &b], None, &[]);
    assert_eq!(some.code, 0);
    let lasso = parse_lasso(some.stdout.trim()).unwrap();
    assert!(
        parse_automaton(INF_A)
            .unwrap()
            .run_lasso(&lasso)
            .unwrap()
            .accepted
    );
    assert!(
        !parse_automaton(INF_B)
            .unwrap()
            .run_lasso(&lasso)
            .unwrap()
            .accepted
    );
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(
        &dir,
        "bad.daut",
        "daut 1\nalphabet a\nstates 1\ninitial 0\nacceptance buchi\ntrans 0 a 7\n",
    );
    let out = autmin(&["info", &bad], None, &[]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 6"));
}

#[test]
fn budget_guard_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_file(&dir, "p2.graph", P2_GRAPH);
    let gen = autmin(&["gen-vc", &g], None, &[]);
    let daut = write_file(&dir, "p2.daut", &gen.stdout);
    let out = autmin(&["brute-min", &daut, "--max", "5"], None, &[]);
    assert_eq!(out.code, 3, "default budget is 4");
    assert!(out.stderr.contains("budget"));
    let ok = autmin(
        &["brute-min", &daut, "--max", "5"],
        None,
        &[("AUTMIN_BUDGET", "5")],
    );
    assert_eq!(ok.code, 0);
}

#[test]
fn gen_vc_cover_validation() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_file(&dir, "p2.graph", P2_GRAPH);
    let small = autmin(&["gen-vc", &g, "--cover", "v1"], None, &[]);
    assert_eq!(small.code, 0);
    assert_eq!(parse_automaton(&small.stdout).unwrap().state_count(), 5);
    let unknown = autmin(&["gen-vc", &g, "--cover", "zz"], None, &[]);
    assert_eq!(unknown.code, 2);
    let not_cover = autmin(&["gen-vc", &g, "--cover", "v0"], None, &[]);
    assert_eq!(not_cover.code, 0, "a single endpoint covers the only edge");
}

#[test]
fn raw_graphs_need_the_nice_flag() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_file(&dir, "raw.graph", RAW_GRAPH);
    let bare = autmin(&["gen-vc", &g], None, &[]);
    assert_eq!(bare.code, 2);
    let nice = autmin(&["gen-vc", &g, "--nice"], None, &[]);
    assert_eq!(nice.code, 0);
    // make_nice adds two vertices: 4 vertices, trivial cover, 3*4 states
    assert_eq!(parse_automaton(&nice.stdout).unwrap().state_count(), 12);
}

#[test]
fn extract_cover_and_cover_commands() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_file(&dir, "p2.graph", P2_GRAPH);
    let gen = autmin(&["gen-vc", &g, "--cover", "v1"], None, &[]);
    let daut = write_file(&dir, "b.daut", &gen.stdout);
    let extracted = autmin(&["extract-cover", &daut, &g], None, &[]);
    assert_eq!(extracted.code, 0);
    assert_eq!(extracted.stdout.trim(), "v1");

    let cover = autmin(&["cover", &g], None, &[("AUTMIN_BUDGET", "5")]);
    assert_eq!(cover.code, 0);
    let names: Vec<&str> = cover.stdout.split_whitespace().collect();
    assert_eq!(names.len(), 1, "P2 has a cover of size one");
}

#[test]
fn unknown_flags_exit_2() {
    let out = autmin(&["info", "--frobnicate"], None, &[]);
    assert_eq!(out.code, 2);
}
