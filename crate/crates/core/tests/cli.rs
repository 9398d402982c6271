use std::process::Command;

use autostack::automata::{nf_automaton, Dfa};
use autostack::cli::run;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("autostack").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = cli(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn nf_golden() {
    assert_eq!(ok(&["nf", "yxy"]), "xyx^-2yx^2\n");
    assert_eq!(ok(&["nf", "--trace", "yxy"]), "0: yxy\n1: y-rule(1) at 0 -> xyx^-2yx^2\nxyx^-2yx^2\n");
    assert_eq!(ok(&["nf", "xX"]), "1\n");
}

#[test]
fn solve_golden() {
    assert_eq!(ok(&["solve", "[y,xyx^-2]", ""]), "equal\n");
    assert_eq!(ok(&["solve", "[y,x^2yx^-3]", "1"]), "equal\n");
    assert_eq!(ok(&["solve", "xy", "yx"]), "not equal\n");
}

#[test]
fn weight_and_flow_golden() {
    assert_eq!(ok(&["weight", "x^2y^-1xy^-1x^-2yx^4", "y"]), "sigma (4,2,3)\nweight 15\n");
    assert_eq!(ok(&["weight", "yx^-1yx^-2yx^4", "y"]), "sigma (4,2,1)\nweight 11\n");
    let flow = ok(&["flow", "yx^3", "y"]);
    assert!(flow.contains("phi x^-1y^-1xyx^-2yx^2\n"), "{flow}");
    assert!(flow.contains("endpoints match\n"));
    assert!(flow.contains("claim holds\n"));
    assert!(ok(&["flow", "x", "x"]).contains("tree edge\n"));
}

#[test]
fn flow_iterate_reaches_tree() {
    let out = ok(&["flow-iterate", "yx^3", "y"]);
    assert!(out.ends_with("in tree after 3 steps\n"), "{out}");
    let (code, out, _) = cli(&["flow-iterate", "yx^3", "y", "--max-iter", "1"]);
    assert_eq!(code, 2);
    assert!(out.ends_with("not in tree after 1 steps\n"));
}

#[test]
fn rewrite_trace_names_rules_and_guards() {
    let out = ok(&["rewrite", "--trace", "yx^2y"]);
    assert_eq!(out.lines().count(), 3);
    assert!(out.contains("R2[e=1,i=2] guard [u·yx^2 ∈ N]"), "{out}");
    assert!(out.ends_with("x^2yx^-3yx^3\n"));
}

#[test]
fn oracle_golden() {
    assert_eq!(ok(&["oracle", "eval", "x"]), "(0,0) (1/2,1/4) (3/4,1/2) (1,1)\n");
    assert_eq!(ok(&["oracle", "eval", "[y,xyx^-2]"]), "(0,0) (1,1)\n");
}

#[test]
fn diagram_stats_and_dot() {
    let out = ok(&["diagram", "yx^3", "y", "--stats"]);
    assert!(out.contains("boxes (3)\ncells 5\n"), "{out}");
    assert!(out.contains("chi 1\n"));
    let dot = ok(&["diagram", "yx", "y", "--format", "dot"]);
    assert!(dot.starts_with("digraph diagram {"));
    assert_eq!(dot.matches("->").count(), 10);
    let bare = ok(&["diagram", "yx^-1yx^-2yx^4", "y", "--unfilled"]);
    assert!(bare.contains("boxes (4,2,1)\ncells 3\n"), "{bare}");
}

#[test]
fn fsa_export_round_trips() {
    let path = std::env::temp_dir().join(format!("autostack-nf-{}.fsa", std::process::id()));
    let out = ok(&["fsa", "export", "--which", "nf", "--out", path.to_str().unwrap()]);
    assert!(out.starts_with("8 states written"));
    let dfa = Dfa::from_table(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(dfa.equivalent(&nf_automaton()));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn json_output_parses() {
    let v: serde_json::Value = serde_json::from_str(&ok(&["--json", "nf", "yxy"])).unwrap();
    assert_eq!(v["normal_form"], "xyx^-2yx^2");
    let v: serde_json::Value = serde_json::from_str(&ok(&["weight", "--json", "yx^3", "y"])).unwrap();
    assert_eq!(v["weight"], "5");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["nf", "xz"]).0, 1);
    assert_eq!(cli(&["bogus"]).0, 1);
    assert_eq!(cli(&["weight", "y", "y"]).0, 1);
    assert_eq!(cli(&["diagram", "x", "y"]).0, 1);
    assert_eq!(cli(&["verify", "--suite", "nope"]).0, 1);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn verify_prints_pass_table() {
    let out = ok(&["verify", "--suite", "claim-star", "--max-len", "6"]);
    assert!(out.starts_with("claim-star       PASS"), "{out}");
}

#[test]
fn binary_honours_budget_variables() {
    let bin = env!("CARGO_BIN_EXE_autostack");
    let o = Command::new(bin).args(["nf", "yx^3y"]).output().unwrap();
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout), "x^3yx^-4yx^4\n");
    let o = Command::new(bin).env("AUTOSTACK_MAX_LEN", "4").args(["nf", "yx^3y"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(bin).env("AUTOSTACK_STEP_BUDGET", "0").args(["rewrite", "yxy"]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}
