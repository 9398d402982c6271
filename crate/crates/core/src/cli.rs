//! Command-line front end. `run` parses argv, dispatches, writes to the given
//! streams and returns the exit code: 0 on success, 1 on usage or domain
//! errors, 2 when a verification sweep fails.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::automata::{graph_phi_automaton, nf_automaton};
use crate::cprs::{RewriteSystem, DEFAULT_STEP_BUDGET};
use crate::diagrams::{box_diagram, fill, unfilled};
use crate::flow::{flow_case, flow_to_tree, phi, verify_claim_star, DirectedPath, DEFAULT_MAX_ITER};
use crate::normal_form::{sigma_normalize_capped, NormalForm, DEFAULT_MAX_LEN};
use crate::oracle;
use crate::ordering::{size_sequence, weight, Edge};
use crate::verify::{run_suite, SUITES};
use crate::words::{parse, Generator, Word};

pub const ENV_MAX_LEN: &str = "AUTOSTACK_MAX_LEN";
pub const ENV_STEP_BUDGET: &str = "AUTOSTACK_STEP_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "autostack",
    version,
    about = "Normal forms, flow, prefix rewriting and diagrams for Thompson's group F"
)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of a word.
    Nf {
        word: String,
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether two words are equal in F.
    Solve { w1: String, w2: String },
    /// Flow path of the edge leaving nf(word) along gen.
    Flow { word: String, gen: String },
    /// Iterate the flow on a path until it lies in the tree.
    FlowIterate {
        start: String,
        label: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Size sequence and weight of an edge.
    Weight { word: String, gen: String },
    /// Prefix-rewrite a word to its irreducible form.
    Rewrite {
        word: String,
        #[arg(long)]
        trace: bool,
    },
    /// Finite-state automata.
    Fsa {
        #[command(subcommand)]
        action: FsaAction,
    },
    /// Box diagram of an edge.
    Diagram {
        word: String,
        gen: String,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Text)]
        format: DiagramFormat,
        #[arg(long)]
        stats: bool,
        /// One cell per box instead of the filled diagram.
        #[arg(long)]
        unfilled: bool,
    },
    /// Piecewise-linear oracle.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Run a property sweep.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum FsaAction {
    Export {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleAction {
    Eval { word: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Nf,
    Graphphi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DiagramFormat {
    Text,
    Dot,
}

struct Failure {
    code: i32,
    message: String,
}

fn domain(message: impl ToString) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

fn env_usize(name: &str, default: usize) -> Result<usize, Failure> {
    match std::env::var(name) {
        Ok(v) => v.parse().map_err(|_| domain(format!("{name} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn word_arg(s: &str) -> Result<Word, Failure> {
    parse(s).map_err(|e| domain(format!("cannot parse {s:?}: {e}")))
}

fn gen_arg(s: &str) -> Result<Generator, Failure> {
    let w = word_arg(s)?;
    match w.letters() {
        [g] => Ok(*g),
        _ => Err(domain(format!("{s:?} is not a single generator"))),
    }
}

fn normalize(w: &Word) -> Result<(NormalForm, crate::normal_form::Derivation), Failure> {
    sigma_normalize_capped(w, env_usize(ENV_MAX_LEN, DEFAULT_MAX_LEN)?).map_err(domain)
}

fn edge_arg(word: &str, gen: &str) -> Result<Edge, Failure> {
    Ok(Edge::new(normalize(&word_arg(word)?)?.0, gen_arg(gen)?))
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, json: bool, text: &str, value: serde_json::Value) -> Result<(), Failure> {
    let r = if json { writeln!(out, "{value}") } else { write!(out, "{text}") };
    r.map_err(|e| domain(format!("write failed: {e}")))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Nf { word, trace } => {
            let w = word_arg(word)?;
            let (nf, d) = normalize(&w)?;
            let mut text = String::new();
            if *trace {
                text.push_str(&d.render());
            }
            text.push_str(&format!("{nf}\n"));
            let steps: Vec<String> =
                d.frames().iter().map(|f| format!("{} at {} -> {}", f.rule, f.position, f.after)).collect();
            emit(out, json, &text, json!({ "input": w.to_string(), "normal_form": nf.to_string(), "steps": steps }))
        }
        Command::Solve { w1, w2 } => {
            let (a, b) = (normalize(&word_arg(w1)?)?.0, normalize(&word_arg(w2)?)?.0);
            let eq = a == b;
            let text = if eq { "equal\n" } else { "not equal\n" };
            emit(out, json, text, json!({ "equal": eq, "nf1": a.to_string(), "nf2": b.to_string() }))
        }
        Command::Flow { word, gen } => {
            let e = edge_arg(word, gen)?;
            let p = phi(&e);
            let ends = p.end() == e.target();
            let mut text = format!("edge {e}\n");
            if e.in_tree() {
                text.push_str("tree edge\n");
            } else {
                text.push_str(&format!("case {:?}\nweight {}\n", flow_case(&e), weight(&e).map_err(domain)?));
            }
            text.push_str(&format!("phi {}\nendpoints {}\n", p.label, if ends { "match" } else { "differ" }));
            let mut value = json!({ "edge": e.to_string(), "in_tree": e.in_tree(), "phi": p.label.to_string(), "endpoints_match": ends });
            if !e.in_tree() {
                let rep = verify_claim_star(&e);
                text.push_str(&format!("claim {}\n", if rep.passed() { "holds" } else { "fails" }));
                value["claim"] = serde_json::to_value(&rep).unwrap();
            }
            emit(out, json, &text, value)?;
            if ends {
                Ok(())
            } else {
                Err(Failure { code: 2, message: "flow path does not end at the edge target".into() })
            }
        }
        Command::FlowIterate { start, label, max_iter } => {
            let p = DirectedPath::new(normalize(&word_arg(start)?)?.0, word_arg(label)?);
            let trace = flow_to_tree(&p, *max_iter);
            let mut text = String::new();
            for (k, q) in trace.iterations.iter().enumerate() {
                text.push_str(&format!("{k}: {} . {}\n", q.start, q.label));
            }
            if trace.terminated {
                text.push_str(&format!("in tree after {} steps\n", trace.n_p()));
            } else {
                text.push_str(&format!("not in tree after {max_iter} steps\n"));
            }
            let labels: Vec<String> = trace.iterations.iter().map(|q| q.label.to_string()).collect();
            emit(
                out,
                json,
                &text,
                json!({ "start": p.start.to_string(), "iterations": labels, "terminated": trace.terminated, "steps": trace.n_p() }),
            )?;
            if trace.terminated {
                Ok(())
            } else {
                Err(Failure { code: 2, message: "iteration cap reached".into() })
            }
        }
        Command::Weight { word, gen } => {
            let e = edge_arg(word, gen)?;
            let sigma = size_sequence(&e).map_err(domain)?;
            let w = weight(&e).map_err(domain)?;
            let text = format!("sigma {sigma}\nweight {w}\n");
            let sizes: Vec<String> = sigma.sizes.iter().map(|s| s.to_string()).collect();
            emit(out, json, &text, json!({ "edge": e.to_string(), "sigma": sizes, "weight": w.to_string() }))
        }
        Command::Rewrite { word, trace } => {
            let w = word_arg(word)?;
            let rs = RewriteSystem::global();
            let budget = env_usize(ENV_STEP_BUDGET, DEFAULT_STEP_BUDGET)?;
            let (result, steps) = rs.rewrite_trace(&w, budget).map_err(domain)?;
            let mut text = String::new();
            if *trace {
                text.push_str(&format!("0: {w}\n"));
                for (k, s) in steps.iter().enumerate() {
                    text.push_str(&format!(
                        "{}: {} guard [{}] on {}: {} -> {} => {}\n",
                        k + 1,
                        s.rule,
                        rs.guard_name(s.rule),
                        s.prefix,
                        s.lhs,
                        s.rhs,
                        s.result
                    ));
                }
            }
            text.push_str(&format!("{result}\n"));
            emit(out, json, &text, json!({ "input": w.to_string(), "result": result.to_string(), "steps": steps }))
        }
        Command::Fsa { action: FsaAction::Export { which, out: path } } => {
            let dfa = match which {
                Which::Nf => nf_automaton(),
                Which::Graphphi => graph_phi_automaton(),
            };
            let table = dfa.to_table();
            match path {
                Some(p) => {
                    std::fs::write(p, &table).map_err(|e| domain(format!("{}: {e}", p.display())))?;
                    let text = format!("{} states written to {}\n", dfa.num_states(), p.display());
                    emit(out, json, &text, json!({ "states": dfa.num_states(), "path": p.display().to_string() }))
                }
                None => emit(out, json, &table, json!({ "states": dfa.num_states(), "table": table })),
            }
        }
        Command::Diagram { word, gen, format, stats, unfilled: bare } => {
            let e = edge_arg(word, gen)?;
            let d = box_diagram(&e).map_err(domain)?;
            let c = if *bare { unfilled(&d) } else { fill(&d) }.map_err(domain)?;
            let allowed: Vec<usize> = if *bare { c.cells.iter().map(|c| c.size).collect() } else { vec![1, 2] };
            let report = c.check(&allowed);
            let sizes: Vec<String> = d.boxes.iter().map(|b| b.0.to_string()).collect();
            let mut text = String::new();
            if *format == DiagramFormat::Dot {
                text.push_str(&c.to_dot());
            }
            if *stats || *format == DiagramFormat::Text {
                text.push_str(&format!(
                    "edge {}\nprefix {}\nboxes ({})\ncells {}\n",
                    d.edge,
                    d.prefix_path,
                    sizes.join(","),
                    c.cells.len()
                ));
                text.push_str(&format!(
                    "V {} E {} F {} chi {}\nboundary {}\n",
                    report.vertices, report.edges, report.cells, report.euler_characteristic, report.boundary_word
                ));
            }
            let value = json!({ "edge": d.edge.to_string(), "boxes": sizes, "cells": c.cells.len(), "report": report, "dot": c.to_dot() });
            emit(out, json, &text, value)?;
            if report.ok() {
                Ok(())
            } else {
                Err(Failure { code: 2, message: report.problems.join("; ") })
            }
        }
        Command::Oracle { action: OracleAction::Eval { word } } => {
            let m = oracle::evaluate(&word_arg(word)?);
            let text = format!("{m}\n");
            emit(out, json, &text, json!({ "breakpoints": m.breakpoints() }))
        }
        Command::Verify { suite, max_len } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for name in names {
                let r = run_suite(name, *max_len)
                    .ok_or_else(|| domain(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", "))))?;
                reports.push(r);
            }
            let text: String = reports.iter().map(|r| r.to_string()).collect();
            emit(out, json, &text, serde_json::to_value(&reports).unwrap())?;
            if reports.iter().all(|r| r.passed()) {
                Ok(())
            } else {
                Err(Failure { code: 2, message: "verification failed".into() })
            }
        }
    }
}
