//! Exhaustive property sweeps over small words, shared by the `verify` verb
//! and the acceptance target. Every sweep compares two independently
//! computed routes.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::automata::{graph_phi_automaton, nf_automaton};
use crate::cprs::{graph_phi, RewriteSystem, DEFAULT_STEP_BUDGET};
use crate::diagrams::{box_diagram, expected_boundary, fill_with, Filler};
use crate::flow::{
    flow_case, flow_to_tree, pack_word, phi_label, verify_claim_star, DirectedPath, FlowCase, FlowDepth, BOUND_K,
    DEFAULT_MAX_ITER,
};
use crate::normal_form::{
    is_normal_form, normal_forms_up_to, normalize_by_multiplication, satisfies_shape, sigma_normalize, NormalForm,
};
use crate::oracle::{self, PLMap};
use crate::ordering::{c_seq, c_seq_closed, size_sequence, weight, Edge};
use crate::words::{all_words_up_to, parse, Generator, Word};

const KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), checked: 0, failed: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{:<16} {:<4} checked={} failed={}", self.suite, status, self.checked, self.failed)?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for m in &self.failures {
            writeln!(f, "  fail: {m}")?;
        }
        Ok(())
    }
}

pub const SUITES: &[&str] = &[
    "oracle",
    "normalize",
    "bounded",
    "inverse-weight",
    "claim-star",
    "flow",
    "automata",
    "diagram-weight",
    "box-example",
];

pub fn run_suite(name: &str, max_len: usize) -> Option<SuiteReport> {
    Some(match name {
        "oracle" => oracle_consistency(max_len),
        "normalize" => normalization_agreement(max_len),
        "bounded" => boundedness(max_len),
        "inverse-weight" => inverse_weight(max_len),
        "claim-star" => claim_star(max_len),
        "flow" => flow_termination(max_len, max_len + 2, 0x5eed),
        "automata" => regularity(max_len, max_len, 1000, 0x5eed),
        "diagram-weight" => diagram_weight(max_len),
        "box-example" => box_example(),
        _ => return None,
    })
}

fn non_tree_edges(max_len: usize) -> impl Iterator<Item = Edge> {
    normal_forms_up_to(max_len).into_iter().flat_map(|w| {
        let nf = NormalForm::from_word(&w).expect("enumerated normal form");
        [Generator::Y, Generator::YInv].map(|g| Edge::new(nf.clone(), g)).into_iter().filter(|e| !e.in_tree())
    })
}

/// `evaluate(w) = evaluate(nf(w))` for every word, with the left side built
/// one letter at a time along a depth-first walk.
pub fn oracle_consistency(max_len: usize) -> SuiteReport {
    let mut r = SuiteReport::new("oracle");
    for (name, rel) in [("[y,xyx^-2]", "[y,xyx^-2]"), ("[y,x^2yx^-3]", "[y,x^2yx^-3]")] {
        let w = parse(rel).unwrap();
        r.check(oracle::evaluate(&w).is_identity(), || format!("relator {name} is not the identity"));
    }
    let gens: Vec<PLMap> = Generator::ALL.iter().map(|&g| oracle::generator_map(g)).collect();
    let mut memo: HashMap<Vec<u8>, PLMap> = HashMap::new();
    let mut buf = Vec::with_capacity(max_len);
    fn walk(
        buf: &mut Vec<Generator>,
        acc: &PLMap,
        max_len: usize,
        gens: &[PLMap],
        memo: &mut HashMap<Vec<u8>, PLMap>,
        r: &mut SuiteReport,
    ) {
        let w = Word::from(buf.clone());
        let nf = sigma_normalize(&w).expect("short word").0.to_word();
        let key = pack_word(&nf);
        let rhs = memo.entry(key).or_insert_with(|| oracle::evaluate(&nf));
        r.check(oracle::equal(acc, rhs), || format!("{w} vs nf {nf}"));
        if buf.len() == max_len {
            return;
        }
        for g in Generator::ALL {
            buf.push(g);
            let next = acc.compose(&gens[g.index()]);
            walk(buf, &next, max_len, gens, memo, r);
            buf.pop();
        }
    }
    walk(&mut buf, &PLMap::identity(), max_len, &gens, &mut memo, &mut r);
    r.note(format!("{} distinct normal forms evaluated", memo.len()));
    r
}

/// Σ-normalisation, closed-form multiplication and the prefix-rewriting
/// system produce the same word.
pub fn normalization_agreement(max_len: usize) -> SuiteReport {
    let mut r = SuiteReport::new("normalize");
    let rs = RewriteSystem::global();
    for w in all_words_up_to(max_len) {
        let a = sigma_normalize(&w).expect("short word").0.to_word();
        let b = normalize_by_multiplication(&w).to_word();
        let c = rs.rewrite_to_irreducible(&w).map(|x| x.0);
        r.check(c.as_ref() == Ok(&a) && a == b, || format!("{w}: sigma {a}, mult {b}, cprs {c:?}"));
    }
    r
}

/// Every prefix-rewriting step replaces at most 5 letters by at most 10, and
/// every flow label has length at most `K`.
pub fn boundedness(max_len: usize) -> SuiteReport {
    let mut r = SuiteReport::new("bounded");
    let rs = RewriteSystem::global();
    let (mut lhs_max, mut rhs_max, mut lbl_max) = (0, 0, 0);
    for w in all_words_up_to(max_len) {
        match rs.rewrite_trace(&w, DEFAULT_STEP_BUDGET) {
            Ok((_, steps)) => {
                for s in steps {
                    lhs_max = lhs_max.max(s.lhs.len());
                    rhs_max = rhs_max.max(s.rhs.len());
                    r.check(s.lhs.len() <= 5 && s.rhs.len() <= 10, || {
                        format!("{w}: {} -> {} by {}", s.lhs, s.rhs, s.rule)
                    });
                }
            }
            Err(e) => r.check(false, || e.to_string()),
        }
    }
    for v in normal_forms_up_to(max_len) {
        let nf = NormalForm::from_word(&v).unwrap();
        for g in Generator::ALL {
            let lbl = phi_label(&Edge::new(nf.clone(), g));
            lbl_max = lbl_max.max(lbl.len());
            r.check(lbl.len() <= BOUND_K, || format!("({v}, {g}) flows along {lbl}"));
        }
    }
    r.note(format!("longest lhs {lhs_max}, longest rhs {rhs_max}, longest flow label {lbl_max}"));
    r
}

/// `σ(e) = σ(e^-1)` and `W(e) = W(e^-1)`.
pub fn inverse_weight(max_len: usize) -> SuiteReport {
    let mut r = SuiteReport::new("inverse-weight");
    for e in non_tree_edges(max_len) {
        let inv = e.inverse();
        let ok = size_sequence(&e).ok() == size_sequence(&inv).ok() && weight(&e).ok() == weight(&inv).ok();
        r.check(ok, || format!("{e} vs {inv}"));
    }
    r
}

pub fn claim_star(max_len: usize) -> SuiteReport {
    let mut r = SuiteReport::new("claim-star");
    let mut case_two = 0u64;
    for e in non_tree_edges(max_len) {
        let rep = verify_claim_star(&e);
        if flow_case(&e) == FlowCase::LongY {
            case_two += 1;
        }
        r.check(rep.passed(), || format!("{e}: {}", rep.violations.join("; ")));
    }
    r.note(format!("{case_two} edges in the long-y case"));
    r
}

/// Every path of length `<= path_len` starting at a normal form of length
/// `<= start_len` flows into the tree within the iteration cap.
///
/// A path needs as many Φ̂ steps as its slowest edge, and every edge leaving
/// the radius-`(path_len - 1)` ball around a start is the last edge of such
/// a path, so the sweep ranges over those edges. A seeded sample of whole
/// paths is then run through `flow_to_tree` and compared.
pub fn flow_termination(start_len: usize, path_len: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("flow");
    let starts: Vec<NormalForm> =
        normal_forms_up_to(start_len).iter().map(|w| NormalForm::from_word(w).unwrap()).collect();
    let mut depth = FlowDepth::new();
    let mut seen: HashSet<Vec<u8>> = starts.iter().map(|v| pack_word(&v.to_word())).collect();
    let mut layer = starts.clone();
    let mut worst = 0;
    for radius in 0..path_len {
        let mut next = Vec::new();
        for v in &layer {
            for g in Generator::ALL {
                let d = depth.depth(&Edge::new(v.clone(), g));
                worst = worst.max(d);
                r.check(d <= DEFAULT_MAX_ITER, || format!("({v}, {g}) needs {d} steps"));
                if radius + 1 < path_len {
                    let u = v.multiply(g);
                    if seen.insert(pack_word(&u.to_word())) {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    r.note(format!("{} vertices, {} memoised edges, slowest edge needs {worst} steps", seen.len(), depth.memo_len()));
    let mut rng = StdRng::seed_from_u64(seed);
    let samples = 2000;
    for _ in 0..samples {
        let start = &starts[rng.gen_range(0..starts.len())];
        let len = rng.gen_range(0..=path_len);
        let label: Word = (0..len).map(|_| Generator::ALL[rng.gen_range(0..4)]).collect();
        let p = DirectedPath::new(start.clone(), label);
        let trace = flow_to_tree(&p, DEFAULT_MAX_ITER);
        let expect = depth.path_depth(&p);
        r.check(trace.terminated && trace.n_p() == expect, || {
            format!("path {start}·{}: flow_to_tree {} steps, edge depth {expect}", p.label, trace.n_p())
        });
    }
    r.note(format!("{samples} sampled paths replayed through flow_to_tree"));
    r
}

/// Automaton membership against the exponent-condition predicate and the
/// redex scan; Graph(Φ) automaton against the rewriting system and the flow
/// function, on positives and on perturbed negatives.
pub fn regularity(nf_len: usize, gamma_len: usize, negatives: usize, seed: u64) -> SuiteReport {
    let mut r = SuiteReport::new("automata");
    let n = nf_automaton();
    let mut buf = Vec::with_capacity(nf_len);
    fn walk(buf: &mut Vec<Generator>, q: usize, n: &crate::automata::Dfa, max: usize, r: &mut SuiteReport) {
        let w = Word::from(buf.clone());
        let (dfa, shape, scan) = (n.is_accepting(q), satisfies_shape(&w), is_normal_form(&w));
        r.check(dfa == shape && shape == scan, || format!("{w}: automaton {dfa}, shape {shape}, redex scan {scan}"));
        if buf.len() == max {
            return;
        }
        for g in Generator::ALL {
            buf.push(g);
            walk(buf, n.step(q, g.index()), n, max, r);
            buf.pop();
        }
    }
    walk(&mut buf, n.initial(), &n, nf_len, &mut r);

    let g = graph_phi_automaton();
    let member = |u: &Word, a: Generator, v: &Word| -> bool {
        is_normal_form(u) && graph_phi(&NormalForm::from_word(u).unwrap(), a).out_label == *v
    };
    let mut positives = Vec::new();
    for u in normal_forms_up_to(gamma_len) {
        let nf = NormalForm::from_word(&u).unwrap();
        let labels: Vec<Word> = Generator::ALL.iter().map(|&a| graph_phi(&nf, a).out_label).collect();
        for (k, &a) in Generator::ALL.iter().enumerate() {
            let lbl = &labels[k];
            let by_flow = phi_label(&Edge::new(nf.clone(), a));
            r.check(*lbl == by_flow, || format!("({u}, {a}): rewriting gives {lbl}, flow gives {by_flow}"));
            r.check(g.accepts_triple(&u, &Word::letter(a), lbl), || format!("rejects ({u}, {a}, {lbl})"));
            for other in labels.iter().filter(|o| *o != lbl) {
                r.check(!g.accepts_triple(&u, &Word::letter(a), other), || format!("accepts ({u}, {a}, {other})"));
            }
            positives.push((u.clone(), a, lbl.clone()));
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut made = 0;
    while made < negatives {
        let (u, a, v) = positives[rng.gen_range(0..positives.len())].clone();
        let (u, a, v) = perturb(&mut rng, u, a, v);
        if member(&u, a, &v) {
            continue;
        }
        made += 1;
        r.check(!g.accepts_triple(&u, &Word::letter(a), &v), || format!("accepts perturbed ({u}, {a}, {v})"));
    }
    r.note(format!("{} positive triples, {negatives} perturbed negatives", positives.len()));
    r
}

fn random_gen(rng: &mut StdRng) -> Generator {
    Generator::ALL[rng.gen_range(0..4)]
}

fn perturb(rng: &mut StdRng, u: Word, a: Generator, v: Word) -> (Word, Generator, Word) {
    let edit = |rng: &mut StdRng, w: Word| -> Word {
        let mut l = w.into_letters();
        match rng.gen_range(0..3) {
            0 if !l.is_empty() => {
                let k = rng.gen_range(0..l.len());
                l[k] = random_gen(rng);
            }
            1 if !l.is_empty() => {
                l.remove(rng.gen_range(0..l.len()));
            }
            _ => {
                let k = rng.gen_range(0..=l.len());
                l.insert(k, random_gen(rng));
            }
        }
        Word::from(l)
    };
    match rng.gen_range(0..4) {
        0 => (edit(rng, u), a, v),
        1 => (u, random_gen(rng), v),
        2 => {
            let (u2, v2) = (edit(rng, u), edit(rng, v));
            (u2, a, v2)
        }
        _ => (u, a, edit(rng, v)),
    }
}

/// Filled box diagrams are valid van Kampen diagrams with `W(e)` cells, and
/// the recurrence for `C` agrees with its closed form.
pub fn diagram_weight(max_len: usize) -> SuiteReport {
    let mut r = SuiteReport::new("diagram-weight");
    for i in 1..=30u32 {
        let (rec, closed) = (c_seq(&BigInt::from(i)).unwrap(), c_seq_closed(i));
        r.check(rec == closed, || format!("C({i}): recurrence {rec}, closed form {closed}"));
    }
    let mut filler = Filler::new();
    let mut most = 0;
    for e in non_tree_edges(max_len).filter(|e| e.label == Generator::Y) {
        let w = weight(&e).unwrap();
        match box_diagram(&e).and_then(|d| fill_with(&mut filler, &d).map(|c| (d, c))) {
            Ok((d, c)) => {
                most = most.max(c.cells.len());
                let rep = c.check(&[1, 2]);
                r.check(BigInt::from(c.cells.len()) == w, || format!("{e}: {} cells, weight {w}", c.cells.len()));
                r.check(rep.ok(), || format!("{e}: {}", rep.problems.join("; ")));
                r.check(c.boundary_word() == expected_boundary(&d), || format!("{e}: boundary {}", c.boundary_word()));
            }
            Err(err) => r.check(false, || format!("{e}: {err}")),
        }
    }
    r.note(format!("largest diagram has {most} cells"));
    r
}

/// Cumulative x-exponents of `γ`, read right to left, stopping at the first
/// non-positive sum.
pub fn brute_force_sizes(gamma: &Word) -> Vec<i64> {
    let mut sizes = Vec::new();
    let mut s = 0i64;
    for g in gamma.iter().rev() {
        match g {
            Generator::X => s += 1,
            Generator::XInv => s -= 1,
            _ => {
                if s <= 0 {
                    break;
                }
                sizes.push(s);
            }
        }
    }
    sizes
}

pub const BOX_EXAMPLE_GAMMA: &str = "x^2y^-1xy^-1x^-2yx^4";

pub fn box_example() -> SuiteReport {
    let mut r = SuiteReport::new("box-example");
    let gamma = parse(BOX_EXAMPLE_GAMMA).unwrap();
    let brute = brute_force_sizes(&gamma);
    let e = Edge::new(NormalForm::from_word(&gamma).expect("normal form"), Generator::Y);
    let d = box_diagram(&e).expect("non-tree edge");
    let sizes: Vec<i64> = d.sizes().iter().map(|s| i64::try_from(s).unwrap()).collect();
    let m = e.source.profile().m;
    r.check(sizes == brute, || format!("module sizes {sizes:?}, brute force {brute:?}"));
    r.check(d.boxes.len() == m, || format!("{} boxes, m = {m}", d.boxes.len()));
    let cells = fill_with(&mut Filler::new(), &d).map(|c| c.cells.len()).unwrap_or(0);
    let w = weight(&e).unwrap();
    r.check(BigInt::from(cells) == w, || format!("{cells} cells, weight {w}"));
    r.note(format!("sizes {sizes:?}, m = {m}, {cells} cells"));
    r
}
