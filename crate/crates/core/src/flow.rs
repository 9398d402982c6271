//! The flow function Φ on directed edges, its extension to paths, and
//! per-edge verification of the weight-decrease claim.
//!
//! For a non-tree edge with source `p y^e x^i` and label `y^b`, Φ replaces
//! the edge by the path labelled
//!
//! ```text
//! b =  1, i > 2:       x^-1 y^-1 x y x^-2 y x^2
//! b =  1, 1 <= i <= 2: x^-i y^-e x^i y x^(-i-1) y^e x^(i+1)
//! b = -1, i > 3:       x^-2 y^-1 x^2 y^-1 x^-1 y x
//! b = -1, 2 <= i <= 3: x^-i y^-e x^i y^-1 x^(-i+1) y^e x^(i-1)
//! ```
//!
//! and fixes every tree edge.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::normal_form::NormalForm;
use crate::ordering::{weight, Edge};
use crate::words::{Base, Generator, Word};

/// Bound on the length of any Φ image.
pub const BOUND_K: usize = 13;

/// Default iteration budget for [`flow_to_tree`].
pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DirectedPath {
    pub start: NormalForm,
    pub label: Word,
}

impl DirectedPath {
    pub fn new(start: NormalForm, label: Word) -> Self {
        DirectedPath { start, label }
    }

    pub fn from_edge(e: &Edge) -> Self {
        DirectedPath { start: e.source.clone(), label: Word::letter(e.label) }
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    /// The edges traversed, in order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut at = self.start.clone();
        let mut out = Vec::with_capacity(self.len());
        for g in self.label.iter() {
            let next = at.multiply(g);
            out.push(Edge::new(std::mem::replace(&mut at, next), g));
        }
        out
    }

    pub fn end(&self) -> NormalForm {
        self.start.multiply_word(&self.label)
    }

    pub fn in_tree(&self) -> bool {
        self.edges().iter().all(Edge::in_tree)
    }

    /// The reversed path, from `end()` back to `start`.
    pub fn inverse(&self) -> DirectedPath {
        DirectedPath { start: self.end(), label: self.label.inverse() }
    }
}

impl fmt::Display for DirectedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} --{}--> {}", self.start, self.label, self.end())
    }
}

fn xs(k: i64) -> Word {
    Word::power(Base::X, k)
}

fn yw(e: i8) -> Word {
    Word::letter(Base::Y.pow(e))
}

/// Label of Φ(e).
pub fn phi_label(e: &Edge) -> Word {
    if e.in_tree() {
        return Word::letter(e.label);
    }
    let b = e.label.sign();
    let eps = e.source.sign(1);
    let i0 = e.source.i0();
    let parts: Vec<Word> = if b == 1 {
        if *i0 > BigInt::from(2) {
            vec![xs(-1), yw(-1), xs(1), yw(1), xs(-2), yw(1), xs(2)]
        } else {
            let i = i0.to_i64().unwrap();
            vec![xs(-i), yw(-eps), xs(i), yw(1), xs(-i - 1), yw(eps), xs(i + 1)]
        }
    } else if *i0 > BigInt::from(3) {
        vec![xs(-2), yw(-1), xs(2), yw(-1), xs(-1), yw(1), xs(1)]
    } else {
        let i = i0.to_i64().unwrap();
        vec![xs(-i), yw(-eps), xs(i), yw(-1), xs(-i + 1), yw(eps), xs(i - 1)]
    };
    parts.iter().fold(Word::empty(), |acc, p| acc.concat(p))
}

pub fn phi(e: &Edge) -> DirectedPath {
    DirectedPath { start: e.source.clone(), label: phi_label(e) }
}

/// Edgewise application of Φ.
pub fn phi_hat(p: &DirectedPath) -> DirectedPath {
    let mut label = Word::empty();
    for e in p.edges() {
        label.extend_from(&phi_label(&e));
    }
    DirectedPath { start: p.start.clone(), label }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowTrace {
    /// `iterations[0]` is the input path, `iterations[k]` its k-th image.
    pub iterations: Vec<DirectedPath>,
    pub terminated: bool,
}

impl FlowTrace {
    /// Number of Φ̂ applications needed to reach the tree.
    pub fn n_p(&self) -> usize {
        self.iterations.len() - 1
    }
}

/// Iterates Φ̂ until the path lies in the tree or `max_iter` applications
/// have been made.
pub fn flow_to_tree(p: &DirectedPath, max_iter: usize) -> FlowTrace {
    let mut iterations = vec![p.clone()];
    loop {
        let cur = iterations.last().unwrap();
        if cur.in_tree() {
            return FlowTrace { iterations, terminated: true };
        }
        if iterations.len() > max_iter {
            return FlowTrace { iterations, terminated: false };
        }
        let next = phi_hat(cur);
        iterations.push(next);
    }
}

/// Memoised number of Φ applications an edge needs to flow into the tree.
///
/// Since Φ̂ acts edgewise, the flow count of a path is the maximum over its
/// edges.
#[derive(Default)]
pub struct FlowDepth {
    memo: HashMap<Box<[u8]>, u32>,
}

/// Compact key for an edge: label, then the source word at two bits a letter.
pub fn edge_key(e: &Edge) -> Box<[u8]> {
    let mut key = vec![e.label.index() as u8];
    key.extend(pack_word(&e.source.to_word()));
    key.into_boxed_slice()
}

pub fn pack_word(w: &Word) -> Vec<u8> {
    let mut out = Vec::with_capacity(w.len() / 4 + 2);
    out.extend((w.len() as u32).to_le_bytes());
    for chunk in w.letters().chunks(4) {
        out.push(chunk.iter().enumerate().fold(0u8, |acc, (k, g)| acc | (g.index() as u8) << (2 * k)));
    }
    out
}

impl FlowDepth {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn depth(&mut self, e: &Edge) -> usize {
        if e.in_tree() {
            return 0;
        }
        let key = edge_key(e);
        if let Some(&d) = self.memo.get(&key) {
            return d as usize;
        }
        let children = phi(e).edges();
        let d = 1 + children.iter().map(|c| self.depth(c)).max().unwrap_or(0);
        self.memo.insert(key, d as u32);
        d
    }

    pub fn path_depth(&mut self, p: &DirectedPath) -> usize {
        p.edges().iter().map(|e| self.depth(e)).max().unwrap_or(0)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlowCase {
    Tree,
    /// Label `y`, `1 <= i_0 <= 2`.
    ShortY,
    /// Label `y`, `i_0 >= 3`.
    LongY,
    /// Label `y^-1`, `2 <= i_0 <= 3`.
    ShortYInv,
    /// Label `y^-1`, `i_0 >= 4`.
    LongYInv,
}

pub fn flow_case(e: &Edge) -> FlowCase {
    if e.in_tree() {
        return FlowCase::Tree;
    }
    let i0 = e.source.i0();
    match e.label {
        Generator::Y if *i0 > BigInt::from(2) => FlowCase::LongY,
        Generator::Y => FlowCase::ShortY,
        _ if *i0 > BigInt::from(3) => FlowCase::LongYInv,
        _ => FlowCase::ShortYInv,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeCheck {
    pub index: usize,
    pub edge: String,
    pub in_tree: bool,
    #[serde(serialize_with = "crate::words::serialize_display_opt")]
    pub weight: Option<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub edge: String,
    pub case: FlowCase,
    #[serde(serialize_with = "crate::words::serialize_display")]
    pub weight: BigInt,
    pub phi_label: String,
    pub endpoints_match: bool,
    pub checks: Vec<EdgeCheck>,
    pub violations: Vec<String>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every edge on Φ(e) is in the tree or strictly lighter than
/// `e`, that Φ(e) has the endpoints of `e`, and, for long `y` edges, the
/// statements about the three named edges and the cumulative-exponent table.
///
/// Panics if `e` is a tree edge.
pub fn verify_claim_star(e: &Edge) -> ClaimReport {
    assert!(!e.in_tree(), "tree edges have no weight to compare against");
    let w = weight(e).unwrap();
    let path = phi(e);
    let mut violations = Vec::new();
    let endpoints_match = path.end() == e.target();
    if !endpoints_match {
        violations.push(format!("Φ({e}) ends at {} instead of {}", path.end(), e.target()));
    }
    if path.len() > BOUND_K {
        violations.push(format!("Φ({e}) has length {}", path.len()));
    }
    let mut checks = Vec::new();
    for (index, f) in path.edges().into_iter().enumerate() {
        let in_tree = f.in_tree();
        let wf = if in_tree { None } else { Some(weight(&f).unwrap()) };
        if let Some(v) = &wf {
            if *v >= w {
                violations.push(format!("edge {index} {f} has weight {v} >= {w}"));
            }
        }
        checks.push(EdgeCheck { index, edge: f.to_string(), in_tree, weight: wf });
    }
    let case = flow_case(e);
    if case == FlowCase::LongY {
        for (index, name) in [(1, "e1^-1"), (3, "e2"), (6, "e3")] {
            if checks[index].in_tree {
                violations.push(format!("{name} = {} lies in the tree", checks[index].edge));
            }
        }
        if let Err(msg) = check_exponent_table(e) {
            violations.push(msg);
        }
    }
    ClaimReport {
        edge: e.to_string(),
        case,
        weight: w,
        phi_label: path.label.to_string(),
        endpoints_match,
        checks,
        violations,
    }
}

/// Compares the cumulative exponents of `f = g x^-1 y^-1` and `h = f x`
/// against the closed-form columns, for an edge `e = (g, y)` with `i_0 >= 3`.
pub fn check_exponent_table(e: &Edge) -> Result<(), String> {
    let g = &e.source;
    let pg = g.profile();
    let s = &pg.s;
    let n = g.n();
    let m = pg.m;
    let m1 = s.iter().position(|v| *v <= BigInt::from(2)).unwrap_or(n).min(n);
    let gx = g.multiply(Generator::XInv);
    let f = gx.multiply(Generator::YInv);
    let h = f.multiply(Generator::X);
    let cancel = m1 < n && s[m1] == BigInt::from(1) && g.sign(m1 + 1) == 1;
    let mut sf: Vec<BigInt> = s[..m1].iter().map(|v| v - 2).collect();
    if cancel {
        sf.extend(s[m1 + 1..].iter().map(|v| v - 1));
    } else {
        sf.push(BigInt::from(0));
        sf.extend(s[m1..].iter().map(|v| v - 1));
    }
    let sh: Vec<BigInt> = sf.iter().map(|v| v + 1).collect();
    let ph = h.profile();
    if f.profile().s != sf {
        return Err(format!("s(f) = {:?}, table gives {:?}", f.profile().s, sf));
    }
    if ph.s != sh {
        return Err(format!("s(h) = {:?}, table gives {:?}", ph.s, sh));
    }
    let mh = if cancel { m - 1 } else { m + 1 };
    if ph.m != mh {
        return Err(format!("m(h) = {}, expected {}", ph.m, mh));
    }
    if !s[m].is_positive() {
        let first = ph.s.iter().position(|v| !v.is_positive());
        if first != Some(mh) {
            return Err(format!("first nonpositive entry of s(h) at {first:?}, expected {mh}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::normal_forms_up_to;
    use crate::words::parse;

    fn nf(s: &str) -> NormalForm {
        NormalForm::from_word(&parse(s).unwrap()).unwrap()
    }

    fn w(s: &str) -> Word {
        parse(s).unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_label(&Edge::new(nf("yx"), Generator::Y)), w("XYxyXXyxx"));
        assert_eq!(phi_label(&Edge::new(nf("yx^3"), Generator::Y)), w("XYxyXXyxx"));
        assert_eq!(phi_label(&Edge::new(nf("y"), Generator::X)), w("x"));
    }

    #[test]
    fn phi_hat_examples() {
        let p = DirectedPath::new(NormalForm::identity(), w("yxy"));
        let q = phi_hat(&p);
        assert_eq!(q.label, w("yx").concat(&w("XYxyXXyxx")));
        assert_eq!(q.end(), p.end());
        let empty = DirectedPath::new(NormalForm::identity(), Word::empty());
        assert_eq!(phi_hat(&empty), empty);
    }

    #[test]
    fn phi_is_bounded_and_fixes_endpoints() {
        for word in normal_forms_up_to(8) {
            let v = NormalForm::from_word(&word).unwrap();
            for g in Generator::ALL {
                let e = Edge::new(v.clone(), g);
                let p = phi(&e);
                assert!(p.len() <= BOUND_K);
                assert_eq!(p.end(), e.target(), "{e}");
                assert_eq!(phi(&e.inverse()).label, p.label.inverse(), "{e}");
            }
        }
    }

    #[test]
    fn claim_star_examples() {
        let r = verify_claim_star(&Edge::new(nf("yx^3"), Generator::Y));
        assert!(r.passed(), "{:?}", r.violations);
        let named: Vec<Option<BigInt>> = [1, 3, 6].iter().map(|&i| r.checks[i].weight.clone()).collect();
        assert_eq!(named, vec![Some(BigInt::from(1)), Some(BigInt::from(2)), Some(BigInt::from(1))]);

        let r = verify_claim_star(&Edge::new(nf("yx"), Generator::Y));
        assert!(r.passed());
        assert!(r.checks.iter().filter(|c| c.edge.contains('y')).all(|c| c.in_tree));

        let r = verify_claim_star(&Edge::new(nf("yx^2"), Generator::Y));
        assert!(r.passed());
        assert!(r.checks.iter().all(|c| c.in_tree));
    }

    #[test]
    fn claim_star_small_sweep() {
        for word in normal_forms_up_to(7) {
            let v = NormalForm::from_word(&word).unwrap();
            for g in [Generator::Y, Generator::YInv] {
                let e = Edge::new(v.clone(), g);
                if !e.in_tree() {
                    let r = verify_claim_star(&e);
                    assert!(r.passed(), "{e}: {:?}", r.violations);
                }
            }
        }
    }

    #[test]
    fn flow_examples() {
        let t = flow_to_tree(&DirectedPath::new(NormalForm::identity(), w("yxy")), DEFAULT_MAX_ITER);
        assert!(t.terminated && t.n_p() >= 1);
        let t = flow_to_tree(&DirectedPath::new(NormalForm::identity(), w("x^5")), DEFAULT_MAX_ITER);
        assert!(t.terminated && t.n_p() == 0);
        let t = flow_to_tree(&DirectedPath::new(NormalForm::identity(), w("[y,xyx^-2]")), DEFAULT_MAX_ITER);
        assert!(t.terminated);
        assert!(t.iterations.iter().all(|p| p.end().is_empty()));
    }

    #[test]
    fn memoised_depth_matches_iteration() {
        let mut depth = FlowDepth::new();
        for word in normal_forms_up_to(4) {
            let start = NormalForm::from_word(&word).unwrap();
            for label in ["yxy", "yx^3y", "Yx^4Y", "[y,x^2yx^-3]", "xyyxyXy"] {
                let p = DirectedPath::new(start.clone(), w(label));
                let t = flow_to_tree(&p, DEFAULT_MAX_ITER);
                assert!(t.terminated);
                assert_eq!(t.n_p(), depth.path_depth(&p), "{p}");
            }
        }
    }
}
