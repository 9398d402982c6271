//! Van Kampen diagrams for `γ · y · nf(γy)^-1`.
//!
//! The unfilled diagram replays the standard Σ-derivation of `γy` on an edge
//! path: a rule of size `i` glues one 2-cell whose boundary is a cyclic
//! conjugate of
//!
//! ```text
//! Z_i = y x^i y x^(-i-1) y^-1 x^(i+1) y^-1 x^(-i)    (= [y, x^i y x^(-i-1)] rotated)
//! ```
//!
//! and a free reduction folds two edges together. Filling replaces each cell
//! of size `i >= 3` by a disc with boundary `Z_i` built from five smaller
//! pieces of sizes `i-2, 1, i-1, 1, i-2`, so that every cell ends up labelled
//! by one of the two defining relators and a size-`i` cell becomes `C(i)`
//! cells.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::normal_form::{sigma_normalize, NormalForm, SigmaRule};
use crate::ordering::Edge;
use crate::words::{Base, Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("edge {0} lies in the tree")]
    TreeEdge(String),
    #[error("folding would close a sphere at path position {0}")]
    Pocket(usize),
    #[error("cell boundary {0} is not a conjugate of the size-{1} relator")]
    BadCell(String, usize),
    #[error("template boundary does not match cell boundary {0}")]
    Glue(String),
    #[error("rewriting failed: {0}")]
    Rewrite(String),
}

/// `Z_i` as a word.
pub fn box_relator(i: usize) -> Word {
    let i = i as i64;
    let x = |k: i64| Word::power(Base::X, k);
    let (y, yi) = (Word::letter(Generator::Y), Word::letter(Generator::YInv));
    [y.clone(), x(i), y, x(-i - 1), yi.clone(), x(i + 1), yi, x(-i)].iter().fold(Word::empty(), |a, b| a.concat(b))
}

/// True iff `w` is a cyclic rotation of `r` or of `r^-1`.
pub fn is_cyclic_conjugate(w: &Word, r: &Word) -> bool {
    if w.len() != r.len() {
        return false;
    }
    let n = w.len();
    [r.clone(), r.inverse()].iter().any(|c| {
        let l = c.letters();
        (0..n.max(1)).any(|s| (0..n).all(|k| w[k] == l[(k + s) % n]))
    })
}

/// Box picture of the unfilled diagram for a `y`-labelled non-tree edge.
#[derive(Clone, Debug, Serialize)]
pub struct BoxDiagram {
    pub edge: Edge,
    pub target: NormalForm,
    /// Longest common prefix of `γ` and `nf(γy)`.
    pub prefix_path: Word,
    /// `(s_k, e_(k+1))` for `k = 0..m-1`, in rewriting order.
    pub boxes: Vec<(BigInt, i8)>,
}

impl BoxDiagram {
    pub fn sizes(&self) -> Vec<BigInt> {
        self.boxes.iter().map(|b| b.0.clone()).collect()
    }
}

/// Accepts a non-tree edge labelled `y` or `y^-1`; the latter is replaced by
/// its inverse edge.
pub fn box_diagram(e: &Edge) -> Result<BoxDiagram, DiagramError> {
    if e.in_tree() {
        return Err(DiagramError::TreeEdge(e.to_string()));
    }
    let e = if e.label == Generator::YInv { e.inverse() } else { e.clone() };
    let target = e.target();
    let p = e.source.profile();
    let boxes = (0..p.m).map(|k| (p.s[k].clone(), e.source.sign(k + 1))).collect();
    let (g, h) = (e.source.to_word(), target.to_word());
    let common = g.iter().zip(h.iter()).take_while(|(a, b)| a == b).count();
    Ok(BoxDiagram { prefix_path: g.slice(0, common), edge: e, target, boxes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CEdge {
    pub tail: usize,
    pub head: usize,
    pub base: Base,
}

/// An edge traversal: `(edge id, forwards?)`.
pub type Step = (usize, bool);

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub boundary: Vec<Step>,
    /// Size of the relator `Z_size` this cell is labelled by.
    pub size: usize,
}

/// A finite 2-complex with a distinguished boundary cycle.
#[derive(Clone, Debug, Serialize)]
pub struct CellComplex {
    pub num_vertices: usize,
    pub edges: Vec<CEdge>,
    pub cells: Vec<Cell>,
    pub boundary: Vec<Step>,
    pub basepoint: usize,
}

fn letter(edges: &[CEdge], s: Step) -> Generator {
    edges[s.0].base.pow(if s.1 { 1 } else { -1 })
}

fn spell(edges: &[CEdge], steps: &[Step]) -> Word {
    steps.iter().map(|&s| letter(edges, s)).collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ComplexReport {
    pub vertices: usize,
    pub edges: usize,
    pub cells: usize,
    pub euler_characteristic: i64,
    pub boundary_word: String,
    pub problems: Vec<String>,
}

impl ComplexReport {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

impl CellComplex {
    pub fn cell_word(&self, c: &Cell) -> Word {
        spell(&self.edges, &c.boundary)
    }

    pub fn boundary_word(&self) -> Word {
        spell(&self.edges, &self.boundary)
    }

    /// Structural checks: closed cell and boundary cycles, each cell labelled
    /// by a relator of the allowed sizes, every edge used exactly twice,
    /// Euler characteristic 1, connected 1-skeleton.
    pub fn check(&self, allowed_sizes: &[usize]) -> ComplexReport {
        let mut problems = Vec::new();
        let mut uses = vec![0usize; self.edges.len()];
        let walk_closed = |steps: &[Step]| -> bool {
            if steps.is_empty() {
                return true;
            }
            let at = |s: Step| {
                if s.1 {
                    (self.edges[s.0].tail, self.edges[s.0].head)
                } else {
                    (self.edges[s.0].head, self.edges[s.0].tail)
                }
            };
            let first = at(steps[0]).0;
            let mut cur = first;
            for &s in steps {
                let (a, b) = at(s);
                if a != cur {
                    return false;
                }
                cur = b;
            }
            cur == first
        };
        for (k, c) in self.cells.iter().enumerate() {
            let word = self.cell_word(c);
            if !allowed_sizes.contains(&c.size) || !is_cyclic_conjugate(&word, &box_relator(c.size)) {
                problems.push(format!("cell {k} reads {word}"));
            }
            if !walk_closed(&c.boundary) {
                problems.push(format!("cell {k} boundary is not a closed walk"));
            }
            for s in &c.boundary {
                uses[s.0] += 1;
            }
        }
        if !walk_closed(&self.boundary) {
            problems.push("outer boundary is not a closed walk".into());
        }
        for s in &self.boundary {
            uses[s.0] += 1;
        }
        for (e, &u) in uses.iter().enumerate() {
            if u != 2 {
                problems.push(format!("edge {e} used {u} times"));
            }
        }
        let chi = self.num_vertices as i64 - self.edges.len() as i64 + self.cells.len() as i64;
        if chi != 1 {
            problems.push(format!("Euler characteristic {chi}"));
        }
        let mut adj = vec![Vec::new(); self.num_vertices];
        for e in &self.edges {
            adj[e.tail].push(e.head);
            adj[e.head].push(e.tail);
        }
        let mut seen = vec![false; self.num_vertices];
        let mut queue = VecDeque::from([self.basepoint]);
        seen[self.basepoint] = true;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            problems.push("1-skeleton is disconnected".into());
        }
        ComplexReport {
            vertices: self.num_vertices,
            edges: self.edges.len(),
            cells: self.cells.len(),
            euler_characteristic: chi,
            boundary_word: self.boundary_word().to_string(),
            problems,
        }
    }

    /// Graphviz rendering of the 1-skeleton.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph diagram {\n  node [shape=point];\n");
        writeln!(s, "  v{} [shape=circle, label=\"1\"];", self.basepoint).unwrap();
        for e in &self.edges {
            writeln!(s, "  v{} -> v{} [label=\"{}\"];", e.tail, e.head, e.base.letter()).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// Mutable complex under construction, with union-find over vertices and
/// edges for folding.
#[derive(Clone, Default)]
struct Builder {
    vparent: Vec<usize>,
    eparent: Vec<usize>,
    edges: Vec<CEdge>,
    cells: Vec<Cell>,
}

struct Path {
    start: usize,
    steps: Vec<Step>,
}

fn find(p: &mut [usize], mut a: usize) -> usize {
    while p[a] != a {
        p[a] = p[p[a]];
        a = p[a];
    }
    a
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.vparent.push(self.vparent.len());
        self.vparent.len() - 1
    }

    fn v(&mut self, a: usize) -> usize {
        find(&mut self.vparent, a)
    }

    fn e(&mut self, a: usize) -> usize {
        find(&mut self.eparent, a)
    }

    fn edge(&mut self, tail: usize, head: usize, base: Base) -> usize {
        self.edges.push(CEdge { tail, head, base });
        self.eparent.push(self.eparent.len());
        self.edges.len() - 1
    }

    fn ends(&mut self, s: Step) -> (usize, usize) {
        let e = self.e(s.0);
        let CEdge { tail, head, .. } = self.edges[e];
        let (t, h) = (self.v(tail), self.v(head));
        if s.1 {
            (t, h)
        } else {
            (h, t)
        }
    }

    fn letter(&mut self, s: Step) -> Generator {
        let e = self.e(s.0);
        self.edges[e].base.pow(if s.1 { 1 } else { -1 })
    }

    /// Fresh path from `from` to `to` spelling `w`.
    fn fresh_path(&mut self, from: usize, to: usize, w: &Word) -> Vec<Step> {
        let mut out = Vec::with_capacity(w.len());
        let mut cur = from;
        for (k, g) in w.iter().enumerate() {
            let next = if k + 1 == w.len() { to } else { self.vertex() };
            let s = if g.sign() > 0 {
                (self.edge(cur, next, g.base()), true)
            } else {
                (self.edge(next, cur, g.base()), false)
            };
            out.push(s);
            cur = next;
        }
        out
    }

    fn start_path(&mut self, w: &Word) -> Path {
        let start = self.vertex();
        let end = if w.is_empty() { start } else { self.vertex() };
        let steps = self.fresh_path(start, end, w);
        Path { start, steps }
    }

    fn vertex_at(&mut self, path: &Path, k: usize) -> usize {
        if k < path.steps.len() {
            self.ends(path.steps[k]).0
        } else if let Some(&last) = path.steps.last() {
            self.ends(last).1
        } else {
            self.v(path.start)
        }
    }

    /// Replaces `path[pos..pos+|lhs|]` by a fresh path spelling `rhs` and
    /// glues a cell labelled `Z_size` between them.
    fn apply_cell(
        &mut self,
        path: &mut Path,
        pos: usize,
        lhs: &Word,
        rhs: &Word,
        size: usize,
    ) -> Result<(), DiagramError> {
        let old: Vec<Step> = path.steps[pos..pos + lhs.len()].to_vec();
        let spelled: Word = old.iter().map(|&s| self.letter(s)).collect();
        assert_eq!(&spelled, lhs, "path does not spell the rule's left-hand side");
        let a = self.vertex_at(path, pos);
        let b = self.vertex_at(path, pos + lhs.len());
        let new = self.fresh_path(a, b, rhs);
        let mut boundary = old;
        boundary.extend(new.iter().rev().map(|&(e, f)| (e, !f)));
        let word = lhs.concat(&rhs.inverse());
        if !is_cyclic_conjugate(&word, &box_relator(size)) {
            return Err(DiagramError::BadCell(word.to_string(), size));
        }
        self.cells.push(Cell { boundary, size });
        path.steps.splice(pos..pos + lhs.len(), new);
        Ok(())
    }

    /// Identifies `path[pos]` with `path[pos+1]`, which must spell `a a^-1`.
    fn fold(&mut self, path: &mut Path, pos: usize) -> Result<(), DiagramError> {
        let (s1, s2) = (path.steps[pos], path.steps[pos + 1]);
        assert_eq!(self.letter(s1), self.letter(s2).inverse(), "fold on a non-cancelling pair");
        let (e1, e2) = (self.e(s1.0), self.e(s2.0));
        if e1 != e2 {
            let far1 = self.ends(s1).0;
            let far2 = self.ends(s2).1;
            if far1 == far2 {
                return Err(DiagramError::Pocket(pos));
            }
            self.vparent[far2] = far1;
            self.eparent[e2] = e1;
        }
        path.steps.drain(pos..pos + 2);
        Ok(())
    }

    fn fold_all(&mut self, path: &mut Path) -> Result<(), DiagramError> {
        let mut k = 0;
        while k + 1 < path.steps.len() {
            if self.letter(path.steps[k]) == self.letter(path.steps[k + 1]).inverse() {
                self.fold(path, k)?;
                k = k.saturating_sub(1);
            } else {
                k += 1;
            }
        }
        Ok(())
    }

    /// Canonical complex with dense ids.
    fn finish(mut self, boundary: Vec<Step>, basepoint: usize) -> CellComplex {
        let mut vid = HashMap::new();
        let mut eid = HashMap::new();
        let mut edges = Vec::new();
        let nv = self.vparent.len();
        let mut vmap = |b: &mut Builder, v: usize| {
            let r = b.v(v);
            let n = vid.len();
            *vid.entry(r).or_insert(n)
        };
        let mut canon_steps = |b: &mut Builder,
                               steps: &[Step],
                               edges: &mut Vec<CEdge>,
                               vmap: &mut dyn FnMut(&mut Builder, usize) -> usize|
         -> Vec<Step> {
            steps
                .iter()
                .map(|&(e, f)| {
                    let r = b.e(e);
                    let n = eid.len();
                    let id = *eid.entry(r).or_insert_with(|| {
                        let CEdge { tail, head, base } = b.edges[r];
                        let (t, h) = (vmap(b, tail), vmap(b, head));
                        edges.push(CEdge { tail: t, head: h, base });
                        n
                    });
                    (id, f)
                })
                .collect()
        };
        let base = vmap(&mut self, basepoint);
        let boundary = canon_steps(&mut self, &boundary, &mut edges, &mut vmap);
        let cells_in = std::mem::take(&mut self.cells);
        let cells = cells_in
            .iter()
            .map(|c| Cell { boundary: canon_steps(&mut self, &c.boundary, &mut edges, &mut vmap), size: c.size })
            .collect();
        for v in 0..nv {
            vmap(&mut self, v);
        }
        CellComplex { num_vertices: vid.len(), edges, cells, boundary, basepoint: base }
    }

    /// Copies `t` into the builder, gluing its boundary onto `cycle`.
    fn glue(&mut self, t: &CellComplex, cycle: &[Step]) -> Result<(), DiagramError> {
        let n = cycle.len();
        let word: Vec<Generator> = cycle.iter().map(|&s| self.letter(s)).collect();
        let tb = &t.boundary;
        let tword: Vec<Generator> = tb.iter().map(|&s| letter(&t.edges, s)).collect();
        let mut found = None;
        for rev in [false, true] {
            for r in 0..n {
                let matches = (0..n).all(|k| {
                    if rev {
                        word[k] == tword[(r + n - k) % n].inverse()
                    } else {
                        word[k] == tword[(r + k) % n]
                    }
                });
                if matches {
                    if found.is_some() {
                        return Err(DiagramError::Glue("ambiguous rotation".into()));
                    }
                    found = Some((rev, r));
                }
            }
        }
        let (rev, r) = found.ok_or_else(|| DiagramError::Glue(Word::from(word.clone()).to_string()))?;
        let mut emap: HashMap<usize, usize> = HashMap::new();
        let mut vmap: HashMap<usize, usize> = HashMap::new();
        for (k, &s) in cycle.iter().enumerate() {
            let te = if rev { tb[(r + n - k) % n].0 } else { tb[(r + k) % n].0 };
            let ce = self.e(s.0);
            if *emap.entry(te).or_insert(ce) != ce {
                return Err(DiagramError::Glue("template edge glued twice".into()));
            }
            let CEdge { tail, head, .. } = self.edges[ce];
            let (ct, ch) = (self.v(tail), self.v(head));
            for (tv, cv) in [(t.edges[te].tail, ct), (t.edges[te].head, ch)] {
                if *vmap.entry(tv).or_insert(cv) != cv {
                    return Err(DiagramError::Glue("template vertex glued twice".into()));
                }
            }
        }
        for c in &t.cells {
            let mut boundary = Vec::with_capacity(c.boundary.len());
            for &(te, f) in &c.boundary {
                let ce = match emap.get(&te) {
                    Some(&ce) => ce,
                    None => {
                        let CEdge { tail, head, base } = t.edges[te];
                        let tv = *vmap.entry(tail).or_insert_with(|| self.vertex());
                        let hv = *vmap.entry(head).or_insert_with(|| self.vertex());
                        let ce = self.edge(tv, hv, base);
                        emap.insert(te, ce);
                        ce
                    }
                };
                boundary.push((ce, f));
            }
            self.cells.push(Cell { boundary, size: c.size });
        }
        Ok(())
    }
}

/// Recursive layout of a filled box of size `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilledBox {
    pub size: usize,
    pub children: Vec<FilledBox>,
}

impl FilledBox {
    pub fn new(size: usize) -> Self {
        let children = if size >= 3 {
            [size - 2, 1, size - 1, 1, size - 2].iter().map(|&s| FilledBox::new(s)).collect()
        } else {
            Vec::new()
        };
        FilledBox { size, children }
    }

    pub fn cell_count(&self) -> u64 {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(FilledBox::cell_count).sum()
        }
    }
}

/// Memoised discs with boundary `Z_i` over the two defining relators.
#[derive(Default)]
pub struct Filler {
    templates: HashMap<usize, CellComplex>,
}

impl Filler {
    pub fn new() -> Self {
        Self::default()
    }

    /// Disc with boundary `Z_i` whose cells all have size 1 or 2.
    pub fn template(&mut self, i: usize) -> Result<CellComplex, DiagramError> {
        if let Some(t) = self.templates.get(&i) {
            return Ok(t.clone());
        }
        let t = self.build_template(i)?;
        self.templates.insert(i, t.clone());
        Ok(t)
    }

    fn build_template(&mut self, i: usize) -> Result<CellComplex, DiagramError> {
        let w = |s: String| -> Word { s.parse().expect("internal word literal") };
        let k = i as i64;
        let mut b = Builder::default();
        let start = w(format!("yx^{k}y"));
        let mut path = b.start_path(&start);
        let initial = path.steps.clone();
        let base = path.start;
        if i <= 2 {
            let rhs = w(format!("x^{k}yx^{}yx^{}", -k - 1, k + 1));
            b.apply_cell(&mut path, 0, &start, &rhs, i)?;
        } else {
            let steps: [(usize, String, String, usize); 5] = [
                (0, format!("yx^{}", k - 1), format!("x^{}Yx^{}yx^{}y", k - 1, -(k - 2), k - 2), i - 2),
                (3 * i - 3, "yxy".into(), "xyx^-2yx^2".into(), 1),
                (2 * i - 2, format!("yx^{}y", k - 1), format!("x^{}yx^{}yx^{}", k - 1, -k, k), i - 1),
                (i - 1, "Yxy".into(), "xyx^-2Yx^2".into(), 1),
                (i + 3, format!("Yx^{}yx^{}y", -(k - 2), k - 2), format!("x^{}yx^{}", -(k - 1), k - 1), i - 2),
            ];
            for (pos, lhs, rhs, size) in steps {
                b.apply_cell(&mut path, pos, &w(lhs), &w(rhs), size)?;
                b.fold_all(&mut path)?;
            }
        }
        let finals: Word = path.steps.iter().map(|&s| b.letter(s)).collect();
        assert_eq!(finals, w(format!("x^{k}yx^{}yx^{}", -k - 1, k + 1)));
        let mut boundary = initial;
        boundary.extend(path.steps.iter().rev().map(|&(e, f)| (e, !f)));
        let mut b = self.fill_builder(b)?;
        let out = std::mem::take(&mut b).finish(boundary, base);
        Ok(out)
    }

    /// Replaces every cell of size at least 3 by its template.
    fn fill_builder(&mut self, mut b: Builder) -> Result<Builder, DiagramError> {
        let cells = std::mem::take(&mut b.cells);
        for c in cells {
            if c.size <= 2 {
                b.cells.push(c);
            } else {
                let t = self.template(c.size)?;
                b.glue(&t, &c.boundary)?;
            }
        }
        Ok(b)
    }
}

fn rule_words(rule: SigmaRule, eps: Generator) -> (Word, Word, usize) {
    let x = |k: i64| Word::power(Base::X, k);
    let y = Word::letter(Generator::Y);
    let yi = Word::letter(Generator::YInv);
    let e = Word::letter(eps);
    let cat = |parts: &[&Word]| parts.iter().fold(Word::empty(), |a, b| a.concat(b));
    match rule {
        SigmaRule::YRule(i) => {
            let k = i as i64;
            (cat(&[&e, &x(k), &y]), cat(&[&x(k), &y, &x(-k - 1), &e, &x(k + 1)]), i)
        }
        SigmaRule::YInvRule(i) => {
            let k = i as i64;
            (cat(&[&e, &x(k + 1), &yi]), cat(&[&x(k + 1), &yi, &x(-k), &e, &x(k)]), i)
        }
        SigmaRule::FreeReduction => unreachable!(),
    }
}

fn replay(word: &Word) -> Result<(Builder, Vec<Step>, usize), DiagramError> {
    let (_, derivation) = sigma_normalize(word).map_err(|e| DiagramError::Rewrite(e.to_string()))?;
    let mut b = Builder::default();
    let mut path = b.start_path(word);
    let initial = path.steps.clone();
    let base = path.start;
    for step in &derivation.steps {
        match step.rule {
            SigmaRule::FreeReduction => b.fold(&mut path, step.position)?,
            rule => {
                let eps = b.letter(path.steps[step.position]);
                let (lhs, rhs, size) = rule_words(rule, eps);
                b.apply_cell(&mut path, step.position, &lhs, &rhs, size)?;
            }
        }
    }
    let mut boundary = initial;
    boundary.extend(path.steps.iter().rev().map(|&(e, f)| (e, !f)));
    Ok((b, boundary, base))
}

/// The unfilled diagram: one cell per box.
pub fn unfilled(d: &BoxDiagram) -> Result<CellComplex, DiagramError> {
    let word = d.edge.source.to_word().concat(&Word::letter(Generator::Y));
    let (b, boundary, base) = replay(&word)?;
    Ok(b.finish(boundary, base))
}

/// The filled diagram, every cell labelled by a defining relator.
pub fn fill(d: &BoxDiagram) -> Result<CellComplex, DiagramError> {
    fill_with(&mut Filler::new(), d)
}

pub fn fill_with(filler: &mut Filler, d: &BoxDiagram) -> Result<CellComplex, DiagramError> {
    let word = d.edge.source.to_word().concat(&Word::letter(Generator::Y));
    let (b, boundary, base) = replay(&word)?;
    let b = filler.fill_builder(b)?;
    Ok(b.finish(boundary, base))
}

pub fn cell_count(e: &Edge) -> Result<usize, DiagramError> {
    Ok(fill(&box_diagram(e)?)?.cells.len())
}

/// Expected outer boundary `γ y nf(γy)^-1` of a box diagram.
pub fn expected_boundary(d: &BoxDiagram) -> Word {
    let mut w = d.edge.source.to_word();
    w.push(Generator::Y);
    w.concat(&d.target.to_word().inverse())
}

pub fn size_usize(s: &BigInt) -> usize {
    s.to_usize().expect("box size too large to build")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::normal_forms_up_to;
    use crate::ordering::{c_seq, weight};
    use crate::words::parse;

    fn edge(s: &str) -> Edge {
        Edge::new(NormalForm::from_word(&parse(s).unwrap()).unwrap(), Generator::Y)
    }

    #[test]
    fn small_relators_are_the_presentation() {
        let r1: Word = parse("[y,xyx^-2]").unwrap();
        let r2: Word = parse("[y,x^2yx^-3]").unwrap();
        assert!(is_cyclic_conjugate(&box_relator(1), &r1));
        assert!(is_cyclic_conjugate(&box_relator(2), &r2));
        assert!(!is_cyclic_conjugate(&box_relator(1), &r2));
    }

    #[test]
    fn box_diagram_examples() {
        let d = box_diagram(&edge("yx")).unwrap();
        assert_eq!(d.boxes, vec![(BigInt::from(1), 1)]);
        let d = box_diagram(&edge("yx^3")).unwrap();
        assert_eq!(d.sizes(), vec![BigInt::from(3)]);
        assert!(box_diagram(&edge("y")).is_err());
    }

    #[test]
    fn templates_have_c_cells() {
        let mut f = Filler::new();
        for i in 1..=8 {
            let t = f.template(i).unwrap();
            let rep = t.check(&[1, 2]);
            assert!(rep.ok(), "size {i}: {:?}", rep.problems);
            assert_eq!(t.boundary_word(), box_relator(i));
            assert_eq!(BigInt::from(t.cells.len()), c_seq(&BigInt::from(i)).unwrap());
            assert_eq!(FilledBox::new(i).cell_count(), t.cells.len() as u64);
        }
    }

    #[test]
    fn filled_box_structure() {
        let b = FilledBox::new(5);
        let sizes: Vec<usize> = b.children.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![3, 1, 4, 1, 3]);
        assert_eq!(b.children.iter().filter(|c| c.children.is_empty() && c.size == 1).count(), 2);
    }

    #[test]
    fn fill_examples() {
        for (src, cells) in [("yx", 1), ("yx^3", 5), ("yx^-1yx^-2yx^4", 11)] {
            let d = box_diagram(&edge(src)).unwrap();
            let c = fill(&d).unwrap();
            assert_eq!(c.cells.len(), cells, "{src}");
            let rep = c.check(&[1, 2]);
            assert!(rep.ok(), "{src}: {:?}", rep.problems);
            assert_eq!(c.boundary_word(), expected_boundary(&d));
        }
    }

    #[test]
    fn unfilled_has_one_cell_per_box() {
        let d = box_diagram(&edge("yx^-1yx^-2yx^4")).unwrap();
        let c = unfilled(&d).unwrap();
        let sizes: Vec<usize> = c.cells.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![4, 2, 1]);
        assert!(c.check(&[1, 2, 3, 4]).ok());
    }

    #[test]
    fn cell_count_equals_weight_small() {
        let mut filler = Filler::new();
        for w in normal_forms_up_to(6) {
            let e = Edge::new(NormalForm::from_word(&w).unwrap(), Generator::Y);
            if e.in_tree() {
                continue;
            }
            let d = box_diagram(&e).unwrap();
            let c = fill_with(&mut filler, &d).unwrap();
            assert_eq!(BigInt::from(c.cells.len()), weight(&e).unwrap(), "{e}");
            assert!(c.check(&[1, 2]).ok(), "{e}");
        }
    }

    #[test]
    fn dot_export_mentions_every_edge() {
        let c = fill(&box_diagram(&edge("yx")).unwrap()).unwrap();
        let dot = c.to_dot();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), c.edges.len());
    }
}
