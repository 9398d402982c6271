//! Finite automata over the generator alphabet `A = {x, X, y, Y}` and over
//! padded triples `(A ∪ {$})^3`.
//!
//! A padded triple encodes `(u, v, w)` as a single word of length
//! `max(|u|, |v|, |w|)`, each coordinate right-padded with `$`. The symbol
//! `(c1, c2, c3)` has index `25·c1 + 5·c2 + c3` where letters take their
//! generator index and `$` is 4.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::normal_form::NormalForm;
use crate::words::{Generator, Word};

pub const PAD: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("alphabet mismatch: {0:?} vs {1:?}")]
    AlphabetMismatch(Alphabet, Alphabet),
    #[error("malformed automaton table at line {line}: {message}")]
    Table { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// The four generators.
    Letters,
    /// Padded triples, 125 symbols.
    Padded3,
}

impl Alphabet {
    pub fn size(self) -> usize {
        match self {
            Alphabet::Letters => 4,
            Alphabet::Padded3 => 125,
        }
    }

    pub fn symbol_name(self, s: usize) -> String {
        const NAMES: [char; 5] = ['x', 'X', 'y', 'Y', '$'];
        match self {
            Alphabet::Letters => NAMES[s].to_string(),
            Alphabet::Padded3 => [NAMES[s / 25], NAMES[(s / 5) % 5], NAMES[s % 5]].iter().collect(),
        }
    }

    pub fn symbol_index(self, name: &str) -> Option<usize> {
        let idx = |c: char| "xXyY$".find(c);
        let cs: Vec<char> = name.chars().collect();
        match (self, cs.as_slice()) {
            (Alphabet::Letters, [c]) => idx(*c).filter(|&i| i < 4),
            (Alphabet::Padded3, [a, b, c]) => Some(25 * idx(*a)? + 5 * idx(*b)? + idx(*c)?),
            _ => None,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Alphabet::Letters => "A",
            Alphabet::Padded3 => "B",
        }
    }
}

pub fn letters(w: &Word) -> Vec<usize> {
    w.iter().map(Generator::index).collect()
}

/// Padded encoding of a word triple.
pub fn pad_triple(u: &Word, v: &Word, w: &Word) -> Vec<usize> {
    let n = u.len().max(v.len()).max(w.len());
    let at = |z: &Word, k: usize| if k < z.len() { z[k].index() } else { PAD };
    (0..n).map(|k| 25 * at(u, k) + 5 * at(v, k) + at(w, k)).collect()
}

/// Nondeterministic automaton with ε-moves.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    trans: Vec<Vec<(usize, usize)>>,
    eps: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

impl Nfa {
    fn with_states(alphabet: Alphabet, n: usize) -> Self {
        Nfa { alphabet, trans: vec![Vec::new(); n], eps: vec![Vec::new(); n], initial: 0, accepting: vec![false; n] }
    }

    fn absorb(&mut self, other: &Nfa) -> usize {
        let off = self.trans.len();
        for q in 0..other.trans.len() {
            self.trans.push(other.trans[q].iter().map(|&(s, d)| (s, d + off)).collect());
            self.eps.push(other.eps[q].iter().map(|d| d + off).collect());
            self.accepting.push(false);
        }
        off
    }

    /// Accepts exactly the one-letter words over `symbols`.
    pub fn symbols(alphabet: Alphabet, symbols: &[usize]) -> Self {
        let mut n = Self::with_states(alphabet, 2);
        for &s in symbols {
            n.trans[0].push((s, 1));
        }
        n.accepting[1] = true;
        n
    }

    pub fn word(alphabet: Alphabet, word: &[usize]) -> Self {
        let mut n = Self::with_states(alphabet, word.len() + 1);
        for (k, &s) in word.iter().enumerate() {
            n.trans[k].push((s, k + 1));
        }
        n.accepting[word.len()] = true;
        n
    }

    /// `Σ*`.
    pub fn any_star(alphabet: Alphabet) -> Self {
        let mut n = Self::with_states(alphabet, 1);
        for s in 0..alphabet.size() {
            n.trans[0].push((s, 0));
        }
        n.accepting[0] = true;
        n
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let mut n = self.clone();
        let off = n.absorb(other);
        for q in 0..self.trans.len() {
            if self.accepting[q] {
                n.eps[q].push(other.initial + off);
                n.accepting[q] = false;
            }
        }
        for q in 0..other.trans.len() {
            n.accepting[q + off] = other.accepting[q];
        }
        n
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let mut n = Self::with_states(self.alphabet, 1);
        for part in [self, other] {
            let off = n.absorb(part);
            n.eps[0].push(part.initial + off);
            for q in 0..part.trans.len() {
                n.accepting[q + off] = part.accepting[q];
            }
        }
        n
    }

    pub fn star(&self) -> Nfa {
        let mut n = Self::with_states(self.alphabet, 1);
        let off = n.absorb(self);
        n.eps[0].push(self.initial + off);
        n.accepting[0] = true;
        for q in 0..self.trans.len() {
            if self.accepting[q] {
                n.eps[q + off].push(0);
            }
        }
        n
    }

    fn closure(&self, set: &mut Vec<usize>) {
        let mut seen = vec![false; self.trans.len()];
        let mut stack = set.clone();
        for &q in set.iter() {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &d in &self.eps[q] {
                if !seen[d] {
                    seen[d] = true;
                    set.push(d);
                    stack.push(d);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
    }

    /// Subset construction.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.size();
        let mut start = vec![self.initial];
        self.closure(&mut start);
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        ids.insert(start, 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let set = sets[i].clone();
            let mut row = vec![Vec::new(); k];
            for &q in &set {
                for &(s, d) in &self.trans[q] {
                    row[s].push(d);
                }
            }
            for mut target in row {
                target.sort_unstable();
                target.dedup();
                self.closure(&mut target);
                let next = sets.len();
                let id = *ids.entry(target.clone()).or_insert_with(|| {
                    sets.push(target);
                    next
                });
                trans.push(id);
            }
            i += 1;
        }
        let accepting = sets.iter().map(|s| s.iter().any(|&q| self.accepting[q])).collect();
        Dfa { alphabet: self.alphabet, trans, accepting, initial: 0 }
    }
}

/// Complete deterministic automaton. `trans[q * k + s]` is the successor of
/// state `q` on symbol `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    trans: Vec<usize>,
    accepting: Vec<bool>,
    initial: usize,
}

impl Dfa {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: usize, s: usize) -> usize {
        self.trans[q * self.alphabet.size() + s]
    }

    pub fn run(&self, q: usize, syms: &[usize]) -> usize {
        syms.iter().fold(q, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, syms: &[usize]) -> bool {
        self.accepting[self.run(self.initial, syms)]
    }

    pub fn accepts_word(&self, w: &Word) -> bool {
        self.accepts(&letters(w))
    }

    pub fn accepts_triple(&self, u: &Word, v: &Word, w: &Word) -> bool {
        self.accepts(&pad_triple(u, v, w))
    }

    pub fn empty(alphabet: Alphabet) -> Dfa {
        Dfa { alphabet, trans: vec![0; alphabet.size()], accepting: vec![false], initial: 0 }
    }

    pub fn singleton(alphabet: Alphabet, word: &[usize]) -> Dfa {
        Nfa::word(alphabet, word).determinize().minimize()
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.size();
        let mut n = Nfa::with_states(self.alphabet, self.num_states());
        for q in 0..self.num_states() {
            for s in 0..k {
                n.trans[q].push((s, self.step(q, s)));
            }
        }
        n.initial = self.initial;
        n.accepting = self.accepting.clone();
        n
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.accepting.iter_mut().for_each(|a| *a = !*a);
        d
    }

    fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Result<Dfa, AutomatonError> {
        if self.alphabet != other.alphabet {
            return Err(AutomatonError::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        let k = self.alphabet.size();
        let mut ids = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        ids.insert(pairs[0], 0usize);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for s in 0..k {
                let t = (self.step(p, s), other.step(q, s));
                let next = pairs.len();
                let id = *ids.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    next
                });
                trans.push(id);
            }
            i += 1;
        }
        let accepting = pairs.iter().map(|&(p, q)| keep(self.accepting[p], other.accepting[q])).collect();
        Ok(Dfa { alphabet: self.alphabet, trans, accepting, initial: 0 })
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        self.product(other, |a, b| a || b)
    }

    pub fn concat(&self, other: &Dfa) -> Result<Dfa, AutomatonError> {
        if self.alphabet != other.alphabet {
            return Err(AutomatonError::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        Ok(self.to_nfa().concat(&other.to_nfa()).determinize().minimize())
    }

    pub fn star(&self) -> Dfa {
        self.to_nfa().star().determinize().minimize()
    }

    /// `{w | wz ∈ L}`.
    pub fn quotient(&self, z: &[usize]) -> Dfa {
        let mut d = self.clone();
        d.accepting = (0..self.num_states()).map(|q| self.accepting[self.run(q, z)]).collect();
        d
    }

    fn reachable(&self) -> Vec<usize> {
        let k = self.alphabet.size();
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for s in 0..k {
                let d = self.step(q, s);
                if !seen[d] {
                    seen[d] = true;
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
        order
    }

    /// Minimal complete DFA by partition refinement, with states numbered in
    /// breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.size();
        let live = self.reachable();
        let mut class: Vec<usize> = vec![0; self.num_states()];
        for &q in &live {
            class[q] = self.accepting[q] as usize;
        }
        let mut count = 0;
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; self.num_states()];
            for &q in &live {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|s| class[self.step(q, s)]));
                let n = ids.len();
                next[q] = *ids.entry(sig).or_insert(n);
            }
            let n = ids.len();
            class = next;
            if n == count {
                break;
            }
            count = n;
        }
        // renumber breadth-first so equal languages give identical tables
        let mut order: Vec<usize> = Vec::new();
        let mut new_id = vec![usize::MAX; count];
        let mut rep = vec![0; count];
        for &q in &live {
            rep[class[q]] = q;
        }
        let mut queue = VecDeque::from([class[self.initial]]);
        new_id[class[self.initial]] = 0;
        order.push(class[self.initial]);
        while let Some(c) = queue.pop_front() {
            for s in 0..k {
                let d = class[self.step(rep[c], s)];
                if new_id[d] == usize::MAX {
                    new_id[d] = order.len();
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut trans = Vec::with_capacity(order.len() * k);
        for &c in &order {
            for s in 0..k {
                trans.push(new_id[class[self.step(rep[c], s)]]);
            }
        }
        let accepting = order.iter().map(|&c| self.accepting[rep[c]]).collect();
        Dfa { alphabet: self.alphabet, trans, accepting, initial: 0 }
    }

    /// True iff no word is accepted.
    pub fn is_empty_language(&self) -> bool {
        self.reachable().iter().all(|&q| !self.accepting[q])
    }

    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet && self.minimize() == other.minimize()
    }

    /// Plain-text transition table.
    pub fn to_table(&self) -> String {
        let k = self.alphabet.size();
        let mut out = String::new();
        let names: Vec<String> = (0..k).map(|s| self.alphabet.symbol_name(s)).collect();
        writeln!(out, "alphabet\t{}\t{}", self.alphabet.tag(), names.join(" ")).unwrap();
        writeln!(out, "initial\t{}", self.initial).unwrap();
        let acc: Vec<String> = (0..self.num_states()).filter(|&q| self.accepting[q]).map(|q| q.to_string()).collect();
        writeln!(out, "accepting\t{}", acc.join(" ")).unwrap();
        for q in 0..self.num_states() {
            for (s, name) in names.iter().enumerate() {
                writeln!(out, "{q}\t{name}\t{}", self.step(q, s)).unwrap();
            }
        }
        out
    }

    pub fn from_table(text: &str) -> Result<Dfa, AutomatonError> {
        let err = |line: usize, message: &str| AutomatonError::Table { line, message: message.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (ln, header) = lines.next().ok_or_else(|| err(1, "empty table"))?;
        let alphabet = match header.split('\t').nth(1) {
            Some("A") => Alphabet::Letters,
            Some("B") => Alphabet::Padded3,
            _ => return Err(err(ln, "expected alphabet header")),
        };
        let (ln, init) = lines.next().ok_or_else(|| err(2, "missing initial"))?;
        let initial: usize = init
            .strip_prefix("initial\t")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err(ln, "expected initial state"))?;
        let (ln, acc) = lines.next().ok_or_else(|| err(3, "missing accepting"))?;
        let acc = acc.strip_prefix("accepting\t").ok_or_else(|| err(ln, "expected accepting line"))?;
        let acc: Vec<usize> =
            acc.split_whitespace().map(|v| v.parse().map_err(|_| err(ln, "bad state id"))).collect::<Result<_, _>>()?;
        let k = alphabet.size();
        let mut edges = Vec::new();
        for (ln, line) in lines {
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('\t').collect();
            if parts.len() != 3 {
                return Err(err(ln, "expected src, symbol, dst"));
            }
            let src: usize = parts[0].parse().map_err(|_| err(ln, "bad source"))?;
            let sym = alphabet.symbol_index(parts[1]).ok_or_else(|| err(ln, "unknown symbol"))?;
            let dst: usize = parts[2].parse().map_err(|_| err(ln, "bad target"))?;
            edges.push((src, sym, dst));
        }
        let n = edges.iter().map(|&(a, _, b)| a.max(b) + 1).max().unwrap_or(1).max(initial + 1);
        let mut trans = vec![usize::MAX; n * k];
        for (src, sym, dst) in edges {
            trans[src * k + sym] = dst;
        }
        if trans.contains(&usize::MAX) {
            return Err(err(0, "transition table is not complete"));
        }
        let mut accepting = vec![false; n];
        for q in acc {
            *accepting.get_mut(q).ok_or_else(|| err(3, "accepting state out of range"))? = true;
        }
        Ok(Dfa { alphabet, trans, accepting, initial })
    }
}

/// Synchronous product of three letter languages, over padded triples.
pub fn padded_product(l1: &Dfa, l2: &Dfa, l3: &Dfa) -> Dfa {
    let comps = [l1, l2, l3];
    type Key = [(usize, bool); 3];
    const SINK: usize = 0;
    let start: Key = [(l1.initial, false), (l2.initial, false), (l3.initial, false)];
    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Option<Key>> = vec![None, Some(start)];
    ids.insert(start, 1);
    let mut trans = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let key = keys[i];
        for sym in 0..125 {
            let target = key.and_then(|key| {
                let cs = [sym / 25, (sym / 5) % 5, sym % 5];
                if cs.iter().all(|&c| c == PAD) {
                    return None;
                }
                let mut out = key;
                for j in 0..3 {
                    let (q, done) = key[j];
                    if cs[j] == PAD {
                        out[j] = (q, true);
                    } else if done {
                        return None;
                    } else {
                        out[j] = (comps[j].step(q, cs[j]), false);
                    }
                }
                Some(out)
            });
            let id = match target {
                None => SINK,
                Some(t) => {
                    let next = keys.len();
                    *ids.entry(t).or_insert_with(|| {
                        keys.push(Some(t));
                        next
                    })
                }
            };
            trans.push(id);
        }
        i += 1;
    }
    let accepting = keys
        .iter()
        .map(|k| match k {
            None => false,
            Some(k) => (0..3).all(|j| comps[j].accepting[k[j].0]),
        })
        .collect();
    Dfa { alphabet: Alphabet::Padded3, trans, accepting, initial: 1 }.minimize()
}

fn sym(g: Generator) -> usize {
    g.index()
}

fn word_syms(w: &str) -> Vec<usize> {
    letters(&w.parse().expect("internal word literal"))
}

fn lit(w: &[usize]) -> Nfa {
    Nfa::word(Alphabet::Letters, w)
}

/// DFA for N: words containing none of `a a^-1`, `y^e x x* y`,
/// `y^e x x x* y^-1`.
pub fn nf_automaton() -> Dfa {
    let a = Alphabet::Letters;
    let (x, y, yi) = (sym(Generator::X), sym(Generator::Y), sym(Generator::YInv));
    let ys = Nfa::symbols(a, &[y, yi]);
    let xstar = Nfa::symbols(a, &[x]).star();
    let mut bad = Nfa::symbols(a, &[]);
    for g in Generator::ALL {
        bad = bad.union(&lit(&[sym(g), sym(g.inverse())]));
    }
    bad = bad.union(&ys.concat(&lit(&[x])).concat(&xstar).concat(&lit(&[y])));
    bad = bad.union(&ys.concat(&lit(&[x, x])).concat(&xstar).concat(&lit(&[yi])));
    let any = Nfa::any_star(a);
    any.concat(&bad).concat(&any).determinize().minimize().complement().minimize()
}

/// `A* z`.
pub fn ends_with(z: &[usize]) -> Dfa {
    Nfa::any_star(Alphabet::Letters).concat(&lit(z)).determinize().minimize()
}

/// `A* y^{±1} A* x^k`.
pub fn has_y_then_ends_with_x(k: usize) -> Dfa {
    let a = Alphabet::Letters;
    let any = Nfa::any_star(a);
    let ys = Nfa::symbols(a, &[sym(Generator::Y), sym(Generator::YInv)]);
    any.concat(&ys).concat(&any).concat(&lit(&vec![sym(Generator::X); k])).determinize().minimize()
}

/// The five families of terms whose union is Graph(Φ), each as
/// `(first-coordinate language, generator, output label)`.
pub fn graph_phi_terms(n: &Dfa) -> Vec<(Dfa, Generator, Word)> {
    let mut terms = Vec::new();
    for a in Generator::ALL {
        let tree = n.quotient(&[sym(a)]).union(&n.intersect(&ends_with(&[sym(a.inverse())])).unwrap()).unwrap();
        terms.push((tree.minimize(), a, Word::letter(a)));
    }
    for eps in ["y", "Y"] {
        for i in [1i64, 2] {
            let e = if eps == "y" { 1 } else { -1 };
            let z = format!("{eps}x^{i}");
            let label = format!("x^{}{}x^{}yx^{}{}x^{}", -i, if e == 1 { "Y" } else { "y" }, i, -i - 1, eps, i + 1);
            terms.push((
                n.intersect(&ends_with(&word_syms(&z))).unwrap().minimize(),
                Generator::Y,
                label.parse().unwrap(),
            ));
        }
        for i in [2i64, 3] {
            let e = if eps == "y" { 1 } else { -1 };
            let z = format!("{eps}x^{i}");
            let label = format!("x^{}{}x^{}Yx^{}{}x^{}", -i, if e == 1 { "Y" } else { "y" }, i, -i + 1, eps, i - 1);
            terms.push((
                n.intersect(&ends_with(&word_syms(&z))).unwrap().minimize(),
                Generator::YInv,
                label.parse().unwrap(),
            ));
        }
    }
    terms.push((
        n.intersect(&has_y_then_ends_with_x(3)).unwrap().minimize(),
        Generator::Y,
        "XYxyXXyxx".parse().unwrap(),
    ));
    terms.push((
        n.intersect(&has_y_then_ends_with_x(4)).unwrap().minimize(),
        Generator::YInv,
        "XXYxxYXyx".parse().unwrap(),
    ));
    terms
}

/// Synchronous acceptor for `{(γ, a, lbl Φ(e_{γ,a}))}`.
pub fn graph_phi_automaton() -> Dfa {
    let n = nf_automaton();
    let mut acc = Dfa::empty(Alphabet::Padded3);
    for (left, a, label) in graph_phi_terms(&n) {
        let mid = Dfa::singleton(Alphabet::Letters, &[sym(a)]);
        let right = Dfa::singleton(Alphabet::Letters, &letters(&label));
        acc = acc.union(&padded_product(&left, &mid, &right)).unwrap().minimize();
    }
    acc
}

/// Padded encoding of `(γ, a, label)` for a normal form.
pub fn encode_graph_triple(gamma: &NormalForm, a: Generator, label: &Word) -> Vec<usize> {
    pad_triple(&gamma.to_word(), &Word::letter(a), label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::{is_normal_form, normal_forms_up_to};
    use crate::words::{all_words_up_to, parse};

    fn w(s: &str) -> Word {
        parse(s).unwrap()
    }

    #[test]
    fn nf_automaton_examples() {
        let n = nf_automaton();
        assert!(n.accepts_word(&w("")));
        assert!(!n.accepts_word(&w("yxy")));
        assert!(n.accepts_word(&w("xyx^-2yx^2")));
    }

    #[test]
    fn nf_automaton_matches_predicate() {
        let n = nf_automaton();
        for word in all_words_up_to(9) {
            assert_eq!(n.accepts_word(&word), is_normal_form(&word), "{word}");
        }
    }

    #[test]
    fn minimal_nf_automaton_size() {
        let n = nf_automaton();
        assert_eq!(n.num_states(), n.minimize().num_states());
        assert_eq!(n.num_states(), 8);
    }

    #[test]
    fn nf_residual_classes_by_brute_force() {
        let suffixes: Vec<Word> = all_words_up_to(5).collect();
        let mut classes = std::collections::HashSet::new();
        for prefix in all_words_up_to(5) {
            let sig: Vec<bool> = suffixes.iter().map(|z| is_normal_form(&prefix.concat(z))).collect();
            classes.insert(sig);
        }
        assert_eq!(classes.len(), nf_automaton().num_states());
    }

    #[test]
    fn quotient_examples() {
        let n = nf_automaton();
        assert!(n.quotient(&word_syms("x")).accepts_word(&w("yx")));
        assert!(!n.quotient(&word_syms("y")).accepts_word(&w("yx")));
        assert!(n.quotient(&[]).equivalent(&n));
    }

    #[test]
    fn boolean_ops() {
        let n = nf_automaton();
        let guard = n.intersect(&has_y_then_ends_with_x(2)).unwrap();
        assert!(guard.accepts_word(&w("yx^2")));
        assert!(!guard.accepts_word(&w("x^2")));
        assert!(n.complement().complement().equivalent(&n));
        assert!(n.union(&Dfa::empty(Alphabet::Letters)).unwrap().equivalent(&n));
        assert!(n.union(&Dfa::empty(Alphabet::Padded3)).is_err());
        let ab = Dfa::singleton(Alphabet::Letters, &word_syms("xy"))
            .concat(&Dfa::singleton(Alphabet::Letters, &word_syms("Y")))
            .unwrap();
        assert!(ab.accepts_word(&w("xyY")));
        assert!(!ab.accepts_word(&w("xy")));
        let st = Dfa::singleton(Alphabet::Letters, &word_syms("xy")).star();
        assert!(st.accepts_word(&w("")) && st.accepts_word(&w("xyxy")) && !st.accepts_word(&w("xyx")));
    }

    #[test]
    fn minimize_is_idempotent() {
        let n = nf_automaton();
        let m = n.minimize();
        assert_eq!(m, m.minimize());
        let g = n.intersect(&ends_with(&word_syms("yx"))).unwrap().minimize();
        assert_eq!(g, g.minimize());
    }

    #[test]
    fn padded_product_examples() {
        let a = Alphabet::Letters;
        let l1 = Dfa::singleton(a, &word_syms("yx"));
        let l2 = Dfa::singleton(a, &word_syms("y"));
        let l3 = Dfa::singleton(a, &word_syms("XYxyXXyxx"));
        let p = padded_product(&l1, &l2, &l3);
        assert!(p.accepts_triple(&w("yx"), &w("y"), &w("XYxyXXyxx")));
        let accepted: u128 = (0..=10usize).map(|len| count_accepted(&p, len)).sum();
        assert_eq!(accepted, 1);
        assert_eq!(count_accepted(&p, 9), 1);
        assert!(padded_product(&Dfa::empty(a), &l2, &l3).is_empty_language());
        let e = Dfa::singleton(a, &[]);
        let pe = padded_product(&e, &e, &e);
        assert!(pe.accepts(&[]));
        assert_eq!(count_accepted(&pe, 1), 0);
    }

    fn count_accepted(d: &Dfa, len: usize) -> u128 {
        let k = d.alphabet().size();
        let mut counts = vec![0u128; d.num_states()];
        counts[d.initial()] = 1;
        for _ in 0..len {
            let mut next = vec![0u128; d.num_states()];
            for q in 0..d.num_states() {
                for s in 0..k {
                    next[d.step(q, s)] += counts[q];
                }
            }
            counts = next;
        }
        (0..d.num_states()).filter(|&q| d.is_accepting(q)).map(|q| counts[q]).sum()
    }

    #[test]
    fn graph_phi_automaton_examples() {
        let g = graph_phi_automaton();
        assert!(g.accepts_triple(&w("yx"), &w("y"), &w("XYxyXXyxx")));
        assert!(!g.accepts_triple(&w("yx"), &w("y"), &w("y")));
        assert!(g.accepts_triple(&w("y"), &w("x"), &w("x")));
        assert!(!g.accepts_triple(&w("yxy"), &w("x"), &w("x")));
    }

    #[test]
    fn table_round_trip() {
        let n = nf_automaton();
        let t = n.to_table();
        assert!(t.starts_with("alphabet\tA\tx X y Y\ninitial\t0\naccepting\t"));
        assert_eq!(Dfa::from_table(&t).unwrap(), n);
        let g = graph_phi_automaton();
        assert_eq!(Dfa::from_table(&g.to_table()).unwrap(), g);
        assert!(Dfa::from_table("alphabet\tQ\n").is_err());
    }

    #[test]
    fn every_normal_form_has_a_graph_row_per_generator() {
        let n = nf_automaton();
        let terms = graph_phi_terms(&n);
        for word in normal_forms_up_to(6) {
            for a in Generator::ALL {
                let hits = terms.iter().filter(|(l, g, _)| *g == a && l.accepts_word(&word)).count();
                assert_eq!(hits, 1, "{word} {a}");
            }
        }
    }
}
