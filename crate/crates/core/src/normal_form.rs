//! The rewriting system Σ, its irreducible words N, and arithmetic on
//! normal forms.
//!
//! Σ consists of the free reductions `a a^-1 -> 1` together with, for every
//! `i >= 1` and `e = ±1`,
//!
//! ```text
//! y-rule of size i:     y^e x^i y       ->  x^i y x^(-i-1) y^e x^(i+1)
//! y^-1-rule of size i:  y^e x^(i+1) y^-1 -> x^(i+1) y^-1 x^(-i) y^e x^i
//! ```
//!
//! A normal form `x^(i_n) y^(e_n) ... x^(i_1) y^(e_1) x^(i_0)` is stored
//! run-length: `exps[k] = i_k` for `k = 0..=n` and `signs[k-1] = e_k`. The
//! index `k` grows from the right end of the word, matching the cumulative
//! exponents `s_k = i_0 + ... + i_k`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{Base, Generator, RunWord, Word};

/// Default cap on intermediate word length during Σ-rewriting.
pub const DEFAULT_MAX_LEN: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("intermediate word length {len} exceeds cap {cap}")]
    LengthCap { len: usize, cap: usize },
    #[error("word {0} is not in normal form")]
    NotNormal(String),
    #[error("edge ({from}, {label}) lies in the tree")]
    TreeEdge { from: String, label: Generator },
}

/// An element of N in run-length form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    exps: Vec<BigInt>,
    signs: Vec<i8>,
}

/// Cumulative exponents `s_0..=s_n` and the two cutoffs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentProfile {
    /// `s[k] = s_k`.
    pub s: Vec<BigInt>,
    /// `min{k | s_k <= 0}`, or `n`.
    pub m: usize,
    /// `min{k | s_k <= 1}`, or `n`.
    pub m_prime: usize,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm { exps: vec![BigInt::zero()], signs: Vec::new() }
    }

    /// Builds from raw vectors, checking the defining conditions of N.
    pub fn from_parts(exps: Vec<BigInt>, signs: Vec<i8>) -> Result<Self, NormalFormError> {
        let nf = NormalForm { exps, signs };
        if nf.exps.len() != nf.signs.len() + 1 || !nf.satisfies_conditions() {
            return Err(NormalFormError::NotNormal(format!("{:?}/{:?}", nf.exps, nf.signs)));
        }
        Ok(nf)
    }

    /// Reads a word already in N.
    pub fn from_word(w: &Word) -> Result<Self, NormalFormError> {
        if !is_normal_form(w) {
            return Err(NormalFormError::NotNormal(w.to_string()));
        }
        Ok(Self::from_word_unchecked(w))
    }

    fn from_word_unchecked(w: &Word) -> Self {
        let mut exps = vec![BigInt::zero()];
        let mut signs = Vec::new();
        for g in w.iter().rev() {
            match g.base() {
                Base::X => *exps.last_mut().unwrap() += g.sign(),
                Base::Y => {
                    signs.push(g.sign());
                    exps.push(BigInt::zero());
                }
            }
        }
        NormalForm { exps, signs }
    }

    /// `n`, the number of `y^±1` letters.
    pub fn n(&self) -> usize {
        self.signs.len()
    }

    /// `exps()[k] = i_k`.
    pub fn exps(&self) -> &[BigInt] {
        &self.exps
    }

    /// `signs()[k-1] = e_k`.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn i0(&self) -> &BigInt {
        &self.exps[0]
    }

    /// `e_k` for `1 <= k <= n`.
    pub fn sign(&self, k: usize) -> i8 {
        self.signs[k - 1]
    }

    fn satisfies_conditions(&self) -> bool {
        let n = self.n();
        (1..n).all(|j| {
            let i = &self.exps[j];
            let e = self.signs[j - 1];
            if i.is_zero() && e != self.signs[j] {
                return false;
            }
            if e == 1 {
                !i.is_positive()
            } else {
                *i <= BigInt::one()
            }
        })
    }

    pub fn to_run_word(&self) -> RunWord {
        let mut rw = RunWord::new();
        for k in (0..=self.n()).rev() {
            rw.push(Base::X, self.exps[k].clone());
            if k > 0 {
                rw.push(Base::Y, BigInt::from(self.signs[k - 1]));
            }
        }
        rw
    }

    pub fn to_word(&self) -> Word {
        self.to_run_word().to_word()
    }

    /// Number of letters in the spelled word.
    pub fn len(&self) -> usize {
        let xs: BigInt = self.exps.iter().map(|e| e.abs()).sum();
        xs.to_usize().expect("normal form too long to address") + self.n()
    }

    pub fn is_empty(&self) -> bool {
        self.n() == 0 && self.exps[0].is_zero()
    }

    pub fn profile(&self) -> ExponentProfile {
        let n = self.n();
        let mut s = Vec::with_capacity(n + 1);
        let mut acc = BigInt::zero();
        for e in &self.exps {
            acc += e;
            s.push(acc.clone());
        }
        let m = s.iter().position(|v| !v.is_positive()).unwrap_or(n).min(n);
        let m_prime = s.iter().position(|v| *v <= BigInt::one()).unwrap_or(n).min(n);
        ExponentProfile { s, m, m_prime }
    }

    /// Whether the edge from `self` labelled `a` lies in the normal-form tree.
    pub fn edge_in_tree(&self, a: Generator) -> bool {
        match a {
            Generator::X | Generator::XInv => true,
            Generator::Y => self.n() == 0 || !self.i0().is_positive(),
            Generator::YInv => self.n() == 0 || *self.i0() <= BigInt::one(),
        }
    }

    /// `nf(self · y^b)` for a non-tree edge, by the closed formulas.
    pub fn multiply_y(&self, b: i8) -> Result<NormalForm, NormalFormError> {
        let label = Base::Y.pow(b);
        if self.edge_in_tree(label) {
            return Err(NormalFormError::TreeEdge { from: self.to_string(), label });
        }
        Ok(if b > 0 { self.cross_y() } else { self.cross_y_inv() })
    }

    fn cross_y(&self) -> NormalForm {
        let n = self.n();
        let ExponentProfile { s, m, .. } = self.profile();
        let i = &self.exps;
        let mut j = Vec::with_capacity(n + 2);
        j.push(&i[0] + 1);
        j.extend(i[1..m].iter().cloned());
        if m < n && s[m].is_zero() && self.sign(m + 1) == -1 {
            j.push(&i[m + 1] + &i[m] - 1);
            j.extend(i[m + 2..].iter().cloned());
            let mut signs = self.signs[..m].to_vec();
            signs.extend_from_slice(&self.signs[m + 1..]);
            NormalForm { exps: j, signs }
        } else {
            j.push(-&s[m - 1] - 1);
            j.push(s[m].clone());
            j.extend(i[m + 1..].iter().cloned());
            let mut signs = self.signs[..m].to_vec();
            signs.push(1);
            signs.extend_from_slice(&self.signs[m..]);
            NormalForm { exps: j, signs }
        }
    }

    fn cross_y_inv(&self) -> NormalForm {
        let n = self.n();
        let ExponentProfile { s, m_prime: m, .. } = self.profile();
        let j = &self.exps;
        let mut i = Vec::with_capacity(n + 2);
        i.push(&j[0] - 1);
        i.extend(j[1..m].iter().cloned());
        if m < n && s[m].is_zero() && self.sign(m + 1) == 1 {
            i.push(&j[m + 1] + &j[m] + 1);
            i.extend(j[m + 2..].iter().cloned());
            let mut signs = self.signs[..m].to_vec();
            signs.extend_from_slice(&self.signs[m + 1..]);
            NormalForm { exps: i, signs }
        } else {
            i.push(1 - &s[m - 1]);
            i.push(s[m].clone());
            i.extend(j[m + 1..].iter().cloned());
            let mut signs = self.signs[..m].to_vec();
            signs.push(-1);
            signs.extend_from_slice(&self.signs[m..]);
            NormalForm { exps: i, signs }
        }
    }

    /// `nf(self · g)`.
    pub fn multiply(&self, g: Generator) -> NormalForm {
        if !self.edge_in_tree(g) {
            return if g == Generator::Y { self.cross_y() } else { self.cross_y_inv() };
        }
        let mut out = self.clone();
        match g {
            Generator::X => out.exps[0] += 1,
            Generator::XInv => out.exps[0] -= 1,
            Generator::Y | Generator::YInv => {
                let b = g.sign();
                if out.n() >= 1 && out.exps[0].is_zero() && out.signs[0] == -b {
                    out.exps.remove(0);
                    out.signs.remove(0);
                } else {
                    out.exps.insert(0, BigInt::zero());
                    out.signs.insert(0, b);
                }
            }
        }
        out
    }

    pub fn multiply_word(&self, w: &Word) -> NormalForm {
        w.iter().fold(self.clone(), |acc, g| acc.multiply(g))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_run_word())
    }
}

/// Left-to-right fold of [`NormalForm::multiply`] from the identity.
pub fn normalize_by_multiplication(w: &Word) -> NormalForm {
    NormalForm::identity().multiply_word(w)
}

/// A rule of Σ together with its size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SigmaRule {
    FreeReduction,
    YRule(usize),
    YInvRule(usize),
}

impl fmt::Display for SigmaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaRule::FreeReduction => f.write_str("free-reduction"),
            SigmaRule::YRule(i) => write!(f, "y-rule({i})"),
            SigmaRule::YInvRule(i) => write!(f, "y^-1-rule({i})"),
        }
    }
}

/// An occurrence of a Σ left-hand side: `w[start..end]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Redex {
    pub start: usize,
    pub end: usize,
    pub rule: SigmaRule,
}

impl Redex {
    /// Right-hand side replacing `w[start..end]`.
    pub fn rhs(&self, w: &[Generator]) -> Vec<Generator> {
        let x = |k: i64| Word::power(Base::X, k).into_letters();
        match self.rule {
            SigmaRule::FreeReduction => Vec::new(),
            SigmaRule::YRule(i) => {
                let e = w[self.start];
                let i = i as i64;
                [x(i), vec![Generator::Y], x(-i - 1), vec![e], x(i + 1)].concat()
            }
            SigmaRule::YInvRule(i) => {
                let e = w[self.start];
                let i = i as i64;
                [x(i + 1), vec![Generator::YInv], x(-i), vec![e], x(i)].concat()
            }
        }
    }
}

/// First redex in `w` whose end lies at or after `from`, assuming no redex
/// ends before `from`.
fn first_redex(w: &[Generator], from: usize) -> Option<Redex> {
    let origin = w[..from.min(w.len())].iter().rposition(|g| g.base() == Base::Y).unwrap_or(0);
    let mut last_y: Option<usize> = None;
    let mut xrun: i64 = 0;
    for idx in origin..w.len() {
        let g = w[idx];
        if idx > origin && w[idx - 1] == g.inverse() {
            return Some(Redex { start: idx - 1, end: idx + 1, rule: SigmaRule::FreeReduction });
        }
        match g {
            Generator::X | Generator::XInv => xrun += g.sign() as i64,
            Generator::Y | Generator::YInv => {
                if let Some(start) = last_y {
                    if g == Generator::Y && xrun >= 1 {
                        return Some(Redex { start, end: idx + 1, rule: SigmaRule::YRule(xrun as usize) });
                    }
                    if g == Generator::YInv && xrun >= 2 {
                        return Some(Redex { start, end: idx + 1, rule: SigmaRule::YInvRule(xrun as usize - 1) });
                    }
                }
                last_y = Some(idx);
                xrun = 0;
            }
        }
    }
    None
}

/// True iff `w` contains no left-hand side of Σ.
pub fn is_normal_form(w: &Word) -> bool {
    first_redex(w.letters(), 0).is_none()
}

/// Membership in N read off the exponent conditions rather than by scanning
/// for redexes.
pub fn satisfies_shape(w: &Word) -> bool {
    w.is_freely_reduced() && NormalForm::from_word_unchecked(w).satisfies_conditions()
}

/// One step of a Σ-derivation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub rule: SigmaRule,
    /// 0-based index where the left-hand side begins.
    pub position: usize,
}

/// A standard Σ-derivation: the rewritten prefix is always the shortest one
/// containing a left-hand side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub start: Word,
    pub steps: Vec<DerivationStep>,
}

/// A replayed step with the words on either side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationFrame {
    pub rule: SigmaRule,
    pub position: usize,
    pub before: Word,
    pub after: Word,
}

impl Derivation {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Sizes of the y-rules, in order of application.
    pub fn y_rule_sizes(&self) -> Vec<usize> {
        self.steps.iter().filter_map(|s| if let SigmaRule::YRule(i) = s.rule { Some(i) } else { None }).collect()
    }

    pub fn y_inv_rule_sizes(&self) -> Vec<usize> {
        self.steps.iter().filter_map(|s| if let SigmaRule::YInvRule(i) = s.rule { Some(i) } else { None }).collect()
    }

    /// Replays the steps, reconstructing every intermediate word.
    pub fn frames(&self) -> Vec<DerivationFrame> {
        let mut w = self.start.letters().to_vec();
        let mut out = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            let redex = first_redex(&w, 0).expect("derivation step on irreducible word");
            assert_eq!((redex.rule, redex.start), (step.rule, step.position));
            let before = Word::from(w.clone());
            let rhs = redex.rhs(&w);
            w.splice(redex.start..redex.end, rhs);
            out.push(DerivationFrame {
                rule: step.rule,
                position: step.position,
                before,
                after: Word::from(w.clone()),
            });
        }
        out
    }

    pub fn render(&self) -> String {
        let mut s = format!("0: {}\n", self.start);
        for (k, f) in self.frames().iter().enumerate() {
            s.push_str(&format!("{}: {} at {} -> {}\n", k + 1, f.rule, f.position, f.after));
        }
        s
    }
}

fn reduce(w: &Word, cap: usize, mut record: Option<&mut Vec<DerivationStep>>) -> Result<Word, NormalFormError> {
    let mut letters = w.letters().to_vec();
    let mut from = 0;
    while let Some(redex) = first_redex(&letters, from) {
        let rhs = redex.rhs(&letters);
        let len = letters.len() - (redex.end - redex.start) + rhs.len();
        if len > cap {
            return Err(NormalFormError::LengthCap { len, cap });
        }
        if let Some(steps) = record.as_deref_mut() {
            steps.push(DerivationStep { rule: redex.rule, position: redex.start });
        }
        letters.splice(redex.start..redex.end, rhs);
        from = redex.start;
    }
    Ok(Word::from(letters))
}

/// The Σ-irreducible word equal to `w`, without recording the derivation.
pub fn sigma_reduce(w: &Word) -> Result<Word, NormalFormError> {
    reduce(w, DEFAULT_MAX_LEN, None)
}

/// Runs the standard Σ-derivation with the default length cap.
pub fn sigma_normalize(w: &Word) -> Result<(NormalForm, Derivation), NormalFormError> {
    sigma_normalize_capped(w, DEFAULT_MAX_LEN)
}

pub fn sigma_normalize_capped(w: &Word, cap: usize) -> Result<(NormalForm, Derivation), NormalFormError> {
    let mut steps = Vec::new();
    let out = reduce(w, cap, Some(&mut steps))?;
    Ok((NormalForm::from_word_unchecked(&out), Derivation { start: w.clone(), steps }))
}

/// Every word of N of length at most `max_len`, shortest first.
pub fn normal_forms_up_to(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in Generator::ALL {
                let mut v = w.clone();
                v.push(g);
                // N is factor-closed, so only redexes ending at the new letter matter
                if first_redex(v.letters(), v.len() - 1).is_none() {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
