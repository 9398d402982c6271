//! The bounded regular prefix-rewriting system for F, and the graph of the
//! flow function as explicit triples.
//!
//! A rule `u·lhs -> u·rhs` fires on `w = u·lhs·z` only when the prefix `u`
//! lies in the rule's guard language:
//!
//! | family | lhs               | rhs                          | guard on `u`                 |
//! |--------|-------------------|------------------------------|------------------------------|
//! | 1      | `a a^-1`          | empty                        | any                          |
//! | 2      | `y^e x^i y`       | `x^i y x^(-i-1) y^e x^(i+1)` | `u y^e x^i ∈ N`, `i ∈ {1,2}` |
//! | 3      | `y^e x^i y^-1`    | `x^i y^-1 x^(-i+1) y^e x^(i-1)` | `u y^e x^i ∈ N`, `i ∈ {2,3}` |
//! | 4      | `x y`             | `y^-1 x y x^-2 y x^2`        | `N ∩ A* y^±1 A* x^2`         |
//! | 5      | `x^2 y^-1`        | `y^-1 x^2 y^-1 x^-1 y x`     | `N ∩ A* y^±1 A* x^2`         |

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::automata::{has_y_then_ends_with_x, letters, nf_automaton, Dfa};
use crate::normal_form::{is_normal_form, NormalForm};
use crate::words::{Generator, Word};

pub const DEFAULT_STEP_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CprsError {
    #[error("rewriting {word} exceeded the budget of {budget} steps")]
    Budget { word: String, budget: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RuleId {
    Cancel(Generator),
    ShortY { eps: i8, i: u8 },
    ShortYInv { eps: i8, i: u8 },
    LongY,
    LongYInv,
}

impl RuleId {
    pub fn family(self) -> u8 {
        match self {
            RuleId::Cancel(_) => 1,
            RuleId::ShortY { .. } => 2,
            RuleId::ShortYInv { .. } => 3,
            RuleId::LongY => 4,
            RuleId::LongYInv => 5,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Cancel(a) => write!(f, "R1[{}]", a.symbol()),
            RuleId::ShortY { eps, i } => write!(f, "R2[e={eps},i={i}]"),
            RuleId::ShortYInv { eps, i } => write!(f, "R3[e={eps},i={i}]"),
            RuleId::LongY => f.write_str("R4"),
            RuleId::LongYInv => f.write_str("R5"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PrefixRule {
    pub id: RuleId,
    /// Index into [`RewriteSystem::guards`]; `None` means every prefix.
    pub guard: Option<usize>,
    pub lhs: Word,
    pub rhs: Word,
}

/// A guard language with a printable description.
#[derive(Clone, Debug)]
pub struct Guard {
    pub name: String,
    pub dfa: Dfa,
}

pub struct RewriteSystem {
    pub rules: Vec<PrefixRule>,
    pub guards: Vec<Guard>,
}

/// One application of a rule: `w = u·lhs·z -> u·rhs·z` with `|u| = split`.
#[derive(Clone, Debug, Serialize)]
pub struct RewriteStep {
    pub rule: RuleId,
    pub split: usize,
    pub prefix: Word,
    pub lhs: Word,
    pub rhs: Word,
    pub result: Word,
}

fn w(s: &str) -> Word {
    s.parse().expect("internal word literal")
}

fn y_str(eps: i8) -> &'static str {
    if eps == 1 {
        "y"
    } else {
        "Y"
    }
}

impl RewriteSystem {
    pub fn new() -> Self {
        let n = nf_automaton();
        let mut guards = Vec::new();
        let mut rules = Vec::new();
        for a in Generator::ALL {
            rules.push(PrefixRule {
                id: RuleId::Cancel(a),
                guard: None,
                lhs: Word::from_letters(vec![a, a.inverse()]),
                rhs: Word::empty(),
            });
        }
        let quotient_guard = |eps: i8, i: i64, guards: &mut Vec<Guard>| {
            let z = w(&format!("{}x^{i}", y_str(eps)));
            guards.push(Guard { name: format!("u·{z} ∈ N"), dfa: n.quotient(&letters(&z)).minimize() });
            guards.len() - 1
        };
        for eps in [1i8, -1] {
            for i in [1i64, 2] {
                let g = quotient_guard(eps, i, &mut guards);
                let e = y_str(eps);
                rules.push(PrefixRule {
                    id: RuleId::ShortY { eps, i: i as u8 },
                    guard: Some(g),
                    lhs: w(&format!("{e}x^{i}y")),
                    rhs: w(&format!("x^{i}yx^{}{e}x^{}", -i - 1, i + 1)),
                });
            }
        }
        for eps in [1i8, -1] {
            for i in [2i64, 3] {
                let g = quotient_guard(eps, i, &mut guards);
                let e = y_str(eps);
                rules.push(PrefixRule {
                    id: RuleId::ShortYInv { eps, i: i as u8 },
                    guard: Some(g),
                    lhs: w(&format!("{e}x^{i}Y")),
                    rhs: w(&format!("x^{i}Yx^{}{e}x^{}", -i + 1, i - 1)),
                });
            }
        }
        guards.push(Guard {
            name: "u ∈ N ∩ A*y^±1A*x^2".into(),
            dfa: n.intersect(&has_y_then_ends_with_x(2)).unwrap().minimize(),
        });
        let long = guards.len() - 1;
        rules.push(PrefixRule { id: RuleId::LongY, guard: Some(long), lhs: w("xy"), rhs: w("YxyXXyxx") });
        rules.push(PrefixRule { id: RuleId::LongYInv, guard: Some(long), lhs: w("xxY"), rhs: w("YxxYXyx") });
        RewriteSystem { rules, guards }
    }

    /// The shared instance.
    pub fn global() -> &'static RewriteSystem {
        static SYSTEM: OnceLock<RewriteSystem> = OnceLock::new();
        SYSTEM.get_or_init(RewriteSystem::new)
    }

    fn guard_states(&self, states: &mut Vec<Vec<usize>>, word: &[Generator], upto: usize) {
        if states.is_empty() {
            states.push(self.guards.iter().map(|g| g.dfa.initial()).collect());
        }
        while states.len() <= upto {
            let p = states.len() - 1;
            let s = word[p].index();
            let next = self.guards.iter().zip(&states[p]).map(|(g, &q)| g.dfa.step(q, s)).collect();
            states.push(next);
        }
    }

    fn find(&self, word: &[Generator], from: usize, states: &mut Vec<Vec<usize>>) -> Option<(usize, usize)> {
        for p in from..word.len() {
            for (r, rule) in self.rules.iter().enumerate() {
                if !word[p..].starts_with(rule.lhs.letters()) {
                    continue;
                }
                if let Some(g) = rule.guard {
                    self.guard_states(states, word, p);
                    if !self.guards[g].dfa.is_accepting(states[p][g]) {
                        continue;
                    }
                }
                return Some((p, r));
            }
        }
        None
    }

    /// Leftmost split, then rule order.
    pub fn rewrite_once(&self, word: &Word) -> Option<RewriteStep> {
        let mut states = Vec::new();
        let (p, r) = self.find(word.letters(), 0, &mut states)?;
        let rule = &self.rules[r];
        let mut out = word.slice(0, p);
        out.extend_from(&rule.rhs);
        out.extend_from(&word.slice(p + rule.lhs.len(), word.len()));
        Some(RewriteStep {
            rule: rule.id,
            split: p,
            prefix: word.slice(0, p),
            lhs: rule.lhs.clone(),
            rhs: rule.rhs.clone(),
            result: out,
        })
    }

    fn run(
        &self,
        word: &Word,
        budget: usize,
        mut trace: Option<&mut Vec<RewriteStep>>,
    ) -> Result<(Word, usize), CprsError> {
        let mut letters = word.letters().to_vec();
        let mut states = Vec::new();
        let mut from = 0;
        let mut count = 0;
        while let Some((p, r)) = self.find(&letters, from, &mut states) {
            if count == budget {
                return Err(CprsError::Budget { word: word.to_string(), budget });
            }
            let rule = &self.rules[r];
            let prefix = trace.as_ref().map(|_| Word::from(letters[..p].to_vec()));
            letters.splice(p..p + rule.lhs.len(), rule.rhs.iter());
            states.truncate(p + 1);
            if let (Some(t), Some(prefix)) = (trace.as_deref_mut(), prefix) {
                t.push(RewriteStep {
                    rule: rule.id,
                    split: p,
                    prefix,
                    lhs: rule.lhs.clone(),
                    rhs: rule.rhs.clone(),
                    result: Word::from(letters.clone()),
                });
            }
            count += 1;
            from = p.saturating_sub(4);
        }
        Ok((Word::from(letters), count))
    }

    pub fn rewrite_to_irreducible(&self, word: &Word) -> Result<(Word, usize), CprsError> {
        self.run(word, DEFAULT_STEP_BUDGET, None)
    }

    pub fn rewrite_with_budget(&self, word: &Word, budget: usize) -> Result<(Word, usize), CprsError> {
        self.run(word, budget, None)
    }

    pub fn rewrite_trace(&self, word: &Word, budget: usize) -> Result<(Word, Vec<RewriteStep>), CprsError> {
        let mut steps = Vec::new();
        let (out, _) = self.run(word, budget, Some(&mut steps))?;
        Ok((out, steps))
    }

    pub fn guard_name(&self, id: RuleId) -> &str {
        let rule = self.rules.iter().find(|r| r.id == id).expect("known rule");
        rule.guard.map(|g| self.guards[g].name.as_str()).unwrap_or("u ∈ A*")
    }
}

impl Default for RewriteSystem {
    fn default() -> Self {
        Self::new()
    }
}

pub fn rules() -> &'static [PrefixRule] {
    &RewriteSystem::global().rules
}

pub fn rewrite_once(word: &Word) -> Option<RewriteStep> {
    RewriteSystem::global().rewrite_once(word)
}

pub fn rewrite_to_irreducible(word: &Word) -> Result<(Word, usize), CprsError> {
    RewriteSystem::global().rewrite_to_irreducible(word)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphPhiTriple {
    pub gamma: NormalForm,
    pub a: Generator,
    pub out_label: Word,
}

/// The triple `(γ, a, lbl Φ(e_{γ,a}))`, read off the suffix of the spelled
/// normal form.
pub fn graph_phi(gamma: &NormalForm, a: Generator) -> GraphPhiTriple {
    let word = gamma.to_word();
    let l = word.letters();
    let triple = |out_label: Word| GraphPhiTriple { gamma: gamma.clone(), a, out_label };
    let mut ga = word.clone();
    ga.push(a);
    if is_normal_form(&ga.free_reduce()) {
        return triple(Word::letter(a));
    }
    let trailing_x = l.iter().rev().take_while(|g| **g == Generator::X).count();
    let eps = l[l.len() - trailing_x - 1];
    let e = y_str(eps.sign());
    let f = y_str(-eps.sign());
    let i = trailing_x as i64;
    let label = match a {
        Generator::Y if i <= 2 => format!("x^{}{f}x^{i}yx^{}{e}x^{}", -i, -i - 1, i + 1),
        Generator::Y => "XYxyXXyxx".to_string(),
        Generator::YInv if i <= 3 => format!("x^{}{f}x^{i}Yx^{}{e}x^{}", -i, -i + 1, i - 1),
        Generator::YInv => "XXYxxYXyx".to_string(),
        _ => unreachable!("x-edges lie in the tree"),
    };
    triple(w(&label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::phi_label;
    use crate::normal_form::{normal_forms_up_to, sigma_reduce};
    use crate::ordering::Edge;
    use crate::words::all_words_up_to;

    fn nf(s: &str) -> NormalForm {
        NormalForm::from_word(&w(s)).unwrap()
    }

    #[test]
    fn rule_catalogue() {
        let rs = rules();
        assert_eq!(rs.len(), 14);
        assert_eq!(rs.iter().filter(|r| r.id.family() == 1).count(), 4);
        assert!(rs.iter().all(|r| r.lhs.len() <= 5 && r.rhs.len() <= 10));
        let r = rs.iter().find(|r| r.id == RuleId::ShortY { eps: 1, i: 1 }).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (w("yxy"), w("xyx^-2yx^2")));
        let r = rs.iter().find(|r| r.id == RuleId::LongY).unwrap();
        assert_eq!(r.rhs, w("y^-1xyx^-2yx^2"));
    }

    #[test]
    fn rules_are_relations() {
        // each lhs and rhs must name the same element
        for r in rules() {
            assert_eq!(sigma_reduce(&r.lhs).unwrap(), sigma_reduce(&r.rhs).unwrap(), "{}", r.id);
        }
    }

    #[test]
    fn rewrite_once_examples() {
        let s = rewrite_once(&w("yxy")).unwrap();
        assert_eq!(s.result, w("xyx^-2yx^2"));
        assert_eq!(s.rule.family(), 2);
        assert!(rewrite_once(&w("xyx^-2yx^2")).is_none());
        let s = rewrite_once(&w("xxX")).unwrap();
        assert_eq!((s.result, s.rule), (w("x"), RuleId::Cancel(Generator::X)));
    }

    #[test]
    fn rewrite_to_irreducible_examples() {
        let (out, steps) = rewrite_to_irreducible(&w("yxy")).unwrap();
        assert_eq!(out, w("xyx^-2yx^2"));
        assert!(steps >= 1);
        assert_eq!(rewrite_to_irreducible(&Word::empty()).unwrap(), (Word::empty(), 0));
        let (out, steps) = rewrite_to_irreducible(&w("[y,x^2yx^-3]")).unwrap();
        assert!(out.is_empty() && steps > 0);
    }

    #[test]
    fn irreducible_iff_normal_form() {
        for word in all_words_up_to(8) {
            assert_eq!(rewrite_once(&word).is_none(), is_normal_form(&word), "{word}");
        }
    }

    #[test]
    fn agrees_with_sigma_and_incremental_scan() {
        let sys = RewriteSystem::global();
        for word in all_words_up_to(7) {
            let (out, steps) = sys.rewrite_to_irreducible(&word).unwrap();
            assert_eq!(out, sigma_reduce(&word).unwrap(), "{word}");
            let mut cur = word.clone();
            let mut naive = 0;
            while let Some(s) = sys.rewrite_once(&cur) {
                cur = s.result;
                naive += 1;
            }
            assert_eq!((cur, naive), (out, steps));
        }
    }

    #[test]
    fn budget_is_reported() {
        let err = RewriteSystem::global().rewrite_with_budget(&w("yxyxy"), 1).unwrap_err();
        assert!(matches!(err, CprsError::Budget { .. }));
    }

    #[test]
    fn graph_phi_examples() {
        assert_eq!(graph_phi(&nf("yx"), Generator::Y).out_label, w("XYxyXXyxx"));
        assert_eq!(graph_phi(&nf("y"), Generator::X).out_label, w("x"));
        assert_eq!(graph_phi(&nf("yx^3"), Generator::Y).out_label, w("XYxyXXyxx"));
    }

    #[test]
    fn graph_phi_matches_flow() {
        for word in normal_forms_up_to(7) {
            let v = NormalForm::from_word(&word).unwrap();
            for a in Generator::ALL {
                assert_eq!(graph_phi(&v, a).out_label, phi_label(&Edge::new(v.clone(), a)), "{word} {a}");
            }
        }
    }
}
