use std::collections::HashMap;

use autostack::cprs::{graph_phi, rewrite_once, RewriteSystem, DEFAULT_STEP_BUDGET};
use autostack::flow::{check_exponent_table, flow_case, phi, FlowCase, BOUND_K};
use autostack::normal_form::{
    is_normal_form, normal_forms_up_to, normalize_by_multiplication, sigma_normalize, NormalForm,
};
use autostack::oracle;
use autostack::ordering::{c_seq, precedes, Edge};
use autostack::words::{all_words_up_to, parse, Generator, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn word_strategy(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..4, 0..=max).prop_map(|v| v.into_iter().map(|i| Generator::ALL[i]).collect())
}

fn nf(w: &Word) -> NormalForm {
    sigma_normalize(w).unwrap().0
}

proptest! {
    #[test]
    fn free_reduce_idempotent_and_shrinking(w in word_strategy(12)) {
        let r = w.free_reduce();
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.free_reduce(), r);
    }

    #[test]
    fn print_parse_round_trip(w in word_strategy(12)) {
        prop_assert_eq!(parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn normalizations_agree(w in word_strategy(10)) {
        let (a, _) = sigma_normalize(&w).unwrap();
        prop_assert_eq!(&a, &normalize_by_multiplication(&w));
        prop_assert_eq!(RewriteSystem::global().rewrite_to_irreducible(&w).unwrap().0, a.to_word());
        prop_assert!(oracle::equal(&oracle::evaluate(&w), &oracle::evaluate(&a.to_word())));
    }

    #[test]
    fn multiply_then_inverse(w in word_strategy(10), g in 0usize..4) {
        let v = nf(&w);
        let g = Generator::ALL[g];
        prop_assert_eq!(v.multiply(g).multiply(g.inverse()), v);
    }

    #[test]
    fn flow_preserves_endpoints(w in word_strategy(10), g in 0usize..4) {
        let e = Edge::new(nf(&w), Generator::ALL[g]);
        let p = phi(&e);
        prop_assert!(p.label.len() <= BOUND_K);
        prop_assert_eq!(p.end(), e.target());
    }
}

#[test]
fn phi_of_inverse_edge_is_inverse_path() {
    for w in normal_forms_up_to(7) {
        let v = NormalForm::from_word(&w).unwrap();
        for g in Generator::ALL {
            let e = Edge::new(v.clone(), g);
            let (p, q) = (phi(&e), phi(&e.inverse()));
            assert_eq!(q.start, p.end(), "{e}");
            assert_eq!(q.label, p.label.inverse(), "{e}");
        }
    }
}

#[test]
fn precedes_is_a_strict_partial_order() {
    let edges: Vec<Edge> = normal_forms_up_to(4)
        .iter()
        .flat_map(|w| {
            let v = NormalForm::from_word(w).unwrap();
            [Generator::Y, Generator::YInv].map(|g| Edge::new(v.clone(), g))
        })
        .filter(|e| !e.in_tree())
        .collect();
    let lt: Vec<Vec<bool>> = edges.iter().map(|a| edges.iter().map(|b| precedes(a, b).unwrap()).collect()).collect();
    for i in 0..edges.len() {
        assert!(!lt[i][i]);
        for j in 0..edges.len() {
            for k in 0..edges.len() {
                if lt[i][j] && lt[j][k] {
                    assert!(lt[i][k], "{} {} {}", edges[i], edges[j], edges[k]);
                }
            }
        }
    }
}

#[test]
fn c_sequence_growth() {
    let c: Vec<BigInt> = (1..=30).map(|i| c_seq(&BigInt::from(i)).unwrap()).collect();
    assert!(c.windows(2).all(|p| p[0] <= p[1]));
    for i in 3..=30usize {
        assert!(c[i - 1] > &c[i - 2] + &c[0], "i = {i}");
    }
}

#[test]
fn long_y_exponent_columns() {
    let mut seen = 0;
    for w in normal_forms_up_to(9) {
        let e = Edge::new(NormalForm::from_word(&w).unwrap(), Generator::Y);
        if !e.in_tree() && flow_case(&e) == FlowCase::LongY {
            check_exponent_table(&e).unwrap_or_else(|m| panic!("{e}: {m}"));
            seen += 1;
        }
    }
    assert!(seen > 500);
}

#[test]
fn rewrite_once_fires_exactly_off_n() {
    for w in all_words_up_to(8) {
        assert_eq!(rewrite_once(&w).is_some(), !is_normal_form(&w), "{w}");
    }
}

#[test]
fn rewriting_steps_are_bounded() {
    let rs = RewriteSystem::global();
    for w in all_words_up_to(7) {
        let (_, steps) = rs.rewrite_trace(&w, DEFAULT_STEP_BUDGET).unwrap();
        assert!(steps.len() < DEFAULT_STEP_BUDGET);
        for s in steps {
            assert!(s.lhs.len() <= 5 && s.rhs.len() <= 10, "{w}: {}", s.rule);
        }
    }
}

#[test]
fn graph_phi_reads_flow_labels() {
    for w in normal_forms_up_to(6) {
        let v = NormalForm::from_word(&w).unwrap();
        for a in Generator::ALL {
            assert_eq!(graph_phi(&v, a).out_label, phi(&Edge::new(v.clone(), a)).label);
        }
    }
}

#[test]
fn relators_normalize_to_identity() {
    for r in ["[y,xyx^-2]", "[y,x^2yx^-3]"] {
        assert!(nf(&parse(r).unwrap()).is_empty());
    }
}

/// Normal-form equality and oracle equality induce the same partition of
/// the words of length at most 6, which settles every pair at once.
#[test]
fn solve_partition_matches_oracle() {
    let mut by_nf: HashMap<String, String> = HashMap::new();
    let mut by_map: HashMap<String, String> = HashMap::new();
    for w in all_words_up_to(6) {
        let n = nf(&w).to_string();
        let m = oracle::evaluate(&w).to_string();
        assert_eq!(by_nf.entry(n.clone()).or_insert_with(|| m.clone()), &m, "{w}");
        assert_eq!(by_map.entry(m).or_insert(n.clone()), &n, "{w}");
    }
}
