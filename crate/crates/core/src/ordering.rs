//! Directed Cayley-graph edges, their size sequences and weights.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::normal_form::NormalForm;
use crate::words::Generator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("C(i) is defined only for i >= 1, got {0}")]
    Domain(BigInt),
    #[error("edge {0} lies in the tree and has no size sequence")]
    TreeEdge(String),
}

/// The edge `e_{γ,a}` from `γ` to `nf(γa)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub source: NormalForm,
    pub label: Generator,
}

impl Edge {
    pub fn new(source: NormalForm, label: Generator) -> Self {
        Edge { source, label }
    }

    pub fn in_tree(&self) -> bool {
        self.source.edge_in_tree(self.label)
    }

    pub fn target(&self) -> NormalForm {
        self.source.multiply(self.label)
    }

    /// The same edge traversed backwards.
    pub fn inverse(&self) -> Edge {
        Edge { source: self.target(), label: self.label.inverse() }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.source, self.label)
    }
}

/// `C(i)` for `i >= 1` by the recurrence `C(i) = C(i-1) + 2C(i-2) + 2`.
pub fn c_seq(i: &BigInt) -> Result<BigInt, OrderingError> {
    if *i < BigInt::one() {
        return Err(OrderingError::Domain(i.clone()));
    }
    let n = i.to_u64().expect("C index too large to iterate");
    let (mut prev, mut cur) = (BigInt::one(), BigInt::one());
    for _ in 2..n {
        let next = &cur + 2 * &prev + 2;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `C(i) = (2/3)·2^i − (2/3)(−1)^i − 1`, evaluated exactly.
pub fn c_seq_closed(i: u32) -> BigInt {
    let sign = if i.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    (BigInt::from(2) * (BigInt::one() << i) - 2 * sign) / 3 - 1
}

/// Sizes of the y-rules used when crossing a non-tree edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SizeSequence {
    pub sizes: Vec<BigInt>,
}

impl SizeSequence {
    pub fn m(&self) -> usize {
        self.sizes.len()
    }
}

impl fmt::Display for SizeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn size_sequence(e: &Edge) -> Result<SizeSequence, OrderingError> {
    if e.in_tree() {
        return Err(OrderingError::TreeEdge(e.to_string()));
    }
    let p = e.source.profile();
    let sizes = match e.label {
        Generator::Y => p.s[..p.m].to_vec(),
        Generator::YInv => p.s[..p.m_prime].iter().map(|s| s - 1).collect(),
        _ => unreachable!("x-edges are always in the tree"),
    };
    Ok(SizeSequence { sizes })
}

pub fn weight(e: &Edge) -> Result<BigInt, OrderingError> {
    let sigma = size_sequence(e)?;
    sigma.sizes.iter().try_fold(BigInt::zero(), |acc, s| Ok(acc + c_seq(s)?))
}

/// `e1 ≺ e2`.
pub fn precedes(e1: &Edge, e2: &Edge) -> Result<bool, OrderingError> {
    Ok(weight(e1)? < weight(e2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::normal_forms_up_to;
    use crate::words::parse;
    use proptest::prelude::*;

    fn edge(src: &str, g: Generator) -> Edge {
        Edge::new(NormalForm::from_word(&parse(src).unwrap()).unwrap(), g)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn c_seq_values() {
        assert_eq!(c_seq(&big(1)).unwrap(), big(1));
        assert_eq!(c_seq(&big(2)).unwrap(), big(1));
        assert_eq!(c_seq(&big(3)).unwrap(), big(5));
        assert_eq!(c_seq(&big(4)).unwrap(), big(9));
        assert!(c_seq(&big(0)).is_err());
    }

    #[test]
    fn c_seq_closed_form_agrees() {
        for i in 1..=30u32 {
            assert_eq!(c_seq(&big(i as i64)).unwrap(), c_seq_closed(i));
        }
    }

    #[test]
    fn c_seq_growth() {
        for i in 3..=30 {
            let (a, b) = (c_seq(&big(i)).unwrap(), c_seq(&big(i - 1)).unwrap());
            assert!(a > &b + 1);
        }
    }

    #[test]
    fn size_and_weight_examples() {
        let e = edge("yx", Generator::Y);
        assert_eq!(size_sequence(&e).unwrap().sizes, vec![big(1)]);
        assert_eq!(weight(&e).unwrap(), big(1));
        let e = edge("yx^3", Generator::Y);
        assert_eq!(size_sequence(&e).unwrap().sizes, vec![big(3)]);
        assert_eq!(weight(&e).unwrap(), big(5));
        let e = edge("xyx^-2yx^2", Generator::YInv);
        assert_eq!(size_sequence(&e).unwrap().sizes, vec![big(1)]);
        assert_eq!(weight(&e).unwrap(), big(1));
        assert!(size_sequence(&edge("y", Generator::Y)).is_err());
    }

    #[test]
    fn precedes_examples() {
        let a = edge("yx", Generator::Y);
        let b = edge("yx^3", Generator::Y);
        assert!(precedes(&a, &b).unwrap());
        assert!(!precedes(&a, &a).unwrap());
        assert!(!precedes(&b, &a).unwrap());
    }

    #[test]
    fn inverse_edge_has_same_sizes() {
        for w in normal_forms_up_to(8) {
            let v = NormalForm::from_word(&w).unwrap();
            for g in [Generator::Y, Generator::YInv] {
                let e = Edge::new(v.clone(), g);
                if e.in_tree() {
                    continue;
                }
                let inv = e.inverse();
                assert!(!inv.in_tree());
                assert_eq!(size_sequence(&e).unwrap(), size_sequence(&inv).unwrap(), "{e}");
                assert!(size_sequence(&e).unwrap().sizes.iter().all(|s| *s >= BigInt::one()));
            }
        }
    }

    proptest! {
        #[test]
        fn precedes_is_transitive(a in 1i64..12, b in 1i64..12, c in 1i64..12) {
            let mk = |k: i64| Edge::new(NormalForm::from_parts(vec![big(k), big(0)], vec![1]).unwrap(), Generator::Y);
            let (ea, eb, ec) = (mk(a), mk(b), mk(c));
            if precedes(&ea, &eb).unwrap() && precedes(&eb, &ec).unwrap() {
                prop_assert!(precedes(&ea, &ec).unwrap());
            }
            prop_assert!(!precedes(&ea, &ea).unwrap());
        }
    }
}
