//! Elements of F as piecewise-linear homeomorphisms of `[0, 1]`.
//!
//! All arithmetic is exact over dyadic rationals. A word acts as the
//! composite of its letters' maps with the last letter applied first:
//! `evaluate(uv) = evaluate(u) ∘ evaluate(v)`. With the generator maps
//! below, this is the convention under which both defining relators act
//! trivially; the check runs once when the generator table is built.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::words::{Generator, Word};

/// `num / 2^exp`, with `num` odd or `exp = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut d = Dyadic { num: num.into(), exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { num: BigInt::from(1), exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0).min(self.exp as u64) as u32;
        self.num >>= tz;
        self.exp -= tz;
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (&self.num << (e - self.exp), &other.num << (e - other.exp), e)
    }

    /// Multiplication by `2^k`.
    pub fn shift(&self, k: i64) -> Dyadic {
        if k >= 0 {
            let k = k as u32;
            if k <= self.exp {
                Dyadic { num: self.num.clone(), exp: self.exp - k }
            } else {
                Dyadic { num: &self.num << (k - self.exp), exp: 0 }
            }
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// `k` with `other / self = 2^k`, if the ratio is a power of two.
    pub fn log2_ratio(&self, other: &Dyadic) -> Option<i64> {
        if self.num.is_zero() || other.num.is_zero() || self.num != other.num {
            return None;
        }
        Some(self.exp as i64 - other.exp as i64)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::from(1) << self.exp)
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Orientation-preserving PL homeomorphism of `[0, 1]` given by its
/// breakpoints, including `(0, 0)` and `(1, 1)`. Collinear breakpoints are
/// always pruned, so equal maps have equal breakpoint lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PLMap {
    points: Vec<(Dyadic, Dyadic)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PLError {
    #[error("breakpoints must start at (0,0), end at (1,1) and increase strictly")]
    NotHomeomorphism,
    #[error("slope between breakpoints {0} and {1} is not a power of 2")]
    Slope(usize, usize),
}

impl PLMap {
    pub fn identity() -> Self {
        PLMap { points: vec![(Dyadic::zero(), Dyadic::zero()), (Dyadic::one(), Dyadic::one())] }
    }

    pub fn from_breakpoints(points: Vec<(Dyadic, Dyadic)>) -> Result<Self, PLError> {
        let ends_ok = points.len() >= 2
            && points[0] == (Dyadic::zero(), Dyadic::zero())
            && points[points.len() - 1] == (Dyadic::one(), Dyadic::one());
        if !ends_ok || points.windows(2).any(|p| p[0].0 >= p[1].0 || p[0].1 >= p[1].1) {
            return Err(PLError::NotHomeomorphism);
        }
        for k in 0..points.len() - 1 {
            let dx = &points[k + 1].0 - &points[k].0;
            let dy = &points[k + 1].1 - &points[k].1;
            if dx.log2_ratio(&dy).is_none() {
                return Err(PLError::Slope(k, k + 1));
            }
        }
        let mut m = PLMap { points };
        m.prune();
        Ok(m)
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    fn slope(&self, k: usize) -> i64 {
        let dx = &self.points[k + 1].0 - &self.points[k].0;
        let dy = &self.points[k + 1].1 - &self.points[k].1;
        dx.log2_ratio(&dy).expect("PL invariant: power-of-two slope")
    }

    fn prune(&mut self) {
        let mut out: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(self.points.len());
        let mut last_slope: Option<i64> = None;
        for p in self.points.drain(..) {
            if let Some(q) = out.last() {
                let s = (&p.0 - &q.0).log2_ratio(&(&p.1 - &q.1)).expect("power-of-two slope");
                if last_slope == Some(s) {
                    out.pop();
                }
                let q = out.last().unwrap();
                last_slope = Some((&p.0 - &q.0).log2_ratio(&(&p.1 - &q.1)).expect("power-of-two slope"));
            }
            out.push(p);
        }
        self.points = out;
    }

    /// Image of `t ∈ [0, 1]`.
    pub fn apply(&self, t: &Dyadic) -> Dyadic {
        let k = match self.points.binary_search_by(|p| p.0.cmp(t)) {
            Ok(k) => return self.points[k].1.clone(),
            Err(k) => k - 1,
        };
        let (x0, y0) = &self.points[k];
        y0 + &(t - x0).shift(self.slope(k))
    }

    pub fn inverse(&self) -> PLMap {
        PLMap { points: self.points.iter().map(|(a, b)| (b.clone(), a.clone())).collect() }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PLMap) -> PLMap {
        let inv = other.inverse();
        let mut xs: Vec<Dyadic> = other.points.iter().map(|p| p.0.clone()).collect();
        xs.extend(self.points.iter().map(|p| inv.apply(&p.0)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = self.apply(&other.apply(&x));
                (x, y)
            })
            .collect();
        let mut m = PLMap { points };
        m.prune();
        m
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|(a, b)| format!("({a},{b})")).collect();
        f.write_str(&parts.join(" "))
    }
}

fn table() -> &'static [PLMap; 4] {
    static TABLE: OnceLock<[PLMap; 4]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let d = |n: i64, e: u32| Dyadic::new(n, e);
        let x = PLMap::from_breakpoints(vec![
            (d(0, 0), d(0, 0)),
            (d(1, 1), d(1, 2)),
            (d(3, 2), d(1, 1)),
            (d(1, 0), d(1, 0)),
        ])
        .unwrap();
        let y = PLMap::from_breakpoints(vec![
            (d(0, 0), d(0, 0)),
            (d(1, 1), d(1, 1)),
            (d(3, 2), d(5, 3)),
            (d(7, 3), d(3, 2)),
            (d(1, 0), d(1, 0)),
        ])
        .unwrap();
        let t = [x.clone(), x.inverse(), y.clone(), y.inverse()];
        for r in ["[y,xyx^-2]", "[y,x^2yx^-3]"] {
            let w: Word = r.parse().unwrap();
            let m = w.iter().fold(PLMap::identity(), |acc, g| acc.compose(&t[g.index()]));
            assert!(m.is_identity(), "relator {r} acts nontrivially; generator maps are inconsistent");
        }
        t
    })
}

pub fn generator_map(g: Generator) -> PLMap {
    table()[g.index()].clone()
}

pub fn evaluate(w: &Word) -> PLMap {
    let t = table();
    w.iter().fold(PLMap::identity(), |acc, g| acc.compose(&t[g.index()]))
}

pub fn equal(a: &PLMap, b: &PLMap) -> bool {
    a == b
}

/// Numerator parity check used by tests on `Dyadic` canonical form.
pub fn is_canonical(d: &Dyadic) -> bool {
    d.exp == 0 || d.num.is_odd()
}
