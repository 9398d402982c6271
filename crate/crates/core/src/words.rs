//! Generators, words and the textual word grammar.
//!
//! Words are written with `x`, `y` for the generators and `X`, `Y` for their
//! inverses. A letter, bracketed commutator or parenthesised group may carry
//! an integer power (`x^-2`, `(xy)^3`). Commutators follow the convention
//! `[u,v] = u^-1 v^-1 u v`. The token `1` denotes the empty word and
//! whitespace is ignored everywhere.
//!
//! The canonical printed form run-length compresses each maximal run of a
//! single letter: exponent `1` prints as the bare letter and every other
//! exponent as `letter^k`, so `yxY` prints as `yxy^-1`.

use std::fmt;
use std::ops::{Index, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The two base letters of the generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    X,
    Y,
}

impl Base {
    pub fn letter(self) -> char {
        match self {
            Base::X => 'x',
            Base::Y => 'y',
        }
    }

    pub fn pow(self, sign: i8) -> Generator {
        Generator::new(self, sign)
    }
}

/// One of the four letters `x`, `x^-1`, `y`, `y^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    X,
    XInv,
    Y,
    YInv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::X, Generator::XInv, Generator::Y, Generator::YInv];

    pub fn new(base: Base, sign: i8) -> Self {
        match (base, sign >= 0) {
            (Base::X, true) => Generator::X,
            (Base::X, false) => Generator::XInv,
            (Base::Y, true) => Generator::Y,
            (Base::Y, false) => Generator::YInv,
        }
    }

    pub fn base(self) -> Base {
        match self {
            Generator::X | Generator::XInv => Base::X,
            Generator::Y | Generator::YInv => Base::Y,
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i8 {
        match self {
            Generator::X | Generator::Y => 1,
            Generator::XInv | Generator::YInv => -1,
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Generator::X => Generator::XInv,
            Generator::XInv => Generator::X,
            Generator::Y => Generator::YInv,
            Generator::YInv => Generator::Y,
        }
    }

    /// Dense index used by the automata alphabet: `x, X, y, Y` map to `0..4`.
    pub fn index(self) -> usize {
        match self {
            Generator::X => 0,
            Generator::XInv => 1,
            Generator::Y => 2,
            Generator::YInv => 3,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Single-character name: `x`, `X`, `y` or `Y`.
    pub fn symbol(self) -> char {
        match self {
            Generator::X => 'x',
            Generator::XInv => 'X',
            Generator::Y => 'y',
            Generator::YInv => 'Y',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'x' => Some(Generator::X),
            'X' => Some(Generator::XInv),
            'y' => Some(Generator::Y),
            'Y' => Some(Generator::YInv),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X => f.write_str("x"),
            Generator::XInv => f.write_str("x^-1"),
            Generator::Y => f.write_str("y"),
            Generator::YInv => f.write_str("y^-1"),
        }
    }
}

/// A finite sequence of generators, possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn letter(g: Generator) -> Self {
        Word(vec![g])
    }

    /// `g^k` for a signed machine exponent.
    pub fn power(base: Base, k: i64) -> Self {
        let g = base.pow(if k < 0 { -1 } else { 1 });
        Word(vec![g; k.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Generator> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Generator> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn last(&self) -> Option<Generator> {
        self.0.last().copied()
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// Formal inverse: reverse the word and invert every letter.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    /// The unique freely reduced word freely equal to `self`.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Generator> = Vec::with_capacity(self.len());
        for &g in &self.0 {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Sum of the exponents of letters with the given base.
    pub fn exponent_sum(&self, base: Base) -> i64 {
        self.0.iter().filter(|g| g.base() == base).map(|g| g.sign() as i64).sum()
    }

    /// Commutator `[u,v] = u^-1 v^-1 u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        let mut w = u.inverse();
        w.extend_from(&v.inverse());
        w.extend_from(u);
        w.extend_from(v);
        w
    }

    /// Compact one-character-per-letter spelling (`xXyY`), as used by the
    /// automaton table format.
    pub fn to_symbols(&self) -> String {
        self.0.iter().map(|g| g.symbol()).collect()
    }

    pub fn to_run_word(&self) -> RunWord {
        RunWord::from_word(self)
    }
}

impl Index<usize> for Word {
    type Output = Generator;
    fn index(&self, i: usize) -> &Generator {
        &self.0[i]
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = ParseError;

    fn try_from(s: String) -> Result<Word, ParseError> {
        parse(&s)
    }
}

/// Serializes through `Display`, for big integers in JSON output.
pub fn serialize_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn serialize_display_opt<T: fmt::Display, S: serde::Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

impl From<Vec<Generator>> for Word {
    fn from(v: Vec<Generator>) -> Self {
        Word(v)
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<T: IntoIterator<Item = Generator>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let mut k = 0;
        while k < self.len() {
            let g = self.0[k];
            let run = self.0[k..].iter().take_while(|h| **h == g).count();
            let exp = run as i64 * g.sign() as i64;
            if exp == 1 {
                write!(f, "{}", g.base().letter())?;
            } else {
                write!(f, "{}^{}", g.base().letter(), exp)?;
            }
            k += run;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

/// Run-length encoding of a word: alternating `(base, exponent)` runs with
/// nonzero arbitrary-precision exponents and distinct adjacent bases.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunWord {
    runs: Vec<(Base, BigInt)>,
}

impl RunWord {
    pub fn new() -> Self {
        RunWord { runs: Vec::new() }
    }

    /// Appends `base^exp`, merging with the last run and dropping zero runs.
    pub fn push(&mut self, base: Base, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some((b, e)) = self.runs.last_mut() {
            if *b == base {
                *e += exp;
                if e.is_zero() {
                    self.runs.pop();
                }
                return;
            }
        }
        self.runs.push((base, exp));
    }

    pub fn from_word(w: &Word) -> Self {
        let mut rw = RunWord::new();
        for g in w.iter() {
            rw.push(g.base(), BigInt::from(g.sign()));
        }
        rw
    }

    pub fn runs(&self) -> &[(Base, BigInt)] {
        &self.runs
    }

    /// Total number of letters after expansion.
    pub fn letter_count(&self) -> BigInt {
        self.runs.iter().map(|(_, e)| e.abs()).sum()
    }

    /// Expands to a flat word.
    ///
    /// Panics if an exponent does not fit in `usize`.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::new();
        for (b, e) in &self.runs {
            let g = b.pow(if e.is_negative() { -1 } else { 1 });
            let n = e.abs().to_usize().expect("run exponent exceeds addressable length");
            letters.extend(std::iter::repeat_n(g, n));
        }
        Word(letters)
    }
}

impl fmt::Display for RunWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("1");
        }
        for (b, e) in &self.runs {
            if e.is_one() {
                write!(f, "{}", b.letter())?;
            } else {
                write!(f, "{}^{}", b.letter(), e)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    /// 1-based character position of the offending token.
    pub position: usize,
    pub message: String,
}

/// Parses the word grammar described in the module docs.
pub fn parse(text: &str) -> Result<Word, ParseError> {
    let chars: Vec<(usize, char)> =
        text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (i + 1, c)).collect();
    let mut p = Parser { chars, pos: 0, end: text.chars().count() + 1 };
    let w = p.sequence()?;
    match p.peek() {
        None => Ok(w),
        Some((at, c)) => Err(ParseError { position: at, message: format!("unexpected '{c}'") }),
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.pos).copied()
    }

    fn here(&self) -> usize {
        self.peek().map(|(i, _)| i).unwrap_or(self.end)
    }

    fn sequence(&mut self) -> Result<Word, ParseError> {
        let mut w = Word::empty();
        while let Some((_, c)) = self.peek() {
            if c == ',' || c == ']' || c == ')' {
                break;
            }
            let atom = self.atom()?;
            let atom = self.power(atom)?;
            w.extend_from(&atom);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let (at, c) = self.peek().expect("atom called at end of input");
        self.pos += 1;
        if let Some(g) = Generator::from_symbol(c) {
            return Ok(Word::letter(g));
        }
        match c {
            '1' => Ok(Word::empty()),
            '(' => {
                let inner = self.sequence()?;
                self.expect(')')?;
                Ok(inner)
            }
            '[' => {
                let u = self.sequence()?;
                self.expect(',')?;
                let v = self.sequence()?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            _ => Err(ParseError { position: at, message: format!("unexpected '{c}'") }),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some((_, c)) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some((at, c)) => Err(ParseError { position: at, message: format!("expected '{want}', found '{c}'") }),
            None => Err(ParseError { position: self.end, message: format!("expected '{want}', found end of input") }),
        }
    }

    fn power(&mut self, atom: Word) -> Result<Word, ParseError> {
        if !matches!(self.peek(), Some((_, '^'))) {
            return Ok(atom);
        }
        self.pos += 1;
        let start = self.here();
        let mut digits = String::new();
        if let Some((_, c)) = self.peek() {
            if c == '-' || c == '+' {
                digits.push(c);
                self.pos += 1;
            }
        }
        while let Some((_, c)) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.pos += 1;
        }
        let k: i64 =
            digits.parse().map_err(|_| ParseError { position: start, message: "expected integer exponent".into() })?;
        let base = if k < 0 { atom.inverse() } else { atom };
        let n = k.unsigned_abs() as usize;
        let mut out = Vec::with_capacity(base.len() * n);
        for _ in 0..n {
            out.extend_from_slice(base.letters());
        }
        Ok(Word(out))
    }
}

/// Every word of length exactly `n` over the four generators, in
/// lexicographic order of generator indices.
pub fn all_words_of_length(n: usize) -> impl Iterator<Item = Word> {
    let total = 4usize.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut letters = vec![Generator::X; n];
        for slot in letters.iter_mut().rev() {
            *slot = Generator::ALL[code % 4];
            code /= 4;
        }
        Word(letters)
    })
}

/// Every word of length at most `n`.
pub fn all_words_up_to(n: usize) -> impl Iterator<Item = Word> {
    (0..=n).flat_map(all_words_of_length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_literal_letters() {
        assert_eq!(w("yxy").letters(), &[Y, X, Y]);
    }

    #[test]
    fn parse_powers() {
        assert_eq!(w("x^-2yx^2").letters(), &[XInv, XInv, Y, X, X]);
        assert_eq!(w("(xy)^2").letters(), &[X, Y, X, Y]);
        assert_eq!(w("(xy)^-1").letters(), &[YInv, XInv]);
        assert_eq!(w("x^0").letters(), &[]);
    }

    #[test]
    fn parse_rejects_unknown_letter() {
        let err = parse("xz").unwrap_err();
        assert_eq!(err.position, 2);
        assert_eq!(parse("x^").unwrap_err().position, 3);
        assert_eq!(parse("[x,y").unwrap_err().position, 5);
    }

    #[test]
    fn parse_whitespace_and_identity() {
        assert_eq!(w(" y x  Y "), w("yxY"));
        assert_eq!(w(""), Word::empty());
        assert_eq!(w("1"), Word::empty());
    }

    #[test]
    fn commutator_convention() {
        assert_eq!(w("[x,y]"), w("XYxy"));
        assert_eq!(w("[y,xyx^-2]").len(), 10);
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w("xX").free_reduce(), Word::empty());
        assert_eq!(w("yxXY").free_reduce(), Word::empty());
        assert_eq!(w("yxy").free_reduce(), w("yxy"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("yx").inverse().letters(), &[XInv, YInv]);
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(w("xx").inverse().letters(), &[XInv, XInv]);
    }

    #[test]
    fn canonical_print() {
        assert_eq!(w("xyXXyxx").to_string(), "xyx^-2yx^2");
        assert_eq!(w("yxY").to_string(), "yxy^-1");
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn print_parse_round_trip_exhaustive() {
        for word in all_words_up_to(7) {
            assert_eq!(w(&word.to_string()), word);
        }
    }

    #[test]
    fn free_reduce_idempotent_and_nonincreasing() {
        for word in all_words_up_to(8) {
            let r = word.free_reduce();
            assert!(r.len() <= word.len());
            assert!(r.is_freely_reduced());
            assert_eq!(r.free_reduce(), r);
        }
    }

    #[test]
    fn run_word_matches_free_reduction() {
        for word in all_words_up_to(7) {
            assert_eq!(RunWord::from_word(&word).to_word(), word.free_reduce());
        }
    }
}
