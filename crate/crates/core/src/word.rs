//! Words over an involutive alphabet and free reduction.
//!
//! Text syntax: `a`..`z` are generators 1..26, the uppercase letter is the
//! formal inverse, and `1` is the empty word.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported rank. Only the first 26 generators have a text form.
pub const MAX_RANK: usize = 4096;

/// The generator set `A`; the involutive alphabet has `2 * rank` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Alphabet {
    rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidRank(rank));
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of letters of the involutive alphabet.
    pub fn size(&self) -> usize {
        2 * self.rank
    }

    /// All letters in the global order `a < A < b < B < ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.size()).map(|c| Letter(c as u16))
    }

    /// The positive letters `a, b, ...` in order.
    pub fn generators(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.rank).map(|g| Letter((2 * g) as u16))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.size()
    }

    pub(crate) fn check(&self, other: &Alphabet) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }
}

impl TryFrom<usize> for Alphabet {
    type Error = Error;

    fn try_from(rank: usize) -> Result<Self> {
        Alphabet::new(rank)
    }
}

impl From<Alphabet> for usize {
    fn from(a: Alphabet) -> usize {
        a.rank
    }
}

/// A letter of the involutive alphabet.
///
/// Encoded as `2 * (generator - 1) + inverse`, so the derived order is the
/// global letter order `a < a^-1 < b < b^-1 < ...` and inversion flips the
/// low bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    /// `generator` is 1-based.
    pub fn new(generator: usize, inverse: bool) -> Letter {
        assert!((1..=MAX_RANK).contains(&generator), "generator out of range");
        Letter((2 * (generator - 1) + inverse as usize) as u16)
    }

    pub fn from_index(index: usize) -> Letter {
        assert!(index < 2 * MAX_RANK, "letter index out of range");
        Letter(index as u16)
    }

    /// Position in the global letter order; dense in `0..alphabet.size()`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// 1-based generator number.
    pub fn generator(self) -> usize {
        (self.0 as usize >> 1) + 1
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn is_positive(self) -> bool {
        !self.is_inverse()
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i8 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// The generator underlying this letter, as a positive letter.
    pub fn positive(self) -> Letter {
        Letter(self.0 & !1)
    }

    pub fn parse(symbol: char, alphabet: Alphabet) -> Result<Letter> {
        let (generator, inverse) = match symbol {
            'a'..='z' => (symbol as usize - 'a' as usize + 1, false),
            'A'..='Z' => (symbol as usize - 'A' as usize + 1, true),
            _ => return Err(Error::UnknownSymbol(symbol)),
        };
        if generator > alphabet.rank() {
            return Err(Error::GeneratorBeyondRank {
                symbol,
                rank: alphabet.rank(),
            });
        }
        Ok(Letter::new(generator, inverse))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generator();
        if g <= 26 {
            let base = if self.is_inverse() { b'A' } else { b'a' };
            write!(f, "{}", (base + (g - 1) as u8) as char)
        } else if self.is_inverse() {
            write!(f, "[-{g}]")
        } else {
            write!(f, "[{g}]")
        }
    }
}

fn fmt_letters(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("1");
    }
    for l in letters {
        write!(f, "{l}")?;
    }
    Ok(())
}

/// An arbitrary word in `Ã*`, possibly containing cancelling factors.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Parse the text syntax. `"1"` (or the empty string) is the empty word.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Word> {
        if text == "1" || text.is_empty() {
            return Ok(Word::empty());
        }
        text.chars()
            .map(|c| Letter::parse(c, alphabet))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Formal inverse: reversed, every letter inverted.
    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Free reduction by a single stack scan.
    pub fn reduce(&self) -> ReducedWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        ReducedWord(out)
    }

    pub fn is_reduced(&self) -> bool {
        is_reduced(&self.0)
    }

    /// Smallest rank whose alphabet contains every letter (at least 1).
    pub fn min_rank(&self) -> usize {
        self.0.iter().map(|l| l.generator()).max().unwrap_or(1)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

impl From<ReducedWord> for Word {
    fn from(w: ReducedWord) -> Word {
        Word(w.0)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[1] != w[0].inverse())
}

/// A freely reduced word: an element of the free group in normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord(Vec<Letter>);

impl ReducedWord {
    pub fn identity() -> ReducedWord {
        ReducedWord(Vec::new())
    }

    /// Checked constructor; fails if `letters` contains `x x^-1`.
    pub fn new(letters: Vec<Letter>) -> Result<ReducedWord> {
        if is_reduced(&letters) {
            Ok(ReducedWord(letters))
        } else {
            Err(Error::NotReduced)
        }
    }

    pub fn letter(letter: Letter) -> ReducedWord {
        ReducedWord(vec![letter])
    }

    /// Parse and reduce.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<ReducedWord> {
        Word::parse(text, alphabet).map(|w| w.reduce())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn invert(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Group product `u * v`.
    pub fn mult(&self, other: &ReducedWord) -> ReducedWord {
        let mut k = 0;
        let n = self.0.len();
        while k < n && k < other.0.len() && other.0[k] == self.0[n - 1 - k].inverse() {
            k += 1;
        }
        let mut v = Vec::with_capacity(n - k + other.0.len() - k);
        v.extend_from_slice(&self.0[..n - k]);
        v.extend_from_slice(&other.0[k..]);
        ReducedWord(v)
    }

    /// `self^n` for `n >= 0`.
    pub fn pow(&self, n: usize) -> ReducedWord {
        (0..n).fold(ReducedWord::identity(), |acc, _| acc.mult(self))
    }

    /// `x^-1 self x`.
    pub fn conjugate_by(&self, x: &ReducedWord) -> ReducedWord {
        x.invert().mult(self).mult(x)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) => self.0.len() == 1 || l != f.inverse(),
            _ => true,
        }
    }

    /// Unique decomposition `u = v w v^-1` with `w` cyclically reduced.
    pub fn cyclic_reduce(&self) -> CyclicDecomposition {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[n - 1 - k] == self.0[k].inverse() {
            k += 1;
        }
        CyclicDecomposition {
            prefix: ReducedWord(self.0[..k].to_vec()),
            core: ReducedWord(self.0[k..n - k].to_vec()),
        }
    }

    /// Conjugacy in the free group: cyclic cores are cyclic permutations of
    /// each other.
    pub fn is_conjugate_to(&self, other: &ReducedWord) -> bool {
        let u = self.cyclic_reduce().core;
        let v = other.cyclic_reduce().core;
        if u.len() != v.len() {
            return false;
        }
        if u.is_empty() {
            return true;
        }
        let doubled: Vec<Letter> = u.0.iter().chain(u.0.iter()).copied().collect();
        doubled.windows(v.len()).any(|w| w == v.0.as_slice())
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &ReducedWord) -> usize {
        self.0.iter().zip(other.0.iter()).take_while(|(a, b)| a == b).count()
    }

    pub fn prefix_distance(&self, other: &ReducedWord) -> PrefixDistance {
        if self == other {
            PrefixDistance::Zero
        } else {
            PrefixDistance::Dyadic(self.common_prefix_len(other) as u32 + 1)
        }
    }

    /// Only the identity has finite order in a free group.
    pub fn has_finite_order(&self) -> bool {
        self.is_identity()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses over the full 26-generator alphabet.
    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s, Alphabet::new(26)?)
    }
}

/// `u = prefix · core · prefix^-1` with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicDecomposition {
    pub prefix: ReducedWord,
    pub core: ReducedWord,
}

/// Value of the prefix metric: `0`, or `2^-k` stored as `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrefixDistance {
    Zero,
    Dyadic(u32),
}

impl PrefixDistance {
    pub fn value(self) -> f64 {
        match self {
            PrefixDistance::Zero => 0.0,
            PrefixDistance::Dyadic(k) => 2f64.powi(-(k as i32)),
        }
    }
}

impl PartialOrd for PrefixDistance {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrefixDistance {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use PrefixDistance::*;
        match (self, other) {
            (Zero, Zero) => std::cmp::Ordering::Equal,
            (Zero, _) => std::cmp::Ordering::Less,
            (_, Zero) => std::cmp::Ordering::Greater,
            // larger exponent, smaller distance
            (Dyadic(a), Dyadic(b)) => b.cmp(a),
        }
    }
}

impl fmt::Display for PrefixDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrefixDistance::Zero => f.write_str("0"),
            PrefixDistance::Dyadic(k) => write!(f, "2^-{k}"),
        }
    }
}
