//! Finite words, letters and the infinite word generators.
//!
//! Letters are small integers tagged with an [`Alphabet`]. Binary words are
//! rendered `0101`, ternary words `abca`, and Zimin words `x1 x2 x1`.

mod morphic;
mod source;
mod squares;

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use source::{RepeatPolicy, SourceKind, WordSource, ZiminDefinition, DEFAULT_KMAX};
pub use squares::{has_square, largest_square_in};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alphabet {
    Binary,
    Ternary,
    Zimin,
}

impl Alphabet {
    pub fn admits(self, index: u32) -> bool {
        match self {
            Alphabet::Binary => index <= 1,
            Alphabet::Ternary => index <= 2,
            Alphabet::Zimin => index >= 1,
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Binary => "binary",
            Alphabet::Ternary => "ternary",
            Alphabet::Zimin => "zimin",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u32,
    pub alphabet: Alphabet,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alphabet {
            Alphabet::Binary => write!(f, "{}", self.index),
            Alphabet::Ternary => write!(f, "{}", (b'a' + self.index as u8) as char),
            Alphabet::Zimin => write!(f, "x{}", self.index),
        }
    }
}

/// A finite word over a single alphabet. The empty word is representable;
/// operations that need a nonempty word say so.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u32>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| !alphabet.admits(l)) {
            return Err(Error::InvalidWord(format!(
                "letter index {bad} is not in the {alphabet} alphabet"
            )));
        }
        Ok(Word { alphabet, letters })
    }

    /// Builds a word without validation; callers guarantee the letters fit.
    pub(crate) fn from_raw(alphabet: Alphabet, letters: Vec<u32>) -> Self {
        debug_assert!(letters.iter().all(|&l| alphabet.admits(l)));
        Word { alphabet, letters }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, letters: Vec::new() }
    }

    /// Zimin word from letter indices, `&[1, 2, 1]` is `x1 x2 x1`.
    ///
    /// Panics if an index is zero.
    pub fn zimin(indices: &[u32]) -> Self {
        Word::new(Alphabet::Zimin, indices.to_vec()).expect("zimin letters start at x1")
    }

    /// Binary word from a `0`/`1` string. Panics on other characters.
    pub fn binary(s: &str) -> Self {
        Word::parse_as(s, Alphabet::Binary).expect("binary word")
    }

    /// Ternary word from an `a`/`b`/`c` (or `0`/`1`/`2`) string. Panics on other characters.
    pub fn ternary(s: &str) -> Self {
        Word::parse_as(s, Alphabet::Ternary).expect("ternary word")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, i: usize) -> Letter {
        Letter { index: self.letters[i], alphabet: self.alphabet }
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().map(move |&index| Letter { index, alphabet: self.alphabet })
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.letters.iter().copied().max()
    }

    pub fn slice(&self, range: Range<usize>) -> Word {
        Word { alphabet: self.alphabet, letters: self.letters[range].to_vec() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { alphabet: self.alphabet, letters }
    }

    pub fn concat_all<'a, I: IntoIterator<Item = &'a Word>>(alphabet: Alphabet, parts: I) -> Word {
        let mut letters = Vec::new();
        for p in parts {
            letters.extend_from_slice(&p.letters);
        }
        Word { alphabet, letters }
    }

    pub fn push(&mut self, index: u32) {
        debug_assert!(self.alphabet.admits(index));
        self.letters.push(index);
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet && other.letters.ends_with(&self.letters)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet && other.letters.starts_with(&self.letters)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word { alphabet: self.alphabet, letters: self.letters.repeat(times) }
    }

    /// Parses a word, inferring the alphabet: anything containing `x` is a
    /// Zimin word, strings over `{0,1}` are binary, and strings using
    /// `2`, `a`, `b` or `c` are ternary.
    pub fn parse(s: &str) -> Result<Word> {
        let t = s.trim();
        if t.contains('x') {
            return Word::parse_as(t, Alphabet::Zimin);
        }
        if t.chars().filter(|c| !c.is_whitespace()).all(|c| c == '0' || c == '1') {
            Word::parse_as(t, Alphabet::Binary)
        } else {
            Word::parse_as(t, Alphabet::Ternary)
        }
    }

    /// Parses a word over a fixed alphabet. Whitespace and commas are ignored.
    pub fn parse_as(s: &str, alphabet: Alphabet) -> Result<Word> {
        let mut letters = Vec::new();
        match alphabet {
            Alphabet::Zimin => {
                let cleaned: String =
                    s.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
                if cleaned.is_empty() {
                    return Ok(Word::empty(alphabet));
                }
                if !cleaned.starts_with('x') {
                    return Err(Error::InvalidWord(format!("zimin word must start with x: {s:?}")));
                }
                for tok in cleaned[1..].split('x') {
                    let idx: u32 = tok
                        .parse()
                        .map_err(|_| Error::InvalidWord(format!("bad zimin letter x{tok}")))?;
                    letters.push(idx);
                }
            }
            Alphabet::Binary | Alphabet::Ternary => {
                for c in s.chars().filter(|c| !c.is_whitespace() && *c != ',') {
                    let idx = match c {
                        '0' | 'a' => 0,
                        '1' | 'b' => 1,
                        '2' | 'c' => 2,
                        _ => {
                            return Err(Error::InvalidWord(format!(
                                "unexpected character {c:?} in {alphabet} word"
                            )))
                        }
                    };
                    letters.push(idx);
                }
            }
        }
        Word::new(alphabet, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.iter().enumerate() {
            if i > 0 && self.alphabet == Alphabet::Zimin {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            alphabet: Alphabet,
            letters: &'a [u32],
        }
        Repr { alphabet: self.alphabet, letters: &self.letters }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            alphabet: Alphabet,
            letters: Vec<u32>,
        }
        let r = Repr::deserialize(d)?;
        Word::new(r.alphabet, r.letters).map_err(serde::de::Error::custom)
    }
}

/// The parity morphism: `x_n` maps to `0` for odd `n` and `1` for even `n`.
pub fn psi(w: &Word) -> Result<Word> {
    if w.alphabet() != Alphabet::Zimin {
        return Err(Error::AlphabetMismatch {
            expected: Alphabet::Zimin.to_string(),
            found: w.alphabet().to_string(),
        });
    }
    Ok(Word::from_raw(Alphabet::Binary, w.letters().iter().map(|&n| 1 - (n & 1)).collect()))
}

/// Index of the letter of the Zimin word at 0-based position `p`:
/// one plus the 2-adic valuation of `p + 1`.
#[inline]
pub fn zimin_letter_at(p: u64) -> u32 {
    (p + 1).trailing_zeros() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let z = Word::parse("x1 x2 x1x3").unwrap();
        assert_eq!(z, Word::zimin(&[1, 2, 1, 3]));
        assert_eq!(z.to_string(), "x1 x2 x1 x3");
        assert_eq!(Word::parse("0100").unwrap().alphabet(), Alphabet::Binary);
        assert_eq!(Word::parse("abca").unwrap().to_string(), "abca");
        assert_eq!(Word::parse("0120").unwrap().to_string(), "abca");
        assert!(Word::parse("x0").is_err());
        assert!(Word::parse_as("012", Alphabet::Binary).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&Word::zimin(&[1])).unwrap(), Word::binary("0"));
        assert_eq!(psi(&Word::empty(Alphabet::Zimin)).unwrap(), Word::empty(Alphabet::Binary));
        assert_eq!(psi(&Word::zimin(&[1, 2, 1, 3])).unwrap(), Word::binary("0100"));
        assert!(psi(&Word::binary("01")).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let w = Word::zimin(&[1, 2, 1]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<Word>(&s).unwrap(), w);
        assert!(serde_json::from_str::<Word>(r#"{"alphabet":"binary","letters":[2]}"#).is_err());
    }
}
