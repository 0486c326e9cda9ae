//! Letters and words over `S ∪ S⁻¹`.
//!
//! A generator is a single lowercase ASCII letter; its inverse is spelled with
//! the matching uppercase letter. Words compare in ASCII order, so uppercase
//! letters sort before lowercase ones.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("character {0:?} is not an ASCII letter")]
    NotALetter(char),
}

/// A generator symbol: one lowercase letter `a..=z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

impl Generator {
    pub fn new(c: char) -> Option<Self> {
        c.is_ascii_lowercase().then_some(Generator(c as u8))
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }

    pub fn positive(self) -> Letter {
        Letter(self.0)
    }

    pub fn negative(self) -> Letter {
        Letter(self.0.to_ascii_uppercase())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A generator or its inverse, stored as its ASCII spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(c: char) -> Result<Self, WordError> {
        if c.is_ascii_alphabetic() {
            Ok(Letter(c as u8))
        } else {
            Err(WordError::NotALetter(c))
        }
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 0x20)
    }

    #[inline]
    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.0 ^ 0x20 == other.0
    }

    pub fn generator(self) -> Generator {
        Generator(self.0.to_ascii_lowercase())
    }

    /// `+1` for a generator, `-1` for an inverse.
    pub fn sign(self) -> i8 {
        if self.0.is_ascii_lowercase() {
            1
        } else {
            -1
        }
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite sequence of letters. No reduction is implied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// The cyclic permutation starting at position `i`.
    pub fn rotate(&self, i: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let i = i % self.0.len();
        let mut v = Vec::with_capacity(self.len());
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&self.0[..i]);
        Word(v)
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len().max(1)).map(move |i| self.rotate(i))
    }

    /// Least rotation in ASCII order; identifies the word as a necklace.
    pub fn least_rotation(&self) -> Word {
        self.rotations().min().unwrap_or_default()
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].is_inverse_of(p[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && (self.0.len() <= 1 || !self.0[0].is_inverse_of(self.0[self.0.len() - 1]))
    }

    /// Free reduction by a single left-to-right stack pass.
    pub fn free_reduce(&self) -> Word {
        free_reduce_letters(self.0.iter().copied())
    }

    /// Splits a word into `(core, conjugator)` with `core` cyclically reduced
    /// and `w = conjugator · core · conjugator⁻¹` in the free group.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let r = self.free_reduce().0;
        let mut lo = 0;
        let mut hi = r.len();
        while hi - lo >= 2 && r[lo].is_inverse_of(r[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        (Word(r[lo..hi].to_vec()), Word(r[..lo].to_vec()))
    }

    /// Minimal period `p` such that the word is `(prefix of length p)^(len/p)`.
    pub fn minimal_period(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .filter(|p| n.is_multiple_of(*p))
            .find(|&p| (p..n).all(|i| self.0[i] == self.0[i - p]))
            .unwrap_or(n)
    }

    pub fn is_proper_power(&self) -> bool {
        self.minimal_period() < self.0.len()
    }
}

pub fn free_reduce_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&top) if top.is_inverse_of(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().map(Letter::new).collect::<Result<Vec<_>, _>>().map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::new(c).map_err(serde::de::Error::custom),
            _ => Err(serde::de::Error::custom("expected a single letter")),
        }
    }
}

/// Shorthand used throughout the tests: panics on a non-letter.
pub fn w(s: &str) -> Word {
    s.parse().expect("invalid word literal")
}
