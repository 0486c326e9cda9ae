//! Presentation files and their parsed form.
//!
//! ```text
//! # the free abelian group of rank two
//! gens: a b
//! rel: abAB
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: letter {letter:?} is not a declared generator or inverse")]
    Alphabet { line: usize, letter: char },
    #[error("line {line}: bad relator {relator:?}: {reason}")]
    Relator {
        line: usize,
        relator: String,
        reason: String,
    },
    /// A standalone word (not a line of a presentation) failed to parse.
    #[error("{0:?} is not a word over the generators")]
    Word(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates and builds a presentation from already-split parts.
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, ParseError> {
        let mut text = String::from("gens:");
        for g in &generators {
            text.push(' ');
            text.push(g.as_char());
        }
        text.push('\n');
        for r in &relators {
            text.push_str(&format!("rel: {r}\n"));
        }
        parse_presentation(&text)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// All letters `S ∪ S⁻¹` in ASCII order.
    pub fn alphabet(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self
            .generators
            .iter()
            .flat_map(|g| [g.positive(), g.negative()])
            .collect();
        v.sort();
        v
    }

    pub fn contains_letter(&self, l: Letter) -> bool {
        self.generators.contains(&l.generator())
    }

    /// Parses a word and checks it against the alphabet.
    pub fn parse_word(&self, s: &str) -> Result<Word, ParseError> {
        let word: Word = s.trim().parse().map_err(|_| ParseError::Word(s.to_string()))?;
        if word.iter().any(|l| !self.contains_letter(*l)) {
            return Err(ParseError::Word(s.to_string()));
        }
        Ok(word)
    }

    pub fn max_relator_len(&self) -> usize {
        self.relators.iter().map(|r| r.len()).max().unwrap_or(0)
    }
}

/// Canonical text form; parsing it back yields an equal presentation.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "rel: {r}")?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut generators: Option<Vec<Generator>> = None;
    let mut relators: Vec<Word> = Vec::new();
    let mut seen: BTreeSet<Word> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: String| ParseError::Syntax { line, message };
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| syntax(format!("expected `gens:` or `rel:`, got {content:?}")))?;
        match key.trim() {
            "gens" => {
                if generators.is_some() {
                    return Err(syntax("duplicate `gens:` line".into()));
                }
                let mut gens = Vec::new();
                for tok in value.split_whitespace() {
                    let mut chars = tok.chars();
                    let g = match (chars.next(), chars.next()) {
                        (Some(c), None) => Generator::new(c),
                        _ => None,
                    }
                    .ok_or_else(|| syntax(format!("generator {tok:?} is not one lowercase letter")))?;
                    if gens.contains(&g) {
                        return Err(syntax(format!("generator {g} declared twice")));
                    }
                    gens.push(g);
                }
                if gens.is_empty() {
                    return Err(syntax("no generators declared".into()));
                }
                generators = Some(gens);
            }
            "rel" => {
                let gens = generators
                    .as_ref()
                    .ok_or_else(|| syntax("`rel:` before `gens:`".into()))?;
                let text = value.trim();
                let mut letters = Vec::with_capacity(text.len());
                for c in text.chars() {
                    let l = Letter::new(c).map_err(|_| ParseError::Alphabet { line, letter: c })?;
                    if !gens.contains(&l.generator()) {
                        return Err(ParseError::Alphabet { line, letter: c });
                    }
                    letters.push(l);
                }
                let r = Word::from_letters(letters);
                let bad = |reason: &str| ParseError::Relator {
                    line,
                    relator: r.to_string(),
                    reason: reason.to_string(),
                };
                if !r.is_cyclically_reduced() {
                    return Err(bad("not cyclically reduced"));
                }
                if r.len() < 3 {
                    return Err(bad("length is less than 3"));
                }
                let key = symmetric_key(&r);
                if !seen.insert(key) {
                    return Err(bad("duplicates another relator up to rotation and inversion"));
                }
                relators.push(r);
            }
            other => return Err(syntax(format!("unknown key {other:?}"))),
        }
    }

    let generators = generators.ok_or(ParseError::Syntax {
        line: 0,
        message: "missing `gens:` line".into(),
    })?;
    if relators.is_empty() {
        return Err(ParseError::Relator {
            line: 0,
            relator: String::new(),
            reason: "presentation has no relators".into(),
        });
    }
    Ok(Presentation {
        generators,
        relators,
    })
}

/// Least word among all rotations of `r` and of `r⁻¹`.
fn symmetric_key(r: &Word) -> Word {
    r.least_rotation().min(r.inverse().least_rotation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    #[test]
    fn parses_commutator() {
        let p = parse_presentation("gens: a b\nrel: abAB").unwrap();
        assert_eq!(p.generators().len(), 2);
        assert_eq!(p.relators(), &[w("abAB")]);
    }

    #[test]
    fn two_relators() {
        let p = parse_presentation("gens: x y z\nrel: xyz\nrel: xzy").unwrap();
        assert_eq!(p.relators().len(), 2);
    }

    #[test]
    fn rejects_unreduced_relator() {
        let e = parse_presentation("gens: a b\nrel: abBA").unwrap_err();
        assert!(matches!(e, ParseError::Relator { line: 2, .. }), "{e}");
    }

    #[test]
    fn rejects_short_relator() {
        assert!(matches!(
            parse_presentation("gens: a\nrel: aa"),
            Err(ParseError::Relator { .. })
        ));
    }

    #[test]
    fn rejects_foreign_letter() {
        assert_eq!(
            parse_presentation("gens: a b\nrel: abcA"),
            Err(ParseError::Alphabet { line: 2, letter: 'c' })
        );
    }

    #[test]
    fn rejects_duplicate_relators() {
        let e = parse_presentation("gens: a b\nrel: abAB\nrel: baBA").unwrap_err();
        assert!(matches!(e, ParseError::Relator { line: 3, .. }));
    }

    #[test]
    fn syntax_errors() {
        for text in ["gens: ab\nrel: abAB", "rel: abAB", "gens: a b\nfoo", "gens: a b\nbogus: x"] {
            assert!(matches!(parse_presentation(text), Err(ParseError::Syntax { .. })), "{text}");
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_presentation("# Klein bottle\n\ngens: a b  # two\nrel: abaB\n").unwrap();
        assert_eq!(p.to_string(), "gens: a b\nrel: abaB\n");
        assert_eq!(p.to_string().parse::<Presentation>().unwrap(), p);
    }
}
