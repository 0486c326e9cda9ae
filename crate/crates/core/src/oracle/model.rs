//! Closed-form reference groups.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::presentation::{parse_presentation, Presentation};
use crate::word::{free_reduce_letters, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// ⟨a,b | abAB⟩ as integer pairs.
    Z2,
    /// ⟨a,b | abaB⟩ as pairs with the twisted product.
    Klein,
    /// ⟨x,y,z | xyz, xzy⟩ as integer pairs, z = −x−y.
    Hex,
    /// ⟨a,b,c | abc⟩ as the free group on a and b, c = b⁻¹a⁻¹.
    FreeTri,
    /// Any presentation, decided by bounded rewriting.
    Generic,
}

impl ModelKind {
    pub const REFERENCE: [ModelKind; 4] = [ModelKind::Z2, ModelKind::Klein, ModelKind::Hex, ModelKind::FreeTri];

    /// The presentation a reference model realizes.
    pub fn presentation(self) -> Option<Presentation> {
        let text = match self {
            ModelKind::Z2 => "gens: a b\nrel: abAB",
            ModelKind::Klein => "gens: a b\nrel: abaB",
            ModelKind::Hex => "gens: x y z\nrel: xyz\nrel: xzy",
            ModelKind::FreeTri => "gens: a b c\nrel: abc",
            ModelKind::Generic => return None,
        };
        Some(parse_presentation(text).expect("built-in presentation parses"))
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Z2 => "z2",
            ModelKind::Klein => "klein",
            ModelKind::Hex => "hex",
            ModelKind::FreeTri => "freetri",
            ModelKind::Generic => "generic",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [ModelKind::Z2, ModelKind::Klein, ModelKind::Hex, ModelKind::FreeTri, ModelKind::Generic]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown model {s:?}"))
    }
}

/// An exact group element in a reference model.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Pair(i64, i64),
    Free(Word),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Pair(m, n) => write!(f, "({m},{n})"),
            Element::Free(w) if w.is_empty() => f.write_str("1"),
            Element::Free(w) => write!(f, "{w}"),
        }
    }
}

pub(crate) fn identity(kind: ModelKind) -> Element {
    match kind {
        ModelKind::FreeTri => Element::Free(Word::empty()),
        _ => Element::Pair(0, 0),
    }
}

fn l(c: char) -> Letter {
    Letter::new(c).expect("ASCII letter")
}

/// Image of a single letter; `None` if the letter is outside the model.
pub(crate) fn letter(kind: ModelKind, x: Letter) -> Option<Element> {
    let s = i64::from(x.sign());
    let g = x.generator().as_char();
    Some(match (kind, g) {
        (ModelKind::Z2 | ModelKind::Klein, 'a') => Element::Pair(s, 0),
        (ModelKind::Z2 | ModelKind::Klein, 'b') => Element::Pair(0, s),
        (ModelKind::Hex, 'x') => Element::Pair(s, 0),
        (ModelKind::Hex, 'y') => Element::Pair(0, s),
        (ModelKind::Hex, 'z') => Element::Pair(-s, -s),
        (ModelKind::FreeTri, 'a' | 'b') => Element::Free(Word::from_letters(vec![x])),
        (ModelKind::FreeTri, 'c') if s > 0 => Element::Free(Word::from_letters(vec![l('B'), l('A')])),
        (ModelKind::FreeTri, 'c') => Element::Free(Word::from_letters(vec![l('a'), l('b')])),
        _ => return None,
    })
}

pub(crate) fn multiply(kind: ModelKind, x: &Element, y: &Element) -> Element {
    match (x, y) {
        (Element::Pair(m, n), Element::Pair(p, q)) => match kind {
            ModelKind::Klein => {
                let twist = if n.rem_euclid(2) == 0 { 1 } else { -1 };
                Element::Pair(m + twist * p, n + q)
            }
            _ => Element::Pair(m + p, n + q),
        },
        (Element::Free(u), Element::Free(v)) => Element::Free(free_reduce_letters(u.iter().chain(v.iter()).copied())),
        _ => panic!("elements from different models"),
    }
}
