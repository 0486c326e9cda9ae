//! Closure of the relators under cyclic rotation and inversion.

use std::collections::HashMap;

use serde::Serialize;

use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Where a member of the symmetrized set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Origin {
    pub relator: usize,
    pub rotation: usize,
    pub inverted: bool,
}

#[derive(Debug, Clone)]
pub struct SymmetrizedSet {
    members: Vec<Word>,
    origin: Vec<Origin>,
    index_of: HashMap<Word, usize>,
    prefix_index: HashMap<Word, Vec<usize>>,
}

impl SymmetrizedSet {
    pub fn new(p: &Presentation) -> Self {
        Self::from_relators(p.relators())
    }

    pub fn from_relators(relators: &[Word]) -> Self {
        let mut members = Vec::new();
        let mut origin = Vec::new();
        let mut index_of = HashMap::new();
        for (ri, r) in relators.iter().enumerate() {
            for (inverted, base) in [(false, r.clone()), (true, r.inverse())] {
                for rot in 0..base.len() {
                    let m = base.rotate(rot);
                    if !index_of.contains_key(&m) {
                        index_of.insert(m.clone(), members.len());
                        members.push(m);
                        origin.push(Origin {
                            relator: ri,
                            rotation: rot,
                            inverted,
                        });
                    }
                }
            }
        }
        let mut prefix_index: HashMap<Word, Vec<usize>> = HashMap::new();
        for (i, m) in members.iter().enumerate() {
            for k in 1..=m.len() {
                prefix_index.entry(m.subword(0, k)).or_default().push(i);
            }
        }
        SymmetrizedSet {
            members,
            origin,
            index_of,
            prefix_index,
        }
    }

    pub fn members(&self) -> &[Word] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Word {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn origin(&self, i: usize) -> Origin {
        self.origin[i]
    }

    pub fn index_of(&self, w: &[Letter]) -> Option<usize> {
        self.index_of.get(w).copied()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.index_of.contains_key(w)
    }

    /// Indices of members having `prefix` as an initial segment, in member order.
    pub fn with_prefix(&self, prefix: &[Letter]) -> &[usize] {
        self.prefix_index.get(prefix).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn prefix_index(&self) -> &HashMap<Word, Vec<usize>> {
        &self.prefix_index
    }

    pub fn max_len(&self) -> usize {
        self.members.iter().map(|m| m.len()).max().unwrap_or(0)
    }
}

/// Two presentations with equal symmetrized member sets.
pub fn same_members(a: &SymmetrizedSet, b: &SymmetrizedSet) -> bool {
    a.len() == b.len() && a.members().iter().all(|m| b.contains(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::word::w;
    use std::collections::BTreeSet;

    fn sym(text: &str) -> SymmetrizedSet {
        SymmetrizedSet::new(&parse_presentation(text).unwrap())
    }

    /// Enumerates rotations of r and r⁻¹ directly by string slicing.
    fn brute(relators: &[&str]) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for r in relators {
            let inv: String = r
                .chars()
                .rev()
                .map(|c| if c.is_ascii_lowercase() { c.to_ascii_uppercase() } else { c.to_ascii_lowercase() })
                .collect();
            for s in [r.to_string(), inv] {
                for i in 0..s.len() {
                    out.insert(format!("{}{}", &s[i..], &s[..i]));
                }
            }
        }
        out
    }

    fn member_strings(s: &SymmetrizedSet) -> BTreeSet<String> {
        s.members().iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn commutator_has_eight_members() {
        let s = sym("gens: a b\nrel: abAB");
        let expected: BTreeSet<String> = ["abAB", "bABa", "ABab", "BabA", "baBA", "aBAb", "BAba", "AbaB"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(member_strings(&s), expected);
        assert_eq!(expected, brute(&["abAB"]));
    }

    #[test]
    fn triangle_has_six_members() {
        let s = sym("gens: a b c\nrel: abc");
        let expected: BTreeSet<String> =
            ["abc", "bca", "cab", "CBA", "BAC", "ACB"].iter().map(|s| s.to_string()).collect();
        assert_eq!(member_strings(&s), expected);
    }

    #[test]
    fn power_relator_deduplicates() {
        let s = sym("gens: a\nrel: aaaa");
        assert_eq!(member_strings(&s), brute(&["aaaa"]));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn idempotent_on_symmetrized_input() {
        let s = sym("gens: a b\nrel: abaB");
        let again = SymmetrizedSet::from_relators(s.members());
        assert!(same_members(&s, &again));
    }

    #[test]
    fn closure_and_prefix_index() {
        for text in ["gens: a b\nrel: abAB", "gens: x y z\nrel: xyz\nrel: xzy", "gens: a b\nrel: aabb"] {
            let s = sym(text);
            for m in s.members() {
                assert!(s.contains(&m.rotate(1)));
                assert!(s.contains(&m.inverse()));
                assert!(m.is_cyclically_reduced());
                for k in 1..=m.len() {
                    let idx = s.with_prefix(&m[..k]);
                    assert!(idx.contains(&s.index_of(m).unwrap()));
                }
            }
            for (p, idx) in s.prefix_index() {
                for &i in idx {
                    assert!(s.member(i).starts_with(p));
                }
            }
        }
        assert_eq!(sym("gens: a b\nrel: abAB").with_prefix(&w("abA")), &[0]);
    }
}
