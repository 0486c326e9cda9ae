//! Bounded search for a proof that a word is trivial.
//!
//! Triviality is invariant under conjugation, so states are cyclic words kept
//! as the least rotation of their cyclic reduction. A move replaces a nonempty
//! cyclic subword `u` by `z⁻¹` whenever `u·z` is a member of the symmetrized set.

use std::collections::{HashSet, VecDeque};

use crate::symmetrized::SymmetrizedSet;
use crate::word::{free_reduce_letters, Letter, Word};

/// Outcome of a bounded triviality search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Search {
    Trivial,
    Exhausted,
}

fn canonical(w: Word) -> Word {
    w.cyclic_reduce().0.least_rotation()
}

pub(crate) fn search_trivial(sym: &SymmetrizedSet, w: &Word, max_len: usize, budget: usize) -> Search {
    let start = canonical(w.free_reduce());
    if start.is_empty() {
        return Search::Trivial;
    }
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let n = cur.len();
        for i in 0..n {
            for r in sym.members() {
                for k in 1..=r.len().min(n) {
                    if (0..k).any(|j| cur[(i + j) % n] != r[j]) {
                        break;
                    }
                    let rest: Vec<Letter> = r[k..].iter().rev().map(|l| l.inverse()).collect();
                    let tail = (i + k..i + n).map(|j| cur[j % n]);
                    let next = canonical(free_reduce_letters(rest.into_iter().chain(tail)));
                    if next.is_empty() {
                        return Search::Trivial;
                    }
                    if next.len() <= max_len && seen.len() < budget && seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Search::Exhausted
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::word::w;

    fn sym(text: &str) -> SymmetrizedSet {
        SymmetrizedSet::new(&parse_presentation(text).unwrap())
    }

    #[test]
    fn proves_commutation() {
        let s = sym("gens: a b\nrel: abAB");
        assert_eq!(search_trivial(&s, &w("abAB"), 8, 10_000), Search::Trivial);
        assert_eq!(search_trivial(&s, &w("aabAAB"), 10, 10_000), Search::Trivial);
        assert_eq!(search_trivial(&s, &w("ab"), 6, 10_000), Search::Exhausted);
    }

    #[test]
    fn klein_relation() {
        let s = sym("gens: a b\nrel: abaB");
        assert_eq!(search_trivial(&s, &w("abaB"), 8, 10_000), Search::Trivial);
        assert_eq!(search_trivial(&s, &w("ababBB"), 10, 10_000), Search::Trivial);
    }
}
