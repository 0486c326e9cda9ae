//! Pieces and the C(p), T(q), P and C″(p) small cancellation conditions.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::presentation::Presentation;
use crate::symmetrized::SymmetrizedSet;
use crate::word::Word;

/// Largest parameter for which a condition holds; `Unbounded` when it holds for all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(usize),
    Unbounded,
}

impl Bound {
    /// Display cap for unbounded values.
    pub const DISPLAY_CAP: usize = 64;

    pub fn at_least(self, k: usize) -> bool {
        match self {
            Bound::Finite(n) => n >= k,
            Bound::Unbounded => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(n) => write!(f, "{n}"),
            Bound::Unbounded => write!(f, ">={}", Self::DISPLAY_CAP),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(n) => s.serialize_u64(*n as u64),
            Bound::Unbounded => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Bound::Finite(n as usize)),
            Raw::S(s) if s == format!(">={}", Bound::DISPLAY_CAP) => Ok(Bound::Unbounded),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad bound {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceIndex {
    pub pieces: BTreeSet<Word>,
    pub max_piece_length: usize,
}

impl PieceIndex {
    pub fn is_piece(&self, w: &Word) -> bool {
        self.pieces.contains(w)
    }
}

/// Every nonempty common prefix of two distinct members.
pub fn compute_pieces(s: &SymmetrizedSet) -> PieceIndex {
    let mut pieces = BTreeSet::new();
    let members = s.members();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let common = members[i]
                .iter()
                .zip(members[j].iter())
                .take_while(|(a, b)| a == b)
                .count();
            for k in 1..=common {
                pieces.insert(members[i].subword(0, k));
            }
        }
    }
    let max_piece_length = pieces.iter().map(|p| p.len()).max().unwrap_or(0);
    PieceIndex {
        pieces,
        max_piece_length,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Cpp4T4,
    Cpp3T6,
    C4T4P,
    C3T6P,
    C6P,
    Unclassified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PFailure {
    LongPiece { piece: Word },
    ProperPower { relator: Word, period: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    /// A shortest factorization into pieces, attaining `c_max`.
    pub piece_decomposition: Option<Vec<Word>>,
    /// A cyclic sequence of members attaining `t_max`.
    pub bad_sequence: Option<Vec<Word>>,
    pub p_failure: Option<PFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub c_max: Bound,
    pub t_max: Bound,
    pub p_holds: bool,
    pub cpp: Option<usize>,
    pub classification: Classification,
    pub witnesses: Witnesses,
}

pub fn check_conditions(p: &Presentation) -> ConditionReport {
    let sym = SymmetrizedSet::new(p);
    let pieces = compute_pieces(&sym);
    let mut witnesses = Witnesses::default();

    let (c_max, decomposition) = c_condition(&sym, &pieces);
    witnesses.piece_decomposition = decomposition;

    let (t_max, cycle) = t_condition(&sym);
    witnesses.bad_sequence = cycle;

    let long_piece = pieces.pieces.iter().find(|w| w.len() > 1);
    let power = p.relators().iter().find(|r| r.is_proper_power());
    witnesses.p_failure = match (long_piece, power) {
        (Some(piece), _) => Some(PFailure::LongPiece {
            piece: piece.clone(),
        }),
        (None, Some(r)) => Some(PFailure::ProperPower {
            relator: r.clone(),
            period: r.minimal_period(),
        }),
        (None, None) => None,
    };
    let p_holds = witnesses.p_failure.is_none();

    let lengths: BTreeSet<usize> = p.relators().iter().map(|r| r.len()).collect();
    let uniform = (lengths.len() == 1).then(|| *lengths.iter().next().unwrap());
    let cpp = uniform.filter(|&l| p_holds && c_max.at_least(l));

    let classification = match cpp {
        Some(4) if t_max.at_least(4) => Classification::Cpp4T4,
        Some(3) if t_max.at_least(6) => Classification::Cpp3T6,
        _ if p_holds && c_max.at_least(6) => Classification::C6P,
        _ if p_holds && c_max.at_least(4) && t_max.at_least(4) => Classification::C4T4P,
        _ if p_holds && c_max.at_least(3) && t_max.at_least(6) => Classification::C3T6P,
        _ => Classification::Unclassified,
    };

    ConditionReport {
        c_max,
        t_max,
        p_holds,
        cpp,
        classification,
        witnesses,
    }
}

/// Fewest pieces any member factors into, by shortest path over cut positions.
fn c_condition(sym: &SymmetrizedSet, pieces: &PieceIndex) -> (Bound, Option<Vec<Word>>) {
    let mut best: Option<Vec<Word>> = None;
    for m in sym.members() {
        let n = m.len();
        let mut dist: Vec<Option<usize>> = vec![None; n + 1];
        let mut prev = vec![0usize; n + 1];
        dist[0] = Some(0);
        for i in 0..n {
            let Some(d) = dist[i] else { continue };
            for j in i + 1..=(i + pieces.max_piece_length).min(n) {
                if pieces.is_piece(&m.subword(i, j)) && dist[j].is_none_or(|e| d + 1 < e) {
                    dist[j] = Some(d + 1);
                    prev[j] = i;
                }
            }
        }
        if let Some(d) = dist[n] {
            if best.as_ref().is_none_or(|b| d < b.len()) {
                let mut cuts = vec![n];
                while *cuts.last().unwrap() != 0 {
                    cuts.push(prev[*cuts.last().unwrap()]);
                }
                cuts.reverse();
                best = Some(cuts.windows(2).map(|c| m.subword(c[0], c[1])).collect());
            }
        }
    }
    match best {
        Some(b) => (Bound::Finite(b.len()), Some(b)),
        None => (Bound::Unbounded, None),
    }
}

/// Directed edge `r → r′` when `r′ ≠ r⁻¹` and the product `r·r′` cancels at the junction.
pub fn t_edges(sym: &SymmetrizedSet) -> Vec<Vec<usize>> {
    sym.members()
        .iter()
        .map(|r| {
            let last = r[r.len() - 1];
            let inv = r.inverse();
            sym.with_prefix(&[last.inverse()])
                .iter()
                .copied()
                .filter(|&j| *sym.member(j) != inv)
                .collect()
        })
        .collect()
}

/// Shortest closed walk of length at least 3 in the cancellation graph.
fn t_condition(sym: &SymmetrizedSet) -> (Bound, Option<Vec<Word>>) {
    let edges = t_edges(sym);
    let n = edges.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        // states (vertex, min(steps, 3))
        let idx = |v: usize, c: usize| v * 4 + c;
        let mut parent: Vec<Option<usize>> = vec![None; n * 4];
        let mut dist: Vec<Option<usize>> = vec![None; n * 4];
        let mut queue = VecDeque::new();
        dist[idx(start, 0)] = Some(0);
        queue.push_back((start, 0usize));
        let mut found = None;
        while let Some((v, c)) = queue.pop_front() {
            let d = dist[idx(v, c)].unwrap();
            if best.as_ref().is_some_and(|b| d + 1 >= b.len()) {
                break;
            }
            for &u in &edges[v] {
                let c2 = (c + 1).min(3);
                if dist[idx(u, c2)].is_none() {
                    dist[idx(u, c2)] = Some(d + 1);
                    parent[idx(u, c2)] = Some(idx(v, c));
                    if u == start && c2 == 3 {
                        found = Some(idx(u, c2));
                        break;
                    }
                    queue.push_back((u, c2));
                }
            }
            if found.is_some() {
                break;
            }
        }
        if let Some(end) = found {
            let mut walk = Vec::new();
            let mut cur = end;
            while let Some(p) = parent[cur] {
                walk.push(cur / 4);
                cur = p;
            }
            walk.reverse();
            // walk ends at `start`; rotate so it begins there
            walk.rotate_right(1);
            if best.as_ref().is_none_or(|b| walk.len() < b.len()) {
                best = Some(walk);
            }
        }
    }
    match best {
        Some(b) => (
            Bound::Finite(b.len()),
            Some(b.into_iter().map(|i| sym.member(i).clone()).collect()),
        ),
        None => (Bound::Unbounded, None),
    }
}

/// True when some member begins with `u` and `q·|u| = p·|r|`.
pub fn is_pq_relator(u: &Word, p: usize, q: usize, s: &SymmetrizedSet) -> bool {
    if u.is_empty() {
        return false;
    }
    s.with_prefix(u)
        .iter()
        .any(|&i| q * u.len() == p * s.member(i).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::word::w;

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    /// Common prefixes of every pair, computed on strings.
    fn brute_pieces(s: &SymmetrizedSet) -> BTreeSet<String> {
        let ms: Vec<String> = s.members().iter().map(|m| m.to_string()).collect();
        let mut out = BTreeSet::new();
        for a in &ms {
            for b in &ms {
                if a == b {
                    continue;
                }
                for k in 1..=a.len().min(b.len()) {
                    if a[..k] == b[..k] {
                        out.insert(a[..k].to_string());
                    }
                }
            }
        }
        out
    }

    fn piece_strings(p: &PieceIndex) -> BTreeSet<String> {
        p.pieces.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn pieces_match_enumeration() {
        let cases = [
            ("gens: a b\nrel: abAB", vec!["a", "b", "A", "B"], 1),
            ("gens: x y z\nrel: xyz\nrel: xzy", vec!["x", "y", "z", "X", "Y", "Z"], 1),
            ("gens: a\nrel: aaaa", vec![], 0),
        ];
        for (text, expected, max) in cases {
            let s = SymmetrizedSet::new(&pres(text));
            let p = compute_pieces(&s);
            let expected: BTreeSet<String> = expected.into_iter().map(String::from).collect();
            assert_eq!(piece_strings(&p), expected, "{text}");
            assert_eq!(piece_strings(&p), brute_pieces(&s));
            assert_eq!(p.max_piece_length, max);
        }
    }

    #[test]
    fn long_pieces_are_prefix_closed() {
        let s = SymmetrizedSet::new(&pres("gens: a b\nrel: aabab\nrel: aabbb"));
        let p = compute_pieces(&s);
        assert!(p.max_piece_length >= 2);
        for piece in &p.pieces {
            if piece.len() >= 2 {
                assert!(p.is_piece(&piece.subword(0, piece.len() - 1)));
            }
            assert!(s.with_prefix(piece).len() >= 2);
        }
        let r = check_conditions(&pres("gens: a b\nrel: aabab\nrel: aabbb"));
        assert!(!r.p_holds);
        assert!(matches!(r.witnesses.p_failure, Some(PFailure::LongPiece { .. })));
    }

    #[test]
    fn commutator_is_cpp4_t4() {
        let r = check_conditions(&pres("gens: a b\nrel: abAB"));
        assert_eq!(r.c_max, Bound::Finite(4));
        assert_eq!(r.t_max, Bound::Finite(4));
        assert!(r.p_holds);
        assert_eq!(r.cpp, Some(4));
        assert_eq!(r.classification, Classification::Cpp4T4);
    }

    #[test]
    fn klein_is_cpp4_t4() {
        let r = check_conditions(&pres("gens: a b\nrel: abaB"));
        assert_eq!((r.c_max, r.t_max), (Bound::Finite(4), Bound::Finite(4)));
        assert_eq!(r.classification, Classification::Cpp4T4);
    }

    #[test]
    fn hex_is_cpp3_t6() {
        let r = check_conditions(&pres("gens: x y z\nrel: xyz\nrel: xzy"));
        assert_eq!((r.c_max, r.t_max), (Bound::Finite(3), Bound::Finite(6)));
        assert_eq!(r.cpp, Some(3));
        assert_eq!(r.classification, Classification::Cpp3T6);
    }

    #[test]
    fn single_triangle_is_unbounded_t() {
        let r = check_conditions(&pres("gens: a b c\nrel: abc"));
        assert_eq!(r.t_max, Bound::Unbounded);
        assert!(r.p_holds);
        assert_eq!(r.cpp, Some(3));
        assert_eq!(r.classification, Classification::Cpp3T6);
        assert!(t_edges(&SymmetrizedSet::new(&pres("gens: a b c\nrel: abc")))
            .iter()
            .all(Vec::is_empty));
    }

    #[test]
    fn proper_power_fails_p() {
        let r = check_conditions(&pres("gens: a\nrel: aaaa"));
        assert!(!r.p_holds);
        assert_eq!(r.classification, Classification::Unclassified);
        assert_eq!(
            r.witnesses.p_failure,
            Some(PFailure::ProperPower { relator: w("aaaa"), period: 1 })
        );
    }

    /// Independent check of the T witness: consecutive products cancel, no
    /// neighbour is the other's inverse, and length equals t_max.
    #[test]
    fn t_witness_is_valid() {
        for text in ["gens: a b\nrel: abAB", "gens: x y z\nrel: xyz\nrel: xzy", "gens: a b\nrel: abaB"] {
            let r = check_conditions(&pres(text));
            let seq = r.witnesses.bad_sequence.clone().unwrap();
            assert_eq!(Bound::Finite(seq.len()), r.t_max);
            assert!(seq.len() >= 3);
            for i in 0..seq.len() {
                let a = &seq[i];
                let b = &seq[(i + 1) % seq.len()];
                assert_ne!(*a, b.inverse());
                assert!(!a.concat(b).is_cyclically_reduced());
            }
        }
    }

    #[test]
    fn c_max_monotone_under_added_relators() {
        let base = check_conditions(&pres("gens: a b\nrel: abAB"));
        let more = check_conditions(&pres("gens: a b\nrel: abAB\nrel: aabb"));
        assert!(more.c_max <= base.c_max);
    }

    #[test]
    fn pq_relators() {
        let z2 = SymmetrizedSet::new(&pres("gens: a b\nrel: abAB"));
        let tri = SymmetrizedSet::new(&pres("gens: a b c\nrel: abc"));
        assert!(is_pq_relator(&w("abA"), 3, 4, &z2));
        assert!(is_pq_relator(&w("ab"), 2, 3, &tri));
        assert!(!is_pq_relator(&w("aa"), 1, 2, &z2));
        assert!(is_pq_relator(&w("ab"), 1, 2, &z2));
    }

    #[test]
    fn report_json_round_trip() {
        let r = check_conditions(&pres("gens: a b c\nrel: abc"));
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"t_max\":\">=64\""), "{s}");
        let back: ConditionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
