//! The geodesic language as a minimal deterministic automaton.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::{Frontier, Geometry};
use crate::word::{Letter, Word};

/// Per-length counts of accepted words, starting at length 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthCount(pub Vec<BigUint>);

impl GrowthCount {
    pub fn counts(&self) -> &[BigUint] {
        &self.0
    }
}

impl Serialize for GrowthCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match u64::try_from(c) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// States are numbered breadth-first from the start state, following letters
/// in ASCII order; the dead state is always last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicDfa {
    alphabet: Vec<Letter>,
    transitions: Vec<Vec<usize>>,
    start: usize,
    dead: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct ScanState {
    last: Option<Letter>,
    frontiers: Vec<Frontier>,
}

impl GeodesicDfa {
    pub fn build(g: &Geometry) -> Self {
        let alphabet = g.alphabet().to_vec();
        let mut ids: HashMap<ScanState, usize> = HashMap::new();
        let mut states: Vec<ScanState> = Vec::new();
        let mut trans: Vec<Vec<Option<usize>>> = Vec::new();
        let init = ScanState { last: None, frontiers: Vec::new() };
        ids.insert(init.clone(), 0);
        states.push(init);
        trans.push(vec![None; alphabet.len()]);
        let mut queue = VecDeque::from([0usize]);

        while let Some(si) = queue.pop_front() {
            for (ai, &y) in alphabet.iter().enumerate() {
                let Some(next) = step(g, &states[si], y) else { continue };
                let id = *ids.entry(next.clone()).or_insert_with(|| {
                    states.push(next);
                    trans.push(vec![None; alphabet.len()]);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                });
                trans[si][ai] = Some(id);
            }
        }

        let dead = states.len();
        let mut transitions: Vec<Vec<usize>> = trans
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(dead)).collect())
            .collect();
        transitions.push(vec![dead; alphabet.len()]);
        minimize(alphabet, transitions, 0, dead)
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn dead(&self) -> usize {
        self.dead
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        state != self.dead
    }

    pub fn next(&self, state: usize, l: Letter) -> usize {
        match self.alphabet.iter().position(|&a| a == l) {
            Some(i) => self.transitions[state][i],
            None => self.dead,
        }
    }

    pub fn run(&self, w: &[Letter]) -> usize {
        w.iter().fold(self.start, |s, &l| self.next(s, l))
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.is_accepting(self.run(w))
    }

    pub fn count_geodesics(&self, k: usize) -> GrowthCount {
        let n = self.num_states();
        let mut v = vec![BigUint::from(0u32); n];
        v[self.start] = BigUint::from(1u32);
        let mut out = Vec::with_capacity(k + 1);
        for len in 0..=k {
            let total: BigUint = (0..n).filter(|&s| s != self.dead).map(|s| &v[s]).sum();
            out.push(total);
            if len == k {
                break;
            }
            let mut nv = vec![BigUint::from(0u32); n];
            for s in (0..n).filter(|&s| s != self.dead) {
                if v[s] == BigUint::from(0u32) {
                    continue;
                }
                for &t in &self.transitions[s] {
                    nv[t] += &v[s];
                }
            }
            v = nv;
        }
        GrowthCount(out)
    }

    /// Accepted words of length exactly `len`, in ASCII-lexicographic order.
    pub fn words_of_length(&self, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(len);
        self.collect(self.start, len, &mut prefix, &mut out);
        out
    }

    /// Accepted words of length at most `max_len`, shortest first, then lexicographic.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|l| self.words_of_length(l)).collect()
    }

    fn collect(&self, s: usize, left: usize, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word::from_letters(prefix.clone()));
            return;
        }
        for (i, &l) in self.alphabet.iter().enumerate() {
            let t = self.transitions[s][i];
            if t == self.dead {
                continue;
            }
            prefix.push(l);
            self.collect(t, left - 1, prefix, out);
            prefix.pop();
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph geodesics {\n  rankdir=LR;\n");
        for q in 0..self.num_states() {
            if q != self.dead {
                let _ = writeln!(s, "  q{q} [shape=doublecircle];");
            }
        }
        let _ = writeln!(s, "  init [shape=point];\n  init -> q{};", self.start);
        for q in 0..self.num_states() {
            if q == self.dead {
                continue;
            }
            for (i, l) in self.alphabet.iter().enumerate() {
                let t = self.transitions[q][i];
                if t != self.dead {
                    let _ = writeln!(s, "  q{q} -> q{t} [label=\"{l}\"];");
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("state\tletter\tnext\n");
        for q in 0..self.num_states() {
            for (i, l) in self.alphabet.iter().enumerate() {
                let _ = writeln!(s, "{q}\t{l}\t{}", self.transitions[q][i]);
            }
        }
        s
    }
}

/// One scanner step; `None` means the word read so far is not geodesic.
fn step(g: &Geometry, st: &ScanState, y: Letter) -> Option<ScanState> {
    if st.last.is_some_and(|x| x.is_inverse_of(y)) {
        return None;
    }
    let mut next = BTreeSet::new();
    for &f in &st.frontiers {
        if g.advance(f, y, |nf, _| {
            next.insert(nf);
        })
        .is_some()
        {
            return None;
        }
    }
    g.open(st.last, y, |nf, _| {
        next.insert(nf);
    });
    Some(ScanState {
        last: Some(y),
        frontiers: next.into_iter().collect(),
    })
}

fn minimize(alphabet: Vec<Letter>, trans: Vec<Vec<usize>>, start: usize, dead: usize) -> GeodesicDfa {
    let n = trans.len();
    let mut class: Vec<usize> = (0..n).map(|q| usize::from(q == dead)).collect();
    let mut count = 0;
    loop {
        let mut sig_ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            let sig = (class[q], trans[q].iter().map(|&t| class[t]).collect());
            let len = sig_ids.len();
            next[q] = *sig_ids.entry(sig).or_insert(len);
        }
        let classes = sig_ids.len();
        class = next;
        if classes == count {
            break;
        }
        count = classes;
    }

    let mut order: Vec<Option<usize>> = vec![None; count];
    let mut reps: Vec<usize> = Vec::new();
    let dead_class = class[dead];
    let mut queue = VecDeque::from([start]);
    if class[start] != dead_class {
        order[class[start]] = Some(0);
        reps.push(start);
    }
    while let Some(q) = queue.pop_front() {
        for &t in &trans[q] {
            let c = class[t];
            if c != dead_class && order[c].is_none() {
                order[c] = Some(reps.len());
                reps.push(t);
                queue.push_back(t);
            }
        }
    }
    let new_dead = reps.len();
    let map = |q: usize| if class[q] == dead_class { new_dead } else { order[class[q]].unwrap_or(new_dead) };
    let mut transitions: Vec<Vec<usize>> = reps.iter().map(|&q| trans[q].iter().map(|&t| map(t)).collect()).collect();
    transitions.push(vec![new_dead; alphabet.len()]);
    GeodesicDfa {
        alphabet,
        transitions,
        start: 0,
        dead: new_dead,
    }
}
