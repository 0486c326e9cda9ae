//! Shortest conjugacy-class representatives and the conjugacy test.
//!
//! A representative is found in three phases. Descent follows rotations and
//! single-letter conjugations, each followed by geodesic and cyclic
//! reduction, as long as they strictly shorten. The plateau phase explores
//! the same moves among conjugates of length at most one more, looking for a
//! shorter exit and collecting the orbit at the minimal length. The sweep
//! conjugates by every geodesic word up to the configured bound and measures
//! the result with the oracle.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{ConjError, Context};
use crate::oracle::EqVerdict;
use crate::word::{free_reduce_letters, Word};

/// One conjugation step: `word = conjugator · previous · conjugator⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassStep {
    pub conjugator: Word,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRep {
    pub rep: Word,
    pub length: usize,
    /// `rep = conjugator · input · conjugator⁻¹` in the group.
    pub conjugator: Word,
    pub trail: Vec<ClassStep>,
    /// The conjugator sweep found nothing shorter.
    pub certified: bool,
    /// The equal-length plateau was explored without hitting its budget.
    pub orbit_complete: bool,
    /// Minimal-length words met on the plateau, each with `k` such that
    /// `word = k · rep · k⁻¹`.
    #[serde(skip)]
    pub(crate) orbit: Vec<(Word, Word)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotConjugateReason {
    Abelianization,
    ClassLength,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum ConjVerdict {
    /// `conjugator · w1 · conjugator⁻¹ = w2`.
    Conjugate { conjugator: Word },
    NotConjugate { reason: NotConjugateReason },
    Inconclusive { bound: usize },
}

fn mul(a: &Word, b: &Word) -> Word {
    free_reduce_letters(a.iter().chain(b.iter()).copied())
}

fn conj(k: &Word, w: &Word) -> Word {
    free_reduce_letters(k.iter().chain(w.iter()).chain(k.inverse().iter()).copied())
}

enum Plateau {
    Shorter(Word, Word),
    Orbit { states: Vec<(Word, Word)>, complete: bool },
}

impl Context {
    /// Geodesic, cyclically reduced conjugate `v = k · w · k⁻¹`, as `(v, k)`.
    fn normalize(&self, w: &Word) -> (Word, Word) {
        let g = self.geometry.reduce_to_geodesic(w).0;
        let (core, c) = g.cyclic_reduce();
        (core, c.inverse())
    }

    /// Normalized rotations and single-letter conjugates of `u`.
    fn moves(&self, u: &Word) -> Vec<(Word, Word)> {
        let mut out = Vec::with_capacity(u.len() + self.geometry.alphabet().len());
        for i in 1..u.len() {
            let p = u.subword(0, i).inverse();
            let (v, k) = self.normalize(&u.rotate(i));
            out.push((v, mul(&k, &p)));
        }
        for &x in self.geometry.alphabet() {
            let x = Word::from_letters(vec![x]);
            let (v, k) = self.normalize(&conj(&x, u));
            out.push((v, mul(&k, &x)));
        }
        out
    }

    fn plateau(&self, start: &Word) -> Plateau {
        let n = start.len();
        let mut seen: HashMap<Word, Word> = HashMap::from([(start.clone(), Word::empty())]);
        let mut queue = VecDeque::from([start.clone()]);
        let mut complete = true;
        while let Some(u) = queue.pop_front() {
            let ku = seen[&u].clone();
            for (v, k) in self.moves(&u) {
                if v.len() < n {
                    return Plateau::Shorter(v, mul(&k, &ku));
                }
                if v.len() > n + 1 || seen.contains_key(&v) {
                    continue;
                }
                if seen.len() >= self.settings.plateau_budget {
                    complete = false;
                    continue;
                }
                seen.insert(v.clone(), mul(&k, &ku));
                queue.push_back(v);
            }
        }
        let mut states: Vec<(Word, Word)> = seen.into_iter().filter(|(v, _)| v.len() == n).collect();
        states.sort();
        Plateau::Orbit { states, complete }
    }

    /// A conjugate strictly shorter than `u` reachable by a bounded conjugator.
    fn sweep(&self, u: &Word) -> Option<(Word, Word)> {
        if let Some(r) = self.swept.lock().unwrap_or_else(|e| e.into_inner()).get(u) {
            return r.clone();
        }
        let r = self.conjugators().iter().find_map(|g| {
            let x = conj(g, u);
            if self.element_length(&x) >= u.len() {
                return None;
            }
            let (v, k) = self.normalize(&x);
            Some((v, mul(&k, g)))
        });
        self.swept
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(u.clone(), r.clone());
        r
    }

    fn compute_rep(&self, w: &Word) -> ClassRep {
        let (mut cur, mut k) = self.normalize(w);
        let mut trail = Vec::new();
        if cur != *w {
            trail.push(ClassStep { conjugator: k.clone(), word: cur.clone() });
        }
        let step = |cur: &mut Word, k: &mut Word, v: Word, kv: Word, trail: &mut Vec<ClassStep>| {
            *k = mul(&kv, k);
            *cur = v;
            trail.push(ClassStep { conjugator: kv, word: cur.clone() });
        };
        loop {
            if let Some((v, kv)) = self.moves(&cur).into_iter().find(|(v, _)| v.len() < cur.len()) {
                step(&mut cur, &mut k, v, kv, &mut trail);
                continue;
            }
            let (states, complete) = match self.plateau(&cur) {
                Plateau::Shorter(v, kv) => {
                    step(&mut cur, &mut k, v, kv, &mut trail);
                    continue;
                }
                Plateau::Orbit { states, complete } => (states, complete),
            };
            let (best, kb) = states[0].clone();
            if best != cur {
                step(&mut cur, &mut k, best, kb.clone(), &mut trail);
            }
            if self.settings.certify {
                if let Some((v, kv)) = self.sweep(&cur) {
                    step(&mut cur, &mut k, v, kv, &mut trail);
                    continue;
                }
            }
            // re-express orbit conjugators relative to the chosen representative
            let kb_inv = kb.inverse();
            let orbit = states.into_iter().map(|(v, kv)| (v, mul(&kv, &kb_inv))).collect();
            return ClassRep {
                length: cur.len(),
                rep: cur,
                conjugator: k,
                trail,
                certified: self.settings.certify,
                orbit_complete: complete,
                orbit,
            };
        }
    }

    /// A shortest element of `w`'s conjugacy class, ASCII-least among the
    /// equal-length conjugates explored.
    pub fn shortest_class_rep(&self, w: &Word) -> Result<ClassRep, ConjError> {
        self.check_word(w)?;
        let key = w.free_reduce();
        if let Some(r) = self.reps.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(r.clone());
        }
        let r = self.compute_rep(&key);
        self.reps
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .insert(key, r.clone());
        Ok(r)
    }

    /// Decides whether `w1` and `w2` are conjugate, with a witness.
    pub fn are_conjugate(&self, w1: &Word, w2: &Word) -> Result<ConjVerdict, ConjError> {
        self.check_word(w1)?;
        self.check_word(w2)?;
        if !self.oracle.abelianization().same_image(w1, w2) {
            return Ok(ConjVerdict::NotConjugate { reason: NotConjugateReason::Abelianization });
        }
        let r1 = self.shortest_class_rep(w1)?;
        let r2 = self.shortest_class_rep(w2)?;
        // w2 = k2⁻¹ · r2 · k2 and r1 = k1 · w1 · k1⁻¹
        let finish = |mid: &Word| mul(&mul(&r2.conjugator.inverse(), mid), &r1.conjugator);
        if r1.length == r2.length {
            if let Some((_, ko)) = r1.orbit.iter().find(|(v, _)| *v == r2.rep) {
                return Ok(ConjVerdict::Conjugate { conjugator: finish(ko) });
            }
            for i in 0..r1.rep.len().max(1) {
                if r1.rep.rotate(i) == r2.rep {
                    return Ok(ConjVerdict::Conjugate { conjugator: finish(&r1.rep.subword(0, i).inverse()) });
                }
            }
        } else if r1.certified && r2.certified {
            return Ok(ConjVerdict::NotConjugate { reason: NotConjugateReason::ClassLength });
        }
        let probe = |g: &Word| {
            let t = mul(&conj(g, &r1.rep), &r2.rep.inverse());
            self.is_trivial(&t)
        };
        let empty = Word::empty();
        if let Some(g) = std::iter::once(&empty).chain(self.conjugators()).find(|g| probe(g)) {
            let g = finish(g);
            if self.oracle.equal(&conj(&g, w1), w2)? != EqVerdict::Distinct {
                return Ok(ConjVerdict::Conjugate { conjugator: g });
            }
        }
        Ok(ConjVerdict::Inconclusive { bound: self.settings.conj_bound })
    }
}
