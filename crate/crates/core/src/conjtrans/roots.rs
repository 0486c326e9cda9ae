//! n-th roots, maximal roots, power-conjugacy and class counting.
//!
//! All bounds come from half-integrality of translation numbers: a nontrivial
//! element has τ ≥ 1 on squares and τ ≥ 1/2 on triangles, and a shortest class
//! representative of length n has τ ≥ n − 1 (squares) or n − 1/2 (triangles).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{ConjError, ConjVerdict, Context, HalfInteger};
use crate::geodesic::GeometryKind;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoReason {
    /// The class is too short to be an n-th power.
    LengthBound,
    /// Every candidate root was refuted.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum RootAnswer {
    /// `conjugator · witnessⁿ · conjugator⁻¹ = w`.
    Yes { witness: Word, conjugator: Word },
    No { reason: NoReason },
    Inconclusive { bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxRoot {
    pub n: usize,
    pub witness: Word,
    pub conjugator: Word,
    /// Larger exponents whose root test was inconclusive.
    pub inconclusive_above: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum PowerConjAnswer {
    /// `conjugator · w2ⁿ · conjugator⁻¹ = w1`.
    Yes { n: i64, conjugator: Word },
    No,
    Inconclusive { bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub r: HalfInteger,
    pub count: usize,
    /// One representative per class, by translation number, then length, then ASCII.
    pub reps: Vec<Word>,
    pub taus: Vec<HalfInteger>,
}

impl Context {
    pub fn nth_root(&self, w: &Word, n: usize) -> Result<RootAnswer, ConjError> {
        self.check_word(w)?;
        if n == 0 {
            return Err(ConjError::InvalidArg("n must be at least 1".into()));
        }
        if n == 1 {
            return Ok(RootAnswer::Yes { witness: w.clone(), conjugator: Word::empty() });
        }
        let u = self.shortest_class_rep(w)?;
        let len = u.length;
        if len == 0 {
            return Ok(RootAnswer::Yes { witness: Word::empty(), conjugator: Word::empty() });
        }
        let max_len = match self.kind() {
            GeometryKind::Square if len < n => return Ok(RootAnswer::No { reason: NoReason::LengthBound }),
            GeometryKind::Triangle if 2 * len < n => return Ok(RootAnswer::No { reason: NoReason::LengthBound }),
            GeometryKind::Square => len / n + 1,
            GeometryKind::Triangle => (2 * len + n) / (2 * n),
        };
        let ab = self.oracle.abelianization();
        let mut necklaces = BTreeSet::new();
        let mut inconclusive = false;
        for v in self.dfa().words_up_to(max_len).into_iter().skip(1) {
            if !v.is_cyclically_reduced() || !necklaces.insert(v.least_rotation()) {
                continue;
            }
            if !ab.power_matches(&v, n as i64, w) {
                continue;
            }
            match self.are_conjugate(&v.pow(n), w)? {
                ConjVerdict::Conjugate { conjugator } => {
                    return Ok(RootAnswer::Yes { witness: v, conjugator });
                }
                ConjVerdict::NotConjugate { .. } => {}
                ConjVerdict::Inconclusive { .. } => inconclusive = true,
            }
        }
        Ok(if inconclusive {
            RootAnswer::Inconclusive { bound: self.settings.conj_bound }
        } else {
            RootAnswer::No { reason: NoReason::Exhausted }
        })
    }

    /// The largest n for which `w` has an n-th root.
    pub fn max_root(&self, w: &Word) -> Result<MaxRoot, ConjError> {
        let u = self.shortest_class_rep(w)?;
        if u.length == 0 {
            return Err(ConjError::IdentityInput);
        }
        let top = match self.kind() {
            GeometryKind::Square => u.length,
            GeometryKind::Triangle => 2 * u.length,
        };
        let mut inconclusive_above = Vec::new();
        for n in (1..=top).rev() {
            match self.nth_root(w, n)? {
                RootAnswer::Yes { witness, conjugator } => {
                    return Ok(MaxRoot { n, witness, conjugator, inconclusive_above });
                }
                RootAnswer::No { .. } => {}
                RootAnswer::Inconclusive { .. } => inconclusive_above.push(n),
            }
        }
        unreachable!("every element is its own first power")
    }

    /// Whether `w1` is conjugate to some power `w2ⁿ`.
    pub fn power_conjugacy(&self, w1: &Word, w2: &Word) -> Result<PowerConjAnswer, ConjError> {
        self.check_word(w2)?;
        let u1 = self.shortest_class_rep(w1)?;
        if u1.length == 0 {
            return Ok(PowerConjAnswer::Yes { n: 0, conjugator: Word::empty() });
        }
        if self.shortest_class_rep(w2)?.length == 0 {
            return Ok(PowerConjAnswer::No);
        }
        let bound = 2 * u1.length;
        let mut inconclusive = false;
        for m in 1..=bound {
            for n in [m as i64, -(m as i64)] {
                let base = if n > 0 { w2.clone() } else { w2.inverse() };
                match self.are_conjugate(&base.pow(m), w1)? {
                    ConjVerdict::Conjugate { conjugator } => return Ok(PowerConjAnswer::Yes { n, conjugator }),
                    ConjVerdict::NotConjugate { .. } => {}
                    ConjVerdict::Inconclusive { .. } => inconclusive = true,
                }
            }
        }
        Ok(if inconclusive {
            PowerConjAnswer::Inconclusive { bound: self.settings.conj_bound }
        } else {
            PowerConjAnswer::No
        })
    }

    /// Conjugacy classes with translation number at most `r`.
    pub fn count_classes_by_tau(&self, r: HalfInteger) -> Result<ClassCount, ConjError> {
        let max_len = match self.kind() {
            GeometryKind::Square => r.floor() + 1,
            GeometryKind::Triangle => r.twice.div_ceil(2),
        } as usize;
        let mut reps: Vec<(HalfInteger, Word)> = Vec::new();
        let mut seen = BTreeSet::new();
        for v in self.dfa().words_up_to(max_len) {
            if !v.is_cyclically_reduced() {
                continue;
            }
            let rep = self.shortest_class_rep(&v)?.rep;
            if !seen.insert(rep.clone()) {
                continue;
            }
            let tau = self.translation_number(&rep)?;
            if tau > r {
                continue;
            }
            let mut fresh = true;
            for (t, other) in &reps {
                if *t != tau {
                    continue;
                }
                match self.are_conjugate(&rep, other)? {
                    ConjVerdict::Conjugate { .. } => {
                        fresh = false;
                        break;
                    }
                    ConjVerdict::NotConjugate { .. } => {}
                    ConjVerdict::Inconclusive { bound } => return Err(ConjError::Inconclusive { bound }),
                }
            }
            if fresh {
                reps.push((tau, rep));
            }
        }
        reps.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.len().cmp(&b.1.len())).then(a.1.cmp(&b.1)));
        Ok(ClassCount {
            r,
            count: reps.len(),
            taus: reps.iter().map(|(t, _)| *t).collect(),
            reps: reps.into_iter().map(|(_, w)| w).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::EqVerdict;
    use crate::presentation::parse_presentation;
    use crate::word::w;

    fn ctx(text: &str) -> Context {
        Context::new(&parse_presentation(text).unwrap()).unwrap()
    }

    const Z2: &str = "gens: a b\nrel: abAB";
    const KLEIN: &str = "gens: a b\nrel: abaB";

    fn replay(c: &Context, w: &Word, n: usize, a: &RootAnswer) {
        let RootAnswer::Yes { witness, conjugator } = a else { panic!("{a:?}") };
        let lhs = conjugator.concat(&witness.pow(n)).concat(&conjugator.inverse());
        assert_eq!(c.oracle().equal(&lhs, w), Ok(EqVerdict::Equal));
    }

    #[test]
    fn roots() {
        let z = ctx(Z2);
        let a = z.nth_root(&w("aabb"), 2).unwrap();
        replay(&z, &w("aabb"), 2, &a);
        assert_eq!(z.nth_root(&w("aab"), 2).unwrap(), RootAnswer::No { reason: NoReason::Exhausted });
        assert_eq!(z.nth_root(&w("ab"), 3).unwrap(), RootAnswer::No { reason: NoReason::LengthBound });
        let k = ctx(KLEIN);
        let a = k.nth_root(&w("bb"), 2).unwrap();
        replay(&k, &w("bb"), 2, &a);
        assert!(matches!(z.nth_root(&w("ab"), 0), Err(ConjError::InvalidArg(_))));
    }

    #[test]
    fn max_roots() {
        let z = ctx(Z2);
        let m = z.max_root(&w("aaaaaa")).unwrap();
        assert_eq!((m.n, m.witness.to_string().as_str()), (6, "a"));
        assert_eq!(z.max_root(&w("ab")).unwrap().n, 1);
        assert_eq!(ctx(KLEIN).max_root(&w("bb")).unwrap().n, 2);
        assert_eq!(z.max_root(&w("aA")).unwrap_err(), ConjError::IdentityInput);
    }

    #[test]
    fn power_conjugacy_examples() {
        let z = ctx(Z2);
        assert!(matches!(z.power_conjugacy(&w("aabb"), &w("ab")).unwrap(), PowerConjAnswer::Yes { n: 2, .. }));
        assert_eq!(z.power_conjugacy(&w("a"), &w("b")).unwrap(), PowerConjAnswer::No);
        assert!(matches!(z.power_conjugacy(&w("AA"), &w("a")).unwrap(), PowerConjAnswer::Yes { n: -2, .. }));
        assert!(matches!(z.power_conjugacy(&w(""), &w("a")).unwrap(), PowerConjAnswer::Yes { n: 0, .. }));
        let k = ctx(KLEIN);
        assert!(matches!(k.power_conjugacy(&w("bb"), &w("ab")).unwrap(), PowerConjAnswer::Yes { n: 2, .. }));
    }

    #[test]
    fn class_counts() {
        let z = ctx(Z2);
        let counts: Vec<usize> = (0..=2)
            .map(|r| z.count_classes_by_tau(HalfInteger::from_int(r)).unwrap().count)
            .collect();
        assert_eq!(counts, [1, 5, 13]);
    }
}
