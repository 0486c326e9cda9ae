//! Independent ground truth: exact reference groups, Cayley balls, and a
//! bounded word-problem search for everything else.

mod abelian;
mod model;
mod rewrite;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::Presentation;
use crate::symmetrized::{same_members, SymmetrizedSet};
use crate::word::{Letter, Word};

pub use abelian::Abelianization;
pub use model::{Element, ModelKind};

pub const DEFAULT_RADIUS: usize = 10;
pub const DEFAULT_REWRITE_EXTRA: usize = 4;
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;
pub const DEFAULT_REWRITE_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("model {model} does not fit: {reason}")]
    ModelMismatch { model: ModelKind, reason: String },
    #[error("Cayley ball of radius {radius} exceeds the budget of {budget} elements")]
    CapExceeded { radius: usize, budget: usize },
    #[error("model {0} has no exact element representation")]
    NotExact(ModelKind),
    #[error("invalid argument: {0}")]
    BadArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum EqVerdict {
    Equal,
    Distinct,
    /// The rewriting search gave up at this length cap.
    Inconclusive { bound: usize },
}

/// Every element within `radius` of the identity, with its exact distance.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub radius: usize,
    pub table: HashMap<Element, usize>,
    pub spheres: Vec<usize>,
}

impl CayleyBall {
    pub fn distance(&self, e: &Element) -> Option<usize> {
        self.table.get(e).copied()
    }

    /// One `key<TAB>distance` line per element, by distance then key.
    pub fn to_tsv(&self) -> String {
        let mut rows: Vec<(&Element, usize)> = self.table.iter().map(|(e, &d)| (e, d)).collect();
        rows.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(b.0)));
        let mut s = String::from("element\tdistance\n");
        for (e, d) in rows {
            let _ = writeln!(s, "{e}\t{d}");
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct Oracle {
    kind: ModelKind,
    sym: SymmetrizedSet,
    abelian: Abelianization,
    alphabet: Vec<Letter>,
    node_budget: usize,
    rewrite_extra: usize,
    rewrite_budget: usize,
    ball: Arc<Mutex<Option<Arc<CayleyBall>>>>,
}

/// The reference model whose presentation has the same generators and
/// symmetrized relators as `p`, or `Generic`.
pub fn detect_model(p: &Presentation) -> ModelKind {
    let sym = SymmetrizedSet::new(p);
    ModelKind::REFERENCE
        .into_iter()
        .find(|k| {
            let q = k.presentation().expect("reference model");
            q.alphabet() == p.alphabet() && same_members(&sym, &SymmetrizedSet::new(&q))
        })
        .unwrap_or(ModelKind::Generic)
}

impl Oracle {
    /// Picks the matching reference model automatically.
    pub fn auto(p: &Presentation) -> Self {
        Self::build(p, detect_model(p))
    }

    /// Uses `kind`, which must realize `p` unless it is `Generic`.
    pub fn with_model(p: &Presentation, kind: ModelKind) -> Result<Self, OracleError> {
        if kind != ModelKind::Generic && detect_model(p) != kind {
            return Err(OracleError::ModelMismatch {
                model: kind,
                reason: "presentation differs from the model's built-in presentation".into(),
            });
        }
        Ok(Self::build(p, kind))
    }

    fn build(p: &Presentation, kind: ModelKind) -> Self {
        Oracle {
            kind,
            sym: SymmetrizedSet::new(p),
            abelian: Abelianization::new(p),
            alphabet: p.alphabet(),
            node_budget: DEFAULT_NODE_BUDGET,
            rewrite_extra: DEFAULT_REWRITE_EXTRA,
            rewrite_budget: DEFAULT_REWRITE_BUDGET,
            ball: Arc::new(Mutex::new(None)),
        }
    }

    pub fn with_node_budget(mut self, budget: usize) -> Self {
        self.node_budget = budget;
        self.ball = Arc::new(Mutex::new(None));
        self
    }

    /// Extra length the rewriting search may grow beyond its starting word.
    pub fn with_rewrite_extra(mut self, extra: usize) -> Self {
        self.rewrite_extra = extra;
        self
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn is_exact(&self) -> bool {
        self.kind != ModelKind::Generic
    }

    pub fn abelianization(&self) -> &Abelianization {
        &self.abelian
    }

    fn check_alphabet(&self, w: &[Letter]) -> Result<(), OracleError> {
        match w.iter().find(|l| !self.alphabet.contains(l)) {
            Some(l) => Err(OracleError::ModelMismatch {
                model: self.kind,
                reason: format!("letter {l} is not in the alphabet"),
            }),
            None => Ok(()),
        }
    }

    pub fn identity(&self) -> Result<Element, OracleError> {
        if !self.is_exact() {
            return Err(OracleError::NotExact(self.kind));
        }
        Ok(model::identity(self.kind))
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        model::multiply(self.kind, x, y)
    }

    /// The element a word represents.
    pub fn eval(&self, w: &[Letter]) -> Result<Element, OracleError> {
        self.check_alphabet(w)?;
        let mut acc = self.identity()?;
        for &x in w {
            let e = model::letter(self.kind, x).ok_or_else(|| OracleError::ModelMismatch {
                model: self.kind,
                reason: format!("letter {x} has no image"),
            })?;
            acc = self.multiply(&acc, &e);
        }
        Ok(acc)
    }

    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<EqVerdict, OracleError> {
        self.check_alphabet(w1)?;
        self.check_alphabet(w2)?;
        if self.is_exact() {
            let same = self.eval(w1)? == self.eval(w2)?;
            return Ok(if same { EqVerdict::Equal } else { EqVerdict::Distinct });
        }
        if !self.abelian.same_image(w1, w2) {
            return Ok(EqVerdict::Distinct);
        }
        let probe = w1.concat(&w2.inverse()).free_reduce();
        let cap = probe.len() + self.rewrite_extra;
        Ok(match rewrite::search_trivial(&self.sym, &probe, cap, self.rewrite_budget) {
            rewrite::Search::Trivial => EqVerdict::Equal,
            rewrite::Search::Exhausted => EqVerdict::Inconclusive { bound: cap },
        })
    }

    /// Complete ball of the given radius; cached and grown on demand.
    pub fn ball(&self, radius: usize) -> Result<Arc<CayleyBall>, OracleError> {
        if !self.is_exact() {
            return Err(OracleError::NotExact(self.kind));
        }
        let mut cache = self.ball.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(b) = cache.as_ref().filter(|b| b.radius >= radius) {
            return Ok(Arc::clone(b));
        }
        let mut ball = match cache.as_ref() {
            Some(b) => (**b).clone(),
            None => CayleyBall {
                radius: 0,
                table: HashMap::from([(model::identity(self.kind), 0)]),
                spheres: vec![1],
            },
        };
        let letters: Vec<Element> = self
            .alphabet
            .iter()
            .map(|&x| model::letter(self.kind, x).expect("alphabet letter has an image"))
            .collect();
        let mut sphere: Vec<Element> = ball
            .table
            .iter()
            .filter(|(_, &d)| d == ball.radius)
            .map(|(e, _)| e.clone())
            .collect();
        sphere.sort();
        while ball.radius < radius {
            let d = ball.radius + 1;
            let mut next = Vec::new();
            for e in &sphere {
                for g in &letters {
                    let f = self.multiply(e, g);
                    if !ball.table.contains_key(&f) {
                        ball.table.insert(f.clone(), d);
                        next.push(f);
                    }
                }
            }
            if ball.table.len() > self.node_budget {
                return Err(OracleError::CapExceeded {
                    radius,
                    budget: self.node_budget,
                });
            }
            ball.spheres.push(next.len());
            ball.radius = d;
            sphere = next;
        }
        let ball = Arc::new(ball);
        *cache = Some(Arc::clone(&ball));
        Ok(ball)
    }

    /// Word length of `w`'s element, if it is at most `radius_cap`.
    pub fn distance(&self, w: &Word, radius_cap: usize) -> Result<Option<usize>, OracleError> {
        let e = self.eval(w)?;
        let r = radius_cap.min(w.free_reduce().len());
        Ok(self.ball(r)?.distance(&e))
    }

    /// `l(w^kmax) / kmax`, an upper bound for the translation number.
    pub fn tau_estimate(&self, w: &Word, kmax: usize) -> Result<Ratio<i64>, OracleError> {
        if kmax == 0 {
            return Err(OracleError::BadArgument("kmax must be at least 1".into()));
        }
        let p = w.pow(kmax);
        let d = self
            .distance(&p, p.len())?
            .expect("a word's length bounds its distance");
        Ok(Ratio::new(d as i64, kmax as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::word::w;

    fn oracle(text: &str) -> Oracle {
        Oracle::auto(&parse_presentation(text).unwrap())
    }

    const Z2: &str = "gens: a b\nrel: abAB";
    const KLEIN: &str = "gens: a b\nrel: abaB";
    const HEX: &str = "gens: x y z\nrel: xyz\nrel: xzy";

    #[test]
    fn detects_models() {
        assert_eq!(oracle(Z2).kind(), ModelKind::Z2);
        assert_eq!(oracle("gens: a b\nrel: baBA").kind(), ModelKind::Z2);
        assert_eq!(oracle(KLEIN).kind(), ModelKind::Klein);
        assert_eq!(oracle("gens: x y z\nrel: zyx\nrel: yzx").kind(), ModelKind::Hex);
        assert_eq!(oracle("gens: a b c\nrel: abc").kind(), ModelKind::FreeTri);
        assert_eq!(oracle("gens: a b\nrel: aab").kind(), ModelKind::Generic);
        assert_eq!(oracle("gens: p q\nrel: pqPQ").kind(), ModelKind::Generic);
    }

    #[test]
    fn forced_model_must_fit() {
        let p = parse_presentation(KLEIN).unwrap();
        assert!(matches!(
            Oracle::with_model(&p, ModelKind::Z2),
            Err(OracleError::ModelMismatch { .. })
        ));
        assert_eq!(Oracle::with_model(&p, ModelKind::Generic).unwrap().kind(), ModelKind::Generic);
    }

    #[test]
    fn equality_examples() {
        assert_eq!(oracle(Z2).equal(&w("ab"), &w("ba")), Ok(EqVerdict::Equal));
        assert_eq!(oracle(KLEIN).equal(&w("aba"), &w("b")), Ok(EqVerdict::Equal));
        assert_eq!(oracle(Z2).equal(&w("a"), &w("b")), Ok(EqVerdict::Distinct));
        assert!(matches!(oracle(Z2).equal(&w("x"), &w("a")), Err(OracleError::ModelMismatch { .. })));
    }

    #[test]
    fn generic_equality() {
        let o = Oracle::with_model(&parse_presentation(Z2).unwrap(), ModelKind::Generic).unwrap();
        assert_eq!(o.equal(&w("ab"), &w("ba")), Ok(EqVerdict::Equal));
        assert_eq!(o.equal(&w("a"), &w("b")), Ok(EqVerdict::Distinct));
        let aab = oracle("gens: a b\nrel: aab");
        assert_eq!(aab.equal(&w("b"), &w("AA")), Ok(EqVerdict::Equal));
    }

    #[test]
    fn distances() {
        assert_eq!(oracle(Z2).distance(&w("abAb"), 10), Ok(Some(2)));
        assert_eq!(oracle(KLEIN).distance(&w("abab"), 10), Ok(Some(2)));
        assert_eq!(oracle(HEX).distance(&w(""), 10), Ok(Some(0)));
        assert_eq!(oracle(HEX).distance(&w("xY"), 10), Ok(Some(2)));
        assert_eq!(oracle(Z2).distance(&w("aaa"), 2), Ok(None));
    }

    #[test]
    fn spheres() {
        assert_eq!(oracle(Z2).ball(3).unwrap().spheres, vec![1, 4, 8, 12]);
        assert_eq!(oracle(KLEIN).ball(3).unwrap().spheres, vec![1, 4, 8, 12]);
        assert_eq!(oracle(HEX).ball(1).unwrap().spheres, vec![1, 6]);
        let o = oracle(Z2);
        o.ball(2).unwrap();
        assert_eq!(o.ball(4).unwrap().spheres, vec![1, 4, 8, 12, 16]);
        assert_eq!(o.ball(1).unwrap().radius, 4);
    }

    #[test]
    fn budget_is_enforced() {
        let o = oracle("gens: a b c\nrel: abc").with_node_budget(100);
        assert!(matches!(o.ball(6), Err(OracleError::CapExceeded { .. })));
        let g = oracle("gens: a b\nrel: aab");
        assert_eq!(g.ball(1).unwrap_err(), OracleError::NotExact(ModelKind::Generic));
    }

    #[test]
    fn tau_estimates() {
        assert_eq!(oracle(Z2).tau_estimate(&w("ab"), 8), Ok(Ratio::new(2, 1)));
        assert_eq!(oracle(KLEIN).tau_estimate(&w("ab"), 8), Ok(Ratio::new(1, 1)));
        assert_eq!(oracle(KLEIN).tau_estimate(&w("ab"), 7), Ok(Ratio::new(8, 7)));
    }

    #[test]
    fn ball_tsv() {
        let t = oracle(Z2).ball(1).unwrap().to_tsv();
        assert_eq!(t.lines().count(), 6);
        assert!(t.lines().nth(1).unwrap().starts_with("(0,0)\t0"));
    }
}
