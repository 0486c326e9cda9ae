//! Conjugacy classes, translation numbers, roots and power-conjugacy.
//!
//! Every query runs against a [`Context`]: the geometry of a C″(4)-T(4) or
//! C″(3)-T(6) presentation, an oracle for replay, and the search bounds.

mod classrep;
mod roots;
mod tau;

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geodesic::{GeodesicDfa, Geometry, GeometryError, GeometryKind};
use crate::oracle::{Oracle, OracleError};
use crate::presentation::Presentation;
use crate::word::Word;

pub use classrep::{ClassRep, ClassStep, ConjVerdict, NotConjugateReason};
pub use roots::{ClassCount, MaxRoot, NoReason, PowerConjAnswer, RootAnswer};
pub use tau::WallBottom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid argument: {0}")]
    InvalidArg(String),
    #[error("the input represents the identity")]
    IdentityInput,
    #[error("a conjugacy test exhausted its bound of {bound}")]
    Inconclusive { bound: usize },
}

/// A nonnegative multiple of one half, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInteger {
    pub twice: u64,
}

impl HalfInteger {
    pub fn from_twice(twice: u64) -> Self {
        HalfInteger { twice }
    }

    pub fn from_int(n: u64) -> Self {
        HalfInteger { twice: 2 * n }
    }

    pub fn is_integer(self) -> bool {
        self.twice.is_multiple_of(2)
    }

    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.twice as i64, 2)
    }

    /// Whole part, rounding down.
    pub fn floor(self) -> u64 {
        self.twice / 2
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl std::str::FromStr for HalfInteger {
    type Err = String;

    /// Accepts `3`, `3/2`, `1.5`.
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("{s:?} is not a nonnegative multiple of 1/2");
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u64 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(HalfInteger::from_int(num)),
                "2" => Ok(HalfInteger::from_twice(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = s.split_once('.') {
            let int: u64 = int.parse().map_err(|_| bad())?;
            return match frac.trim_end_matches('0') {
                "" => Ok(HalfInteger::from_int(int)),
                "5" => Ok(HalfInteger::from_twice(2 * int + 1)),
                _ => Err(bad()),
            };
        }
        s.parse().map(HalfInteger::from_int).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    /// Longest conjugator tried by certification sweeps and conjugacy searches.
    pub conj_bound: usize,
    /// States explored among equal-length conjugates before giving up on completeness.
    pub plateau_budget: usize,
    /// Run the exhaustive conjugator sweep on every class representative.
    pub certify: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            conj_bound: 6,
            plateau_budget: 512,
            certify: true,
        }
    }
}

#[derive(Debug)]
pub struct Context {
    presentation: Presentation,
    geometry: Geometry,
    oracle: Oracle,
    settings: Settings,
    dfa: OnceLock<GeodesicDfa>,
    conjugators: OnceLock<Vec<Word>>,
    reps: Mutex<HashMap<Word, ClassRep>>,
    /// Sweep outcome per plateau representative, shared by all its conjugates.
    swept: Mutex<HashMap<Word, Option<(Word, Word)>>>,
    /// Smallest Cayley-ball radius the oracle failed to build.
    ball_limit: AtomicUsize,
}

impl Context {
    pub fn new(p: &Presentation) -> Result<Self, ConjError> {
        Self::with_oracle(p, Oracle::auto(p))
    }

    pub fn with_oracle(p: &Presentation, oracle: Oracle) -> Result<Self, ConjError> {
        Ok(Context {
            presentation: p.clone(),
            geometry: Geometry::new(p)?,
            oracle,
            settings: Settings::default(),
            dfa: OnceLock::new(),
            conjugators: OnceLock::new(),
            reps: Mutex::new(HashMap::new()),
            swept: Mutex::new(HashMap::new()),
            ball_limit: AtomicUsize::new(usize::MAX),
        })
    }

    pub fn with_settings(mut self, settings: Settings) -> Self {
        self.settings = settings;
        self.conjugators = OnceLock::new();
        self.reps = Mutex::new(HashMap::new());
        self.swept = Mutex::new(HashMap::new());
        self
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn kind(&self) -> GeometryKind {
        self.geometry.kind()
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    pub fn settings(&self) -> Settings {
        self.settings
    }

    pub fn dfa(&self) -> &GeodesicDfa {
        self.dfa.get_or_init(|| GeodesicDfa::build(&self.geometry))
    }

    /// Geodesic words of length 1 through `conj_bound`, shortest first.
    pub(crate) fn conjugators(&self) -> &[Word] {
        self.conjugators
            .get_or_init(|| self.dfa().words_up_to(self.settings.conj_bound).into_iter().skip(1).collect())
    }

    pub(crate) fn check_word(&self, w: &Word) -> Result<(), ConjError> {
        match w.iter().find(|l| !self.presentation.contains_letter(**l)) {
            Some(l) => Err(ConjError::InvalidArg(format!("letter {l} is not in the alphabet"))),
            None => Ok(()),
        }
    }

    /// Word length of the element, read from the oracle's Cayley ball when it
    /// is affordable and from geodesic reduction otherwise.
    pub(crate) fn element_length(&self, w: &Word) -> usize {
        let w = w.free_reduce();
        if self.oracle.is_exact() && w.len() < self.ball_limit.load(Ordering::Relaxed) {
            match self.oracle.distance(&w, w.len()) {
                Ok(Some(d)) => return d,
                Ok(None) => {}
                Err(_) => {
                    self.ball_limit.fetch_min(w.len(), Ordering::Relaxed);
                }
            }
        }
        self.geometry.geodesic_length(&w)
    }

    pub(crate) fn is_trivial(&self, w: &Word) -> bool {
        self.geometry.reduce_to_geodesic(w).0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_text() {
        assert_eq!(HalfInteger::from_twice(3).to_string(), "3/2");
        assert_eq!(HalfInteger::from_int(2).to_string(), "2");
        for (s, t) in [("3", 6), ("3/2", 3), ("1.5", 3), ("0", 0), ("4/1", 8), ("2.0", 4)] {
            assert_eq!(s.parse::<HalfInteger>().unwrap().twice, t, "{s}");
        }
        for s in ["-1", "1/3", "0.25", "x"] {
            assert!(s.parse::<HalfInteger>().is_err(), "{s}");
        }
    }

    #[test]
    fn half_integer_json() {
        let j = serde_json::to_string(&HalfInteger::from_twice(3)).unwrap();
        assert_eq!(j, r#"{"twice":3}"#);
    }
}
