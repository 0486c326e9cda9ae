//! Exact translation numbers through the wall test.
//!
//! For a shortest class representative `u` of length `n`, the powers of `u`
//! either stay geodesic or contain a bad subword starting in every period. In
//! the second case a strip of cells ("wall") runs along the whole power and
//! saves a fixed amount per period: two letters per two periods for squares,
//! one letter per period for triangles.

use serde::{Deserialize, Serialize};

use super::{ConjError, Context, HalfInteger};
use crate::geodesic::{GeometryKind, StripCertificate};
use crate::word::{free_reduce_letters, Word};

/// The short side of the wall under a doubled representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallBottom {
    /// The representative rotated so its bad subword starts at position 0.
    pub rotated: Word,
    pub certificate: StripCertificate,
    /// A word for the square of `rotated`, shorter by the strip's saving.
    pub bottom: Word,
}

impl Context {
    /// Start of a bad subword of `u⁴` that begins inside the first period.
    pub fn wall_start(&self, u: &Word) -> Option<usize> {
        let u4 = u.pow(4);
        (0..u.len()).find(|&s| self.geometry.bad_subword_at(&u4, s).is_some())
    }

    pub fn translation_number(&self, w: &Word) -> Result<HalfInteger, ConjError> {
        let u = self.shortest_class_rep(w)?.rep;
        let n = u.len() as u64;
        if n == 0 {
            return Ok(HalfInteger::from_int(0));
        }
        let fires = self.wall_start(&u).is_some();
        Ok(match self.kind() {
            GeometryKind::Square if n == 1 => HalfInteger::from_int(1),
            GeometryKind::Square if fires => HalfInteger::from_int(n - 1),
            GeometryKind::Square => HalfInteger::from_int(n),
            GeometryKind::Triangle if fires => HalfInteger::from_twice(2 * n - 1),
            GeometryKind::Triangle => HalfInteger::from_int(n),
        })
    }

    /// Word length of the element `wᵏ`.
    pub fn power_length(&self, w: &Word, k: usize) -> Result<usize, ConjError> {
        self.check_word(w)?;
        if k == 0 {
            return Err(ConjError::InvalidArg("k must be at least 1".into()));
        }
        Ok(self.geometry.geodesic_length(&w.pow(k)))
    }

    /// The wall bottom of `w`'s class representative, if the wall test fires.
    pub fn wall_bottom(&self, w: &Word) -> Result<Option<WallBottom>, ConjError> {
        let u = self.shortest_class_rep(w)?.rep;
        if u.len() < 2 {
            return Ok(None);
        }
        let Some(s) = self.wall_start(&u) else { return Ok(None) };
        let rotated = u.rotate(s);
        let doubled = rotated.pow(2);
        let certificate = self
            .geometry
            .bad_subword_at(&doubled, 0)
            .expect("a bad subword fits in two periods");
        let bottom = free_reduce_letters(
            certificate
                .replacement
                .iter()
                .chain(&doubled[certificate.outer.len()..])
                .copied(),
        );
        Ok(Some(WallBottom {
            rotated,
            certificate,
            bottom,
        }))
    }

    /// Whether `l(vᵏ) = k·l(v)` for every `k ≤ kmax`.
    pub fn is_periodically_geodesic(&self, v: &Word, kmax: usize) -> Result<bool, ConjError> {
        self.check_word(v)?;
        let l = self.element_length(v);
        Ok((1..=kmax).all(|k| self.element_length(&v.pow(k)) == k * l))
    }
}
