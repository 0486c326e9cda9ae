//! Geodesic words in C″(4)-T(4) and C″(3)-T(6) presentations.
//!
//! A freely reduced word is geodesic exactly when it has no *bad subword*: a
//! segment that bounds a strip of 2-cells whose other side is shorter. Square
//! strips of `m` cells have `m + 2` outer and `m` inner edges. Triangle strips
//! have odd `m`, `(m + 3) / 2` outer and `(m + 1) / 2` inner edges.

mod dfa;
mod strip;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cancel::{check_conditions, Classification};
use crate::presentation::Presentation;
use crate::symmetrized::SymmetrizedSet;
use crate::word::{Letter, Word};

pub use dfa::{GeodesicDfa, GrowthCount};
pub(crate) use strip::Frontier;
use strip::Placed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("unsupported presentation: classified {0:?}, need Cpp4T4 or Cpp3T6")]
    Unsupported(Classification),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeometryKind {
    /// C″(4)-T(4): strips of squares.
    Square,
    /// C″(3)-T(6): strips of triangles.
    Triangle,
}

impl GeometryKind {
    /// How much one bad-subword replacement shortens a word.
    pub fn length_drop(self) -> usize {
        match self {
            GeometryKind::Square => 2,
            GeometryKind::Triangle => 1,
        }
    }
}

/// Symmetrized relators together with the strip shape they tile by.
#[derive(Debug, Clone)]
pub struct Geometry {
    sym: SymmetrizedSet,
    kind: GeometryKind,
    alphabet: Vec<Letter>,
}

impl Geometry {
    pub fn new(p: &Presentation) -> Result<Self, GeometryError> {
        let kind = match check_conditions(p).classification {
            Classification::Cpp4T4 => GeometryKind::Square,
            Classification::Cpp3T6 => GeometryKind::Triangle,
            other => return Err(GeometryError::Unsupported(other)),
        };
        Ok(Geometry {
            sym: SymmetrizedSet::new(p),
            kind,
            alphabet: p.alphabet(),
        })
    }

    pub fn kind(&self) -> GeometryKind {
        self.kind
    }

    pub fn symmetrized(&self) -> &SymmetrizedSet {
        &self.sym
    }

    /// Letters in ASCII order.
    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    /// Leftmost, then shortest, bad subword of `w`.
    pub fn find_bad_subword(&self, w: &Word) -> Option<StripCertificate> {
        (0..w.len()).find_map(|start| self.bad_subword_at(w, start))
    }

    /// Shortest bad subword of `w` beginning at `start`. Only freely reduced
    /// windows are considered, so a cancelling pair ends the search.
    pub fn bad_subword_at(&self, w: &Word, start: usize) -> Option<StripCertificate> {
        struct Node {
            frontier: Frontier,
            parent: Option<usize>,
            placed: Placed,
        }
        let mut nodes: Vec<Node> = Vec::new();
        let mut layer: Vec<usize> = Vec::new();
        let mut seen: HashMap<Frontier, ()> = HashMap::new();

        let (open_at, prev) = match self.kind {
            GeometryKind::Square => (start + 1, Some(*w.get(start)?)),
            GeometryKind::Triangle => (start, None),
        };
        let y = *w.get(open_at)?;
        if prev.is_some_and(|x| x.is_inverse_of(y)) {
            return None;
        }
        self.open(prev, y, |f, placed| {
            if seen.insert(f, ()).is_none() {
                layer.push(nodes.len());
                nodes.push(Node { frontier: f, parent: None, placed });
            }
        });

        let mut j = open_at + 1;
        while !layer.is_empty() && j < w.len() && !w[j - 1].is_inverse_of(w[j]) {
            let y = w[j];
            let mut next = Vec::new();
            seen.clear();
            for &ni in &layer {
                let mut fresh = Vec::new();
                let closed = self.advance(nodes[ni].frontier, y, |f, placed| fresh.push((f, placed)));
                if let Some(last) = closed {
                    let mut cells = Vec::new();
                    push_placed(&mut cells, last);
                    let mut cur = Some(ni);
                    while let Some(c) = cur {
                        push_placed(&mut cells, nodes[c].placed);
                        cur = nodes[c].parent;
                    }
                    cells.reverse();
                    return Some(self.certificate(w, start, j + 1, cells));
                }
                for (f, placed) in fresh {
                    if seen.insert(f, ()).is_none() {
                        next.push(nodes.len());
                        nodes.push(Node { frontier: f, parent: Some(ni), placed });
                    }
                }
            }
            layer = next;
            j += 1;
        }
        None
    }

    fn certificate(&self, w: &Word, start: usize, end: usize, cells: Vec<usize>) -> StripCertificate {
        let cell_words: Vec<Word> = cells.iter().map(|&c| self.sym.member(c).clone()).collect();
        let m = cell_words.len();
        let mut junctions = Vec::new();
        let mut replacement = Word::empty();
        match self.kind {
            GeometryKind::Square => {
                for (t, c) in cell_words.iter().enumerate() {
                    if t + 1 < m {
                        junctions.push(c[2]);
                    }
                    replacement.push(c[3].inverse());
                }
            }
            GeometryKind::Triangle => {
                for (t, c) in cell_words.iter().enumerate() {
                    match triangle_role(t, m) {
                        TriRole::Open => {
                            if m > 1 {
                                junctions.push(c[1]);
                            }
                            replacement.push(c[2].inverse());
                        }
                        TriRole::Outer => junctions.push(c[2]),
                        TriRole::Inner => {
                            junctions.push(c[1]);
                            replacement.push(c[2].inverse());
                        }
                        TriRole::Close => replacement.push(c[2].inverse()),
                    }
                }
            }
        }
        StripCertificate {
            kind: self.kind,
            start,
            outer: w.subword(start, end),
            cells: cell_words,
            junctions,
            replacement,
        }
    }

    pub fn is_geodesic(&self, w: &Word) -> bool {
        w.is_freely_reduced() && self.find_bad_subword(w).is_none()
    }

    /// Rewrites `w` by bad-subword replacements until it is geodesic.
    pub fn reduce_to_geodesic(&self, w: &Word) -> (Word, Vec<StripCertificate>) {
        let mut cur = w.free_reduce();
        let mut trail = Vec::new();
        while let Some(cert) = self.find_bad_subword(&cur) {
            let mut letters = cur[..cert.start].to_vec();
            letters.extend_from_slice(&cert.replacement);
            letters.extend_from_slice(&cur[cert.start + cert.outer.len()..]);
            cur = crate::word::free_reduce_letters(letters);
            trail.push(cert);
        }
        (cur, trail)
    }

    /// Word length of the element `w` represents.
    pub fn geodesic_length(&self, w: &Word) -> usize {
        self.reduce_to_geodesic(w).0.len()
    }
}

fn push_placed(cells: &mut Vec<usize>, (c, n): Placed) {
    // pushed in reverse: callers reverse the whole list at the end
    for i in (0..n as usize).rev() {
        cells.push(c[i] as usize);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TriRole {
    Open,
    Outer,
    Inner,
    Close,
}

fn triangle_role(t: usize, m: usize) -> TriRole {
    if t == 0 {
        TriRole::Open
    } else if t + 1 == m {
        TriRole::Close
    } else if t % 2 == 1 {
        TriRole::Outer
    } else {
        TriRole::Inner
    }
}

/// A strip of cells witnessing that `outer` equals the shorter `replacement`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripCertificate {
    pub kind: GeometryKind,
    pub start: usize,
    pub outer: Word,
    pub cells: Vec<Word>,
    pub junctions: Vec<Letter>,
    pub replacement: Word,
}

impl StripCertificate {
    /// Checks the cell equations letter for letter against `sym`.
    pub fn verify(&self, sym: &SymmetrizedSet) -> Result<(), String> {
        let m = self.cells.len();
        let o = &self.outer;
        let v = &self.junctions;
        if m == 0 {
            return Err("no cells".into());
        }
        if let Some(c) = self.cells.iter().find(|c| !sym.contains(c)) {
            return Err(format!("cell {c} is not a relator"));
        }
        if v.len() != m - 1 {
            return Err(format!("{} junctions for {m} cells", v.len()));
        }
        if !o.is_freely_reduced() || !self.replacement.is_freely_reduced() {
            return Err("outer or replacement not freely reduced".into());
        }
        let expect = |cond: bool, what: &str| if cond { Ok(()) } else { Err(what.to_string()) };
        let mut inner = Word::empty();
        match self.kind {
            GeometryKind::Square => {
                expect(o.len() == m + 2, "outer length is not m + 2")?;
                expect(self.cells.iter().all(|c| c.len() == 4), "cell is not a square")?;
                for (t, c) in self.cells.iter().enumerate() {
                    let (in_edge, outs): (Option<Letter>, &[Letter]) = if m == 1 {
                        (None, &o[0..3])
                    } else if t == 0 {
                        (None, &o[0..2])
                    } else if t + 1 == m {
                        (Some(v[t - 1].inverse()), &o[m..m + 2])
                    } else {
                        (Some(v[t - 1].inverse()), &o[t + 1..t + 2])
                    };
                    let mut expected: Vec<Letter> = in_edge.into_iter().chain(outs.iter().copied()).collect();
                    if t + 1 < m {
                        expected.push(v[t]);
                    }
                    expect(c[..3] == expected[..], &format!("cell {t} does not match the strip"))?;
                    inner.push(c[3].inverse());
                }
            }
            GeometryKind::Triangle => {
                expect(m % 2 == 1, "even number of triangles")?;
                expect(o.len() == (m + 3) / 2, "outer length is not (m + 3) / 2")?;
                expect(self.cells.iter().all(|c| c.len() == 3), "cell is not a triangle")?;
                let mut k = 0;
                for (t, c) in self.cells.iter().enumerate() {
                    let ok = match triangle_role(t, m) {
                        TriRole::Open if m == 1 => c[0] == o[0] && c[1] == o[1],
                        TriRole::Open => c[0] == o[0] && c[1] == v[0],
                        TriRole::Outer => c[0] == v[t - 1].inverse() && c[1] == o[k] && c[2] == v[t],
                        TriRole::Inner => c[0] == v[t - 1].inverse() && c[1] == v[t],
                        TriRole::Close => c[0] == v[t - 1].inverse() && c[1] == o[k],
                    };
                    expect(ok, &format!("cell {t} does not match the strip"))?;
                    match triangle_role(t, m) {
                        TriRole::Open => {
                            k = if m == 1 { 2 } else { 1 };
                            inner.push(c[2].inverse());
                        }
                        TriRole::Outer => k += 1,
                        TriRole::Inner => inner.push(c[2].inverse()),
                        TriRole::Close => {
                            k += 1;
                            inner.push(c[2].inverse());
                        }
                    }
                }
                expect(k == o.len(), "outer letters not all used")?;
            }
        }
        expect(inner == self.replacement, "replacement is not the inner boundary")?;
        expect(
            self.replacement.len() + self.kind.length_drop() == o.len(),
            "replacement has the wrong length",
        )
    }
}
