//! The strip grammar: partial strips of 2-cells grown one outer letter at a time.
//!
//! A frontier remembers the last cell placed. Square strips: the cell's letter
//! at index 2 is either the next outer letter (the strip closes) or the junction
//! into the next cell. Triangle strips alternate outer-only and inner-only cells
//! between an opening and a closing cell, each carrying one outer and one inner
//! edge.

use super::{Geometry, GeometryKind};
use crate::word::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Frontier {
    /// Square cell with two letters consumed.
    Square(u32),
    /// Opening triangle with its outer letter consumed.
    TriOpen(u32),
    /// Outer-only triangle with its incoming junction and outer letter consumed.
    TriOuter(u32),
}

/// Cells placed in one grammar step (at most two: inner-only then outer-only).
pub(crate) type Placed = ([u32; 2], u8);

fn one(c: usize) -> Placed {
    ([c as u32, 0], 1)
}

fn two(a: usize, b: usize) -> Placed {
    ([a as u32, b as u32], 2)
}

pub(crate) const NONE: Placed = ([0, 0], 0);

impl Geometry {
    /// Strips that open on reading `y` after `prev`.
    pub(crate) fn open(&self, prev: Option<Letter>, y: Letter, mut emit: impl FnMut(Frontier, Placed)) {
        match self.kind {
            GeometryKind::Square => {
                if let Some(x) = prev {
                    for &r in self.sym.with_prefix(&[x, y]) {
                        emit(Frontier::Square(r as u32), one(r));
                    }
                }
            }
            GeometryKind::Triangle => {
                for &r in self.sym.with_prefix(&[y]) {
                    emit(Frontier::TriOpen(r as u32), one(r));
                }
            }
        }
    }

    /// Extends a partial strip by outer letter `y`. Returns the closing cells if
    /// the strip completes; otherwise calls `emit` for each continuation.
    pub(crate) fn advance(&self, f: Frontier, y: Letter, mut emit: impl FnMut(Frontier, Placed)) -> Option<Placed> {
        let sym = &self.sym;
        match f {
            Frontier::Square(r) => {
                let cell = sym.member(r as usize);
                if cell[2] == y {
                    return Some(NONE);
                }
                for &n in sym.with_prefix(&[cell[2].inverse(), y]) {
                    emit(Frontier::Square(n as u32), one(n));
                }
                None
            }
            Frontier::TriOpen(r) => {
                let cell = sym.member(r as usize);
                if cell[1] == y {
                    return Some(NONE);
                }
                for &n in sym.with_prefix(&[cell[1].inverse(), y]) {
                    emit(Frontier::TriOuter(n as u32), one(n));
                }
                None
            }
            Frontier::TriOuter(r) => {
                let v = sym.member(r as usize)[2].inverse();
                if let Some(&c) = sym.with_prefix(&[v, y]).first() {
                    return Some(one(c));
                }
                for &inner in sym.with_prefix(&[v]) {
                    let j = sym.member(inner)[1].inverse();
                    for &outer in sym.with_prefix(&[j, y]) {
                        emit(Frontier::TriOuter(outer as u32), two(inner, outer));
                    }
                }
                None
            }
        }
    }
}
