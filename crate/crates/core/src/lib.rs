//! Stepped-up hypergraph colorings and their desk-scale certification.
//!
//! A pair coloring `phi` of `{0, .., N-1}` is lifted to a 4-uniform coloring of
//! `{0, .., 2^N - 1}` through the delta function on binary expansions (the
//! largest bit position where two vertices differ), and from there to higher
//! uniformities. The point of the library is to make the structural guarantees
//! of those liftings checkable: the 4-uniform liftings admit no red `K_6` /
//! `K_5` no matter which `phi` they start from, and that is certified here by
//! exhaustive pruned search rather than taken on faith.
//!
//! Modules:
//!
//! - [`bits`] — the delta function and the stepping-up properties of delta
//!   sequences.
//! - [`base`] — pair colorings, the lemma profiles they are searched against,
//!   and exact verifiers for each profile clause.
//! - [`phi`] — the `PHI v1` text format for persisting pair colorings.
//! - [`stepup`] — the lifted coloring evaluators and the iterated tower.
//! - [`cliques`] — monochromatic clique search over implicit colorings, plus
//!   a tiny exact Ramsey oracle for validating the machinery.

pub mod base;
pub mod bits;
pub mod cliques;
pub mod phi;
pub mod rng;
pub mod stepup;

use serde::{Deserialize, Serialize};

/// One of the two edge colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn is_red(self) -> bool {
        matches!(self, Color::Red)
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Color::Red => write!(f, "red"),
            Color::Blue => write!(f, "blue"),
        }
    }
}

/// A k-uniform coloring evaluated lazily, one sorted tuple at a time.
///
/// The ground set is `0..ground_size()`; nothing of that size is ever
/// materialized. `color_sorted` is the hot path used by the exhaustive
/// searches: callers guarantee the tuple is strictly ascending, in range and
/// of length `arity()`. Violations are only caught by debug assertions.
pub trait Coloring: Sync {
    fn arity(&self) -> usize;
    fn ground_size(&self) -> u64;
    fn color_sorted(&self, tuple: &[u64]) -> Color;
}

impl<T: Coloring + ?Sized> Coloring for &T {
    fn arity(&self) -> usize {
        (**self).arity()
    }
    fn ground_size(&self) -> u64 {
        (**self).ground_size()
    }
    fn color_sorted(&self, tuple: &[u64]) -> Color {
        (**self).color_sorted(tuple)
    }
}

/// Colors every tuple the same; the trivial base for liftings and a handy
/// degenerate case for search tests.
pub struct ConstantColoring {
    arity: usize,
    ground_size: u64,
    color: Color,
}

impl ConstantColoring {
    pub fn new(arity: usize, ground_size: u64, color: Color) -> Self {
        assert!(arity >= 2);
        ConstantColoring { arity, ground_size, color }
    }
}

impl Coloring for ConstantColoring {
    fn arity(&self) -> usize {
        self.arity
    }
    fn ground_size(&self) -> u64 {
        self.ground_size
    }
    fn color_sorted(&self, _tuple: &[u64]) -> Color {
        self.color
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_flip_is_involutive() {
        assert_eq!(Color::Red.flip(), Color::Blue);
        assert_eq!(Color::Blue.flip().flip(), Color::Blue);
    }
}
