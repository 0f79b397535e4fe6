//! Binary-expansion arithmetic: the delta function and the four stepping-up
//! properties of consecutive-delta sequences.
//!
//! A [`Vertex`] is a nonnegative integer below `2^N`, read as an N-bit string
//! with bit 0 least significant (diagrams elsewhere print the most
//! significant bit leftmost; the numeric value is the same). For distinct
//! vertices of equal width, [`delta`] is the largest bit position at which
//! they differ. Consecutive deltas of an ascending vertex chain obey four
//! structural properties (adjacent deltas differ; the end-to-end delta is the
//! maximum; a descent cannot be echoed two steps later; monotonicity is
//! hereditary), and the rule evaluators in [`crate::stepup`] lean on all of
//! them. The oracles [`check_property_ii`] and [`check_property_iii`] exist
//! so tests can exhaust them at small widths.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertices are capped at 63 bits so values and ground sizes fit in `u64`.
pub const MAX_BIT_WIDTH: u8 = 63;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BitsError {
    #[error("bit width {0} exceeds cap {MAX_BIT_WIDTH}")]
    WidthTooLarge(u8),
    #[error("bit width must be positive")]
    ZeroWidth,
    #[error("value {value} does not fit in {bit_width} bits")]
    ValueTooWide { value: u64, bit_width: u8 },
    #[error("delta is undefined for equal vertices")]
    EqualVertices,
    #[error("vertices have mismatched bit widths ({0} vs {1})")]
    WidthMismatch(u8, u8),
    #[error("vertex list is not strictly ascending")]
    NotAscending,
    #[error("need at least {0} vertices")]
    TooFewVertices(usize),
    #[error("adjacent deltas are equal at position {0}")]
    AdjacentEqual(usize),
}

/// An N-bit vertex: a value below `2^N` tagged with its width.
///
/// The width travels with the value and every operation that combines two
/// vertices insists the widths match; mixing ground sets is an error, never
/// a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    value: u64,
    bit_width: u8,
}

impl Vertex {
    pub fn new(value: u64, bit_width: u8) -> Result<Self, BitsError> {
        if bit_width == 0 {
            return Err(BitsError::ZeroWidth);
        }
        if bit_width > MAX_BIT_WIDTH {
            return Err(BitsError::WidthTooLarge(bit_width));
        }
        if value >> bit_width != 0 {
            return Err(BitsError::ValueTooWide { value, bit_width });
        }
        Ok(Vertex { value, bit_width })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn bit_width(self) -> u8 {
        self.bit_width
    }

    /// Bit `i` of the binary expansion, bit 0 least significant.
    pub fn bit(self, i: u8) -> bool {
        i < self.bit_width && (self.value >> i) & 1 == 1
    }
}

/// A bit position produced by [`delta`]; always below the bit width of the
/// vertices it came from, so it doubles as a point of the base ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DeltaIndex(pub u8);

impl DeltaIndex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for DeltaIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Largest differing bit position of two distinct raw values.
///
/// Hot-path form used by the evaluators; callers guarantee `u != v`.
#[inline(always)]
pub(crate) fn delta_raw(u: u64, v: u64) -> u32 {
    debug_assert_ne!(u, v);
    63 - (u ^ v).leading_zeros()
}

/// The largest bit position at which `u` and `v` differ. Symmetric.
pub fn delta(u: Vertex, v: Vertex) -> Result<DeltaIndex, BitsError> {
    if u.bit_width != v.bit_width {
        return Err(BitsError::WidthMismatch(u.bit_width, v.bit_width));
    }
    if u.value == v.value {
        return Err(BitsError::EqualVertices);
    }
    Ok(DeltaIndex(delta_raw(u.value, v.value) as u8))
}

fn require_ascending(vs: &[Vertex], min_len: usize) -> Result<(), BitsError> {
    if vs.len() < min_len {
        return Err(BitsError::TooFewVertices(min_len));
    }
    let width = vs[0].bit_width;
    for w in vs.windows(2) {
        if w[1].bit_width != width {
            return Err(BitsError::WidthMismatch(width, w[1].bit_width));
        }
        if w[0].value >= w[1].value {
            return Err(BitsError::NotAscending);
        }
    }
    Ok(())
}

/// Consecutive deltas of a strictly ascending chain: element `j` is
/// `delta(vs[j], vs[j+1])`. Adjacent entries are always distinct.
pub fn delta_sequence(vs: &[Vertex]) -> Result<Vec<DeltaIndex>, BitsError> {
    require_ascending(vs, 2)?;
    Ok(vs
        .windows(2)
        .map(|w| DeltaIndex(delta_raw(w[0].value, w[1].value) as u8))
        .collect())
}

/// Oracle for the end-to-end property: `delta(first, last)` equals the
/// maximum consecutive delta. A theorem, so this returns true on every
/// ascending chain; it exists to be exhausted in tests.
pub fn check_property_ii(vs: &[Vertex]) -> Result<bool, BitsError> {
    let deltas = delta_sequence(vs)?;
    let ends = delta(vs[0], vs[vs.len() - 1])?;
    Ok(Some(ends) == deltas.iter().copied().max())
}

/// Oracle for the no-echo property on ascending 4-tuples: if the first delta
/// exceeds the second, it cannot reappear as the third. Also a theorem.
pub fn check_property_iii(vs: &[Vertex; 4]) -> Result<bool, BitsError> {
    let deltas = delta_sequence(vs)?;
    Ok(deltas[0] <= deltas[1] || deltas[0] != deltas[2])
}

/// Classification of one interior position of a delta sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    LocalMin,
    LocalMax,
}

/// Marks each interior position as a local extremum or neither. Endpoints
/// carry no mark, so the output is two shorter than the input.
pub fn classify_extrema(deltas: &[DeltaIndex]) -> Result<Vec<Option<Extremum>>, BitsError> {
    check_adjacent_distinct(deltas)?;
    Ok(deltas
        .windows(3)
        .map(|w| {
            if w[0] > w[1] && w[1] < w[2] {
                Some(Extremum::LocalMin)
            } else if w[0] < w[1] && w[1] > w[2] {
                Some(Extremum::LocalMax)
            } else {
                None
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
    NotMonotone,
}

/// Strict monotonicity of a delta sequence. Sequences of length at most one
/// count as increasing so the operation stays total; rule evaluation never
/// sees them (arity 4 already yields three deltas).
pub fn monotone_direction(deltas: &[DeltaIndex]) -> Result<Direction, BitsError> {
    check_adjacent_distinct(deltas)?;
    if deltas.len() <= 1 {
        return Ok(Direction::Increasing);
    }
    if deltas.windows(2).all(|w| w[0] < w[1]) {
        Ok(Direction::Increasing)
    } else if deltas.windows(2).all(|w| w[0] > w[1]) {
        Ok(Direction::Decreasing)
    } else {
        Ok(Direction::NotMonotone)
    }
}

fn check_adjacent_distinct(deltas: &[DeltaIndex]) -> Result<(), BitsError> {
    match deltas.windows(2).position(|w| w[0] == w[1]) {
        Some(i) => Err(BitsError::AdjacentEqual(i)),
        None => Ok(()),
    }
}
