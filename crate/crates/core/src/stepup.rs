//! Lifted coloring evaluators.
//!
//! Each [`SteppedColoring`] colors the k-tuples of `{0, .., 2^N - 1}` by
//! classifying the consecutive-delta sequence of the tuple and, in some
//! branches, consulting the coloring one level down on the deltas. Nothing
//! is materialized: a coloring is a rule profile plus a reference to its
//! base, evaluated per tuple.
//!
//! The two arity-4 profiles step a pair coloring `phi` up one level. Writing
//! `(d1, d2, d3)` for the deltas of an ascending 4-tuple, the red rules are:
//!
//! * [`FourProfile::R46`] — monotone deltas forming a bad triple; a peak
//!   (`d1 < d2 > d3`) with equal ends; a peak whose three deltas are
//!   phi-monochromatic; or a valley (`d1 > d2 < d3`) with `d1 < d3` where
//!   the largest delta sees the other two in one color and the remaining
//!   pair differs.
//! * [`FourProfile::R45`] — monotone deltas forming a bad triple; a peak
//!   with equal ends; a peak forming a bad triple; or a valley whose largest
//!   delta is red toward both others while the remaining pair is blue
//!   (split by which end is larger).
//!
//! The general profile lifts any (k-1)-uniform coloring to arity k: red when
//! the deltas are strictly monotone and the base colors the delta set red,
//! or when they zig-zag as `d1 < d2 > d3 < d4 > ..` throughout.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::base::BaseColoring;
use crate::bits::{self, delta_raw, DeltaIndex, Vertex, MAX_BIT_WIDTH};
use crate::{Color, Coloring};

/// Tuples above this arity are rejected at construction.
pub const MAX_ARITY: usize = 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StepUpError {
    #[error("tuple is not strictly ascending")]
    NotAscending,
    #[error("tuple length {found} does not match arity {arity}")]
    ArityMismatch { arity: usize, found: usize },
    #[error("vertex width {found} does not match ground bits {expected}")]
    WidthMismatch { expected: u8, found: u8 },
    #[error("vertex {0} is outside the ground set")]
    OutOfGround(u64),
    #[error("ground of 2^{0} vertices exceeds the bit-width cap {MAX_BIT_WIDTH}")]
    GroundTooLarge(u64),
    #[error("base ground is empty")]
    EmptyBase,
    #[error("arity {0} exceeds the cap {MAX_ARITY}")]
    ArityTooLarge(usize),
    #[error("top arity must be at least 4")]
    ArityTooSmall,
    #[error("delta list is not strictly monotone")]
    NotMonotone,
    #[error("delta {0} is not below the bit width {1}")]
    DeltaOutOfRange(u8, u8),
    #[error("need at least one delta")]
    EmptyDeltas,
}

/// The two arity-4 rule profiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FourProfile {
    R45,
    R46,
}

/// Rule profile of a stepped coloring, for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleProfile {
    R46,
    R45,
    General,
}

/// Which red rule fired on a tuple; at most one ever does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RedRule {
    MonotoneBad,
    PeakEqualEnds,
    PeakMonochrome,
    PeakBad,
    ValleyAscendingEnds,
    ValleyDescendingEnds,
    MonotoneBase,
    ZigZag,
}

enum Kind {
    R46(Arc<BaseColoring>),
    R45(Arc<BaseColoring>),
    General(Arc<dyn Coloring + Send + Sync>),
}

/// An implicit k-uniform coloring of `{0, .., 2^ground_bits - 1}`.
pub struct SteppedColoring {
    arity: usize,
    ground_bits: u8,
    kind: Kind,
}

impl std::fmt::Debug for SteppedColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SteppedColoring")
            .field("profile", &self.profile())
            .field("arity", &self.arity)
            .field("ground_bits", &self.ground_bits)
            .finish()
    }
}

impl SteppedColoring {
    /// Arity-4 lifting of `phi` under the rule set whose structure excludes
    /// red 6-cliques.
    pub fn r46(phi: Arc<BaseColoring>) -> Result<Self, StepUpError> {
        Self::four(phi, FourProfile::R46)
    }

    /// Arity-4 lifting of `phi` under the rule set whose structure excludes
    /// red 5-cliques.
    pub fn r45(phi: Arc<BaseColoring>) -> Result<Self, StepUpError> {
        Self::four(phi, FourProfile::R45)
    }

    pub fn four(phi: Arc<BaseColoring>, profile: FourProfile) -> Result<Self, StepUpError> {
        let points = phi.n_points() as u64;
        if points == 0 {
            return Err(StepUpError::EmptyBase);
        }
        if points > MAX_BIT_WIDTH as u64 {
            return Err(StepUpError::GroundTooLarge(points));
        }
        let kind = match profile {
            FourProfile::R46 => Kind::R46(phi),
            FourProfile::R45 => Kind::R45(phi),
        };
        Ok(SteppedColoring { arity: 4, ground_bits: points as u8, kind })
    }

    /// Lifts any (k-1)-uniform coloring with `k-1 >= 4` to arity k. The new
    /// ground has one vertex per subset of the base ground, so the base must
    /// not exceed [`MAX_BIT_WIDTH`] points.
    pub fn general(base: Arc<dyn Coloring + Send + Sync>) -> Result<Self, StepUpError> {
        if base.arity() < 4 {
            return Err(StepUpError::ArityTooSmall);
        }
        let arity = base.arity() + 1;
        if arity > MAX_ARITY {
            return Err(StepUpError::ArityTooLarge(arity));
        }
        let points = base.ground_size();
        if points == 0 {
            return Err(StepUpError::EmptyBase);
        }
        if points > MAX_BIT_WIDTH as u64 {
            return Err(StepUpError::GroundTooLarge(points));
        }
        Ok(SteppedColoring { arity, ground_bits: points as u8, kind: Kind::General(base) })
    }

    pub fn profile(&self) -> RuleProfile {
        match self.kind {
            Kind::R46(_) => RuleProfile::R46,
            Kind::R45(_) => RuleProfile::R45,
            Kind::General(_) => RuleProfile::General,
        }
    }

    pub fn ground_bits(&self) -> u8 {
        self.ground_bits
    }

    /// Validated evaluation on width-checked vertices.
    pub fn color(&self, tuple: &[Vertex]) -> Result<Color, StepUpError> {
        for v in tuple {
            if v.bit_width() != self.ground_bits {
                return Err(StepUpError::WidthMismatch {
                    expected: self.ground_bits,
                    found: v.bit_width(),
                });
            }
        }
        let values: Vec<u64> = tuple.iter().map(|v| v.value()).collect();
        self.color_values(&values)
    }

    /// Validated evaluation on raw values.
    pub fn color_values(&self, tuple: &[u64]) -> Result<Color, StepUpError> {
        self.check_tuple(tuple)?;
        Ok(self.color_sorted(tuple))
    }

    /// Diagnostic evaluation: every red rule that fires on the tuple.
    /// Exclusivity (at most one) is a structural fact the test suites
    /// re-derive from this function rather than assume.
    pub fn red_rules(&self, tuple: &[u64]) -> Result<Vec<RedRule>, StepUpError> {
        self.check_tuple(tuple)?;
        let mut deltas: Vec<u64> = tuple
            .windows(2)
            .map(|w| delta_raw(w[0], w[1]) as u64)
            .collect();
        let mut fired = Vec::new();
        match &self.kind {
            Kind::R46(phi) => {
                let (d1, d2, d3) = (deltas[0] as u32, deltas[1] as u32, deltas[2] as u32);
                if is_monotone(&deltas) && bad_pattern(phi, d1, d2, d3) {
                    fired.push(RedRule::MonotoneBad);
                }
                if d1 < d2 && d2 > d3 && d1 == d3 {
                    fired.push(RedRule::PeakEqualEnds);
                }
                if d1 < d2 && d2 > d3 && d1 != d3 {
                    let p12 = phi.pair_red_fast(d1, d2);
                    let p23 = phi.pair_red_fast(d2, d3);
                    let p13 = phi.pair_red_fast(d1, d3);
                    if p12 == p23 && p23 == p13 {
                        fired.push(RedRule::PeakMonochrome);
                    }
                }
                if d1 > d2 && d2 < d3 && d1 < d3 {
                    let p31 = phi.pair_red_fast(d3, d1);
                    let p32 = phi.pair_red_fast(d3, d2);
                    let p12 = phi.pair_red_fast(d1, d2);
                    if p31 == p32 && p12 != p31 {
                        fired.push(RedRule::ValleyAscendingEnds);
                    }
                }
            }
            Kind::R45(phi) => {
                let (d1, d2, d3) = (deltas[0] as u32, deltas[1] as u32, deltas[2] as u32);
                if is_monotone(&deltas) && bad_pattern(phi, d1, d2, d3) {
                    fired.push(RedRule::MonotoneBad);
                }
                if d1 < d2 && d2 > d3 && d1 == d3 {
                    fired.push(RedRule::PeakEqualEnds);
                }
                if d1 < d2 && d2 > d3 && d1 != d3 && bad_pattern(phi, d1, d2, d3) {
                    fired.push(RedRule::PeakBad);
                }
                if d1 > d2 && d2 < d3 && d1 < d3 {
                    if phi.pair_red_fast(d1, d3)
                        && phi.pair_red_fast(d2, d3)
                        && !phi.pair_red_fast(d1, d2)
                    {
                        fired.push(RedRule::ValleyAscendingEnds);
                    }
                }
                if d1 > d2 && d2 < d3 && d1 > d3 {
                    if phi.pair_red_fast(d1, d3)
                        && phi.pair_red_fast(d1, d2)
                        && !phi.pair_red_fast(d2, d3)
                    {
                        fired.push(RedRule::ValleyDescendingEnds);
                    }
                }
            }
            Kind::General(base) => {
                if is_zigzag(&deltas) {
                    fired.push(RedRule::ZigZag);
                }
                if is_monotone(&deltas) {
                    deltas.sort_unstable();
                    if base.color_sorted(&deltas).is_red() {
                        fired.push(RedRule::MonotoneBase);
                    }
                }
            }
        }
        Ok(fired)
    }

    fn check_tuple(&self, tuple: &[u64]) -> Result<(), StepUpError> {
        if tuple.len() != self.arity {
            return Err(StepUpError::ArityMismatch { arity: self.arity, found: tuple.len() });
        }
        if !tuple.windows(2).all(|w| w[0] < w[1]) {
            return Err(StepUpError::NotAscending);
        }
        let limit = self.ground_size();
        if let Some(&v) = tuple.iter().find(|&&v| v >= limit) {
            return Err(StepUpError::OutOfGround(v));
        }
        Ok(())
    }
}

impl Coloring for SteppedColoring {
    fn arity(&self) -> usize {
        self.arity
    }

    fn ground_size(&self) -> u64 {
        1u64 << self.ground_bits
    }

    fn color_sorted(&self, tuple: &[u64]) -> Color {
        debug_assert_eq!(tuple.len(), self.arity);
        debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(*tuple.last().unwrap() < self.ground_size());
        match &self.kind {
            Kind::R46(phi) => chi_r46(phi, tuple),
            Kind::R45(phi) => chi_r45(phi, tuple),
            Kind::General(base) => chi_general(base.as_ref(), tuple),
        }
    }
}

/// Both short pairs blue, long pair red.
#[inline(always)]
fn bad_pattern(phi: &BaseColoring, d1: u32, d2: u32, d3: u32) -> bool {
    !phi.pair_red_fast(d1, d2) && !phi.pair_red_fast(d2, d3) && phi.pair_red_fast(d1, d3)
}

#[inline(always)]
fn chi_r46(phi: &BaseColoring, t: &[u64]) -> Color {
    let d1 = delta_raw(t[0], t[1]);
    let d2 = delta_raw(t[1], t[2]);
    let d3 = delta_raw(t[2], t[3]);
    let red = if d1 < d2 {
        if d2 < d3 {
            bad_pattern(phi, d1, d2, d3)
        } else {
            // peak; adjacent deltas are never equal
            d1 == d3 || {
                let p12 = phi.pair_red_fast(d1, d2);
                p12 == phi.pair_red_fast(d2, d3) && p12 == phi.pair_red_fast(d1, d3)
            }
        }
    } else if d2 > d3 {
        bad_pattern(phi, d1, d2, d3)
    } else {
        // valley; d1 != d3 since a descent is never echoed
        debug_assert_ne!(d1, d3);
        d1 < d3 && {
            let p31 = phi.pair_red_fast(d3, d1);
            p31 == phi.pair_red_fast(d3, d2) && phi.pair_red_fast(d1, d2) != p31
        }
    };
    if red {
        Color::Red
    } else {
        Color::Blue
    }
}

#[inline(always)]
fn chi_r45(phi: &BaseColoring, t: &[u64]) -> Color {
    let d1 = delta_raw(t[0], t[1]);
    let d2 = delta_raw(t[1], t[2]);
    let d3 = delta_raw(t[2], t[3]);
    let red = if d1 < d2 {
        // increasing run or peak: either way the bad pattern decides,
        // except that a peak with equal ends is red outright.
        if d2 > d3 && d1 == d3 {
            true
        } else {
            bad_pattern(phi, d1, d2, d3)
        }
    } else if d2 > d3 {
        bad_pattern(phi, d1, d2, d3)
    } else {
        debug_assert_ne!(d1, d3);
        if d1 < d3 {
            phi.pair_red_fast(d1, d3) && phi.pair_red_fast(d2, d3) && !phi.pair_red_fast(d1, d2)
        } else {
            phi.pair_red_fast(d1, d3) && phi.pair_red_fast(d1, d2) && !phi.pair_red_fast(d2, d3)
        }
    };
    if red {
        Color::Red
    } else {
        Color::Blue
    }
}

fn chi_general(base: &dyn Coloring, t: &[u64]) -> Color {
    let mut deltas = [0u64; MAX_ARITY];
    let m = t.len() - 1;
    for i in 0..m {
        deltas[i] = delta_raw(t[i], t[i + 1]) as u64;
    }
    let deltas = &mut deltas[..m];
    if is_zigzag(deltas) {
        return Color::Red;
    }
    if is_monotone(deltas) {
        // The base colors sets; both monotone directions present the same
        // set, so the query is canonicalized to ascending order.
        deltas.sort_unstable();
        return base.color_sorted(deltas);
    }
    Color::Blue
}

fn is_monotone(deltas: &[u64]) -> bool {
    deltas.windows(2).all(|w| w[0] < w[1]) || deltas.windows(2).all(|w| w[0] > w[1])
}

/// `d1 < d2 > d3 < d4 > ..` at every position.
fn is_zigzag(deltas: &[u64]) -> bool {
    deltas.len() >= 2
        && deltas
            .windows(2)
            .enumerate()
            .all(|(j, w)| if j % 2 == 0 { w[0] < w[1] } else { w[0] > w[1] })
}

/// The iterated construction: a pair coloring, one arity-4 lifting of it,
/// then general liftings, one arity per level. Level t's ground has one
/// vertex per subset of level t-1's ground.
pub struct TowerStack {
    phi: Arc<BaseColoring>,
    levels: Vec<Arc<SteppedColoring>>,
}

impl std::fmt::Debug for TowerStack {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TowerStack")
            .field("ground_sizes", &self.ground_sizes())
            .finish()
    }
}

/// Builds the stack up to `top_arity`, failing with `GroundTooLarge` as soon
/// as any level's ground would exceed `2^MAX_BIT_WIDTH` vertices.
pub fn tower_iterate(
    phi: Arc<BaseColoring>,
    four_profile: FourProfile,
    top_arity: usize,
) -> Result<TowerStack, StepUpError> {
    if top_arity < 4 {
        return Err(StepUpError::ArityTooSmall);
    }
    if top_arity > MAX_ARITY {
        return Err(StepUpError::ArityTooLarge(top_arity));
    }
    let mut levels = Vec::with_capacity(top_arity - 3);
    let four = Arc::new(SteppedColoring::four(Arc::clone(&phi), four_profile)?);
    levels.push(four);
    while levels.last().unwrap().arity() < top_arity {
        let base: Arc<dyn Coloring + Send + Sync> =
            Arc::clone(levels.last().unwrap()) as Arc<dyn Coloring + Send + Sync>;
        levels.push(Arc::new(SteppedColoring::general(base)?));
    }
    Ok(TowerStack { phi, levels })
}

impl TowerStack {
    pub fn phi(&self) -> &Arc<BaseColoring> {
        &self.phi
    }

    pub fn top(&self) -> &Arc<SteppedColoring> {
        self.levels.last().expect("stack has at least the arity-4 level")
    }

    pub fn levels(&self) -> &[Arc<SteppedColoring>] {
        &self.levels
    }

    /// Ground sizes from the pair level upward.
    pub fn ground_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![self.phi.n_points() as u64];
        sizes.extend(self.levels.iter().map(|l| l.ground_size()));
        sizes
    }
}

/// Ascending vertices realizing exactly the given strictly monotone
/// consecutive deltas: start at zero and flip bit `d_i` at step `i`.
/// Monotonicity means the flipped bit is always fresh, so no carries occur
/// and each delta lands where asked.
pub fn build_monotone_chain(
    deltas: &[DeltaIndex],
    bit_width: u8,
) -> Result<Vec<Vertex>, StepUpError> {
    if deltas.is_empty() {
        return Err(StepUpError::EmptyDeltas);
    }
    match bits::monotone_direction(deltas) {
        Ok(bits::Direction::Increasing) | Ok(bits::Direction::Decreasing) => {}
        _ => return Err(StepUpError::NotMonotone),
    }
    if let Some(d) = deltas.iter().find(|d| d.0 >= bit_width) {
        return Err(StepUpError::DeltaOutOfRange(d.0, bit_width));
    }
    let mut chain = Vec::with_capacity(deltas.len() + 1);
    let mut value = 0u64;
    chain.push(Vertex::new(0, bit_width).expect("validated width"));
    for d in deltas {
        value += 1u64 << d.0;
        chain.push(Vertex::new(value, bit_width).expect("bits stay below the width"));
    }
    Ok(chain)
}
