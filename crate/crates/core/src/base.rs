//! Pair colorings and the lemma profiles they are searched against.
//!
//! A [`BaseColoring`] is a symmetric red/blue coloring of the pairs of
//! `{0, .., N-1}`, stored as a packed upper-triangular bit array (1 = red).
//! The three finders in this module are exact: a `NoneFound` answer is a
//! statement about every candidate set, produced by pruned depth-first
//! search, not by sampling. [`search_base_coloring`] realizes the
//! probabilistic existence arguments as rejection sampling — draw a random
//! coloring, verify it against the profile, repeat — so a returned coloring
//! carries its own certificate and the search strategy cannot leak into it.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::stream_rng;
use crate::Color;

/// Exhaustive pair-coloring searches use single-word point masks.
pub const MAX_SEARCH_POINTS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BaseError {
    #[error("pair endpoints must be distinct")]
    SelfPair,
    #[error("point {0} out of range (n_points = {1})")]
    OutOfRange(usize, usize),
    #[error("triple is not strictly ordered")]
    NotStrictlyOrdered,
    #[error("target size must be at least {0}")]
    TargetTooSmall(usize),
    #[error("{0} points exceed the exhaustive-search cap of {MAX_SEARCH_POINTS}")]
    InfeasibleScale(usize),
    #[error("ground set must be nonempty")]
    NoPoints,
    #[error("profile is degenerate: {0}")]
    DegenerateProfile(String),
    #[error("invalid search config: {0}")]
    InvalidConfig(String),
    #[error("invalid probability: {0}")]
    InvalidProbability(String),
}

/// A symmetric 2-coloring of the pairs of `{0, .., n_points - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseColoring {
    n_points: usize,
    /// Upper-triangular bits in row-major pair order (0,1),(0,2),..,(1,2),..;
    /// bit set means red.
    tri: Vec<u64>,
    /// Dense adjacency rows of the red graph, kept when `n_points <= 64`.
    rows: Vec<u64>,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl BaseColoring {
    pub fn new_uniform(n_points: usize, color: Color) -> Self {
        let words = pair_count(n_points).div_ceil(64);
        let tri = match color {
            Color::Blue => vec![0u64; words],
            Color::Red => {
                let mut tri = vec![u64::MAX; words];
                Self::clear_pad_bits(n_points, &mut tri);
                tri
            }
        };
        let mut phi = BaseColoring { n_points, tri, rows: Vec::new() };
        phi.rebuild_rows();
        phi
    }

    /// Builds a coloring by asking `f` for every pair `a < b`.
    pub fn from_fn(n_points: usize, mut f: impl FnMut(usize, usize) -> Color) -> Self {
        let mut phi = Self::new_uniform(n_points, Color::Blue);
        for a in 0..n_points {
            for b in a + 1..n_points {
                if f(a, b).is_red() {
                    phi.set_tri_bit(phi.pair_index(a, b));
                }
            }
        }
        phi.rebuild_rows();
        phi
    }

    /// Reconstructs a coloring from its packed triangular bits.
    pub fn from_tri_bits(n_points: usize, tri: Vec<u64>) -> Self {
        assert_eq!(tri.len(), pair_count(n_points).div_ceil(64));
        let mut phi = BaseColoring { n_points, tri, rows: Vec::new() };
        Self::clear_pad_bits(n_points, &mut phi.tri);
        phi.rebuild_rows();
        phi
    }

    /// Each pair independently red with probability `red_probability`.
    pub fn random(n_points: usize, red_probability: Rational, rng: &mut impl Rng) -> Self {
        Self::from_fn(n_points, |_, _| {
            if red_probability.sample(rng) {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn tri_bits(&self) -> &[u64] {
        &self.tri
    }

    fn clear_pad_bits(n_points: usize, tri: &mut [u64]) {
        let bits = pair_count(n_points);
        if bits % 64 != 0 {
            if let Some(last) = tri.last_mut() {
                *last &= (1u64 << (bits % 64)) - 1;
            }
        }
    }

    fn pair_index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b && b < self.n_points);
        a * (self.n_points - 1) - a * (a.saturating_sub(1)) / 2 + (b - a - 1)
    }

    fn set_tri_bit(&mut self, idx: usize) {
        self.tri[idx / 64] |= 1 << (idx % 64);
    }

    fn clear_tri_bit(&mut self, idx: usize) {
        self.tri[idx / 64] &= !(1 << (idx % 64));
    }

    fn tri_bit(&self, idx: usize) -> bool {
        (self.tri[idx / 64] >> (idx % 64)) & 1 == 1
    }

    fn rebuild_rows(&mut self) {
        self.rows.clear();
        if self.n_points > 64 {
            return;
        }
        self.rows.resize(self.n_points, 0);
        for a in 0..self.n_points {
            for b in a + 1..self.n_points {
                if self.tri_bit(self.pair_index(a, b)) {
                    self.rows[a] |= 1 << b;
                    self.rows[b] |= 1 << a;
                }
            }
        }
    }

    /// Overwrites one pair. Fixture plumbing for tests and hand-built
    /// colorings; not used by the searches.
    pub fn set_pair(&mut self, a: usize, b: usize, color: Color) -> Result<(), BaseError> {
        let (a, b) = self.check_pair(a, b)?;
        let idx = self.pair_index(a, b);
        if color.is_red() {
            self.set_tri_bit(idx);
        } else {
            self.clear_tri_bit(idx);
        }
        if !self.rows.is_empty() {
            if color.is_red() {
                self.rows[a] |= 1 << b;
                self.rows[b] |= 1 << a;
            } else {
                self.rows[a] &= !(1 << b);
                self.rows[b] &= !(1 << a);
            }
        }
        Ok(())
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(usize, usize), BaseError> {
        if a == b {
            return Err(BaseError::SelfPair);
        }
        if a >= self.n_points {
            return Err(BaseError::OutOfRange(a, self.n_points));
        }
        if b >= self.n_points {
            return Err(BaseError::OutOfRange(b, self.n_points));
        }
        Ok((a.min(b), a.max(b)))
    }

    /// The stored color of the pair `{a, b}`; argument order is irrelevant.
    pub fn color_pair(&self, a: usize, b: usize) -> Result<Color, BaseError> {
        let (a, b) = self.check_pair(a, b)?;
        Ok(if self.tri_bit(self.pair_index(a, b)) {
            Color::Red
        } else {
            Color::Blue
        })
    }

    /// Hot-path pair lookup via the dense rows; callers guarantee distinct
    /// in-range points and `n_points <= 64`.
    #[inline(always)]
    pub(crate) fn pair_red_fast(&self, a: u32, b: u32) -> bool {
        debug_assert!(!self.rows.is_empty());
        (self.rows[a as usize] >> b) & 1 == 1
    }

    /// Red-neighborhood mask of `a` (requires `n_points <= 64`).
    fn red_mask(&self, a: usize) -> u64 {
        self.rows[a]
    }

    fn blue_mask(&self, a: usize) -> u64 {
        !self.rows[a] & points_mask(self.n_points) & !(1u64 << a)
    }

    /// True iff the sorted triple `a < b < c` matches the bad pattern:
    /// both short pairs blue and the long pair red.
    pub fn is_bad_triple(&self, a: usize, b: usize, c: usize) -> Result<bool, BaseError> {
        if !(a < b && b < c) {
            return Err(BaseError::NotStrictlyOrdered);
        }
        if c >= self.n_points {
            return Err(BaseError::OutOfRange(c, self.n_points));
        }
        Ok(self.bad_triple_unchecked(a, b, c))
    }

    #[inline]
    fn bad_triple_unchecked(&self, a: usize, b: usize, c: usize) -> bool {
        !self.tri_bit(self.pair_index(a, b))
            && !self.tri_bit(self.pair_index(b, c))
            && self.tri_bit(self.pair_index(a, c))
    }
}

impl crate::Coloring for BaseColoring {
    fn arity(&self) -> usize {
        2
    }
    fn ground_size(&self) -> u64 {
        self.n_points as u64
    }
    fn color_sorted(&self, tuple: &[u64]) -> Color {
        debug_assert_eq!(tuple.len(), 2);
        debug_assert!(tuple[0] < tuple[1] && tuple[1] < self.n_points as u64);
        if self.tri_bit(self.pair_index(tuple[0] as usize, tuple[1] as usize)) {
            Color::Red
        } else {
            Color::Blue
        }
    }
}

fn points_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A reduced fraction in (0, 1), used as an edge probability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Rational {
    num: u32,
    den: u32,
}

impl Rational {
    pub fn new(num: u32, den: u32) -> Result<Self, BaseError> {
        if num == 0 || den == 0 || num >= den {
            return Err(BaseError::InvalidProbability(format!(
                "{num}/{den} is not in (0, 1)"
            )));
        }
        let g = gcd(num, den);
        Ok(Rational { num: num / g, den: den / g })
    }

    pub const ONE_HALF: Rational = Rational { num: 1, den: 2 };

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn sample(&self, rng: &mut impl Rng) -> bool {
        rng.random_range(0..self.den) < self.num
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

impl std::str::FromStr for Rational {
    type Err = BaseError;

    /// Accepts `a/b` or a decimal in (0, 1) such as `0.25`.
    fn from_str(s: &str) -> Result<Self, BaseError> {
        let invalid = || BaseError::InvalidProbability(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| invalid())?;
            let den: u32 = den.trim().parse().map_err(|_| invalid())?;
            return Rational::new(num, den);
        }
        let t = s.trim();
        let Some(frac) = t.strip_prefix("0.") else {
            return Err(invalid());
        };
        if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(invalid());
        }
        let num: u32 = frac.parse().map_err(|_| invalid())?;
        let den = 10u32.pow(frac.len() as u32);
        Rational::new(num, den)
    }
}

impl TryFrom<String> for Rational {
    type Error = BaseError;
    fn try_from(s: String) -> Result<Self, BaseError> {
        s.parse()
    }
}

/// Which clause set a coloring is verified against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaVariant {
    Lemma31,
    Lemma41,
}

/// Verification profile: the set size `n` plus the clause thresholds derived
/// from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaProfile {
    variant: LemmaVariant,
    n: usize,
}

impl LemmaProfile {
    pub fn new(variant: LemmaVariant, n: usize) -> Result<Self, BaseError> {
        if n == 0 {
            return Err(BaseError::DegenerateProfile("n must be positive".into()));
        }
        if variant == LemmaVariant::Lemma41 && n < 4 {
            // floor(log2 n) < 2 would forbid every red edge, and with no red
            // edge every triple is good.
            return Err(BaseError::DegenerateProfile(format!(
                "lemma41 needs n >= 4 so the red-clique cap is at least 2 (n = {n})"
            )));
        }
        Ok(LemmaProfile { variant, n })
    }

    pub fn variant(&self) -> LemmaVariant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn biclique_size(&self) -> usize {
        self.n
    }

    pub fn all_good_set_size(&self) -> usize {
        self.n
    }

    /// `floor(log2 n)`, the forbidden red clique size of the lemma41 profile.
    pub fn red_clique_cap(&self) -> Option<usize> {
        match self.variant {
            LemmaVariant::Lemma31 => None,
            LemmaVariant::Lemma41 => Some(self.n.ilog2() as usize),
        }
    }

    pub fn clauses(&self) -> Vec<Clause> {
        match self.variant {
            LemmaVariant::Lemma31 => vec![Clause::NoMonoBiclique, Clause::NoAllGoodSet],
            LemmaVariant::Lemma41 => vec![
                Clause::NoRedClique,
                Clause::NoBlueBiclique,
                Clause::NoAllGoodSet,
            ],
        }
    }
}

/// Parameters of the rejection-sampling search.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub max_attempts: u64,
    pub red_probability: Rational,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_attempts: 10_000,
            red_probability: Rational::ONE_HALF,
        }
    }
}

/// Outcome of a biclique search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BicliqueOutcome {
    Witness {
        left: Vec<usize>,
        right: Vec<usize>,
        color: Color,
    },
    NoneFound {
        vacuous: bool,
    },
}

/// Outcome of a set search (red clique or all-good set).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SetOutcome {
    Witness(Vec<usize>),
    NoneFound { vacuous: bool },
}

/// Exhaustive search for a monochromatic `K_{n,n}` in any of the given
/// colors: two disjoint `n`-sets with every cross pair that color.
///
/// `NoneFound` quantifies over all pairs of disjoint `n`-sets. Queries with
/// `2n > n_points` are vacuous and flagged as such.
pub fn find_mono_biclique(
    phi: &BaseColoring,
    n: usize,
    colors: &[Color],
) -> Result<BicliqueOutcome, BaseError> {
    if n == 0 {
        return Err(BaseError::TargetTooSmall(1));
    }
    let n_points = phi.n_points();
    if 2 * n > n_points {
        return Ok(BicliqueOutcome::NoneFound { vacuous: true });
    }
    if n_points > MAX_SEARCH_POINTS {
        return Err(BaseError::InfeasibleScale(n_points));
    }
    let mut seen_red = false;
    let mut seen_blue = false;
    for &color in colors {
        match color {
            Color::Red if seen_red => continue,
            Color::Blue if seen_blue => continue,
            Color::Red => seen_red = true,
            Color::Blue => seen_blue = true,
        }
        let mut left = Vec::with_capacity(n);
        if let Some((a, b)) = biclique_dfs(phi, color, n, 0, points_mask(n_points), &mut left) {
            return Ok(BicliqueOutcome::Witness { left: a, right: b, color });
        }
    }
    Ok(BicliqueOutcome::NoneFound { vacuous: false })
}

/// DFS over ascending left sets, intersecting the chosen color's
/// neighborhoods. Any witness pair has its lexicographically smaller side
/// enumerated as the left set, so completing the scan is a proof.
fn biclique_dfs(
    phi: &BaseColoring,
    color: Color,
    n: usize,
    next: usize,
    inter: u64,
    left: &mut Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if (inter.count_ones() as usize) < n {
        return None;
    }
    if left.len() == n {
        let right: Vec<usize> = BitIter(inter).take(n).collect();
        return Some((left.clone(), right));
    }
    let remaining = n - left.len();
    for a in next..=phi.n_points().saturating_sub(remaining) {
        let row = match color {
            Color::Red => phi.red_mask(a),
            Color::Blue => phi.blue_mask(a),
        };
        left.push(a);
        let found = biclique_dfs(phi, color, n, a + 1, inter & row, left);
        left.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Exhaustive search for an `n`-set in which every sorted triple avoids the
/// bad pattern. Sets of size below 3 contain no triples and qualify
/// trivially.
pub fn find_all_good_nset(phi: &BaseColoring, n: usize) -> Result<SetOutcome, BaseError> {
    if n == 0 {
        return Err(BaseError::TargetTooSmall(1));
    }
    let n_points = phi.n_points();
    if n > n_points {
        return Ok(SetOutcome::NoneFound { vacuous: true });
    }
    if n_points > MAX_SEARCH_POINTS {
        return Err(BaseError::InfeasibleScale(n_points));
    }
    let mut set = Vec::with_capacity(n);
    if all_good_dfs(phi, n, 0, &mut set) {
        Ok(SetOutcome::Witness(set))
    } else {
        Ok(SetOutcome::NoneFound { vacuous: false })
    }
}

fn all_good_dfs(phi: &BaseColoring, n: usize, next: usize, set: &mut Vec<usize>) -> bool {
    if set.len() == n {
        return true;
    }
    let remaining = n - set.len();
    'candidates: for c in next..=phi.n_points().saturating_sub(remaining) {
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                if phi.bad_triple_unchecked(a, b, c) {
                    continue 'candidates;
                }
            }
        }
        set.push(c);
        if all_good_dfs(phi, n, c + 1, set) {
            return true;
        }
        set.pop();
    }
    false
}

/// Exhaustive search for a red `t`-clique, by pruned DFS over the red graph.
pub fn find_red_clique(phi: &BaseColoring, t: usize) -> Result<SetOutcome, BaseError> {
    if t < 2 {
        return Err(BaseError::TargetTooSmall(2));
    }
    let n_points = phi.n_points();
    if t > n_points {
        return Ok(SetOutcome::NoneFound { vacuous: true });
    }
    if n_points > MAX_SEARCH_POINTS {
        return Err(BaseError::InfeasibleScale(n_points));
    }
    let mut clique = Vec::with_capacity(t);
    if red_clique_dfs(phi, t, points_mask(n_points), &mut clique) {
        Ok(SetOutcome::Witness(clique))
    } else {
        Ok(SetOutcome::NoneFound { vacuous: false })
    }
}

fn red_clique_dfs(phi: &BaseColoring, t: usize, candidates: u64, clique: &mut Vec<usize>) -> bool {
    if clique.len() == t {
        return true;
    }
    let mut rest = candidates;
    while rest != 0 {
        if clique.len() + (rest.count_ones() as usize) < t {
            return false;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        clique.push(v);
        if red_clique_dfs(phi, t, rest & phi.red_mask(v), clique) {
            return true;
        }
        clique.pop();
    }
    false
}

/// Identifier for one clause of a lemma profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// No monochromatic `K_{n,n}` in either color.
    NoMonoBiclique,
    /// No red clique of size `floor(log2 n)`.
    NoRedClique,
    /// No blue `K_{n,n}`.
    NoBlueBiclique,
    /// No `n`-set all of whose triples are good.
    NoAllGoodSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ClauseWitness {
    Biclique {
        left: Vec<usize>,
        right: Vec<usize>,
        color: Color,
    },
    Clique(Vec<usize>),
    GoodSet(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseReport {
    pub clause: Clause,
    pub passed: bool,
    pub vacuous: bool,
    pub witness: Option<ClauseWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub profile: LemmaProfile,
    pub n_points: usize,
    pub clauses: Vec<ClauseReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }
}

/// Runs every clause of the profile against the coloring, recording a
/// failing witness per clause and flagging clauses that hold vacuously at
/// this ground size.
pub fn verify_profile(
    phi: &BaseColoring,
    profile: &LemmaProfile,
) -> Result<VerificationReport, BaseError> {
    let mut clauses = Vec::new();
    for clause in profile.clauses() {
        let report = match clause {
            Clause::NoMonoBiclique => {
                biclique_clause(phi, profile.biclique_size(), &[Color::Red, Color::Blue], clause)?
            }
            Clause::NoBlueBiclique => {
                biclique_clause(phi, profile.biclique_size(), &[Color::Blue], clause)?
            }
            Clause::NoRedClique => {
                let cap = profile.red_clique_cap().expect("lemma41 clause");
                match find_red_clique(phi, cap)? {
                    SetOutcome::Witness(set) => ClauseReport {
                        clause,
                        passed: false,
                        vacuous: false,
                        witness: Some(ClauseWitness::Clique(set)),
                    },
                    SetOutcome::NoneFound { vacuous } => ClauseReport {
                        clause,
                        passed: true,
                        vacuous,
                        witness: None,
                    },
                }
            }
            Clause::NoAllGoodSet => match find_all_good_nset(phi, profile.all_good_set_size())? {
                SetOutcome::Witness(set) => ClauseReport {
                    clause,
                    passed: false,
                    vacuous: false,
                    witness: Some(ClauseWitness::GoodSet(set)),
                },
                SetOutcome::NoneFound { vacuous } => ClauseReport {
                    clause,
                    passed: true,
                    vacuous,
                    witness: None,
                },
            },
        };
        clauses.push(report);
    }
    Ok(VerificationReport {
        profile: *profile,
        n_points: phi.n_points(),
        clauses,
    })
}

fn biclique_clause(
    phi: &BaseColoring,
    n: usize,
    colors: &[Color],
    clause: Clause,
) -> Result<ClauseReport, BaseError> {
    Ok(match find_mono_biclique(phi, n, colors)? {
        BicliqueOutcome::Witness { left, right, color } => ClauseReport {
            clause,
            passed: false,
            vacuous: false,
            witness: Some(ClauseWitness::Biclique { left, right, color }),
        },
        BicliqueOutcome::NoneFound { vacuous } => ClauseReport {
            clause,
            passed: true,
            vacuous,
            witness: None,
        },
    })
}

/// Per-clause failure counts accumulated across rejected attempts.
pub type FailureHistogram = Vec<(Clause, u64)>;

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found {
        coloring: BaseColoring,
        attempts_used: u64,
        report: VerificationReport,
    },
    Exhausted {
        attempts: u64,
        failures: FailureHistogram,
    },
}

/// Rejection-sampling search for a coloring satisfying the profile.
///
/// Attempt `t` draws from an RNG stream derived from `(seed, t)`, so the
/// outcome is a pure function of the arguments. A returned coloring has
/// passed [`verify_profile`]; exhaustion carries the per-clause failure
/// histogram for calibrating `red_probability`.
pub fn search_base_coloring(
    n_points: usize,
    profile: &LemmaProfile,
    config: &SearchConfig,
) -> Result<SearchOutcome, BaseError> {
    if n_points == 0 {
        return Err(BaseError::NoPoints);
    }
    if n_points > MAX_SEARCH_POINTS {
        return Err(BaseError::InfeasibleScale(n_points));
    }
    if config.max_attempts == 0 {
        return Err(BaseError::InvalidConfig("max_attempts must be positive".into()));
    }
    let clause_ids = profile.clauses();
    let mut failures: Vec<u64> = vec![0; clause_ids.len()];
    for attempt in 0..config.max_attempts {
        let mut rng = stream_rng(b"PHI-SEARCH-V1", config.seed, attempt);
        let candidate = BaseColoring::random(n_points, config.red_probability, &mut rng);
        let report = verify_profile(&candidate, profile)?;
        if report.passed() {
            return Ok(SearchOutcome::Found {
                coloring: candidate,
                attempts_used: attempt + 1,
                report,
            });
        }
        for (i, clause) in report.clauses.iter().enumerate() {
            if !clause.passed {
                failures[i] += 1;
            }
        }
    }
    Ok(SearchOutcome::Exhausted {
        attempts: config.max_attempts,
        failures: clause_ids.into_iter().zip(failures).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_pair_is_symmetric_and_validated() {
        let phi = BaseColoring::new_uniform(4, Color::Red);
        assert_eq!(phi.color_pair(0, 1), Ok(Color::Red));
        assert_eq!(phi.color_pair(1, 0), Ok(Color::Red));
        assert_eq!(phi.color_pair(3, 3), Err(BaseError::SelfPair));
        assert_eq!(phi.color_pair(1, 4), Err(BaseError::OutOfRange(4, 4)));
    }

    #[test]
    fn set_pair_round_trips() {
        let mut phi = BaseColoring::new_uniform(5, Color::Blue);
        phi.set_pair(2, 4, Color::Red).unwrap();
        assert_eq!(phi.color_pair(4, 2), Ok(Color::Red));
        assert_eq!(phi.color_pair(2, 3), Ok(Color::Blue));
        phi.set_pair(4, 2, Color::Blue).unwrap();
        assert_eq!(phi.color_pair(2, 4), Ok(Color::Blue));
    }

    #[test]
    fn bad_triple_detection() {
        let mut phi = BaseColoring::new_uniform(3, Color::Blue);
        phi.set_pair(0, 2, Color::Red).unwrap();
        assert_eq!(phi.is_bad_triple(0, 1, 2), Ok(true));

        let all_blue = BaseColoring::new_uniform(3, Color::Blue);
        assert_eq!(all_blue.is_bad_triple(0, 1, 2), Ok(false));
        let all_red = BaseColoring::new_uniform(3, Color::Red);
        assert_eq!(all_red.is_bad_triple(0, 1, 2), Ok(false));
        assert_eq!(all_red.is_bad_triple(1, 1, 2), Err(BaseError::NotStrictlyOrdered));
    }

    #[test]
    fn biclique_on_all_red() {
        let phi = BaseColoring::new_uniform(4, Color::Red);
        match find_mono_biclique(&phi, 2, &[Color::Red]).unwrap() {
            BicliqueOutcome::Witness { left, right, color } => {
                assert_eq!(left, vec![0, 1]);
                assert_eq!(right, vec![2, 3]);
                assert_eq!(color, Color::Red);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn biclique_on_red_matching() {
        // Red graph is the perfect matching 0-3, 1-4, 2-5: max red degree 1,
        // so no red K_{2,2} exists.
        let mut phi = BaseColoring::new_uniform(6, Color::Blue);
        for (a, b) in [(0, 3), (1, 4), (2, 5)] {
            phi.set_pair(a, b, Color::Red).unwrap();
        }
        assert_eq!(
            find_mono_biclique(&phi, 2, &[Color::Red]).unwrap(),
            BicliqueOutcome::NoneFound { vacuous: false }
        );
        // The blue side is nearly complete, so a blue K_{2,2} is there.
        assert!(matches!(
            find_mono_biclique(&phi, 2, &[Color::Blue]).unwrap(),
            BicliqueOutcome::Witness { color: Color::Blue, .. }
        ));
    }

    #[test]
    fn biclique_vacuous_when_sets_cannot_be_disjoint() {
        let phi = BaseColoring::new_uniform(7, Color::Red);
        assert_eq!(
            find_mono_biclique(&phi, 5, &[Color::Red, Color::Blue]).unwrap(),
            BicliqueOutcome::NoneFound { vacuous: true }
        );
    }

    #[test]
    fn all_good_set_on_all_blue() {
        let phi = BaseColoring::new_uniform(5, Color::Blue);
        assert_eq!(
            find_all_good_nset(&phi, 4).unwrap(),
            SetOutcome::Witness(vec![0, 1, 2, 3])
        );
        assert_eq!(
            find_all_good_nset(&phi, 6).unwrap(),
            SetOutcome::NoneFound { vacuous: true }
        );
    }

    #[test]
    fn all_good_set_blocked_by_single_bad_triple() {
        // On three points a single bad triple is the whole story.
        let mut phi = BaseColoring::new_uniform(3, Color::Blue);
        phi.set_pair(0, 2, Color::Red).unwrap();
        assert_eq!(
            find_all_good_nset(&phi, 3).unwrap(),
            SetOutcome::NoneFound { vacuous: false }
        );
        assert_eq!(
            find_all_good_nset(&phi, 2).unwrap(),
            SetOutcome::Witness(vec![0, 1])
        );
    }

    #[test]
    fn red_clique_search() {
        let all_red = BaseColoring::new_uniform(5, Color::Red);
        assert_eq!(
            find_red_clique(&all_red, 3).unwrap(),
            SetOutcome::Witness(vec![0, 1, 2])
        );
        let all_blue = BaseColoring::new_uniform(5, Color::Blue);
        assert_eq!(
            find_red_clique(&all_blue, 2).unwrap(),
            SetOutcome::NoneFound { vacuous: false }
        );
        assert_eq!(find_red_clique(&all_blue, 1), Err(BaseError::TargetTooSmall(2)));

        // Red 5-cycle: triangle-free.
        let mut cycle = BaseColoring::new_uniform(5, Color::Blue);
        for i in 0..5usize {
            cycle.set_pair(i, (i + 1) % 5, Color::Red).unwrap();
        }
        assert_eq!(
            find_red_clique(&cycle, 3).unwrap(),
            SetOutcome::NoneFound { vacuous: false }
        );
    }

    #[test]
    fn verify_profile_flags_failures_and_vacuity() {
        let profile = LemmaProfile::new(LemmaVariant::Lemma31, 5).unwrap();
        let all_blue = BaseColoring::new_uniform(7, Color::Blue);
        let report = verify_profile(&all_blue, &profile).unwrap();
        assert!(!report.passed());
        assert!(report.clauses[0].passed && report.clauses[0].vacuous);
        assert!(!report.clauses[1].passed);
        assert_eq!(
            report.clauses[1].witness,
            Some(ClauseWitness::GoodSet(vec![0, 1, 2, 3, 4]))
        );

        let profile41 = LemmaProfile::new(LemmaVariant::Lemma41, 8).unwrap();
        assert_eq!(profile41.red_clique_cap(), Some(3));
        let all_red = BaseColoring::new_uniform(8, Color::Red);
        let report = verify_profile(&all_red, &profile41).unwrap();
        assert!(!report.clauses[0].passed);
        assert_eq!(
            report.clauses[0].witness,
            Some(ClauseWitness::Clique(vec![0, 1, 2]))
        );
    }

    #[test]
    fn degenerate_profiles_are_rejected() {
        assert!(LemmaProfile::new(LemmaVariant::Lemma31, 0).is_err());
        assert!(LemmaProfile::new(LemmaVariant::Lemma41, 3).is_err());
        assert!(LemmaProfile::new(LemmaVariant::Lemma41, 4).is_ok());
    }

    #[test]
    fn search_validates_config() {
        let profile = LemmaProfile::new(LemmaVariant::Lemma31, 2).unwrap();
        let config = SearchConfig { max_attempts: 0, ..Default::default() };
        assert!(matches!(
            search_base_coloring(4, &profile, &config),
            Err(BaseError::InvalidConfig(_))
        ));
    }

    #[test]
    fn search_is_deterministic() {
        let profile = LemmaProfile::new(LemmaVariant::Lemma31, 3).unwrap();
        let config = SearchConfig { seed: 9, max_attempts: 50, ..Default::default() };
        let a = search_base_coloring(6, &profile, &config).unwrap();
        let b = search_base_coloring(6, &profile, &config).unwrap();
        match (a, b) {
            (
                SearchOutcome::Found { coloring: ca, attempts_used: ta, .. },
                SearchOutcome::Found { coloring: cb, attempts_used: tb, .. },
            ) => {
                assert_eq!(ca, cb);
                assert_eq!(ta, tb);
            }
            (
                SearchOutcome::Exhausted { failures: fa, .. },
                SearchOutcome::Exhausted { failures: fb, .. },
            ) => assert_eq!(fa, fb),
            _ => panic!("outcomes diverged"),
        }
    }

    #[test]
    fn rational_parsing_and_reduction() {
        let half: Rational = "1/2".parse().unwrap();
        assert_eq!(half, Rational::ONE_HALF);
        assert_eq!("2/4".parse::<Rational>().unwrap(), Rational::ONE_HALF);
        assert_eq!("0.5".parse::<Rational>().unwrap(), Rational::ONE_HALF);
        assert_eq!("0.125".parse::<Rational>().unwrap(), Rational::new(1, 8).unwrap());
        assert!("3/2".parse::<Rational>().is_err());
        assert!("0/5".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }
}
