//! Monochromatic clique search over implicit k-uniform colorings.
//!
//! [`find_mono_clique`] is the exhaustive workhorse: an ordered depth-first
//! search that extends a partial clique only while every k-subset of it has
//! the target color, with candidate sets kept as bitsets over the ground and
//! filtered by evaluating only the tuples the newest vertex participates in.
//! `NoneExhaustive` is therefore a certificate over every target-size subset
//! of the ground. Root branches (the choice of first vertex) run on separate
//! workers; the reported witness is the first in depth-first order no matter
//! the thread count.
//!
//! [`probe_mono_clique`] is the heuristic counterpart: randomized greedy
//! extension with restarts, reporting a lower bound and never a maximum.
//! [`tiny_ramsey`] is an exact graph-case oracle used to validate the
//! machinery against classically known values.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::base::BaseColoring;
use crate::bits::delta_raw;
use crate::rng::stream_rng;
use crate::stepup::{FourProfile, StepUpError, SteppedColoring};
use crate::{Color, Coloring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliqueError {
    #[error("ground has {ground} vertices but the target size is {target}")]
    VacuousQuery { ground: usize, target: usize },
    #[error("target size {target} is below the arity {arity}")]
    TargetBelowArity { target: usize, arity: usize },
    #[error("ground is not strictly ascending")]
    GroundNotAscending,
    #[error("ground vertex {0} is outside the coloring's ground set")]
    GroundOutOfRange(u64),
    #[error("search needs ~{estimate} tuple evaluations, over the budget of {max_tuples}")]
    BudgetExceeded { estimate: u128, max_tuples: u64 },
    #[error("{edges} edges exceed the oracle enumeration cap of {cap}")]
    InfeasibleScale { edges: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    BadParameters(String),
}

/// Enumeration budget. The pre-check compares `C(|ground|, k)` against
/// `max_tuples` and refuses outright rather than truncating an exhaustive
/// search; the heuristic probe instead caps each restart's evaluations.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SearchBudget {
    pub max_tuples: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_tuples: 1_000_000_000 }
    }
}

/// A clique question: which color, what size, over which explicit ground.
pub struct CliqueQuery<'a, C: Coloring + ?Sized> {
    pub coloring: &'a C,
    /// Strictly ascending subset of the coloring's ground set.
    pub ground: &'a [u64],
    pub target_color: Color,
    pub target_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CliqueOutcome {
    Witness { vertices: Vec<u64> },
    NoneExhaustive,
    LowerBound { size: usize, witness: Vec<u64> },
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub target_color: Color,
    pub target_size: usize,
    pub ground_len: usize,
    pub outcome: CliqueOutcome,
    pub seed: Option<u64>,
    pub tuples_evaluated: u64,
    pub wall_ms: u64,
}

fn validate_query<C: Coloring + ?Sized>(q: &CliqueQuery<C>) -> Result<(), CliqueError> {
    let k = q.coloring.arity();
    if q.target_size < k {
        return Err(CliqueError::TargetBelowArity { target: q.target_size, arity: k });
    }
    if !q.ground.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliqueError::GroundNotAscending);
    }
    if let Some(&v) = q.ground.last() {
        if v >= q.coloring.ground_size() {
            return Err(CliqueError::GroundOutOfRange(v));
        }
    }
    if q.ground.len() < q.target_size {
        return Err(CliqueError::VacuousQuery { ground: q.ground.len(), target: q.target_size });
    }
    Ok(())
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out = 1u128;
    for i in 0..k {
        out = out.saturating_mul(n - i) / (i + 1);
    }
    out
}

/// True iff every k-subset of the ascending `vertices` has `color`. This is
/// the independent self-check every witness passes before being reported.
pub fn is_monochromatic<C: Coloring + ?Sized>(coloring: &C, vertices: &[u64], color: Color) -> bool {
    let k = coloring.arity();
    if vertices.len() < k {
        return true;
    }
    let mut comb: Vec<usize> = (0..k).collect();
    let mut tuple = vec![0u64; k];
    loop {
        for (t, &i) in tuple.iter_mut().zip(comb.iter()) {
            *t = vertices[i];
        }
        if coloring.color_sorted(&tuple) != color {
            return false;
        }
        if !advance_combination(&mut comb, vertices.len()) {
            return true;
        }
    }
}

/// Lexicographic successor of a combination of `0..n`; false at the end.
fn advance_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] != i + n - k {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exhaustive search for a monochromatic clique of `target_size`.
///
/// Returns the depth-first-lexicographically first witness, or
/// `NoneExhaustive` once every extension order has been ruled out.
pub fn find_mono_clique<C: Coloring + ?Sized>(
    q: &CliqueQuery<C>,
    budget: &SearchBudget,
) -> Result<SearchReport, CliqueError> {
    validate_query(q)?;
    let k = q.coloring.arity();
    let estimate = binomial(q.ground.len() as u128, k as u128);
    if estimate > budget.max_tuples as u128 {
        return Err(CliqueError::BudgetExceeded { estimate, max_tuples: budget.max_tuples });
    }

    let start = Instant::now();
    let evals = AtomicU64::new(0);
    let roots = 0..=q.ground.len() - q.target_size;
    let witness = roots.into_par_iter().find_map_first(|root| {
        let mut dfs = Dfs::new(q, |values: &[u64]| Some(values.to_vec()));
        let found = dfs.run_root(root);
        evals.fetch_add(dfs.evals, Ordering::Relaxed);
        found
    });

    let outcome = match witness {
        Some(vertices) => {
            assert!(
                is_monochromatic(q.coloring, &vertices, q.target_color),
                "witness failed its self-check"
            );
            CliqueOutcome::Witness { vertices }
        }
        None => CliqueOutcome::NoneExhaustive,
    };
    Ok(SearchReport {
        target_color: q.target_color,
        target_size: q.target_size,
        ground_len: q.ground.len(),
        outcome,
        seed: None,
        tuples_evaluated: evals.load(Ordering::Relaxed),
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Exhaustive scan of the monochromatic sets of one color, applying `accept`
/// to each; stops at the first set `accept` turns into a hit. Used for
/// postcondition sweeps like the distinct-delta scan below.
fn scan_mono_sets<C, F>(
    q: &CliqueQuery<C>,
    budget: &SearchBudget,
    accept: F,
) -> Result<(Option<Vec<u64>>, u64), CliqueError>
where
    C: Coloring + ?Sized,
    F: Fn(&[u64]) -> Option<Vec<u64>> + Sync,
{
    validate_query(q)?;
    let estimate = binomial(q.ground.len() as u128, q.coloring.arity() as u128);
    if estimate > budget.max_tuples as u128 {
        return Err(CliqueError::BudgetExceeded { estimate, max_tuples: budget.max_tuples });
    }
    let evals = AtomicU64::new(0);
    let roots = 0..=q.ground.len() - q.target_size;
    let hit = roots.into_par_iter().find_map_first(|root| {
        let mut dfs = Dfs::new(q, &accept);
        let found = dfs.run_root(root);
        evals.fetch_add(dfs.evals, Ordering::Relaxed);
        found
    });
    Ok((hit, evals.load(Ordering::Relaxed)))
}

/// Every 4-subset blue but two consecutive deltas coincide — the pattern the
/// stepped rule structure is supposed to forbid (a repeated delta inside an
/// all-blue set forces a red tuple). Returns the first counterexample, or
/// `None` as an exhaustive certificate over all blue `subset_size`-sets.
pub fn find_blue_set_with_repeated_delta<C: Coloring + ?Sized>(
    coloring: &C,
    ground: &[u64],
    subset_size: usize,
    budget: &SearchBudget,
) -> Result<(Option<Vec<u64>>, u64), CliqueError> {
    let q = CliqueQuery {
        coloring,
        ground,
        target_color: Color::Blue,
        target_size: subset_size,
    };
    scan_mono_sets(&q, budget, |values| {
        let mut deltas: Vec<u32> = values.windows(2).map(|w| delta_raw(w[0], w[1])).collect();
        deltas.sort_unstable();
        if deltas.windows(2).any(|w| w[0] == w[1]) {
            Some(values.to_vec())
        } else {
            None
        }
    })
}

/// Depth-first clique extension with per-depth candidate bitsets.
struct Dfs<'a, C: Coloring + ?Sized, F> {
    coloring: &'a C,
    ground: &'a [u64],
    target_color: Color,
    target_size: usize,
    k: usize,
    words: usize,
    clique: Vec<usize>,
    tuple: Vec<u64>,
    comb: Vec<usize>,
    pool: Vec<Vec<u64>>,
    evals: u64,
    accept: F,
}

impl<'a, C, F> Dfs<'a, C, F>
where
    C: Coloring + ?Sized,
    F: Fn(&[u64]) -> Option<Vec<u64>>,
{
    fn new(q: &CliqueQuery<'a, C>, accept: F) -> Self {
        let k = q.coloring.arity();
        Dfs {
            coloring: q.coloring,
            ground: q.ground,
            target_color: q.target_color,
            target_size: q.target_size,
            k,
            words: q.ground.len().div_ceil(64),
            clique: Vec::with_capacity(q.target_size),
            tuple: vec![0; k],
            comb: Vec::with_capacity(k),
            pool: Vec::new(),
            evals: 0,
            accept,
        }
    }

    fn run_root(&mut self, root: usize) -> Option<Vec<u64>> {
        let mut all = self.alloc_set();
        for w in 0..self.words {
            let lo = w * 64;
            let hi = (lo + 64).min(self.ground.len());
            all[w] = if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
        }
        self.clique.clear();
        self.clique.push(root);
        let cands = self.filter_candidates(&all, root);
        self.pool.push(all);
        let hit = self.extend(&cands);
        self.pool.push(cands);
        hit
    }

    fn extend(&mut self, cands: &[u64]) -> Option<Vec<u64>> {
        if self.clique.len() == self.target_size {
            let values: Vec<u64> = self.clique.iter().map(|&i| self.ground[i]).collect();
            return (self.accept)(&values);
        }
        let needed = self.target_size - self.clique.len();
        let mut available: usize = cands.iter().map(|w| w.count_ones() as usize).sum();
        if available < needed {
            return None;
        }
        for (w, &word) in cands.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let idx = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.clique.push(idx);
                let next = self.filter_candidates(cands, idx);
                let hit = self.extend(&next);
                self.pool.push(next);
                self.clique.pop();
                if hit.is_some() {
                    return hit;
                }
                available -= 1;
                if available < needed {
                    return None;
                }
            }
        }
        None
    }

    /// Candidates that stay extension-compatible after `v` joins the clique:
    /// members of `prev` above `v` whose new tuples (the (k-2)-subsets of
    /// the clique before `v`, completed with `v` and the candidate) all have
    /// the target color.
    fn filter_candidates(&mut self, prev: &[u64], v: usize) -> Vec<u64> {
        let mut next = self.alloc_set();
        next.copy_from_slice(prev);
        // drop v and everything below it
        for w in 0..=v / 64 {
            next[w] = if w == v / 64 { next[w] & !((1u64 << (v % 64)) | ((1u64 << (v % 64)) - 1)) } else { 0 };
        }
        for w in 0..self.words {
            let mut bits = next[w];
            while bits != 0 {
                let low = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let cand = w * 64 + low;
                if !self.new_tuples_match(v, cand) {
                    next[w] &= !(1u64 << low);
                }
            }
        }
        next
    }

    /// Checks every k-subset that contains both `v` (the newest clique
    /// vertex) and `cand`: the remaining k-2 slots come from the clique
    /// before `v`.
    fn new_tuples_match(&mut self, v: usize, cand: usize) -> bool {
        let p_len = self.clique.len() - 1;
        let need = self.k - 2;
        if need > p_len {
            return true;
        }
        self.comb.clear();
        self.comb.extend(0..need);
        loop {
            self.tuple.clear();
            for &i in &self.comb {
                self.tuple.push(self.ground[self.clique[i]]);
            }
            self.tuple.push(self.ground[v]);
            self.tuple.push(self.ground[cand]);
            self.evals += 1;
            if self.coloring.color_sorted(&self.tuple) != self.target_color {
                return false;
            }
            if !advance_combination(&mut self.comb, p_len) {
                return true;
            }
        }
    }

    fn alloc_set(&mut self) -> Vec<u64> {
        self.pool.pop().unwrap_or_else(|| vec![0u64; self.words])
    }
}

/// Randomized greedy lower bound on the largest monochromatic clique.
///
/// Each restart shuffles the ground with its own derived RNG stream and
/// greedily keeps vertices that stay monochromatic with everything kept so
/// far. The best size across restarts is reported, ties resolved toward the
/// earliest restart, so the outcome is a pure function of the arguments.
pub fn probe_mono_clique<C: Coloring + ?Sized>(
    q: &CliqueQuery<C>,
    restarts: u64,
    seed: u64,
    budget: &SearchBudget,
) -> Result<SearchReport, CliqueError> {
    validate_query(q)?;
    if restarts == 0 {
        return Err(CliqueError::BadParameters("restarts must be positive".into()));
    }
    let start = Instant::now();
    let per_restart_cap = (budget.max_tuples / restarts).max(1);
    let best = (0..restarts)
        .into_par_iter()
        .map(|restart| {
            let (witness, evals) = greedy_restart(q, seed, restart, per_restart_cap);
            (witness.len(), std::cmp::Reverse(restart), witness, evals)
        })
        .reduce_with(|a, b| {
            let evals = a.3 + b.3;
            let mut best = if (b.0, b.1) > (a.0, a.1) { b } else { a };
            best.3 = evals;
            best
        })
        .expect("at least one restart");

    let (size, _, witness, evals) = best;
    assert!(
        is_monochromatic(q.coloring, &witness, q.target_color),
        "probe witness failed its self-check"
    );
    Ok(SearchReport {
        target_color: q.target_color,
        target_size: q.target_size,
        ground_len: q.ground.len(),
        outcome: CliqueOutcome::LowerBound { size, witness },
        seed: Some(seed),
        tuples_evaluated: evals,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

fn greedy_restart<C: Coloring + ?Sized>(
    q: &CliqueQuery<C>,
    seed: u64,
    restart: u64,
    eval_cap: u64,
) -> (Vec<u64>, u64) {
    let mut rng = stream_rng(b"MONO-PROBE-V1", seed, restart);
    let mut order: Vec<usize> = (0..q.ground.len()).collect();
    order.shuffle(&mut rng);

    let k = q.coloring.arity();
    let mut kept: Vec<u64> = Vec::new();
    let mut evals = 0u64;
    let mut tuple = vec![0u64; k];
    'next_vertex: for idx in order {
        if evals >= eval_cap {
            break;
        }
        let v = q.ground[idx];
        if kept.len() + 1 >= k {
            let mut comb: Vec<usize> = (0..k - 1).collect();
            loop {
                build_sorted_tuple(&kept, &comb, v, &mut tuple);
                evals += 1;
                if q.coloring.color_sorted(&tuple) != q.target_color {
                    continue 'next_vertex;
                }
                if !advance_combination(&mut comb, kept.len()) {
                    break;
                }
            }
        }
        let pos = kept.partition_point(|&x| x < v);
        kept.insert(pos, v);
    }
    (kept, evals)
}

/// Merges `v` into the chosen (k-1)-subset of the ascending `kept` values.
fn build_sorted_tuple(kept: &[u64], comb: &[usize], v: u64, tuple: &mut Vec<u64>) {
    tuple.clear();
    let mut placed = false;
    for &i in comb {
        if !placed && v < kept[i] {
            tuple.push(v);
            placed = true;
        }
        tuple.push(kept[i]);
    }
    if !placed {
        tuple.push(v);
    }
}

/// Descriptor for the grounds a construction is verified over.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroundSpec {
    /// All `2^bit_width` vertices.
    Full { bit_width: u8 },
    /// `count` uniform random subsets of the full ground, each of
    /// `subset_size` vertices, drawn without replacement from per-index
    /// streams of `seed`.
    Sampled { bit_width: u8, subset_size: usize, seed: u64, count: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct GroundRun {
    pub label: String,
    pub report: SearchReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionCheck {
    pub red_target: usize,
    pub runs: Vec<GroundRun>,
}

impl ConstructionCheck {
    /// True when every ground came back `NoneExhaustive`.
    pub fn all_clear(&self) -> bool {
        self.runs
            .iter()
            .all(|r| r.report.outcome == CliqueOutcome::NoneExhaustive)
    }
}

/// Runs the exhaustive red-clique search over each specified ground. A
/// witness here would falsify the implementation, not the construction.
pub fn verify_red_free<C: Coloring + ?Sized>(
    coloring: &C,
    spec: &GroundSpec,
    red_target: usize,
    budget: &SearchBudget,
) -> Result<ConstructionCheck, CliqueError> {
    let mut runs = Vec::new();
    match *spec {
        GroundSpec::Full { bit_width } => {
            if bit_width as u32 >= 64 || (1u64 << bit_width) > coloring.ground_size() {
                return Err(CliqueError::BadParameters(format!(
                    "full ground of 2^{bit_width} vertices exceeds the coloring's ground"
                )));
            }
            let ground: Vec<u64> = (0..1u64 << bit_width).collect();
            let q = CliqueQuery {
                coloring,
                ground: &ground,
                target_color: Color::Red,
                target_size: red_target,
            };
            runs.push(GroundRun {
                label: format!("full:{bit_width}"),
                report: find_mono_clique(&q, budget)?,
            });
        }
        GroundSpec::Sampled { bit_width, subset_size, seed, count } => {
            if bit_width as u32 >= 64 || (1u64 << bit_width) > coloring.ground_size() {
                return Err(CliqueError::BadParameters(format!(
                    "sampled ground of 2^{bit_width} vertices exceeds the coloring's ground"
                )));
            }
            if count == 0 {
                return Err(CliqueError::BadParameters("sample count must be positive".into()));
            }
            let full = 1u64 << bit_width;
            if (subset_size as u64) > full {
                return Err(CliqueError::BadParameters(format!(
                    "subset size {subset_size} exceeds the ground of {full}"
                )));
            }
            for i in 0..count {
                let ground = sample_ground(full, subset_size, seed, i as u64);
                let q = CliqueQuery {
                    coloring,
                    ground: &ground,
                    target_color: Color::Red,
                    target_size: red_target,
                };
                runs.push(GroundRun {
                    label: format!("sample:{i}:{subset_size}of2^{bit_width}"),
                    report: find_mono_clique(&q, budget)?,
                });
            }
        }
    }
    Ok(ConstructionCheck { red_target, runs })
}

/// Uniform random `subset_size`-subset of `0..full`, ascending.
fn sample_ground(full: u64, subset_size: usize, seed: u64, index: u64) -> Vec<u64> {
    let mut rng = stream_rng(b"GROUND-SAMPLE-V1", seed, index);
    let mut picked = std::collections::BTreeSet::new();
    // Floyd's algorithm: uniform without replacement, O(subset_size) draws.
    for j in (full - subset_size as u64)..full {
        let t = rand::Rng::random_range(&mut rng, 0..=j);
        if !picked.insert(t) {
            picked.insert(j);
        }
    }
    picked.into_iter().collect()
}

/// Which construction a red-freeness run certifies.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionProfile {
    R45,
    R46,
    Tower { four: FourProfile, top_arity: usize },
}

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("building the coloring failed: {0}")]
    Build(#[from] StepUpError),
    #[error(transparent)]
    Search(#[from] CliqueError),
}

/// Builds the requested construction over `phi` and certifies red-freeness
/// at `red_target` over the specified grounds.
pub fn verify_construction(
    profile: ConstructionProfile,
    phi: Arc<BaseColoring>,
    spec: &GroundSpec,
    red_target: usize,
    budget: &SearchBudget,
) -> Result<ConstructionCheck, ConstructionError> {
    let coloring = match profile {
        ConstructionProfile::R45 => Arc::new(SteppedColoring::r45(phi)?),
        ConstructionProfile::R46 => Arc::new(SteppedColoring::r46(phi)?),
        ConstructionProfile::Tower { four, top_arity } => {
            Arc::clone(crate::stepup::tower_iterate(phi, four, top_arity)?.top())
        }
    };
    Ok(verify_red_free(coloring.as_ref(), spec, red_target, budget)?)
}

/// Default exclusion target of each construction: one above what the next
/// level down is certified against.
pub fn default_red_target(profile: ConstructionProfile) -> usize {
    match profile {
        ConstructionProfile::R45 => 5,
        ConstructionProfile::R46 => 6,
        ConstructionProfile::Tower { top_arity, .. } => top_arity + 1,
    }
}

/// Caps for the exact graph-Ramsey oracle.
#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Maximum `C(N, 2)` the per-level decision procedure will take on.
    pub max_edges: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_edges: 78 }
    }
}

#[derive(Debug)]
pub struct TinyRamseyReport {
    pub s: usize,
    pub n: usize,
    pub n_max: usize,
    /// Smallest N forcing a red K_s or blue K_n, when within reach.
    pub value: Option<usize>,
    /// For the last undecided N: a coloring avoiding both targets.
    pub witness: Option<BaseColoring>,
    pub nodes_explored: u64,
}

/// Exact graph Ramsey oracle: smallest `N <= n_max` such that every pair
/// coloring of `K_N` contains a red `K_s` or a blue `K_n`.
///
/// Each level is decided by depth-first enumeration over edge colorings in
/// colex order, pruning a branch as soon as the newest edge completes a
/// monochromatic target. A completed assignment is an avoiding witness; it
/// seeds the branch order at the next level, since colex edge lists of
/// successive `K_N` nest as prefixes.
pub fn tiny_ramsey(
    arity: usize,
    s: usize,
    n: usize,
    n_max: usize,
    config: &OracleConfig,
) -> Result<TinyRamseyReport, CliqueError> {
    if arity != 2 {
        return Err(CliqueError::BadParameters(
            "exhaustive coloring enumeration is only feasible for graphs (arity 2)".into(),
        ));
    }
    if s < 2 || n < 2 {
        return Err(CliqueError::BadParameters("both targets must be at least 2".into()));
    }
    if n_max < 2 {
        return Err(CliqueError::BadParameters("n_max must be at least 2".into()));
    }
    let mut witness: Option<Vec<Color>> = None;
    let mut nodes = 0u64;
    for n_verts in 2..=n_max {
        let edges = n_verts * (n_verts - 1) / 2;
        if edges > config.max_edges {
            return Err(CliqueError::InfeasibleScale { edges, cap: config.max_edges });
        }
        let mut level = LevelSearch::new(n_verts, s, n, witness.clone());
        match level.decide() {
            Some(avoiding) => witness = Some(avoiding),
            None => {
                return Ok(TinyRamseyReport {
                    s,
                    n,
                    n_max,
                    value: Some(n_verts),
                    witness: witness.map(|w| coloring_from_colex(n_verts - 1, &w)),
                    nodes_explored: nodes + level.nodes,
                });
            }
        }
        nodes += level.nodes;
    }
    Ok(TinyRamseyReport {
        s,
        n,
        n_max,
        value: None,
        witness: witness.map(|w| coloring_from_colex(n_max, &w)),
        nodes_explored: nodes,
    })
}

fn coloring_from_colex(n_verts: usize, colors: &[Color]) -> BaseColoring {
    BaseColoring::from_fn(n_verts, |a, b| colors[b * (b - 1) / 2 + a])
}

struct LevelSearch {
    edges: Vec<(usize, usize)>,
    s: usize,
    n: usize,
    red_adj: Vec<u64>,
    blue_adj: Vec<u64>,
    colors: Vec<Color>,
    hint: Option<Vec<Color>>,
    nodes: u64,
}

impl LevelSearch {
    fn new(n_verts: usize, s: usize, n: usize, hint: Option<Vec<Color>>) -> Self {
        let mut edges = Vec::with_capacity(n_verts * (n_verts - 1) / 2);
        for b in 1..n_verts {
            for a in 0..b {
                edges.push((a, b));
            }
        }
        LevelSearch {
            colors: vec![Color::Blue; edges.len()],
            edges,
            s,
            n,
            red_adj: vec![0; n_verts],
            blue_adj: vec![0; n_verts],
            nodes: 0,
        hint,
        }
    }

    fn decide(&mut self) -> Option<Vec<Color>> {
        if self.dfs(0) {
            Some(self.colors.clone())
        } else {
            None
        }
    }

    /// True iff some completion of edges `i..` avoids both targets.
    fn dfs(&mut self, i: usize) -> bool {
        if i == self.edges.len() {
            return true;
        }
        self.nodes += 1;
        let first = match &self.hint {
            Some(h) if i < h.len() => h[i],
            _ => Color::Blue,
        };
        for color in [first, first.flip()] {
            if self.try_color(i, color) {
                if self.dfs(i + 1) {
                    return true;
                }
                self.unset(i, color);
            }
        }
        false
    }

    /// Assigns edge `i` unless that completes a monochromatic target among
    /// already-assigned edges.
    fn try_color(&mut self, i: usize, color: Color) -> bool {
        let (a, b) = self.edges[i];
        let (adj, target) = match color {
            Color::Red => (&self.red_adj, self.s),
            Color::Blue => (&self.blue_adj, self.n),
        };
        // Cliques completed by (a,b) live below a: colex order has already
        // assigned every edge among {0..a} x {b}.
        let common = adj[a] & adj[b] & low_mask(a);
        if has_clique(adj, common, target.saturating_sub(2)) {
            return false;
        }
        let adj = match color {
            Color::Red => &mut self.red_adj,
            Color::Blue => &mut self.blue_adj,
        };
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
        self.colors[i] = color;
        true
    }

    fn unset(&mut self, i: usize, color: Color) {
        let (a, b) = self.edges[i];
        let adj = match color {
            Color::Red => &mut self.red_adj,
            Color::Blue => &mut self.blue_adj,
        };
        adj[a] &= !(1 << b);
        adj[b] &= !(1 << a);
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn has_clique(adj: &[u64], mut candidates: u64, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    while candidates != 0 {
        if (candidates.count_ones() as usize) < need {
            return false;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        if has_clique(adj, candidates & adj[v], need - 1) {
            return true;
        }
    }
    false
}
