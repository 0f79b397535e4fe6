//! Shared helpers for the integration suites: naive oracles the fast
//! implementations are checked against, and a hash-based random coloring.

use ramsey_stepup::{Color, Coloring};

/// Deterministic pseudo-random k-uniform coloring: the color of a tuple is a
/// pure hash of its values and the seed. Stands in for "an arbitrary
/// coloring" in oracle-equivalence tests.
pub struct RandomColoring {
    pub arity: usize,
    pub ground_size: u64,
    pub seed: u64,
    pub red_bias_num: u64,
    pub red_bias_den: u64,
}

impl RandomColoring {
    pub fn fair(arity: usize, ground_size: u64, seed: u64) -> Self {
        RandomColoring { arity, ground_size, seed, red_bias_num: 1, red_bias_den: 2 }
    }
}

impl Coloring for RandomColoring {
    fn arity(&self) -> usize {
        self.arity
    }
    fn ground_size(&self) -> u64 {
        self.ground_size
    }
    fn color_sorted(&self, tuple: &[u64]) -> Color {
        let mut h = self.seed ^ 0x9e37_79b9_7f4a_7c15;
        for &v in tuple {
            h ^= v.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
            h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
            h ^= h >> 27;
        }
        if h % self.red_bias_den < self.red_bias_num {
            Color::Red
        } else {
            Color::Blue
        }
    }
}

/// All k-subsets of `items`, materialized. Only for tiny inputs.
pub fn subsets(items: &[u64], k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(items: &[u64], k: usize, start: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, k, 0, &mut current, &mut out);
    out
}

/// Literal statement of "ground contains a monochromatic clique of size t":
/// try every t-subset, check every k-subset of it.
pub fn naive_has_mono_clique<C: Coloring + ?Sized>(
    coloring: &C,
    ground: &[u64],
    color: Color,
    t: usize,
) -> Option<Vec<u64>> {
    for candidate in subsets(ground, t) {
        if subsets(&candidate, coloring.arity())
            .iter()
            .all(|s| coloring.color_sorted(s) == color)
        {
            return Some(candidate);
        }
    }
    None
}
