//! Independent-set extraction primitives used by the peeling colorers: the
//! greedy minimum-degree set with its Turán floor, its neighborhood
//! restriction, a randomized triangle-free sparsifier, and an exact
//! branch-and-bound solver for oracle-sized graphs.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DegeneracyOrder, Graph, Vertex, VertexSet};
use crate::triangles::count_triangles;

#[derive(Debug, Error)]
pub enum IndepError {
    #[error("{op}: size guard exceeded (n = {n}, max {max})")]
    SizeGuard {
        op: &'static str,
        n: usize,
        max: usize,
    },
}

/// An independent set plus the size floor its construction certifies.
#[derive(Debug, Clone, Serialize)]
pub struct IndependentSet {
    pub members: VertexSet,
    pub certified_floor: usize,
}

/// Checks pairwise non-adjacency.
pub fn is_independent(g: &Graph, members: &[Vertex]) -> bool {
    for (i, &u) in members.iter().enumerate() {
        for &w in &members[i + 1..] {
            if g.has_edge(u, w) {
                return false;
            }
        }
    }
    true
}

/// Integer ceiling of `n / (2m/n + 1) = n^2 / (2m + n)`.
fn turan_floor(n: u64, m: u64) -> usize {
    if n == 0 {
        return 0;
    }
    ((n * n).div_ceil(2 * m + n)) as usize
}

/// Greedy minimum-degree independent set.
///
/// Repeatedly takes a minimum-degree vertex (ties on lowest id), adds it and
/// deletes its closed neighborhood. The result has size at least
/// `ceil(n / (2m/n + 1))`, recorded as `certified_floor`.
pub fn turan_independent_set(g: &Graph) -> IndependentSet {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: std::collections::BTreeSet<(usize, Vertex)> =
        (0..n).map(|v| (deg[v], v)).collect();
    let mut members = Vec::new();
    while let Some(&(d, v)) = queue.iter().next() {
        queue.remove(&(d, v));
        if !alive[v] {
            continue;
        }
        members.push(v);
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                alive[w] = false;
                queue.remove(&(deg[w], w));
                // Degrees of the survivors shrink as the closed
                // neighborhood goes away.
                for &x in g.neighbors(w) {
                    if alive[x] {
                        queue.remove(&(deg[x], x));
                        deg[x] -= 1;
                        queue.insert((deg[x], x));
                    }
                }
            }
        }
    }
    members.sort_unstable();
    debug_assert!(is_independent(g, &members));
    let floor = turan_floor(n as u64, g.m() as u64);
    debug_assert!(members.len() >= floor);
    IndependentSet {
        members: VertexSet::new_unchecked(members, n),
        certified_floor: floor,
    }
}

/// Runs the Turán greedy on `G[N(v) ∩ restrict]` and maps the result back.
///
/// The certified floor comes from that subgraph's own vertex and edge counts.
/// An empty intersection yields the empty set with floor 0.
pub fn neighborhood_turan(g: &Graph, v: Vertex, restrict: &VertexSet) -> IndependentSet {
    let members: Vec<Vertex> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| restrict.contains(w))
        .collect();
    if members.is_empty() {
        return IndependentSet {
            members: VertexSet::new_unchecked(Vec::new(), g.n()),
            certified_floor: 0,
        };
    }
    let set = VertexSet::new_unchecked(members, g.n());
    let (sub, map) = g.induced_subgraph(&set);
    let inner = turan_independent_set(&sub);
    let back: Vec<Vertex> = inner.members.members().iter().map(|&x| map.to_old(x)).collect();
    IndependentSet {
        members: VertexSet::new_unchecked(back, g.n()),
        certified_floor: inner.certified_floor,
    }
}

/// Constants of the sparsified sampler, exposed for experimentation. The
/// defaults are the values used by the analysis: sampling probability
/// `0.1/sqrt(y)` and out-degree cap `d/sqrt(y)`.
#[derive(Debug, Clone, Serialize)]
pub struct SamplerConfig {
    pub sample_coefficient: f64,
    pub out_degree_coefficient: f64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            sample_coefficient: 0.1,
            out_degree_coefficient: 1.0,
        }
    }
}

/// Outcome of the sampling and discard phases of [`sparsified_sample`].
#[derive(Debug, Clone)]
pub struct SparsifiedSurvivors {
    pub sampled: VertexSet,
    pub survivors: VertexSet,
    /// Sampling probability actually used.
    pub p: f64,
    /// Out-degree cap actually used.
    pub out_cap: f64,
}

/// Sampling + discard phases: draws `U` vertex-wise with probability
/// `min(1, c/sqrt(y))`, then simultaneously discards every sampled vertex in
/// a triangle of `G[U]` or with more than `d/sqrt(y)` out-neighbors in `U`
/// under the degeneracy orientation. The surviving set induces a
/// triangle-free subgraph by construction; this is re-certified by a fresh
/// recount before returning.
pub fn sparsified_survivors(
    g: &Graph,
    d: usize,
    order: &DegeneracyOrder,
    y: u64,
    seed: u64,
    cfg: &SamplerConfig,
) -> SparsifiedSurvivors {
    let y = y.max(1);
    let p = (cfg.sample_coefficient / (y as f64).sqrt()).min(1.0);
    let out_cap = cfg.out_degree_coefficient * d as f64 / (y as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_u = vec![false; g.n()];
    // One draw per vertex in id order keeps membership reproducible.
    for flag in in_u.iter_mut() {
        *flag = rng.random::<f64>() < p;
    }
    let sampled: Vec<Vertex> = (0..g.n()).filter(|&v| in_u[v]).collect();
    let mut discard = vec![false; g.n()];
    for &v in &sampled {
        let sampled_nbrs: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| in_u[w])
            .collect();
        let out_deg = sampled_nbrs
            .iter()
            .filter(|&&w| order.points_forward(v, w))
            .count();
        if out_deg as f64 > out_cap {
            discard[v] = true;
            continue;
        }
        'tri: for (i, &a) in sampled_nbrs.iter().enumerate() {
            for &b in &sampled_nbrs[i + 1..] {
                if g.has_edge(a, b) {
                    discard[v] = true;
                    break 'tri;
                }
            }
        }
    }
    let survivors: Vec<Vertex> = sampled.iter().copied().filter(|&v| !discard[v]).collect();
    let survivors = VertexSet::new_unchecked(survivors, g.n());
    let (sub, _) = g.induced_subgraph(&survivors);
    let recount = count_triangles(&sub);
    assert_eq!(recount.t, 0, "sparsified survivor set must be triangle-free");
    SparsifiedSurvivors {
        sampled: VertexSet::new_unchecked(sampled, g.n()),
        survivors,
        p,
        out_cap,
    }
}

/// Randomized triangle-free sparsification followed by a deterministic
/// greedy independent set (ascending degree inside the survivor graph, ties
/// on lowest id).
///
/// Experimental: the returned set carries no size guarantee
/// (`certified_floor = 0`) and may be empty on unlucky draws. Equal seeds
/// produce identical sets.
pub fn sparsified_sample(
    g: &Graph,
    d: usize,
    order: &DegeneracyOrder,
    y: u64,
    seed: u64,
    cfg: &SamplerConfig,
) -> IndependentSet {
    let surv = sparsified_survivors(g, d, order, y, seed, cfg);
    let (sub, map) = g.induced_subgraph(&surv.survivors);
    let picked = greedy_mis_ascending_degree(&sub);
    let members: Vec<Vertex> = picked.iter().map(|&x| map.to_old(x)).collect();
    IndependentSet {
        members: VertexSet::new_unchecked(members, g.n()),
        certified_floor: 0,
    }
}

/// Maximal independent set by ascending degree, ties on lowest id.
pub fn greedy_mis_ascending_degree(g: &Graph) -> Vec<Vertex> {
    let mut verts: Vec<Vertex> = (0..g.n()).collect();
    verts.sort_by_key(|&v| (g.degree(v), v));
    let mut blocked = vec![false; g.n()];
    let mut picked = Vec::new();
    for v in verts {
        if !blocked[v] {
            picked.push(v);
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    picked.sort_unstable();
    picked
}

/// Spec guard for [`exact_max_independent_set`].
pub const EXACT_MIS_GUARD: usize = 40;

/// Exact maximum independent set via branch and bound, guarded at
/// [`EXACT_MIS_GUARD`] vertices.
pub fn exact_max_independent_set(g: &Graph) -> Result<IndependentSet, IndepError> {
    exact_max_independent_set_with_guard(g, EXACT_MIS_GUARD)
}

/// Exact maximum independent set with an explicit size cap.
///
/// Runs a Tomita-style maximum-clique search on the complement with a greedy
/// coloring bound; exact for any `n <= guard`.
pub fn exact_max_independent_set_with_guard(
    g: &Graph,
    guard: usize,
) -> Result<IndependentSet, IndepError> {
    if g.n() > guard {
        return Err(IndepError::SizeGuard {
            op: "exact_max_independent_set",
            n: g.n(),
            max: guard,
        });
    }
    let members = max_clique_bitset(&complement_rows(g));
    debug_assert!(is_independent(g, &members));
    let size = members.len();
    Ok(IndependentSet {
        members: VertexSet::new_unchecked(members, g.n()),
        certified_floor: size,
    })
}

/// Small fixed-width bitset over `ceil(n/64)` words.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Words(pub Vec<u64>);

impl Words {
    pub fn zero(n: usize) -> Self {
        Words(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &Words) -> Words {
        Words(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn and_not(&self, other: &Words) -> Words {
        Words(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.0.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

pub(crate) fn complement_rows(g: &Graph) -> Vec<Words> {
    let n = g.n();
    (0..n)
        .map(|v| {
            let mut row = Words::zero(n);
            for u in 0..n {
                if u != v && !g.has_edge(v, u) {
                    row.insert(u);
                }
            }
            row
        })
        .collect()
}

/// Maximum clique on adjacency rows, Tomita-style: greedy coloring supplies
/// the pruning bound, candidates are scanned in descending color.
pub(crate) fn max_clique_bitset(rows: &[Words]) -> Vec<usize> {
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut full = Words::zero(n);
    for v in 0..n {
        full.insert(v);
    }
    expand(rows, &full, &mut current, &mut best);
    best.sort_unstable();
    best
}

fn expand(rows: &[Words], candidates: &Words, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    // Sequential coloring: vertices of one class are mutually non-adjacent,
    // so a clique takes at most one per class.
    let mut uncolored = candidates.clone();
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(candidates.count());
    let mut color = 0usize;
    while !uncolored.is_empty() {
        color += 1;
        let mut class = uncolored.clone();
        while let Some(v) = class.first() {
            class.remove(v);
            class = class.and_not(&rows[v]);
            uncolored.remove(v);
            order.push((v, color));
        }
    }
    let mut pool = candidates.clone();
    for &(v, c) in order.iter().rev() {
        if current.len() + c <= best.len() {
            return;
        }
        current.push(v);
        expand(rows, &pool.and(&rows[v]), current, best);
        current.pop();
        pool.remove(v);
    }
}
