//! The top-level peeling colorers and the best-of dispatcher.
//!
//! Every algorithm returns a proper coloring of the whole graph together
//! with a [`RunTrace`] recording parameters, branch decisions, peel events
//! and fallbacks. Runs are deterministic given (graph, seed); residual
//! triangle statistics are recomputed from scratch after every peel.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::basecolor::{
    color_bounded_triangles, greedy_degeneracy_coloring, layered_list_color, BaseStrategy,
    Coloring, LayerSpec,
};
use crate::bounds::{choose_parameters, explicit_bound, AlgorithmId, ParamRecord};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::indep::{turan_independent_set, sparsified_survivors, IndependentSet, SamplerConfig};
use crate::residual::Residual;
use crate::triangles::{bucket_index, count_triangles, TriangleStats};

/// Knobs shared by all algorithms; defaults match the CLI defaults.
#[derive(Debug, Clone)]
pub struct ColorOptions {
    pub strategy: BaseStrategy,
    pub c_palette: f64,
    pub sampler: SamplerConfig,
}

impl Default for ColorOptions {
    fn default() -> Self {
        ColorOptions {
            strategy: BaseStrategy::GreedyDegeneracy,
            c_palette: 4.0,
            sampler: SamplerConfig::default(),
        }
    }
}

/// One independent-set extraction: the trigger vertex, how many vertices the
/// set removed, and how many triangles went with them (from recounts).
#[derive(Debug, Clone, Serialize)]
pub struct PeelEvent {
    pub vertex: Vertex,
    pub set_size: usize,
    pub triangles_removed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BaseSummary {
    pub strategy: &'static str,
    pub target_colors: f64,
    pub achieved_colors: usize,
    pub sample_classes: usize,
    pub fallback_events: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LayeredSummary {
    pub s: usize,
    pub palette_size: usize,
    pub fallback_events: usize,
    pub max_precolored_same_class: usize,
    pub precolored_cap: f64,
    pub colors_cap: usize,
    pub colors_used: usize,
}

/// What one algorithm run did.
#[derive(Debug, Clone, Serialize, Default)]
pub struct RunTrace {
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub t: u64,
    pub y: u64,
    pub colors_used: usize,
    pub params: ParamRecord,
    pub branches: Vec<String>,
    pub peels: Vec<PeelEvent>,
    /// `n(y/d + 1)/d` for degree-threshold peeling runs.
    pub peel_budget: Option<f64>,
    /// Vertices colored outside the peel classes at this level.
    pub residual_colored: usize,
    pub fallback_events: Vec<String>,
    pub base: Option<BaseSummary>,
    pub layered: Option<LayeredSummary>,
    pub experimental: bool,
    /// (algorithm, colors) pairs for best-of runs.
    pub candidates: Vec<(String, usize)>,
    pub children: Vec<RunTrace>,
}

impl RunTrace {
    fn new(alg: AlgorithmId, g: &Graph, stats: &TriangleStats) -> Self {
        RunTrace {
            algorithm: alg.token().to_string(),
            n: g.n(),
            m: g.m(),
            t: stats.t,
            y: stats.y,
            ..Default::default()
        }
    }

    /// Total peel events at this level.
    pub fn peel_count(&self) -> usize {
        self.peels.len()
    }
}

fn base_summary(run: &crate::basecolor::BaseRun) -> BaseSummary {
    BaseSummary {
        strategy: run.strategy.token(),
        target_colors: run.target_colors,
        achieved_colors: run.achieved_colors,
        sample_classes: run.sample_classes,
        fallback_events: run.fallback_events,
    }
}

fn paint(assignment: &mut [usize], offset: usize, ids: &[Vertex], col: &Coloring) -> usize {
    for (local, &old) in ids.iter().enumerate() {
        assignment[old] = offset + col.color(local);
    }
    offset + col.colors_used()
}

/// Splits vertices by a predicate on their local triangle count; the
/// "heavy" side additionally requires a positive count, so a triangle-free
/// graph always routes everything to the light side.
fn split_by_triangles(stats: &TriangleStats, threshold: f64) -> (VertexSet, VertexSet) {
    let n = stats.per_vertex.len();
    let mut heavy = Vec::new();
    let mut light = Vec::new();
    for (v, &a) in stats.per_vertex.iter().enumerate() {
        if a > 0 && a as f64 >= threshold {
            heavy.push(v);
        } else {
            light.push(v);
        }
    }
    (
        VertexSet::new_unchecked(heavy, n),
        VertexSet::new_unchecked(light, n),
    )
}

/// Degree-threshold peeling: while some vertex exceeds the degree cutoff,
/// its neighborhood surrenders a Turán independent set as a fresh color
/// class; the bounded-degree remainder goes to the base colorer.
pub fn color_by_vertex_count(g: &Graph, seed: u64, opts: &ColorOptions) -> (Coloring, RunTrace) {
    let stats = count_triangles(g);
    let y = stats.y_clamped();
    let params = choose_parameters(AlgorithmId::VertexCount, g.n() as u64, g.m() as u64, stats.t, y);
    let d = params.value("d").unwrap_or(0.0);
    let d_floor = params.rounded("d").unwrap_or(0) as usize;
    let mut trace = RunTrace::new(AlgorithmId::VertexCount, g, &stats);
    trace.params = params;
    trace.branches.push(trace.params.branch.clone());
    if d > 0.0 {
        trace.peel_budget = Some(g.n() as f64 * (y as f64 / d + 1.0) / d);
    }

    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let mut residual = Residual::new(g);
    let mut assignment = vec![usize::MAX; g.n()];
    let mut next_color = 0usize;
    let mut cur_t = stats.t;

    loop {
        let Some(v) = residual
            .alive_vertices()
            .find(|&v| residual.deg(v) > d_floor)
        else {
            break;
        };
        let restrict = residual.alive_set();
        let is = crate::indep::neighborhood_turan(g, v, &restrict);
        debug_assert!(!is.members.is_empty());
        for &w in is.members.members() {
            assignment[w] = next_color;
        }
        residual.remove_set(is.members.members());
        next_color += 1;
        let after = residual.stats().t;
        trace.peels.push(PeelEvent {
            vertex: v,
            set_size: is.members.len(),
            triangles_removed: cur_t - after,
        });
        cur_t = after;
    }

    let (sub, map) = residual.induced();
    trace.residual_colored = sub.n();
    if sub.n() > 0 {
        let sub_y = count_triangles(&sub).y_clamped();
        let run = color_bounded_triangles(&sub, sub_y, opts.strategy, seeder.next_u64(), &opts.sampler);
        trace.base = Some(base_summary(&run));
        paint(&mut assignment, next_color, map.old_ids(), &run.coloring);
    }
    let coloring = Coloring::from_assignment(assignment);
    trace.colors_used = coloring.colors_used();
    (coloring, trace)
}

/// Core of the bucket colorer, applied to a graph whose heavy vertices have
/// already been routed away by the wrapper.
fn buckets_core(g: &Graph, seed: u64, opts: &ColorOptions) -> (Coloring, RunTrace) {
    let stats = count_triangles(g);
    let y = stats.y_clamped();
    let params =
        choose_parameters(AlgorithmId::TriangleBuckets, g.n() as u64, g.m() as u64, stats.t, y);
    let d = params.value("d").unwrap_or(0.0);
    let k = params.rounded("k").unwrap_or(0) as u32;
    let mut trace = RunTrace::new(AlgorithmId::TriangleBuckets, g, &stats);
    trace.params = params;
    trace.branches.push(format!("core: d = {d:.4}, k = {k}"));

    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let mut residual = Residual::new(g);
    let mut assignment = vec![usize::MAX; g.n()];
    let mut next_color = 0usize;
    let mut cur = residual.stats();

    // Peel until no vertex has too many neighbors in an equal-or-higher
    // bucket. Buckets are rebuilt from a fresh recount after each peel.
    loop {
        let mut lvl: Vec<Option<u32>> = vec![None; g.n()];
        let mut buckets: BTreeMap<u32, Vec<Vertex>> = BTreeMap::new();
        for v in residual.alive_vertices() {
            let a = cur.per_vertex[v];
            if a > 0 {
                let i = bucket_index(a);
                lvl[v] = Some(i);
                buckets.entry(i).or_default().push(v);
            }
        }
        let mut violation: Option<(u32, u32, Vertex)> = None;
        'scan: for (&i, members) in buckets.range(k..) {
            for &j in buckets.range(i..).map(|(j, _)| j) {
                let cap = d * 2f64.powf((i as f64 - j as f64) / 2.0);
                for &v in members {
                    let cnt = residual
                        .neighbors_alive(v)
                        .filter(|&w| lvl[w] == Some(j))
                        .count();
                    if cnt as f64 > cap {
                        violation = Some((i, j, v));
                        break 'scan;
                    }
                }
            }
        }
        let Some((_, j, v)) = violation else { break };
        let targets: Vec<Vertex> = residual
            .neighbors_alive(v)
            .filter(|&w| lvl[w] == Some(j))
            .collect();
        let tset = VertexSet::new_unchecked(targets, g.n());
        let (sub, map) = g.induced_subgraph(&tset);
        let inner = turan_independent_set(&sub);
        let members: Vec<Vertex> = inner.members.members().iter().map(|&x| map.to_old(x)).collect();
        assert!(members.len() >= inner.certified_floor);
        for &w in &members {
            // Bucket-j membership means at least 2^j residual triangles.
            assert!(cur.per_vertex[w] >= 1u64 << j);
            assignment[w] = next_color;
        }
        residual.remove_set(&members);
        next_color += 1;
        let after = residual.stats();
        trace.peels.push(PeelEvent {
            vertex: v,
            set_size: members.len(),
            triangles_removed: cur.t - after.t,
        });
        cur = after;
    }

    // Split the clean residual: buckets above k go to the layered list
    // colorer with x = sqrt(2); the rest (including the zero bucket) goes to
    // the degree-threshold colorer.
    let mut high: BTreeMap<u32, Vec<Vertex>> = BTreeMap::new();
    let mut low: Vec<Vertex> = Vec::new();
    for v in residual.alive_vertices() {
        let a = cur.per_vertex[v];
        if a > 0 && bucket_index(a) > k {
            high.entry(bucket_index(a)).or_default().push(v);
        } else {
            low.push(v);
        }
    }

    if !high.is_empty() {
        let mut all: Vec<Vertex> = high.values().flatten().copied().collect();
        all.sort_unstable();
        let hset = VertexSet::new_unchecked(all, g.n());
        let (sub_h, map_h) = g.induced_subgraph(&hset);
        let layers: Vec<VertexSet> = high
            .values()
            .map(|members| {
                VertexSet::new_unchecked(
                    members.iter().map(|&v| map_h.to_new(v).unwrap()).collect(),
                    sub_h.n(),
                )
            })
            .collect();
        let spec = LayerSpec {
            layers,
            d,
            x: std::f64::consts::SQRT_2,
        };
        spec.validate(&sub_h)
            .expect("peeling never terminates with a cross-bucket cap violation");
        let y_h = count_triangles(&sub_h).y_clamped();
        let out = layered_list_color(&sub_h, &spec, y_h, opts.c_palette, seeder.next_u64())
            .expect("layer spec was validated");
        trace.layered = Some(LayeredSummary {
            s: out.s,
            palette_size: out.palette_size,
            fallback_events: out.fallback_events,
            max_precolored_same_class: out.max_precolored_same_class,
            precolored_cap: out.precolored_cap,
            colors_cap: out.colors_cap,
            colors_used: out.coloring.colors_used(),
        });
        if out.fallback_events > 0 {
            trace
                .fallback_events
                .push(format!("layered fallback x{}", out.fallback_events));
        }
        next_color = paint(&mut assignment, next_color, map_h.old_ids(), &out.coloring);
        trace.residual_colored += sub_h.n();
    }

    if !low.is_empty() {
        let lset = VertexSet::new_unchecked(low, g.n());
        let (sub_l, map_l) = g.induced_subgraph(&lset);
        let (col_l, trace_l) = color_by_vertex_count(&sub_l, seeder.next_u64(), opts);
        next_color = paint(&mut assignment, next_color, map_l.old_ids(), &col_l);
        trace.residual_colored += sub_l.n();
        trace.children.push(trace_l);
    }

    let _ = next_color;
    let coloring = Coloring::from_assignment(assignment);
    trace.colors_used = coloring.colors_used();
    (coloring, trace)
}

/// Bucket colorer with its wrapper split at `z = t/n` triangles per vertex:
/// the heavy side goes to degree-threshold peeling, the light side to the
/// bucket core.
pub fn color_by_triangle_buckets(g: &Graph, seed: u64, opts: &ColorOptions) -> (Coloring, RunTrace) {
    let stats = count_triangles(g);
    let y = stats.y_clamped();
    let params =
        choose_parameters(AlgorithmId::TriangleBuckets, g.n() as u64, g.m() as u64, stats.t, y);
    let z = params.value("z").unwrap_or(0.0);
    let mut trace = RunTrace::new(AlgorithmId::TriangleBuckets, g, &stats);
    trace.params = params;
    trace.branches.push(format!("wrapper split at z = {z:.4}"));

    let (heavy, light) = split_by_triangles(&stats, z);
    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![usize::MAX; g.n()];
    let mut offset = 0usize;
    if !heavy.is_empty() {
        let (sub, map) = g.induced_subgraph(&heavy);
        let (col, child) = color_by_vertex_count(&sub, seeder.next_u64(), opts);
        offset = paint(&mut assignment, offset, map.old_ids(), &col);
        trace.children.push(child);
        trace.branches.push(format!("heavy side: {} vertices", heavy.len()));
    }
    if !light.is_empty() {
        let (sub, map) = g.induced_subgraph(&light);
        let (col, child) = buckets_core(&sub, seeder.next_u64(), opts);
        offset = paint(&mut assignment, offset, map.old_ids(), &col);
        trace.children.push(child);
    }
    let _ = offset;
    let coloring = Coloring::from_assignment(assignment);
    trace.colors_used = coloring.colors_used();
    (coloring, trace)
}

/// Degree split: vertices above the recipe's degree threshold go to the
/// degree-threshold peeler, the bounded-degree rest to the base colorer.
pub fn color_by_edge_count(g: &Graph, seed: u64, opts: &ColorOptions) -> (Coloring, RunTrace) {
    let stats = count_triangles(g);
    let y = stats.y_clamped();
    let params = choose_parameters(AlgorithmId::EdgeCount, g.n() as u64, g.m() as u64, stats.t, y);
    let d_floor = params.rounded("d").unwrap_or(0);
    let y_eff = params.rounded("y_eff").unwrap_or(1).max(1);
    let mut trace = RunTrace::new(AlgorithmId::EdgeCount, g, &stats);
    trace.params = params;
    trace.branches.push(trace.params.branch.clone());

    let mut high = Vec::new();
    let mut low = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) as u64 > d_floor {
            high.push(v);
        } else {
            low.push(v);
        }
    }
    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![usize::MAX; g.n()];
    let mut offset = 0usize;
    if !high.is_empty() {
        let hset = VertexSet::new_unchecked(high, g.n());
        let (sub, map) = g.induced_subgraph(&hset);
        let (col, child) = color_by_vertex_count(&sub, seeder.next_u64(), opts);
        offset = paint(&mut assignment, offset, map.old_ids(), &col);
        trace.children.push(child);
    }
    if !low.is_empty() {
        let lset = VertexSet::new_unchecked(low, g.n());
        let (sub, map) = g.induced_subgraph(&lset);
        let run = color_bounded_triangles(&sub, y_eff, opts.strategy, seeder.next_u64(), &opts.sampler);
        trace.base = Some(base_summary(&run));
        trace.residual_colored = sub.n();
        offset = paint(&mut assignment, offset, map.old_ids(), &run.coloring);
    }
    let _ = offset;
    let coloring = Coloring::from_assignment(assignment);
    trace.colors_used = coloring.colors_used();
    (coloring, trace)
}

/// Triangle split at `z = f^(1/3) t^(2/3) / m^(1/3)` on top of the bucket
/// and edge-count colorers.
pub fn color_by_edges_and_triangles(
    g: &Graph,
    seed: u64,
    opts: &ColorOptions,
) -> (Coloring, RunTrace) {
    let stats = count_triangles(g);
    let y = stats.y_clamped();
    let params =
        choose_parameters(AlgorithmId::EdgesTriangles, g.n() as u64, g.m() as u64, stats.t, y);
    let z = params.value("z").unwrap_or(0.0);
    let mut trace = RunTrace::new(AlgorithmId::EdgesTriangles, g, &stats);
    trace.params = params;
    trace.branches.push(format!("split at z = {z:.4}"));

    let (heavy, light) = split_by_triangles(&stats, z);
    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![usize::MAX; g.n()];
    let mut offset = 0usize;
    if !heavy.is_empty() {
        let (sub, map) = g.induced_subgraph(&heavy);
        let (col, child) = color_by_triangle_buckets(&sub, seeder.next_u64(), opts);
        offset = paint(&mut assignment, offset, map.old_ids(), &col);
        trace.children.push(child);
    }
    if !light.is_empty() {
        let (sub, map) = g.induced_subgraph(&light);
        let (col, child) = color_by_edge_count(&sub, seeder.next_u64(), opts);
        offset = paint(&mut assignment, offset, map.old_ids(), &col);
        trace.children.push(child);
    }
    let _ = offset;
    let coloring = Coloring::from_assignment(assignment);
    trace.colors_used = coloring.colors_used();
    (coloring, trace)
}

/// The explicit-constant colorer. Unconditionally satisfies
/// `colors_used <= 100*sqrt(n) + (6t)^(1/3)`, asserted before returning.
///
/// Iterative form of the induction: vertices below the recomputed degree
/// threshold go onto a stack for greedy completion in reverse order; when
/// none remain, the minimum-triangle vertex surrenders a Turán set of its
/// `d` lowest-id neighbors as a fresh color class.
pub fn color_explicit_constant(g: &Graph) -> (Coloring, RunTrace) {
    let stats0 = count_triangles(g);
    let bound = explicit_bound(g.n() as u64, stats0.t);
    let mut trace = RunTrace::new(AlgorithmId::ExplicitConstant, g, &stats0);
    trace.params = choose_parameters(
        AlgorithmId::ExplicitConstant,
        g.n() as u64,
        g.m() as u64,
        stats0.t,
        stats0.y_clamped(),
    );

    let mut residual = Residual::new(g);
    let mut assignment = vec![usize::MAX; g.n()];
    let mut next_color = 0usize;
    let mut stack: Vec<Vertex> = Vec::new();
    let mut cur_t = stats0.t;

    while residual.n_alive() > 0 {
        let d = explicit_bound(residual.n_alive() as u64, cur_t).floor() as usize;
        let low_degree = residual.alive_vertices().find(|&v| residual.deg(v) < d);
        if let Some(v) = low_degree {
            if cur_t > 0 {
                cur_t -= residual.local_triangles(v);
            }
            residual.remove(v);
            stack.push(v);
        } else {
            let stats = residual.stats();
            debug_assert_eq!(stats.t, cur_t);
            let v = residual
                .alive_vertices()
                .min_by_key(|&v| (stats.per_vertex[v], v))
                .unwrap();
            let targets: Vec<Vertex> = residual.neighbors_alive(v).take(d).collect();
            debug_assert_eq!(targets.len(), d);
            let tset = VertexSet::new_unchecked(targets, g.n());
            let (sub, map) = g.induced_subgraph(&tset);
            let inner = turan_independent_set(&sub);
            let members: Vec<Vertex> =
                inner.members.members().iter().map(|&x| map.to_old(x)).collect();
            for &w in &members {
                assignment[w] = next_color;
            }
            residual.remove_set(&members);
            next_color += 1;
            let after = residual.stats().t;
            trace.peels.push(PeelEvent {
                vertex: v,
                set_size: members.len(),
                triangles_removed: cur_t - after,
            });
            cur_t = after;
        }
    }

    // Greedy completion in reverse removal order: each popped vertex had
    // fewer colored neighbors than the threshold at push time, so a free
    // color exists among the first deg(v)+1 indices.
    trace.residual_colored = stack.len();
    for &v in stack.iter().rev() {
        let mut taken = vec![false; g.degree(v) + 1];
        for &w in g.neighbors(v) {
            if assignment[w] != usize::MAX && assignment[w] < taken.len() {
                taken[assignment[w]] = true;
            }
        }
        let free_small = taken.iter().position(|&b| !b);
        assignment[v] = match free_small {
            Some(c) => c,
            None => unreachable!("deg(v)+1 candidate colors cannot all be taken"),
        };
    }

    let coloring = Coloring::from_assignment(assignment);
    trace.colors_used = coloring.colors_used();
    assert!(
        coloring.colors_used() as f64 <= bound,
        "explicit bound violated: {} > {bound}",
        coloring.colors_used()
    );
    (coloring, trace)
}

fn hybrid(
    g: &Graph,
    seed: u64,
    opts: &ColorOptions,
    alg: AlgorithmId,
    light_colorer: fn(&Graph, u64, &ColorOptions) -> (Coloring, RunTrace),
) -> (Coloring, RunTrace) {
    let stats = count_triangles(g);
    let y = stats.y_clamped();
    let params = choose_parameters(alg, g.n() as u64, g.m() as u64, stats.t, y);
    let y_split = params.value("y_split").unwrap_or(0.0);
    let mut trace = RunTrace::new(alg, g, &stats);
    trace.params = params;
    trace.branches.push(format!("split at y = {y_split:.4}"));

    let (heavy, light) = split_by_triangles(&stats, y_split);
    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![usize::MAX; g.n()];
    let mut offset = 0usize;
    if !heavy.is_empty() {
        let (sub, map) = g.induced_subgraph(&heavy);
        let (col, child) = color_explicit_constant(&sub);
        offset = paint(&mut assignment, offset, map.old_ids(), &col);
        trace.children.push(child);
    }
    if !light.is_empty() {
        let (sub, map) = g.induced_subgraph(&light);
        let (col, child) = light_colorer(&sub, seeder.next_u64(), opts);
        offset = paint(&mut assignment, offset, map.old_ids(), &col);
        trace.children.push(child);
    }
    let _ = offset;
    let coloring = Coloring::from_assignment(assignment);
    trace.colors_used = coloring.colors_used();
    (coloring, trace)
}

/// Splits at `y = t^(1/3) log^2 n` triangles per vertex; the heavy side gets
/// the explicit-constant colorer, the light side the bucket colorer.
pub fn color_hybrid_n(g: &Graph, seed: u64, opts: &ColorOptions) -> (Coloring, RunTrace) {
    hybrid(g, seed, opts, AlgorithmId::HybridN, color_by_triangle_buckets)
}

/// Same split, light side handled by the edges-and-triangles colorer.
pub fn color_hybrid_m(g: &Graph, seed: u64, opts: &ColorOptions) -> (Coloring, RunTrace) {
    hybrid(g, seed, opts, AlgorithmId::HybridM, color_by_edges_and_triangles)
}

/// Experimental colorer alternating three cases: peel inside a dense core,
/// peel a triangle-weighted independent set from the sparsifier, or finish
/// greedily once the graph is degenerate enough. Proper on every input; the
/// color count carries no guarantee.
pub fn color_conjectural(g: &Graph, seed: u64, opts: &ColorOptions) -> (Coloring, RunTrace) {
    let stats0 = count_triangles(g);
    let mut trace = RunTrace::new(AlgorithmId::Conjectural, g, &stats0);
    trace.experimental = true;
    trace.params = choose_parameters(
        AlgorithmId::Conjectural,
        g.n() as u64,
        g.m() as u64,
        stats0.t,
        stats0.y_clamped(),
    );

    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let mut residual = Residual::new(g);
    let mut assignment = vec![usize::MAX; g.n()];
    let mut next_color = 0usize;
    let mut expected_t: Option<u64> = None;

    while residual.n_alive() > 0 {
        let (sub, map) = residual.induced();
        let stats = count_triangles(&sub);
        // Peel accounting is validated against a fresh recount: an
        // independent set meets each triangle at most once, so the sum of
        // its members' local counts is exactly what the removal deleted.
        if let Some(t) = expected_t {
            assert_eq!(stats.t, t, "peel accounting drifted from the recount");
        }
        let y_res = stats.y_clamped();
        let params = choose_parameters(
            AlgorithmId::Conjectural,
            sub.n() as u64,
            sub.m() as u64,
            stats.t,
            y_res,
        );
        let f = params.value("f").unwrap();
        let d_floor = params.rounded("d").unwrap() as usize;
        let core = sub.d_core(d_floor);
        if !core.is_empty() {
            // Case I: min-triangle vertex of the core donates a Turán set of
            // its core neighborhood.
            let &w = core
                .members()
                .iter()
                .min_by_key(|&&lv| (stats.per_vertex[lv], lv))
                .unwrap();
            let is = crate::indep::neighborhood_turan(&sub, w, &core);
            debug_assert!(!is.members.is_empty());
            let removed_triangles: u64 = is
                .members
                .members()
                .iter()
                .map(|&lv| stats.per_vertex[lv])
                .sum();
            expected_t = Some(stats.t - removed_triangles);
            let members: Vec<Vertex> =
                is.members.members().iter().map(|&x| map.to_old(x)).collect();
            for &v in &members {
                assignment[v] = next_color;
            }
            residual.remove_set(&members);
            next_color += 1;
            trace.peels.push(PeelEvent {
                vertex: map.to_old(w),
                set_size: members.len(),
                triangles_removed: removed_triangles,
            });
            trace.branches.push("case I: core peel".into());
        } else if (sub.n() as f64).sqrt() < (stats.t as f64 * f).cbrt() {
            // Case II: triangle-weighted greedy inside the sparsified
            // survivor set.
            let ord = sub.degeneracy_order();
            let mut picked: Vec<Vertex> = Vec::new();
            for _attempt in 0..10 {
                let surv = sparsified_survivors(
                    &sub,
                    ord.degeneracy(),
                    &ord,
                    y_res,
                    seeder.next_u64(),
                    &opts.sampler,
                );
                let mut cands: Vec<Vertex> = surv.survivors.members().to_vec();
                cands.sort_by_key(|&lv| (std::cmp::Reverse(stats.per_vertex[lv]), lv));
                let mut blocked = vec![false; sub.n()];
                for lv in cands {
                    if !blocked[lv] {
                        picked.push(lv);
                        for &lw in sub.neighbors(lv) {
                            blocked[lw] = true;
                        }
                    }
                }
                if !picked.is_empty() {
                    break;
                }
            }
            if picked.is_empty() {
                // Sampler refused to produce anything; finish greedily.
                let col = greedy_degeneracy_coloring(&sub);
                paint(&mut assignment, next_color, map.old_ids(), &col);
                trace.residual_colored += sub.n();
                trace.fallback_events.push("case II sampler stalled".into());
                break;
            }
            let removed_triangles: u64 = picked.iter().map(|&lv| stats.per_vertex[lv]).sum();
            expected_t = Some(stats.t - removed_triangles);
            let members: Vec<Vertex> = picked.iter().map(|&lv| map.to_old(lv)).collect();
            for &v in &members {
                assignment[v] = next_color;
            }
            residual.remove_set(&members);
            next_color += 1;
            trace.peels.push(PeelEvent {
                vertex: members[0],
                set_size: members.len(),
                triangles_removed: removed_triangles,
            });
            trace.branches.push("case II: sparsified peel".into());
        } else {
            // Case III: degenerate enough to finish greedily.
            let col = greedy_degeneracy_coloring(&sub);
            paint(&mut assignment, next_color, map.old_ids(), &col);
            trace.residual_colored += sub.n();
            trace.branches.push("case III: greedy".into());
            break;
        }
    }

    let coloring = Coloring::from_assignment(assignment);
    trace.colors_used = coloring.colors_used();
    (coloring, trace)
}

/// Colors the low-triangle vertex set with the best-of dispatcher and
/// returns the largest color class, an independent set of size at least
/// `|S| / colors_used`.
pub fn independence_lower_bound(g: &Graph, seed: u64, opts: &ColorOptions) -> IndependentSet {
    let stats = count_triangles(g);
    let thr = if g.n() == 0 {
        0.0
    } else {
        10.0 * stats.t as f64 / g.n() as f64
    };
    let members: Vec<Vertex> = (0..g.n())
        .filter(|&v| stats.per_vertex[v] as f64 <= thr)
        .collect();
    let s = VertexSet::new_unchecked(members, g.n());
    if s.is_empty() {
        return IndependentSet {
            members: s,
            certified_floor: 0,
        };
    }
    let (sub, map) = g.induced_subgraph(&s);
    let (col, _) = color_best_of(&sub, seed, opts, None);
    let classes = col.classes();
    let largest = classes
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
        .map(|(_, c)| c.clone())
        .unwrap_or_default();
    let floor = s.len().div_ceil(col.colors_used().max(1));
    let members: Vec<Vertex> = largest.iter().map(|&lv| map.to_old(lv)).collect();
    IndependentSet {
        members: VertexSet::new_unchecked(members, g.n()),
        certified_floor: floor,
    }
}

/// Runs each selected algorithm and keeps the coloring with fewest colors
/// (ties to the earlier algorithm in the canonical order).
pub fn color_best_of(
    g: &Graph,
    seed: u64,
    opts: &ColorOptions,
    algorithms: Option<&[AlgorithmId]>,
) -> (Coloring, RunTrace) {
    let algs = algorithms.unwrap_or(&AlgorithmId::ALL_SINGLE);
    let stats = count_triangles(g);
    let mut trace = RunTrace::new(AlgorithmId::BestOf, g, &stats);
    let mut best: Option<(Coloring, String)> = None;
    for &alg in algs {
        if alg == AlgorithmId::BestOf {
            continue;
        }
        let (col, child) = run_algorithm(alg, g, seed, opts);
        trace.candidates.push((alg.token().to_string(), col.colors_used()));
        trace.children.push(child);
        let better = match &best {
            None => true,
            Some((b, _)) => col.colors_used() < b.colors_used(),
        };
        if better {
            best = Some((col, alg.token().to_string()));
        }
    }
    let (coloring, winner) = best.expect("at least one algorithm must run");
    trace.branches.push(format!("winner: {winner}"));
    trace.colors_used = coloring.colors_used();
    (coloring, trace)
}

/// Dispatch by algorithm id. `ExplicitConstant` ignores the seed.
pub fn run_algorithm(
    alg: AlgorithmId,
    g: &Graph,
    seed: u64,
    opts: &ColorOptions,
) -> (Coloring, RunTrace) {
    match alg {
        AlgorithmId::VertexCount => color_by_vertex_count(g, seed, opts),
        AlgorithmId::TriangleBuckets => color_by_triangle_buckets(g, seed, opts),
        AlgorithmId::EdgeCount => color_by_edge_count(g, seed, opts),
        AlgorithmId::EdgesTriangles => color_by_edges_and_triangles(g, seed, opts),
        AlgorithmId::ExplicitConstant => color_explicit_constant(g),
        AlgorithmId::HybridN => color_hybrid_n(g, seed, opts),
        AlgorithmId::HybridM => color_hybrid_m(g, seed, opts),
        AlgorithmId::Conjectural => color_conjectural(g, seed, opts),
        AlgorithmId::BestOf => color_best_of(g, seed, opts, None),
    }
}
