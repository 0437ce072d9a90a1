//! Base coloring subroutines for bounded-degree, few-triangle residual
//! graphs: degeneracy-order greedy, palette list coloring with restarts, and
//! the layered list colorer driven by a validated cross-layer degree decay.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::tlog_clamped;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::indep::{sparsified_sample, SamplerConfig};
use crate::triangles::count_triangles;

/// Restart budget for list-coloring passes.
pub const LIST_RESTARTS: usize = 20;

#[derive(Debug, Error)]
pub enum ColorError {
    #[error("vertex {vertex} has an empty palette")]
    EmptyPalette { vertex: Vertex },
    #[error("invalid layer spec: {reason}")]
    InvalidLayerSpec { reason: String },
}

/// Total proper-coloring candidate: one color index per vertex.
///
/// Colors are normalized to be 0-based and contiguous in order of first
/// appearance, so `colors_used` equals both the number of distinct values
/// and the maximum value plus one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    assignment: Vec<usize>,
    colors_used: usize,
}

impl Coloring {
    /// Normalizes an arbitrary total assignment.
    pub fn from_assignment(raw: Vec<usize>) -> Coloring {
        let mut remap: std::collections::HashMap<usize, usize> = Default::default();
        let mut assignment = Vec::with_capacity(raw.len());
        for c in raw {
            let next = remap.len();
            assignment.push(*remap.entry(c).or_insert(next));
        }
        Coloring {
            colors_used: remap.len(),
            assignment,
        }
    }

    pub fn color(&self, v: Vertex) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn colors_used(&self) -> usize {
        self.colors_used
    }

    /// Color classes in color order; each class sorted by vertex id.
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.colors_used];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

fn smallest_free(used: &[usize], blocked: impl Iterator<Item = usize>) -> usize {
    let mut taken = vec![false; used.len() + 1];
    for c in blocked {
        if c < taken.len() {
            taken[c] = true;
        }
    }
    taken.iter().position(|&b| !b).unwrap()
    // `used.len() + 1` slots always leave a free one.
}

/// Greedy coloring along an explicit vertex order.
pub fn greedy_in_order(g: &Graph, order: &[Vertex]) -> Coloring {
    let mut assignment = vec![usize::MAX; g.n()];
    for &v in order {
        let blocked = g
            .neighbors(v)
            .iter()
            .filter(|&&w| assignment[w] != usize::MAX)
            .map(|&w| assignment[w]);
        assignment[v] = smallest_free(&assignment, blocked);
    }
    Coloring::from_assignment(assignment)
}

/// Greedy coloring in reverse degeneracy order; never uses more than
/// `degeneracy + 1` colors.
pub fn greedy_degeneracy_coloring(g: &Graph) -> Coloring {
    let ord = g.degeneracy_order();
    let mut rev: Vec<Vertex> = ord.order().to_vec();
    rev.reverse();
    let coloring = greedy_in_order(g, &rev);
    debug_assert!(coloring.colors_used() <= ord.degeneracy() + 1 || g.n() == 0);
    coloring
}

/// Per-vertex candidate color sets.
#[derive(Debug, Clone)]
pub struct PaletteState {
    pub palettes: Vec<Vec<usize>>,
    pub global_size: usize,
}

impl PaletteState {
    /// Every vertex gets the palette `{0..size-1}`.
    pub fn uniform(n: usize, size: usize) -> PaletteState {
        PaletteState {
            palettes: vec![(0..size).collect(); n],
            global_size: size,
        }
    }
}

/// Result of a list-coloring attempt. Exhausted palettes are a reported
/// failure, not an error.
#[derive(Debug, Clone)]
pub enum ListOutcome {
    /// Each vertex colored from its own palette.
    Success(Vec<usize>),
    Failure { restarts: usize },
}

/// Greedy list coloring in reverse degeneracy order with random tie-breaks,
/// restarting up to `restarts` times. The parameter `y` is the local
/// triangle bound the palette sizes were computed from; it does not steer
/// the search.
pub fn list_color_bounded_triangles(
    g: &Graph,
    palettes: &PaletteState,
    _y: u64,
    seed: u64,
    restarts: usize,
) -> Result<ListOutcome, ColorError> {
    for (v, p) in palettes.palettes.iter().enumerate() {
        if p.is_empty() {
            return Err(ColorError::EmptyPalette { vertex: v });
        }
    }
    let ord = g.degeneracy_order();
    let mut order: Vec<Vertex> = ord.order().to_vec();
    order.reverse();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..=restarts {
        if let Some(assignment) = try_list_color(g, &order, &palettes.palettes, &mut rng) {
            let _ = attempt;
            return Ok(ListOutcome::Success(assignment));
        }
    }
    Ok(ListOutcome::Failure { restarts })
}

fn try_list_color(
    g: &Graph,
    order: &[Vertex],
    palettes: &[Vec<usize>],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<usize>> {
    let mut assignment = vec![usize::MAX; g.n()];
    for &v in order {
        let allowed: Vec<usize> = palettes[v]
            .iter()
            .copied()
            .filter(|&c| {
                g.neighbors(v)
                    .iter()
                    .all(|&w| assignment[w] != c)
            })
            .collect();
        if allowed.is_empty() {
            return None;
        }
        assignment[v] = allowed[rng.random_range(0..allowed.len())];
    }
    Some(assignment)
}

/// Ordered vertex partition with a cross-layer degree decay: a vertex in
/// layer `i` has at most `d * x^(i-j)` neighbors in any layer `j >= i`
/// (1-based indices). Validated, never assumed.
#[derive(Debug, Clone)]
pub struct LayerSpec {
    pub layers: Vec<VertexSet>,
    pub d: f64,
    pub x: f64,
}

impl LayerSpec {
    /// Checks the partition property and the cross-layer degree caps.
    pub fn validate(&self, g: &Graph) -> Result<(), ColorError> {
        let mut layer_of = vec![usize::MAX; g.n()];
        let mut covered = 0usize;
        for (idx, layer) in self.layers.iter().enumerate() {
            for &v in layer.members() {
                if layer_of[v] != usize::MAX {
                    return Err(ColorError::InvalidLayerSpec {
                        reason: format!("vertex {v} appears in two layers"),
                    });
                }
                layer_of[v] = idx;
                covered += 1;
            }
        }
        if covered != g.n() {
            return Err(ColorError::InvalidLayerSpec {
                reason: format!("layers cover {covered} of {} vertices", g.n()),
            });
        }
        if self.d.is_nan() || self.d < 0.0 || self.x.is_nan() || self.x < 1.0 {
            return Err(ColorError::InvalidLayerSpec {
                reason: format!("bad parameters d = {}, x = {}", self.d, self.x),
            });
        }
        for v in 0..g.n() {
            let i = layer_of[v];
            let mut counts = vec![0usize; self.layers.len()];
            for &w in g.neighbors(v) {
                counts[layer_of[w]] += 1;
            }
            for (j, &cnt) in counts.iter().enumerate().skip(i) {
                let cap = self.d * self.x.powi(i as i32 - j as i32);
                if cnt as f64 > cap {
                    return Err(ColorError::InvalidLayerSpec {
                        reason: format!(
                            "vertex {v} in layer {} has {cnt} neighbors in layer {} (cap {cap:.3})",
                            i + 1,
                            j + 1
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// What a layered run did, beyond the coloring itself.
#[derive(Debug, Clone, Serialize)]
pub struct LayeredOutcome {
    #[serde(skip)]
    pub coloring: Coloring,
    /// Number of congruence classes the layers were grouped into.
    pub s: usize,
    pub palette_size: usize,
    pub fallback_events: usize,
    /// Max over vertices of already-colored same-class neighbors at the
    /// moment the vertex was colored.
    pub max_precolored_same_class: usize,
    /// The `2d/f` residual-palette cap the analysis promises.
    pub precolored_cap: f64,
    pub colors_cap: usize,
}

/// Layered list coloring: groups layers by index mod `s`, gives each class a
/// disjoint color range of size `ceil(c_palette * d / f)`, and list-colors
/// each class from its highest layer down. List-coloring failures escalate
/// to greedy completion in a fresh color range and are reported as fallback
/// events.
pub fn layered_list_color(
    g: &Graph,
    spec: &LayerSpec,
    y: u64,
    c_palette: f64,
    seed: u64,
) -> Result<LayeredOutcome, ColorError> {
    spec.validate(g)?;
    let k = spec.layers.len();
    if k == 0 || g.n() == 0 {
        return Ok(LayeredOutcome {
            coloring: Coloring::from_assignment(vec![0; g.n()]),
            s: 0,
            palette_size: 0,
            fallback_events: 0,
            max_precolored_same_class: 0,
            precolored_cap: 0.0,
            colors_cap: 0,
        });
    }
    let y = y.max(1) as f64;
    let d = spec.d.max(1.0);
    let f = tlog_clamped(d * d / y);
    let s = if spec.x <= 1.0 {
        k
    } else if f <= 1.0 {
        1
    } else {
        ((f.ln() / spec.x.ln()).ceil() as usize).clamp(1, k)
    };
    let palette_size = ((c_palette * d / f).ceil() as usize).max(1);

    let mut layer_of = vec![usize::MAX; g.n()];
    for (idx, layer) in spec.layers.iter().enumerate() {
        for &v in layer.members() {
            layer_of[v] = idx;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![usize::MAX; g.n()];
    let mut fallback_events = 0usize;
    let mut max_precolored = 0usize;
    let fresh_base = s * palette_size;

    for class in 0..s {
        let range_lo = class * palette_size;
        let range_hi = range_lo + palette_size;
        // Highest layers first: a vertex only competes with the sparse tail
        // of its class that is already colored.
        let mut indices: Vec<usize> = (class..k).step_by(s).collect();
        indices.reverse();
        for &layer_idx in &indices {
            let layer = &spec.layers[layer_idx];
            if layer.is_empty() {
                continue;
            }
            let (success, layer_precolored) = color_layer(
                g,
                layer,
                &mut assignment,
                range_lo,
                range_hi,
                &layer_of,
                class,
                s,
                spec,
                &mut rng,
                LIST_RESTARTS,
            );
            max_precolored = max_precolored.max(layer_precolored);
            if !success {
                fallback_events += 1;
                for &v in layer.members() {
                    if assignment[v] == usize::MAX {
                        let blocked: Vec<usize> = g
                            .neighbors(v)
                            .iter()
                            .filter(|&&w| assignment[w] != usize::MAX)
                            .map(|&w| assignment[w])
                            .collect();
                        let mut c = fresh_base;
                        while blocked.contains(&c) {
                            c += 1;
                        }
                        assignment[v] = c;
                    }
                }
            }
        }
    }

    let precolored_cap = 2.0 * d / f;
    Ok(LayeredOutcome {
        coloring: Coloring::from_assignment(assignment),
        s,
        palette_size,
        fallback_events,
        max_precolored_same_class: max_precolored,
        precolored_cap,
        colors_cap: s * palette_size,
    })
}

/// List-colors one layer inside its class range, restarting on dead ends.
/// Returns success plus the largest count of neighbors already committed in
/// this class when a vertex came up for coloring — the quantity the
/// cross-layer decay bounds by `d(x^-s + x^-2s + ...)`, asserted here.
#[allow(clippy::too_many_arguments)]
fn color_layer(
    g: &Graph,
    layer: &VertexSet,
    assignment: &mut [usize],
    range_lo: usize,
    range_hi: usize,
    layer_of: &[usize],
    class: usize,
    s: usize,
    spec: &LayerSpec,
    rng: &mut ChaCha8Rng,
    restarts: usize,
) -> (bool, usize) {
    let (sub, map) = g.induced_subgraph(layer);
    let ord = sub.degeneracy_order();
    let mut order: Vec<Vertex> = ord.order().to_vec();
    order.reverse();

    // Geometric cap on committed same-class neighbors, from the validated
    // cross-layer condition; exact when x^s > 1.
    let xs = spec.x.powi(s as i32);
    let geometric_cap = if xs > 1.0 {
        spec.d / (xs - 1.0)
    } else {
        f64::INFINITY
    };

    let mut max_precolored = 0usize;
    for attempt in 0..=restarts {
        let mut local = vec![usize::MAX; sub.n()];
        let mut ok = true;
        for &lv in &order {
            let v = map.to_old(lv);
            if attempt == 0 {
                let precolored = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| assignment[w] != usize::MAX && layer_of[w] % s == class)
                    .count();
                debug_assert!(
                    precolored as f64 <= geometric_cap,
                    "vertex {v}: {precolored} committed same-class neighbors exceed {geometric_cap}"
                );
                max_precolored = max_precolored.max(precolored);
            }
            let allowed: Vec<usize> = (range_lo..range_hi)
                .filter(|&c| {
                    g.neighbors(v).iter().all(|&w| assignment[w] != c)
                        && sub.neighbors(lv).iter().all(|&lw| local[lw] != c)
                })
                .collect();
            if allowed.is_empty() {
                ok = false;
                break;
            }
            local[lv] = allowed[rng.random_range(0..allowed.len())];
        }
        if ok {
            for (lv, &c) in local.iter().enumerate() {
                assignment[map.to_old(lv)] = c;
            }
            return (true, max_precolored);
        }
    }
    (false, max_precolored)
}

/// Strategies for coloring a residual graph with bounded triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseStrategy {
    /// Reverse-degeneracy greedy; guaranteed `degeneracy + 1` colors.
    GreedyDegeneracy,
    /// Peels sparsified-sample independent sets while they keep paying for
    /// themselves, then finishes greedily. Never exceeds the greedy cap.
    IteratedSparsify,
}

impl BaseStrategy {
    pub fn token(&self) -> &'static str {
        match self {
            BaseStrategy::GreedyDegeneracy => "greedy-degeneracy",
            BaseStrategy::IteratedSparsify => "iterated-sparsify",
        }
    }

    pub fn parse(s: &str) -> Option<BaseStrategy> {
        match s {
            "greedy-degeneracy" => Some(BaseStrategy::GreedyDegeneracy),
            "iterated-sparsify" => Some(BaseStrategy::IteratedSparsify),
            _ => None,
        }
    }
}

/// Outcome of [`color_bounded_triangles`]: the coloring plus the formula
/// target it was aiming for, reported side by side.
#[derive(Debug, Clone, Serialize)]
pub struct BaseRun {
    #[serde(skip)]
    pub coloring: Coloring,
    pub strategy: BaseStrategy,
    /// `d / tlog(d^2/y)` for the input's own max degree.
    pub target_colors: f64,
    pub achieved_colors: usize,
    pub sample_classes: usize,
    pub fallback_events: usize,
}

/// Colors a graph with local triangle bound `y`.
///
/// `GreedyDegeneracy` guarantees at most `degeneracy + 1` colors. The
/// sampling strategy extracts sparsified independent sets as color classes
/// while each extraction lowers the residual degeneracy enough to stay under
/// the same cap, then completes greedily; stalls and rollbacks are counted
/// as fallback events. Both strategies report achieved colors next to the
/// formula target.
pub fn color_bounded_triangles(
    g: &Graph,
    y: u64,
    strategy: BaseStrategy,
    seed: u64,
    sampler: &SamplerConfig,
) -> BaseRun {
    let d = g.max_degree() as f64;
    let target_colors = if d < 1.0 {
        0.0
    } else {
        d / tlog_clamped(d * d / y.max(1) as f64)
    };
    match strategy {
        BaseStrategy::GreedyDegeneracy => {
            let coloring = greedy_degeneracy_coloring(g);
            BaseRun {
                achieved_colors: coloring.colors_used(),
                coloring,
                strategy,
                target_colors,
                sample_classes: 0,
                fallback_events: 0,
            }
        }
        BaseStrategy::IteratedSparsify => iterated_sparsify(g, strategy, target_colors, seed, sampler),
    }
}

fn iterated_sparsify(
    g: &Graph,
    strategy: BaseStrategy,
    target_colors: f64,
    seed: u64,
    sampler: &SamplerConfig,
) -> BaseRun {
    let budget = g.degeneracy_order().degeneracy() + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alive: Vec<bool> = vec![true; g.n()];
    let mut assignment = vec![usize::MAX; g.n()];
    let mut classes = 0usize;
    let mut stalls = 0usize;
    let mut fallback_events = 0usize;

    loop {
        let members: Vec<Vertex> = (0..g.n()).filter(|&v| alive[v]).collect();
        if members.is_empty() {
            break;
        }
        let set = VertexSet::new_unchecked(members, g.n());
        let (sub, map) = g.induced_subgraph(&set);
        let ord = sub.degeneracy_order();
        if stalls >= 3 {
            fallback_events += 1;
            finish_greedy(&sub, &map, classes, &mut assignment);
            classes += greedy_colors(&sub);
            break;
        }
        let stats = count_triangles(&sub);
        let is = sparsified_sample(&sub, ord.degeneracy(), &ord, stats.y_clamped(), rng.next_u64(), sampler);
        if is.members.is_empty() {
            stalls += 1;
            continue;
        }
        // Tentatively remove; commit only if the greedy tail still fits the
        // budget afterwards.
        let remaining: Vec<Vertex> = set
            .members()
            .iter()
            .copied()
            .filter(|&v| !is.members.contains(map.to_new(v).unwrap()))
            .collect();
        let rem_set = VertexSet::new_unchecked(remaining, g.n());
        let (rem_sub, _) = g.induced_subgraph(&rem_set);
        let rem_degen = rem_sub.degeneracy_order().degeneracy();
        if classes + rem_degen + 2 <= budget {
            for &lv in is.members.members() {
                let v = map.to_old(lv);
                assignment[v] = classes;
                alive[v] = false;
            }
            classes += 1;
        } else {
            fallback_events += 1;
            finish_greedy(&sub, &map, classes, &mut assignment);
            classes += greedy_colors(&sub);
            break;
        }
    }
    let coloring = Coloring::from_assignment(assignment);
    debug_assert!(coloring.colors_used() <= budget || g.n() == 0);
    BaseRun {
        achieved_colors: coloring.colors_used(),
        coloring,
        strategy,
        target_colors,
        sample_classes: classes,
        fallback_events,
    }
}

fn finish_greedy(
    sub: &Graph,
    map: &crate::graph::SubgraphMap,
    offset: usize,
    assignment: &mut [usize],
) {
    let coloring = greedy_degeneracy_coloring(sub);
    for lv in 0..sub.n() {
        assignment[map.to_old(lv)] = offset + coloring.color(lv);
    }
}

fn greedy_colors(sub: &Graph) -> usize {
    greedy_degeneracy_coloring(sub).colors_used()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify_proper;

    #[test]
    fn normalization_is_contiguous() {
        let c = Coloring::from_assignment(vec![7, 3, 7, 9]);
        assert_eq!(c.assignment(), &[0, 1, 0, 2]);
        assert_eq!(c.colors_used(), 3);
    }

    #[test]
    fn greedy_degeneracy_respects_cap() {
        for g in [Graph::cycle(5), Graph::complete(4), Graph::empty(3)] {
            let c = greedy_degeneracy_coloring(&g);
            assert!(verify_proper(&g, &c).unwrap().is_pass());
            if g.n() > 0 {
                assert!(c.colors_used() <= g.degeneracy_order().degeneracy() + 1);
            }
        }
    }

    #[test]
    fn base_coloring_c5_and_k4() {
        let cfg = SamplerConfig::default();
        let run = color_bounded_triangles(&Graph::cycle(5), 1, BaseStrategy::GreedyDegeneracy, 0, &cfg);
        assert!(run.coloring.colors_used() <= 3);
        assert!(verify_proper(&Graph::cycle(5), &run.coloring).unwrap().is_pass());

        let run = color_bounded_triangles(&Graph::complete(4), 3, BaseStrategy::GreedyDegeneracy, 0, &cfg);
        assert_eq!(run.coloring.colors_used(), 4);
    }

    #[test]
    fn iterated_sparsify_stays_under_cap_and_is_deterministic() {
        use rand::prelude::*;
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let n = 80;
        let mut edges = Vec::new();
        for u in 0..n {
            for w in u + 1..n {
                if rng.random::<f64>() < 0.12 {
                    edges.push((u, w));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        let cfg = SamplerConfig::default();
        let y = count_triangles(&g).y_clamped();
        let a = color_bounded_triangles(&g, y, BaseStrategy::IteratedSparsify, 3, &cfg);
        let b = color_bounded_triangles(&g, y, BaseStrategy::IteratedSparsify, 3, &cfg);
        assert_eq!(a.coloring, b.coloring);
        assert!(verify_proper(&g, &a.coloring).unwrap().is_pass());
        assert!(a.coloring.colors_used() <= g.degeneracy_order().degeneracy() + 1);
        assert!(a.target_colors > 0.0);
    }

    #[test]
    fn list_color_trivial_palettes_always_succeed() {
        let g = Graph::cycle(5);
        let p = PaletteState::uniform(5, 3);
        match list_color_bounded_triangles(&g, &p, 1, 1, LIST_RESTARTS).unwrap() {
            ListOutcome::Success(a) => {
                let c = Coloring::from_assignment(a.clone());
                assert!(verify_proper(&g, &c).unwrap().is_pass());
                assert!(a.iter().all(|&c| c < 3));
            }
            ListOutcome::Failure { .. } => panic!("C5 with 3 colors must succeed"),
        }
    }

    #[test]
    fn list_color_k3_with_two_colors_fails() {
        let g = Graph::complete(3);
        let p = PaletteState::uniform(3, 2);
        match list_color_bounded_triangles(&g, &p, 1, 0, 5).unwrap() {
            ListOutcome::Failure { .. } => {}
            ListOutcome::Success(_) => panic!("pigeonhole says this cannot succeed"),
        }
    }

    #[test]
    fn list_color_rejects_structurally_empty_palette() {
        let g = Graph::complete(3);
        let mut p = PaletteState::uniform(3, 2);
        p.palettes[1].clear();
        assert!(matches!(
            list_color_bounded_triangles(&g, &p, 1, 0, 5),
            Err(ColorError::EmptyPalette { vertex: 1 })
        ));
    }

    #[test]
    fn layer_spec_validation_catches_violations() {
        // Two layers with all cross edges concentrated on one vertex.
        let g = Graph::new(4, [(0, 2), (0, 3), (1, 2)]).unwrap();
        let layers = vec![
            VertexSet::new(vec![0, 1], 4).unwrap(),
            VertexSet::new(vec![2, 3], 4).unwrap(),
        ];
        let ok = LayerSpec { layers: layers.clone(), d: 3.0, x: 1.5 };
        assert!(ok.validate(&g).is_ok());
        let tight = LayerSpec { layers, d: 2.0, x: 4.0 };
        // Vertex 0 has 2 neighbors in layer 2, cap 2/4 = 0.5.
        assert!(tight.validate(&g).is_err());
    }

    #[test]
    fn layered_single_layer_reduces_to_one_class() {
        let g = Graph::cycle(6);
        let spec = LayerSpec {
            layers: vec![VertexSet::full(6)],
            d: 2.0,
            x: 2.0,
        };
        let out = layered_list_color(&g, &spec, 1, 4.0, 9).unwrap();
        assert_eq!(out.s, 1);
        assert!(verify_proper(&g, &out.coloring).unwrap().is_pass());
        assert!(out.coloring.colors_used() <= out.colors_cap + out.fallback_events * 2);
    }

    #[test]
    fn layered_two_disconnected_layers() {
        // Two disjoint triangles as two layers with zero cross edges.
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let spec = LayerSpec {
            layers: vec![
                VertexSet::new(vec![0, 1, 2], 6).unwrap(),
                VertexSet::new(vec![3, 4, 5], 6).unwrap(),
            ],
            d: 4.0,
            x: 2.0,
        };
        let out = layered_list_color(&g, &spec, 1, 4.0, 5).unwrap();
        assert!(verify_proper(&g, &out.coloring).unwrap().is_pass());
        assert_eq!(out.fallback_events, 0);
        assert!(out.coloring.colors_used() <= out.colors_cap);
    }

    #[test]
    fn layered_determinism() {
        let g = Graph::new(8, [(0, 4), (1, 5), (2, 6), (3, 7), (0, 1), (4, 5), (2, 3), (6, 7)])
            .unwrap();
        let spec = LayerSpec {
            layers: vec![
                VertexSet::new(vec![0, 1, 2, 3], 8).unwrap(),
                VertexSet::new(vec![4, 5, 6, 7], 8).unwrap(),
            ],
            d: 3.0,
            x: 1.5,
        };
        let a = layered_list_color(&g, &spec, 1, 4.0, 77).unwrap();
        let b = layered_list_color(&g, &spec, 1, 4.0, 77).unwrap();
        assert_eq!(a.coloring, b.coloring);
    }
}
