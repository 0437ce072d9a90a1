//! Exact local and global triangle counting.

use serde::Serialize;

use crate::graph::{Graph, Vertex, VertexSet};

/// Per-vertex and global triangle counts.
///
/// `per_vertex[v]` is the number of adjacent pairs inside `N(v)`, `t` the
/// global triangle count and `y = max_v per_vertex[v]` the local bound.
/// Always `t = sum(per_vertex) / 3` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleStats {
    pub per_vertex: Vec<u64>,
    pub t: u64,
    pub y: u64,
}

impl TriangleStats {
    /// `y` with the zero-triangle case clamped to 1, for formulas that divide
    /// by `y` or take `log(../y)`.
    pub fn y_clamped(&self) -> u64 {
        self.y.max(1)
    }
}

/// Counts triangles by merge-intersecting sorted neighbor lists.
///
/// Each triangle `u < w < z` is found once from its lowest edge and credited
/// to all three corners, so the cost is `O(sum over edges of deg(u)+deg(w))`
/// rather than cubic.
pub fn count_triangles(g: &Graph) -> TriangleStats {
    let mut per_vertex = vec![0u64; g.n()];
    let mut t = 0u64;
    for u in 0..g.n() {
        let nu = g.neighbors(u);
        for &w in nu.iter().filter(|&&w| w > u) {
            let nw = g.neighbors(w);
            // Common neighbors z > w close a triangle u < w < z.
            let mut a = nu.partition_point(|&x| x <= w);
            let mut b = nw.partition_point(|&x| x <= w);
            while a < nu.len() && b < nw.len() {
                match nu[a].cmp(&nw[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        let z = nu[a];
                        per_vertex[u] += 1;
                        per_vertex[w] += 1;
                        per_vertex[z] += 1;
                        t += 1;
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
    }
    let y = per_vertex.iter().copied().max().unwrap_or(0);
    debug_assert_eq!(per_vertex.iter().sum::<u64>(), 3 * t);
    TriangleStats { per_vertex, t, y }
}

/// Vertex partition by dyadic local triangle count.
///
/// Bucket with index `i` holds the vertices with `2^i <= a_v < 2^(i+1)`;
/// vertices with `a_v = 0` form the distinguished zero bucket. Empty dyadic
/// buckets are omitted.
#[derive(Debug, Clone, Serialize)]
pub struct TriangleBuckets {
    pub zero: VertexSet,
    pub buckets: Vec<(u32, VertexSet)>,
}

impl TriangleBuckets {
    /// Members of the dyadic bucket `i`, if nonempty.
    pub fn bucket(&self, i: u32) -> Option<&VertexSet> {
        self.buckets
            .iter()
            .find(|(idx, _)| *idx == i)
            .map(|(_, s)| s)
    }
}

/// Dyadic index: largest `i` with `2^i <= a`.
pub fn bucket_index(a: u64) -> u32 {
    debug_assert!(a > 0);
    63 - a.leading_zeros()
}

pub fn triangle_bucket_partition(stats: &TriangleStats) -> TriangleBuckets {
    let n = stats.per_vertex.len();
    let mut zero: Vec<Vertex> = Vec::new();
    let mut by_index: std::collections::BTreeMap<u32, Vec<Vertex>> = Default::default();
    for (v, &a) in stats.per_vertex.iter().enumerate() {
        if a == 0 {
            zero.push(v);
        } else {
            by_index.entry(bucket_index(a)).or_default().push(v);
        }
    }
    TriangleBuckets {
        zero: VertexSet::new_unchecked(zero, n),
        buckets: by_index
            .into_iter()
            .map(|(i, vs)| (i, VertexSet::new_unchecked(vs, n)))
            .collect(),
    }
}
