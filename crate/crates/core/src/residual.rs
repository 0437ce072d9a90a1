//! Alive-mask view of a graph used by the peeling loops. Degrees are
//! maintained incrementally; triangle statistics are always recomputed from
//! scratch on the surviving vertices.

use crate::graph::{Graph, SubgraphMap, Vertex, VertexSet};
use crate::triangles::TriangleStats;

pub(crate) struct Residual<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
    n_alive: usize,
}

impl<'g> Residual<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Residual {
            alive: vec![true; g.n()],
            deg: (0..g.n()).map(|v| g.degree(v)).collect(),
            n_alive: g.n(),
            g,
        }
    }

    pub fn n_alive(&self) -> usize {
        self.n_alive
    }

    pub fn deg(&self, v: Vertex) -> usize {
        self.deg[v]
    }

    pub fn remove(&mut self, v: Vertex) {
        debug_assert!(self.alive[v]);
        self.alive[v] = false;
        self.n_alive -= 1;
        for &w in self.g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] -= 1;
            }
        }
    }

    pub fn remove_set(&mut self, vs: &[Vertex]) {
        for &v in vs {
            self.remove(v);
        }
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.g.n()).filter(|&v| self.alive[v])
    }

    pub fn neighbors_alive(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.g.neighbors(v).iter().copied().filter(|&w| self.alive[w])
    }

    pub fn alive_set(&self) -> VertexSet {
        VertexSet::new(self.alive_vertices().collect(), self.g.n()).unwrap()
    }

    pub fn induced(&self) -> (Graph, SubgraphMap) {
        self.g.induced_subgraph(&self.alive_set())
    }

    /// Fresh triangle recount over the alive vertices, indexed by the
    /// original vertex ids (dead vertices report 0).
    pub fn stats(&self) -> TriangleStats {
        let g = self.g;
        let mut per_vertex = vec![0u64; g.n()];
        let mut t = 0u64;
        for u in self.alive_vertices() {
            let nu = g.neighbors(u);
            for &w in nu.iter().filter(|&&w| w > u && self.alive[w]) {
                let nw = g.neighbors(w);
                let mut a = nu.partition_point(|&x| x <= w);
                let mut b = nw.partition_point(|&x| x <= w);
                while a < nu.len() && b < nw.len() {
                    match nu[a].cmp(&nw[b]) {
                        std::cmp::Ordering::Less => a += 1,
                        std::cmp::Ordering::Greater => b += 1,
                        std::cmp::Ordering::Equal => {
                            let z = nu[a];
                            if self.alive[z] {
                                per_vertex[u] += 1;
                                per_vertex[w] += 1;
                                per_vertex[z] += 1;
                                t += 1;
                            }
                            a += 1;
                            b += 1;
                        }
                    }
                }
            }
        }
        let y = per_vertex.iter().copied().max().unwrap_or(0);
        TriangleStats { per_vertex, t, y }
    }

    /// Triangles through `v` in the residual graph, counted locally.
    pub fn local_triangles(&self, v: Vertex) -> u64 {
        let g = self.g;
        let nv = g.neighbors(v);
        let mut count = 0u64;
        for &u in nv.iter().filter(|&&u| self.alive[u]) {
            let nu = g.neighbors(u);
            // Pairs (u, z) with u < z, both alive neighbors of v, u-z an edge.
            let mut a = nv.partition_point(|&x| x <= u);
            let mut b = nu.partition_point(|&x| x <= u);
            while a < nv.len() && b < nu.len() {
                match nv[a].cmp(&nu[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        if self.alive[nv[a]] {
                            count += 1;
                        }
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
        count
    }
}
