//! Immutable simple undirected graphs with sorted adjacency, plus the
//! construction, induced-subgraph, degeneracy and file I/O primitives the
//! rest of the crate is built on.
//!
//! Vertices are dense 0-based integers. A [`Graph`] is immutable after
//! construction and safe to share across threads; every operation here is a
//! pure function of its inputs.

use std::fmt::Write as _;
use std::io::BufRead;

use serde::Serialize;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: vertex id {id} out of range (n = {n})")]
    Range { line: usize, id: usize, n: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoopEdge { v: usize },
    #[error("vertex id {id} out of range (n = {n})")]
    RangeEdge { id: usize, n: usize },
    #[error("vertex set member {id} out of range (n = {n})")]
    BadVertexSet { id: usize, n: usize },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Input formats understood by [`Graph::load`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// Line 1 `n m`, then `m` lines `u v` with 0-based ids. `#` starts a comment.
    EdgeList,
    /// DIMACS `.col`: `c` comments, `p edge n m`, `e u v` with 1-based ids.
    Dimacs,
}

/// Immutable simple undirected graph.
///
/// Invariants: no self-loops, no duplicate edges, adjacency symmetric and
/// sorted ascending, `m` equal to half the degree sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicate and reversed
    /// duplicates collapse to a single edge; self-loops are rejected.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoopEdge { v: u });
            }
            let id = u.max(v);
            if id >= n {
                return Err(GraphError::RangeEdge { id, n });
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &pairs {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            m: pairs.len(),
            adj,
        })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut adj = Vec::with_capacity(n);
        for v in 0..n {
            adj.push((0..n).filter(|&u| u != v).collect());
        }
        Graph {
            n,
            m: n * n.saturating_sub(1) / 2,
            adj,
        }
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbor slice of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Parses a graph from a byte stream in the given format.
    pub fn load(reader: impl BufRead, format: GraphFormat) -> Result<Self, GraphError> {
        match format {
            GraphFormat::EdgeList => parse_edge_list(reader),
            GraphFormat::Dimacs => parse_dimacs(reader),
        }
    }

    /// Serializes in edge-list format (header plus sorted `u v` lines).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }

    /// Serializes in DIMACS `.col` format with 1-based ids.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p edge {} {}", self.n, self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Subgraph induced on `s`, together with the old-to-new id mapping.
    ///
    /// New ids are the ranks of the old ids inside `s`, so the mapping is the
    /// order-preserving bijection `s -> {0..|s|-1}`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, SubgraphMap) {
        let members = s.members();
        let mut to_new = vec![usize::MAX; self.n];
        for (new, &old) in members.iter().enumerate() {
            to_new[old] = new;
        }
        let mut adj = vec![Vec::new(); members.len()];
        let mut m = 0;
        for (new, &old) in members.iter().enumerate() {
            for &w in &self.adj[old] {
                let nw = to_new[w];
                if nw != usize::MAX {
                    adj[new].push(nw);
                    if nw > new {
                        m += 1;
                    }
                }
            }
        }
        // Neighbor lists stay sorted because the mapping is order-preserving.
        (
            Graph {
                n: members.len(),
                m,
                adj,
            },
            SubgraphMap {
                to_old: members.to_vec(),
                to_new,
            },
        )
    }

    /// Minimum-degree removal order. Ties break on the lowest vertex id.
    pub fn degeneracy_order(&self) -> DegeneracyOrder {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut queue: std::collections::BTreeSet<(usize, Vertex)> =
            (0..self.n).map(|v| (deg[v], v)).collect();
        let mut removed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut degeneracy = 0;
        while let Some(&(d, v)) = queue.iter().next() {
            queue.remove(&(d, v));
            removed[v] = true;
            degeneracy = degeneracy.max(d);
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    queue.remove(&(deg[w], w));
                    deg[w] -= 1;
                    queue.insert((deg[w], w));
                }
            }
        }
        let mut position = vec![0; self.n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        DegeneracyOrder {
            order,
            position,
            degeneracy,
        }
    }

    /// Maximal vertex set inducing minimum degree >= `d` (the d-core).
    /// Empty iff no such set exists.
    pub fn d_core(&self, d: usize) -> VertexSet {
        let mut deg: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut stack: Vec<Vertex> = (0..self.n).filter(|&v| deg[v] < d).collect();
        for &v in &stack {
            removed[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] < d {
                        removed[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        VertexSet::new_unchecked(
            (0..self.n).filter(|&v| !removed[v]).collect(),
            self.n,
        )
    }
}

/// Bijection produced by [`Graph::induced_subgraph`].
#[derive(Debug, Clone)]
pub struct SubgraphMap {
    to_old: Vec<Vertex>,
    to_new: Vec<usize>,
}

impl SubgraphMap {
    pub fn to_old(&self, new: Vertex) -> Vertex {
        self.to_old[new]
    }

    pub fn to_new(&self, old: Vertex) -> Option<Vertex> {
        match self.to_new.get(old) {
            Some(&x) if x != usize::MAX => Some(x),
            _ => None,
        }
    }

    pub fn old_ids(&self) -> &[Vertex] {
        &self.to_old
    }
}

/// Sorted, duplicate-free set of vertex ids tied to a host graph size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSet {
    members: Vec<Vertex>,
    host_n: usize,
}

impl VertexSet {
    pub fn new(mut members: Vec<Vertex>, host_n: usize) -> Result<Self, GraphError> {
        members.sort_unstable();
        members.dedup();
        if let Some(&id) = members.last() {
            if id >= host_n {
                return Err(GraphError::BadVertexSet { id, n: host_n });
            }
        }
        Ok(VertexSet { members, host_n })
    }

    pub(crate) fn new_unchecked(members: Vec<Vertex>, host_n: usize) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members, host_n }
    }

    pub fn full(host_n: usize) -> Self {
        VertexSet {
            members: (0..host_n).collect(),
            host_n,
        }
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// Min-degree removal order together with the resulting degeneracy.
///
/// Orienting every edge from earlier to later in `order` gives each vertex
/// out-degree at most `degeneracy`.
#[derive(Debug, Clone)]
pub struct DegeneracyOrder {
    order: Vec<Vertex>,
    position: Vec<usize>,
    degeneracy: usize,
}

impl DegeneracyOrder {
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    /// True when the edge `v -> w` points forward under the orientation.
    pub fn points_forward(&self, v: Vertex, w: Vertex) -> bool {
        self.position[v] < self.position[w]
    }

    /// Out-neighbors of `v`: neighbors removed after `v`.
    pub fn out_neighbors<'a>(&'a self, g: &'a Graph, v: Vertex) -> impl Iterator<Item = Vertex> + 'a {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| self.points_forward(v, w))
    }
}

fn tokenize(line: &str) -> impl Iterator<Item = &str> {
    let content = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    content.split_whitespace()
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, GraphError> {
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("expected {what}, got {tok:?}"),
    })
}

fn parse_edge_list(reader: impl BufRead) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut declared = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let toks: Vec<&str> = tokenize(&line).collect();
        if toks.is_empty() {
            continue;
        }
        match header {
            None => {
                if toks.len() != 2 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("expected header \"n m\", got {} tokens", toks.len()),
                    });
                }
                let n = parse_usize(toks[0], lineno, "vertex count")?;
                let m = parse_usize(toks[1], lineno, "edge count")?;
                header = Some((n, m));
                declared = m;
            }
            Some((n, _)) => {
                if toks.len() != 2 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("expected edge \"u v\", got {} tokens", toks.len()),
                    });
                }
                let u = parse_usize(toks[0], lineno, "vertex id")?;
                let v = parse_usize(toks[1], lineno, "vertex id")?;
                if u == v {
                    return Err(GraphError::SelfLoop { line: lineno, v: u });
                }
                if u >= n || v >= n {
                    return Err(GraphError::Range {
                        line: lineno,
                        id: u.max(v),
                        n,
                    });
                }
                edges.push((u, v));
            }
        }
    }
    let Some((n, _)) = header else {
        return Err(GraphError::Parse {
            line: 0,
            msg: "empty input".into(),
        });
    };
    if edges.len() != declared {
        return Err(GraphError::Parse {
            line: 0,
            msg: format!("header declares {} edges, found {}", declared, edges.len()),
        });
    }
    Graph::new(n, edges)
}

fn parse_dimacs(reader: impl BufRead) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut declared = 0usize;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() || toks[0] == "c" {
            continue;
        }
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "duplicate problem line".into(),
                    });
                }
                if toks.len() != 4 || toks[1] != "edge" {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("expected \"p edge n m\", got {line:?}"),
                    });
                }
                let n = parse_usize(toks[2], lineno, "vertex count")?;
                let m = parse_usize(toks[3], lineno, "edge count")?;
                header = Some((n, m));
                declared = m;
            }
            "e" => {
                let Some((n, _)) = header else {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: "edge line before problem line".into(),
                    });
                };
                if toks.len() != 3 {
                    return Err(GraphError::Parse {
                        line: lineno,
                        msg: format!("expected \"e u v\", got {line:?}"),
                    });
                }
                let u = parse_usize(toks[1], lineno, "vertex id")?;
                let v = parse_usize(toks[2], lineno, "vertex id")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(GraphError::Range {
                        line: lineno,
                        id: u.max(v),
                        n,
                    });
                }
                if u == v {
                    return Err(GraphError::SelfLoop {
                        line: lineno,
                        v: u - 1,
                    });
                }
                edges.push((u - 1, v - 1));
            }
            other => {
                return Err(GraphError::Parse {
                    line: lineno,
                    msg: format!("unknown line type {other:?}"),
                });
            }
        }
    }
    let Some((n, _)) = header else {
        return Err(GraphError::Parse {
            line: 0,
            msg: "missing problem line".into(),
        });
    };
    if edges.len() != declared {
        return Err(GraphError::Parse {
            line: 0,
            msg: format!("header declares {} edges, found {}", declared, edges.len()),
        });
    }
    Graph::new(n, edges)
}
