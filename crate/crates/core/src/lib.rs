//! Triangle-aware graph coloring workbench.
//!
//! The crate provides, in rough dependency order:
//!
//! - [`graph`]: immutable simple graphs, file I/O, induced subgraphs,
//!   degeneracy orders and d-cores;
//! - [`triangles`]: exact local/global triangle counting and the dyadic
//!   bucket partition;
//! - [`indep`]: independent-set extraction (Turán greedy, neighborhood
//!   restriction, triangle-free sparsifier, exact branch and bound);
//! - [`bounds`]: the truncated logarithm, the six bound formulas a1..a6,
//!   integer feasibility laws, and per-algorithm parameter recipes;
//! - [`basecolor`]: bounded-degree base colorers (greedy, list, layered);
//! - [`composite`]: the top-level peeling colorers and best-of dispatcher;
//! - [`generate`]: certified instance generators;
//! - [`oracle`]: exact small-graph ground truth (chi, chi_f, Hall ratio) and
//!   the proper-coloring verifier.
//!
//! Graphs are immutable after construction; every algorithm is a pure
//! function of (graph, seed) and is deterministic for a fixed seed.

pub mod basecolor;
pub mod bounds;
pub mod composite;
pub mod generate;
pub mod graph;
pub mod indep;
pub mod oracle;
mod residual;
pub mod triangles;

pub use basecolor::{BaseStrategy, Coloring};
pub use bounds::AlgorithmId;
pub use composite::{ColorOptions, RunTrace};
pub use graph::{Graph, GraphError, GraphFormat, VertexSet};
pub use indep::IndependentSet;
pub use triangles::TriangleStats;
