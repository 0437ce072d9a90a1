//! Shared fixtures for the criterion benchmarks.

use tricolor_core::generate::{gen_gnp, gen_triangle_free_process};
use tricolor_core::Graph;

/// Seeded G(n, p) fixture.
pub fn gnp(n: u64, p: f64, seed: u64) -> Graph {
    gen_gnp(n, p, seed).unwrap().graph
}

/// Seeded triangle-free process fixture.
pub fn process(n: u64, seed: u64) -> Graph {
    gen_triangle_free_process(n, seed).graph
}
