//! Cross-module property tests: structural invariants on random graphs and
//! an independently coded reference calculator for the bound formulas.

use proptest::prelude::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use tricolor_core::bounds::{check_feasibility, evaluate_bounds, ConstantBundle};
use tricolor_core::composite::{run_algorithm, ColorOptions};
use tricolor_core::graph::{Graph, GraphFormat, VertexSet};
use tricolor_core::indep::{exact_max_independent_set, is_independent, turan_independent_set};
use tricolor_core::oracle::verify_proper;
use tricolor_core::triangles::count_triangles;
use tricolor_core::AlgorithmId;

fn seeded_graph(seed: u64, max_n: usize, p_hi: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_n);
    let p = rng.random_range(0.0..p_hi);
    let mut edges = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, w));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn round_trip_preserves_edges(seed in any::<u64>()) {
        let g = seeded_graph(seed, 40, 0.5);
        let el = Graph::load(std::io::Cursor::new(g.to_edge_list()), GraphFormat::EdgeList).unwrap();
        prop_assert_eq!(&el, &g);
        let dm = Graph::load(std::io::Cursor::new(g.to_dimacs()), GraphFormat::Dimacs).unwrap();
        prop_assert_eq!(&dm, &g);
    }

    #[test]
    fn induced_on_everything_is_identity(seed in any::<u64>()) {
        let g = seeded_graph(seed, 30, 0.5);
        let (copy, map) = g.induced_subgraph(&VertexSet::full(g.n()));
        prop_assert_eq!(&copy, &g);
        for v in 0..g.n() {
            prop_assert_eq!(map.to_old(v), v);
        }
    }

    #[test]
    fn degeneracy_order_back_degree(seed in any::<u64>()) {
        let g = seeded_graph(seed, 50, 0.4);
        let ord = g.degeneracy_order();
        for v in 0..g.n() {
            prop_assert!(ord.out_neighbors(&g, v).count() <= ord.degeneracy());
        }
    }

    #[test]
    fn d_core_has_min_inner_degree(seed in any::<u64>(), d in 0usize..6) {
        let g = seeded_graph(seed, 40, 0.4);
        let core = g.d_core(d);
        for &v in core.members() {
            let inner = g.neighbors(v).iter().filter(|w| core.contains(**w)).count();
            prop_assert!(inner >= d);
        }
    }

    #[test]
    fn turan_floor_and_independence(seed in any::<u64>()) {
        let g = seeded_graph(seed, 60, 0.5);
        let is = turan_independent_set(&g);
        prop_assert!(is_independent(&g, is.members.members()));
        let floor = {
            let (n, m) = (g.n() as u64, g.m() as u64);
            ((n * n + 2 * m + n - 1) / (2 * m + n)) as usize
        };
        prop_assert!(is.members.len() >= floor);
    }

    #[test]
    fn algorithms_stay_proper(seed in any::<u64>(), alg_idx in 0usize..8) {
        let g = seeded_graph(seed, 36, 0.5);
        let alg = AlgorithmId::ALL_SINGLE[alg_idx];
        let (col, trace) = run_algorithm(alg, &g, seed, &ColorOptions::default());
        prop_assert!(verify_proper(&g, &col).unwrap().is_pass());
        prop_assert_eq!(col.colors_used(), trace.colors_used);
    }

    #[test]
    fn triangle_feasibility_law_on_random_graphs(seed in any::<u64>()) {
        let g = seeded_graph(seed, 50, 0.6);
        let s = count_triangles(&g);
        let v = check_feasibility(g.n() as u64, g.m() as u64, s.t, s.y);
        prop_assert!(v.pass);
    }
}

/// Triangle counting versus the all-triples oracle on exactly the graphs the
/// contract names: 50 seeded instances up to 60 vertices.
#[test]
fn triangle_counts_match_cubic_oracle_50_graphs() {
    for seed in 0..50u64 {
        let g = seeded_graph(0xC0FFEE + seed, 60, 0.5);
        let fast = count_triangles(&g);
        let mut per_vertex = vec![0u64; g.n()];
        let mut t = 0u64;
        for u in 0..g.n() {
            for w in u + 1..g.n() {
                for z in w + 1..g.n() {
                    if g.has_edge(u, w) && g.has_edge(u, z) && g.has_edge(w, z) {
                        per_vertex[u] += 1;
                        per_vertex[w] += 1;
                        per_vertex[z] += 1;
                        t += 1;
                    }
                }
            }
        }
        assert_eq!(fast.t, t, "seed {seed}");
        assert_eq!(fast.per_vertex, per_vertex, "seed {seed}");
        assert_eq!(fast.y, per_vertex.iter().copied().max().unwrap_or(0));
    }
}

/// Exact MIS agrees with full subset enumeration up to n = 16.
#[test]
fn exact_mis_matches_enumeration_to_16() {
    for seed in 0..12u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(10..=16usize);
        let mut edges = Vec::new();
        for u in 0..n {
            for w in u + 1..n {
                if rng.random::<f64>() < 0.35 {
                    edges.push((u, w));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        let mut alpha = 0usize;
        for mask in 0u32..(1 << n) {
            if (mask.count_ones() as usize) <= alpha {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if is_independent(&g, &members) {
                alpha = members.len();
            }
        }
        assert_eq!(exact_max_independent_set(&g).unwrap().members.len(), alpha);
    }
}

mod reference_calculator {
    //! A second, independently written evaluator for the six bound formulas,
    //! kept deliberately naive: plain ln, explicit truncation, fractional
    //! powers via exp/ln.

    fn trunc_log(x: f64) -> f64 {
        if x > std::f64::consts::E {
            x.ln()
        } else {
            1.0
        }
    }

    fn pow(x: f64, e: f64) -> f64 {
        if x == 0.0 {
            0.0
        } else {
            (e * x.ln()).exp()
        }
    }

    pub fn bounds(n: u64, m: u64, t: u64, y: u64) -> [f64; 6] {
        let y = y.max(1) as f64;
        let (n, m, t) = (n as f64, m as f64, t as f64);
        let sqrt_term = if n == 0.0 { 0.0 } else { pow(n / trunc_log(n), 0.5) };
        let m_term = if m == 0.0 {
            0.0
        } else {
            pow(m, 1.0 / 3.0) / pow(trunc_log(m), 2.0 / 3.0)
        };
        let a1 = sqrt_term
            + if n == 0.0 {
                0.0
            } else {
                pow(n, 1.0 / 3.0) * pow(y, 1.0 / 3.0) / pow(trunc_log(n * n / y), 2.0 / 3.0)
            };
        let a2 = m_term
            + if m == 0.0 {
                0.0
            } else {
                pow(m, 0.25) * pow(y, 0.25) / pow(trunc_log(m / y), 0.75)
            };
        let tt = if t == 0.0 {
            0.0
        } else {
            let g = trunc_log(t * t / (y * y * y));
            pow(t, 1.0 / 3.0) * trunc_log(g) / pow(g, 2.0 / 3.0)
        };
        let a3 = sqrt_term + tt;
        let a4 = m_term + tt;
        let a5 = sqrt_term + pow(6.0, 1.0 / 3.0) * pow(t, 1.0 / 3.0);
        let a6 = m_term + pow(6.0, 1.0 / 3.0) * pow(t, 1.0 / 3.0);
        [a1, a2, a3, a4, a5, a6]
    }
}

/// The library evaluator and the naive reference agree to 1e-12 relative
/// error on 100 random feasible tuples.
#[test]
fn bounds_match_reference_calculator() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB01D);
    let mut checked = 0;
    while checked < 100 {
        let n = rng.random_range(1..5000u64);
        let m = rng.random_range(0..n * (n - 1) / 2 + 1);
        let ymax = (n - 1).saturating_mul(n.saturating_sub(2)) / 2;
        let y = rng.random_range(0..=ymax.min(n * n));
        let t = rng.random_range(0..=(n * y.max(1)).min(200_000));
        if !check_feasibility(n, m, t, y).pass {
            continue;
        }
        let report = evaluate_bounds(n, m, t, y, &ConstantBundle::default()).unwrap();
        let reference = reference_calculator::bounds(n, m, t, y);
        for (i, (&a, &b)) in report.a.iter().zip(reference.iter()).enumerate() {
            let denom = b.abs().max(1e-30);
            assert!(
                ((a - b) / denom).abs() < 1e-12,
                "a{} mismatch on ({n},{m},{t},{y}): {a} vs {b}",
                i + 1
            );
        }
        checked += 1;
    }
}
