//! Brute-force ground truth for small instances: the proper-coloring
//! verifier, exact chromatic number, exact fractional chromatic number via a
//! rational-arithmetic LP over maximal independent sets, and the Hall ratio
//! by subset enumeration.
//!
//! Size guards are hard errors, not silent truncation.

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::basecolor::{greedy_degeneracy_coloring, Coloring};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::indep::{max_clique_bitset, Words};

pub const CHROMATIC_GUARD: usize = 16;
pub const FRACTIONAL_GUARD: usize = 16;
pub const HALL_GUARD: usize = 14;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{op}: size guard exceeded (n = {n}, max {max})")]
    SizeGuard {
        op: &'static str,
        n: usize,
        max: usize,
    },
    #[error("coloring covers {got} vertices, graph has {expected}")]
    PartialAssignment { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyOutcome {
    Pass,
    /// First monochromatic edge in (u, v) order.
    Fail { u: Vertex, v: Vertex },
}

impl VerifyOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, VerifyOutcome::Pass)
    }
}

/// Checks that no edge is monochromatic; reports the first violation.
pub fn verify_proper(g: &Graph, c: &Coloring) -> Result<VerifyOutcome, OracleError> {
    if c.n() != g.n() {
        return Err(OracleError::PartialAssignment {
            expected: g.n(),
            got: c.n(),
        });
    }
    for (u, v) in g.edges() {
        if c.color(u) == c.color(v) {
            return Ok(VerifyOutcome::Fail { u, v });
        }
    }
    Ok(VerifyOutcome::Pass)
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u32, |acc, &w| acc | 1 << w)
        })
        .collect()
}

/// Exact chromatic number by branch and bound: clique lower bound, greedy
/// upper bound, then k-colorability search in between.
pub fn exact_chromatic(g: &Graph) -> Result<usize, OracleError> {
    if g.n() > CHROMATIC_GUARD {
        return Err(OracleError::SizeGuard {
            op: "exact_chromatic",
            n: g.n(),
            max: CHROMATIC_GUARD,
        });
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let rows: Vec<Words> = (0..g.n())
        .map(|v| {
            let mut w = Words::zero(g.n());
            for &u in g.neighbors(v) {
                w.insert(u);
            }
            w
        })
        .collect();
    let lower = max_clique_bitset(&rows).len().max(1);
    let upper = greedy_degeneracy_coloring(g).colors_used();
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for k in lower..upper {
        if k_colorable(g, &order, k) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn k_colorable(g: &Graph, order: &[Vertex], k: usize) -> bool {
    let mut colors = vec![usize::MAX; g.n()];
    fn rec(g: &Graph, order: &[Vertex], k: usize, idx: usize, colors: &mut [usize], used: usize) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        // Trying at most one unused color breaks color symmetry.
        let limit = k.min(used + 1);
        for c in 0..limit {
            if g.neighbors(v).iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if rec(g, order, k, idx + 1, colors, used.max(c + 1)) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }
    rec(g, order, k, 0, &mut colors, 0)
}

/// All maximal independent sets as bitmasks (Bron-Kerbosch with pivoting on
/// the complement).
pub fn maximal_independent_sets(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 32);
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let adj = adjacency_masks(g);
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let comp: Vec<u32> = (0..n).map(|v| full & !adj[v] & !(1 << v)).collect();
    let mut out = Vec::new();
    bron_kerbosch(&comp, 0, full, 0, &mut out);
    out.sort_unstable();
    out
}

fn bron_kerbosch(nbr: &[u32], r: u32, p: u32, x: u32, out: &mut Vec<u32>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // Pivot on the candidate covering most of P.
    let pivot = {
        let mut best = usize::MAX;
        let mut best_cover = 0;
        let mut pool = p | x;
        while pool != 0 {
            let v = pool.trailing_zeros() as usize;
            pool &= pool - 1;
            let cover = (p & nbr[v]).count_ones();
            if best == usize::MAX || cover > best_cover {
                best = v;
                best_cover = cover;
            }
        }
        best
    };
    let mut candidates = p & !nbr[pivot];
    let mut p = p;
    let mut x = x;
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u32 << v;
        candidates &= candidates - 1;
        bron_kerbosch(nbr, r | bit, p & nbr[v], x & nbr[v], out);
        p &= !bit;
        x |= bit;
    }
}

type Rat = BigRational;

/// Exact LP optimum of the fractional cover, plus a primal support and the
/// optimal dual vertex weights.
#[derive(Debug, Clone)]
pub struct FractionalResult {
    pub value: Rat,
    /// Independent sets with nonzero weight in the optimal cover.
    pub support: Vec<(VertexSet, Rat)>,
    /// Per-vertex weights achieving `value = w(V) / alpha(G, w)`.
    pub dual_weights: Vec<Rat>,
}

/// Fractional chromatic number as the exact LP
/// `min sum x_I  s.t.  sum_{I contains v} x_I >= 1`, over all maximal
/// independent sets, solved with rational pivoting (no tolerances).
pub fn fractional_chromatic(g: &Graph) -> Result<FractionalResult, OracleError> {
    if g.n() > FRACTIONAL_GUARD {
        return Err(OracleError::SizeGuard {
            op: "fractional_chromatic",
            n: g.n(),
            max: FRACTIONAL_GUARD,
        });
    }
    if g.n() == 0 {
        return Ok(FractionalResult {
            value: Rat::zero(),
            support: Vec::new(),
            dual_weights: Vec::new(),
        });
    }
    let columns = maximal_independent_sets(g);
    let (value, x, duals) = solve_cover_lp(g.n(), &columns);
    let support = columns
        .iter()
        .zip(&x)
        .filter(|(_, w)| !w.is_zero())
        .map(|(&mask, w)| {
            let members: Vec<Vertex> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            (VertexSet::new(members, g.n()).unwrap(), w.clone())
        })
        .collect();
    Ok(FractionalResult {
        value,
        support,
        dual_weights: duals,
    })
}

/// Dense two-phase primal simplex with Bland's rule, exact arithmetic.
/// Columns are IS incidence vectors; rows are the vertex cover constraints.
fn solve_cover_lp(n: usize, columns: &[u32]) -> (Rat, Vec<Rat>, Vec<Rat>) {
    let nx = columns.len();
    let ncols = nx + 2 * n; // x | surplus | artificial
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut rhs: Vec<Rat> = vec![Rat::one(); n];
    for v in 0..n {
        let mut row = vec![Rat::zero(); ncols];
        for (j, &mask) in columns.iter().enumerate() {
            if mask >> v & 1 == 1 {
                row[j] = Rat::one();
            }
        }
        row[nx + v] = -Rat::one();
        row[nx + n + v] = Rat::one();
        rows.push(row);
    }
    let mut basis: Vec<usize> = (0..n).map(|v| nx + n + v).collect();

    // Phase 1: minimize the artificial sum.
    let cost1: Vec<Rat> = (0..ncols)
        .map(|j| if j >= nx + n { Rat::one() } else { Rat::zero() })
        .collect();
    run_simplex(&mut rows, &mut rhs, &mut basis, &cost1, ncols, false);
    // Pivot any degenerate artificial out of the basis where possible.
    for r in 0..n {
        if basis[r] >= nx + n {
            debug_assert!(rhs[r].is_zero());
            if let Some(pc) = (0..nx + n).find(|&j| !rows[r][j].is_zero()) {
                pivot(&mut rows, &mut rhs, r, pc);
                basis[r] = pc;
            }
        }
    }

    // Phase 2: minimize the cover size, artificials banned.
    let cost2: Vec<Rat> = (0..ncols)
        .map(|j| if j < nx { Rat::one() } else { Rat::zero() })
        .collect();
    let obj = run_simplex(&mut rows, &mut rhs, &mut basis, &cost2, nx + n, true);

    let mut x = vec![Rat::zero(); nx];
    for (r, &b) in basis.iter().enumerate() {
        if b < nx {
            x[b] = rhs[r].clone();
        }
    }
    // Dual weights read off the artificial columns' reduced costs.
    let duals: Vec<Rat> = (0..n).map(|v| -obj[nx + n + v].clone()).collect();
    let value: Rat = x.iter().fold(Rat::zero(), |acc, w| acc + w);
    (value, x, duals)
}

/// Runs Bland-rule simplex to optimality for the given cost; returns the
/// final reduced-cost row. `enter_limit` bounds which columns may enter.
fn run_simplex(
    rows: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    cost: &[Rat],
    enter_limit: usize,
    _phase2: bool,
) -> Vec<Rat> {
    let ncols = cost.len();
    loop {
        // Reduced costs for the current basis.
        let mut obj: Vec<Rat> = cost.to_vec();
        for (r, &b) in basis.iter().enumerate() {
            if !cost[b].is_zero() {
                let cb = cost[b].clone();
                for j in 0..ncols {
                    let delta = &cb * &rows[r][j];
                    obj[j] -= delta;
                }
            }
        }
        let entering = (0..enter_limit).find(|&j| obj[j].is_negative());
        let Some(pc) = entering else {
            return obj;
        };
        // Bland ratio test: smallest ratio, ties on smallest basis column.
        let mut pr: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for r in 0..rows.len() {
            if rows[r][pc].is_positive() {
                let ratio = &rhs[r] / &rows[r][pc];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[r] < basis[pr.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    pr = Some(r);
                }
            }
        }
        let pr = pr.expect("cover LP is bounded; a pivot row must exist");
        pivot(rows, rhs, pr, pc);
        basis[pr] = pc;
    }
}

fn pivot(rows: &mut [Vec<Rat>], rhs: &mut [Rat], pr: usize, pc: usize) {
    let piv = rows[pr][pc].clone();
    for x in rows[pr].iter_mut() {
        *x /= &piv;
    }
    rhs[pr] /= &piv;
    for r in 0..rows.len() {
        if r != pr && !rows[r][pc].is_zero() {
            let factor = rows[r][pc].clone();
            let (head, tail) = if r < pr {
                let (a, b) = rows.split_at_mut(pr);
                (&mut a[r], &b[0])
            } else {
                let (a, b) = rows.split_at_mut(r);
                (&mut b[0], &a[pr])
            };
            for (x, p) in head.iter_mut().zip(tail.iter()) {
                let delta = &factor * p;
                *x -= delta;
            }
            let delta = &factor * &rhs[pr];
            rhs[r] -= delta;
        }
    }
}

/// Largest weight of an independent set under nonnegative vertex weights.
/// The maximum is attained on a maximal set, so the enumeration suffices.
pub fn weighted_alpha(g: &Graph, w: &[Rat]) -> Result<Rat, OracleError> {
    if g.n() > FRACTIONAL_GUARD {
        return Err(OracleError::SizeGuard {
            op: "weighted_alpha",
            n: g.n(),
            max: FRACTIONAL_GUARD,
        });
    }
    let mut best = Rat::zero();
    for mask in maximal_independent_sets(g) {
        let total: Rat = (0..g.n())
            .filter(|&v| mask >> v & 1 == 1)
            .fold(Rat::zero(), |acc, v| acc + &w[v]);
        if total > best {
            best = total;
        }
    }
    Ok(best)
}

/// The subset maximizing `|U| / alpha(G[U])` and the exact ratio.
#[derive(Debug, Clone)]
pub struct HallRatioResult {
    pub value: Rat,
    pub witness: VertexSet,
}

/// Hall ratio by full subset enumeration with a shared independence-number
/// table over all 2^n subsets.
pub fn hall_ratio(g: &Graph) -> Result<HallRatioResult, OracleError> {
    if g.n() > HALL_GUARD {
        return Err(OracleError::SizeGuard {
            op: "hall_ratio",
            n: g.n(),
            max: HALL_GUARD,
        });
    }
    let n = g.n();
    if n == 0 {
        return Ok(HallRatioResult {
            value: Rat::zero(),
            witness: VertexSet::new(Vec::new(), 0).unwrap(),
        });
    }
    let adj = adjacency_masks(g);
    let closed: Vec<u32> = (0..n).map(|v| adj[v] | 1 << v).collect();
    let size = 1usize << n;
    let mut alpha = vec![0u8; size];
    #[allow(clippy::needless_range_loop)]
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let without = alpha[mask & !(1usize << v)];
        let with = 1 + alpha[mask & !(closed[v] as usize)];
        alpha[mask] = without.max(with);
    }
    // Largest ratio |U|/alpha(U); first witness in subset order wins ties.
    let mut best_num = 0u64;
    let mut best_den = 1u64;
    let mut best_mask = 0usize;
    for (mask, &a) in alpha.iter().enumerate().skip(1) {
        let num = mask.count_ones() as u64;
        let den = a as u64;
        if num * best_den > best_num * den {
            best_num = num;
            best_den = den;
            best_mask = mask;
        }
    }
    let members: Vec<Vertex> = (0..n).filter(|&v| best_mask >> v & 1 == 1).collect();
    Ok(HallRatioResult {
        value: Rat::new(BigInt::from(best_num), BigInt::from(best_den)),
        witness: VertexSet::new(members, n).unwrap(),
    })
}

/// `n / alpha(G)` as an exact rational (a chromatic lower bound).
pub fn n_over_alpha(g: &Graph) -> Result<Rat, OracleError> {
    let alpha = crate::indep::exact_max_independent_set(g)
        .map_err(|_| OracleError::SizeGuard {
            op: "n_over_alpha",
            n: g.n(),
            max: crate::indep::EXACT_MIS_GUARD,
        })?
        .members
        .len();
    if g.n() == 0 {
        return Ok(Rat::zero());
    }
    Ok(Rat::new(BigInt::from(g.n() as u64), BigInt::from(alpha as u64)))
}

pub fn rat_from(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basecolor::Coloring;

    fn rat(i: i64) -> Rat {
        BigRational::from_integer(BigInt::from(i))
    }

    fn petersen() -> Graph {
        let outer = (0..5).map(|v| (v, (v + 1) % 5));
        let spokes = (0..5).map(|v| (v, v + 5));
        let inner = (0..5).map(|v| (v + 5, (v + 2) % 5 + 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    #[test]
    fn verify_catches_first_bad_edge() {
        let k3 = Graph::complete(3);
        let good = Coloring::from_assignment(vec![0, 1, 2]);
        assert!(verify_proper(&k3, &good).unwrap().is_pass());
        let bad = Coloring::from_assignment(vec![0, 0, 1]);
        assert_eq!(
            verify_proper(&k3, &bad).unwrap(),
            VerifyOutcome::Fail { u: 0, v: 1 }
        );
        let partial = Coloring::from_assignment(vec![0, 1]);
        assert!(verify_proper(&k3, &partial).is_err());
    }

    #[test]
    fn chromatic_small_examples() {
        assert_eq!(exact_chromatic(&Graph::cycle(5)).unwrap(), 3);
        assert_eq!(exact_chromatic(&Graph::complete(4)).unwrap(), 4);
        assert_eq!(exact_chromatic(&petersen()).unwrap(), 3);
        assert_eq!(exact_chromatic(&Graph::empty(4)).unwrap(), 1);
        assert!(exact_chromatic(&Graph::empty(17)).is_err());
    }

    #[test]
    fn chromatic_matches_exhaustive_enumeration() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;

        // Plain exhaustive search over all assignments with <= k colors.
        fn chi_exhaustive(g: &Graph) -> usize {
            'k: for k in 1..=g.n().max(1) {
                let mut assign = vec![0usize; g.n()];
                loop {
                    if g.edges().all(|(u, v)| assign[u] != assign[v]) {
                        return k;
                    }
                    let mut i = 0;
                    loop {
                        if i == g.n() {
                            continue 'k;
                        }
                        assign[i] += 1;
                        if assign[i] < k {
                            break;
                        }
                        assign[i] = 0;
                        i += 1;
                    }
                }
            }
            0
        }

        for seed in 0..15u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
            let n = rng.random_range(1..9usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for w in u + 1..n {
                    if rng.random::<f64>() < 0.45 {
                        edges.push((u, w));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            assert_eq!(exact_chromatic(&g).unwrap(), chi_exhaustive(&g), "seed {seed}");
        }
    }

    #[test]
    fn fractional_c5_is_five_halves() {
        let r = fractional_chromatic(&Graph::cycle(5)).unwrap();
        assert_eq!(r.value, rat_from(5, 2));
        assert!(!r.support.is_empty());
    }

    #[test]
    fn fractional_clique_and_bipartite() {
        assert_eq!(fractional_chromatic(&Graph::complete(4)).unwrap().value, rat(4));
        let k33 = Graph::new(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap();
        assert_eq!(fractional_chromatic(&k33).unwrap().value, rat(2));
        let path = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(fractional_chromatic(&path).unwrap().value, rat(2));
    }

    #[test]
    fn fractional_duality_on_samples() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        for seed in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(300 + seed);
            let n = rng.random_range(2..10usize);
            let mut edges = Vec::new();
            for u in 0..n {
                for w in u + 1..n {
                    if rng.random::<f64>() < 0.4 {
                        edges.push((u, w));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let r = fractional_chromatic(&g).unwrap();
            let wv: Rat = r.dual_weights.iter().fold(Rat::zero(), |a, b| a + b);
            let alpha_w = weighted_alpha(&g, &r.dual_weights).unwrap();
            // Strong duality with alpha(G, w) normalized to 1.
            assert!(r.dual_weights.iter().all(|w| !w.is_negative()));
            assert_eq!(alpha_w, Rat::one(), "seed {seed}");
            assert_eq!(wv, r.value, "seed {seed}");
        }
    }

    #[test]
    fn hall_ratio_examples() {
        let r = hall_ratio(&Graph::cycle(5)).unwrap();
        assert_eq!(r.value, rat_from(5, 2));
        assert_eq!(r.witness.len(), 5);

        assert_eq!(hall_ratio(&Graph::complete(6)).unwrap().value, rat(6));
        assert_eq!(hall_ratio(&Graph::empty(5)).unwrap().value, rat(1));
        assert!(hall_ratio(&Graph::empty(15)).is_err());
    }

    #[test]
    fn sandwich_on_petersen() {
        let g = petersen();
        let na = n_over_alpha(&g).unwrap();
        let rho = hall_ratio(&g).unwrap().value;
        let chif = fractional_chromatic(&g).unwrap().value;
        let chi = rat(exact_chromatic(&g).unwrap() as i64);
        assert!(na <= rho);
        assert!(rho <= chif);
        assert!(chif <= chi);
        assert_eq!(na, rat_from(10, 4));
    }
}
