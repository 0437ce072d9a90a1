//! Experiment-plan runner: sweeps (family x size x seed x algorithm) cells,
//! persists a deterministic CSV plus a JSON result set, and fits per-family
//! log-log scaling slopes.
//!
//! A cell failure (for instance an unbuildable lower-bound profile) is
//! recorded and the sweep continues. Rows are sorted before writing, so the
//! output is independent of scheduling; the CSV `ms` column is written as 0
//! unless the plan opts into timing, keeping replays byte-identical.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use tricolor_core::bounds::{evaluate_bounds, explicit_bound, ConstantBundle};
use tricolor_core::composite::{run_algorithm, ColorOptions, RunTrace};
use tricolor_core::generate::{
    blow_up, gen_clique, gen_gnp, gen_triangle_free_process, lower_bound_instance_myt,
    lower_bound_instance_nyt, CertifiedInstance,
};
use tricolor_core::AlgorithmId;

use crate::report::sig12;

pub const CSV_HEADER: &str =
    "family,n,m,t,y,alg,seed,colors,bound_a1,bound_a2,bound_a3,bound_a4,bound_a5,bound_a6,explicit_bound,ms";

/// One family entry of a plan: either a bare name or a name with parameters.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    Name(String),
    Full {
        family: String,
        #[serde(default)]
        p: Option<f64>,
        #[serde(default)]
        i: Option<u64>,
        #[serde(default)]
        k: Option<u64>,
        #[serde(default)]
        y: Option<u64>,
        #[serde(default)]
        t: Option<u64>,
    },
}

impl FamilySpec {
    fn family(&self) -> &str {
        match self {
            FamilySpec::Name(s) => s,
            FamilySpec::Full { family, .. } => family,
        }
    }

    fn param(&self, name: &str) -> Option<u64> {
        match self {
            FamilySpec::Name(_) => None,
            FamilySpec::Full { i, k, y, t, .. } => match name {
                "i" => *i,
                "k" => *k,
                "y" => *y,
                "t" => *t,
                _ => None,
            },
        }
    }

    fn p(&self) -> Option<f64> {
        match self {
            FamilySpec::Name(_) => None,
            FamilySpec::Full { p, .. } => *p,
        }
    }
}

/// Sweep description. `sizes` means: n for gnp / triangle-free-process /
/// clique / lb-nyt, m for lb-myt, and for blow-up either the base size (when
/// `i` is fixed in the family entry) or the clique size (when `k` is fixed).
#[derive(Debug, Clone, Deserialize)]
pub struct Plan {
    pub families: Vec<FamilySpec>,
    pub sizes: Vec<u64>,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<String>,
    pub out: PathBuf,
    #[serde(default)]
    pub timing: bool,
    #[serde(default)]
    pub traces: bool,
}

#[derive(Debug, Clone)]
pub struct ResultRow {
    pub family: String,
    pub n: u64,
    pub m: u64,
    pub t: u64,
    pub y: u64,
    pub alg: String,
    pub seed: u64,
    pub colors: usize,
    pub bounds: [f64; 6],
    pub explicit_bound: f64,
    pub wall_ms: f64,
}

impl ResultRow {
    fn csv_line(&self, timing: bool) -> String {
        let ms = if timing { sig12(self.wall_ms) } else { "0".to_string() };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.n,
            self.m,
            self.t,
            self.y,
            self.alg,
            self.seed,
            self.colors,
            sig12(self.bounds[0]),
            sig12(self.bounds[1]),
            sig12(self.bounds[2]),
            sig12(self.bounds[3]),
            sig12(self.bounds[4]),
            sig12(self.bounds[5]),
            sig12(self.explicit_bound),
            ms
        )
    }
}

#[derive(Debug, Clone)]
pub struct CellFailure {
    pub family: String,
    pub size: u64,
    pub seed: u64,
    pub error: String,
}

pub struct BenchOutcome {
    pub rows: Vec<ResultRow>,
    pub failures: Vec<CellFailure>,
    /// family -> algorithm -> OLS slope of ln(colors) vs ln(n).
    pub slopes: BTreeMap<String, BTreeMap<String, f64>>,
    pub csv: String,
    pub traces: Vec<(String, RunTrace)>,
}

pub fn build_instance(spec: &FamilySpec, size: u64, seed: u64) -> Result<CertifiedInstance> {
    match spec.family() {
        "gnp" => Ok(gen_gnp(size, spec.p().unwrap_or(0.5), seed)?),
        "triangle-free-process" => Ok(gen_triangle_free_process(size, seed)),
        "clique" => Ok(gen_clique(size)),
        "blow-up" => {
            let (k, i) = match (spec.param("k"), spec.param("i")) {
                (Some(k), _) => (k, size),
                (None, i) => (size, i.unwrap_or(2)),
            };
            let base = gen_triangle_free_process(k, seed);
            Ok(blow_up(&base.graph, i, seed)?)
        }
        "lb-nyt" => {
            let y = spec.param("y").context("lb-nyt requires y in the family entry")?;
            let t = spec.param("t").context("lb-nyt requires t in the family entry")?;
            Ok(lower_bound_instance_nyt(size, y, t, seed)?)
        }
        "lb-myt" => {
            let y = spec.param("y").context("lb-myt requires y in the family entry")?;
            let t = spec.param("t").context("lb-myt requires t in the family entry")?;
            Ok(lower_bound_instance_myt(size, y, t, seed)?)
        }
        other => bail!("unknown family {other:?}"),
    }
}

fn parse_algorithms(tokens: &[String]) -> Result<Vec<AlgorithmId>> {
    tokens
        .iter()
        .map(|s| {
            AlgorithmId::parse(s).with_context(|| format!("unknown algorithm {s:?}"))
        })
        .collect()
}

/// Runs the sweep and writes `results.csv` and `results.json` under the
/// plan's output directory.
pub fn run_plan(plan: &Plan, opts: &ColorOptions) -> Result<BenchOutcome> {
    let algorithms = parse_algorithms(&plan.algorithms)?;
    if algorithms.is_empty() {
        bail!("plan lists no algorithms");
    }

    // Every (family, size, seed) instance is built once and shared by all
    // algorithms of the sweep.
    let keys: Vec<(usize, u64, u64)> = plan
        .families
        .iter()
        .enumerate()
        .flat_map(|(fi, _)| {
            plan.sizes
                .iter()
                .flat_map(move |&s| plan.seeds.iter().map(move |&seed| (fi, s, seed)))
        })
        .collect();

    type Cell = (Vec<ResultRow>, Vec<(String, RunTrace)>, Option<CellFailure>);
    let cells: Vec<Cell> = keys
        .par_iter()
        .map(|&(fi, size, seed)| {
            let spec = &plan.families[fi];
            match build_instance(spec, size, seed) {
                Err(e) => (
                    Vec::new(),
                    Vec::new(),
                    Some(CellFailure {
                        family: spec.family().to_string(),
                        size,
                        seed,
                        error: format!("{e:#}"),
                    }),
                ),
                Ok(inst) => {
                    let cert = &inst.certificate;
                    let bounds = evaluate_bounds(cert.n, cert.m, cert.t, cert.y, &ConstantBundle::default())
                        .map(|r| r.a)
                        .unwrap_or([f64::NAN; 6]);
                    let explicit = explicit_bound(cert.n, cert.t);
                    let mut rows = Vec::with_capacity(algorithms.len());
                    let mut traces = Vec::new();
                    for &alg in &algorithms {
                        let start = Instant::now();
                        let (coloring, trace) = run_algorithm(alg, &inst.graph, seed, opts);
                        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                        rows.push(ResultRow {
                            family: inst.family.clone(),
                            n: cert.n,
                            m: cert.m,
                            t: cert.t,
                            y: cert.y,
                            alg: alg.token().to_string(),
                            seed,
                            colors: coloring.colors_used(),
                            bounds,
                            explicit_bound: explicit,
                            wall_ms,
                        });
                        if plan.traces {
                            let key = format!("{}:{}:{}:{}", inst.family, cert.n, alg.token(), seed);
                            traces.push((key, trace));
                        }
                    }
                    (rows, traces, None)
                }
            }
        })
        .collect();

    let mut rows: Vec<ResultRow> = Vec::new();
    let mut failures: Vec<CellFailure> = Vec::new();
    let mut traces: Vec<(String, RunTrace)> = Vec::new();
    for (r, tr, f) in cells {
        rows.extend(r);
        traces.extend(tr);
        failures.extend(f);
    }
    rows.sort_by(|a, b| {
        (&a.family, a.n, &a.alg, a.seed).cmp(&(&b.family, b.n, &b.alg, b.seed))
    });
    failures.sort_by(|a, b| (&a.family, a.size, a.seed).cmp(&(&b.family, b.size, b.seed)));
    traces.sort_by(|a, b| a.0.cmp(&b.0));

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.csv_line(plan.timing));
        csv.push('\n');
    }

    let slopes = fit_slopes(&rows);

    std::fs::create_dir_all(&plan.out)
        .with_context(|| format!("creating {}", plan.out.display()))?;
    std::fs::write(plan.out.join("results.csv"), &csv)?;
    let json = results_json(&rows, &failures, &slopes, &traces);
    std::fs::write(
        plan.out.join("results.json"),
        serde_json::to_string_pretty(&json)?,
    )?;

    Ok(BenchOutcome {
        rows,
        failures,
        slopes,
        csv,
        traces,
    })
}

/// Least-squares slope of ln(colors) against ln(n), per family and
/// algorithm; needs at least two distinct sizes.
pub fn fit_slopes(rows: &[ResultRow]) -> BTreeMap<String, BTreeMap<String, f64>> {
    let mut grouped: BTreeMap<(String, String), Vec<(f64, f64)>> = BTreeMap::new();
    for row in rows {
        if row.n > 0 && row.colors > 0 {
            grouped
                .entry((row.family.clone(), row.alg.clone()))
                .or_default()
                .push(((row.n as f64).ln(), (row.colors as f64).ln()));
        }
    }
    let mut out: BTreeMap<String, BTreeMap<String, f64>> = BTreeMap::new();
    for ((family, alg), pts) in grouped {
        let distinct: std::collections::BTreeSet<u64> =
            pts.iter().map(|(x, _)| x.to_bits()).collect();
        if distinct.len() < 2 {
            continue;
        }
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|(x, _)| x).sum();
        let sy: f64 = pts.iter().map(|(_, y)| y).sum();
        let sxx: f64 = pts.iter().map(|(x, _)| x * x).sum();
        let sxy: f64 = pts.iter().map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        out.entry(family).or_default().insert(alg, slope);
    }
    out
}

fn results_json(
    rows: &[ResultRow],
    failures: &[CellFailure],
    slopes: &BTreeMap<String, BTreeMap<String, f64>>,
    traces: &[(String, RunTrace)],
) -> Value {
    json!({
        "rows": rows.iter().map(|r| json!({
            "family": r.family,
            "n": r.n,
            "m": r.m,
            "t": r.t,
            "y": r.y,
            "alg": r.alg,
            "seed": r.seed,
            "colors": r.colors,
            "bounds": r.bounds.iter().map(|&b| crate::report::round12(b)).collect::<Vec<_>>(),
            "explicit_bound": crate::report::round12(r.explicit_bound),
            "wall_ms": r.wall_ms,
        })).collect::<Vec<_>>(),
        "failures": failures.iter().map(|f| json!({
            "family": f.family,
            "size": f.size,
            "seed": f.seed,
            "error": f.error,
        })).collect::<Vec<_>>(),
        "slopes": slopes,
        "traces": traces.iter().map(|(k, t)| json!({"cell": k, "trace": t})).collect::<Vec<_>>(),
    })
}
