//! The bound formulas a1..a6, the truncated logarithm, feasibility checks
//! among (n, m, t, y), and the per-algorithm parameter recipes.
//!
//! Formula values are reported with all hidden constants defaulting to 1;
//! they are formula evaluations, not certified chromatic bounds. The one
//! exception is [`explicit_bound`], which is a genuine unconditional bound.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("tlog domain error: x = {x} (requires x > 0)")]
    Domain { x: f64 },
    #[error("infeasible inputs: {0:?}")]
    Infeasible(FeasibilityVerdict),
}

/// Truncated logarithm: `ln x` for `x > e`, else 1. Errors on `x <= 0`.
pub fn tlog(x: f64) -> Result<f64, BoundsError> {
    if x <= 0.0 || x.is_nan() {
        return Err(BoundsError::Domain { x });
    }
    Ok(tlog_clamped(x))
}

/// Truncated logarithm extended by its constant branch to `x <= 0`.
///
/// Inside formula evaluation every nonpositive argument is paired with a
/// zero numerator, so the extension never changes a reported value.
pub(crate) fn tlog_clamped(x: f64) -> f64 {
    if x > std::f64::consts::E {
        x.ln()
    } else {
        1.0
    }
}

/// One exact integer comparison `lhs <= rhs`.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityCheck {
    pub name: &'static str,
    pub lhs: u128,
    pub rhs: u128,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityVerdict {
    pub checks: Vec<FeasibilityCheck>,
    pub pass: bool,
}

fn check(name: &'static str, lhs: u128, rhs: u128) -> FeasibilityCheck {
    FeasibilityCheck {
        name,
        lhs,
        rhs,
        pass: lhs <= rhs,
    }
}

/// Exact-integer feasibility of a (n, m, t, y) tuple. The square root in
/// `t <= m*sqrt(y)` is avoided by comparing `t^2 <= m^2*y`.
pub fn check_feasibility(n: u64, m: u64, t: u64, y: u64) -> FeasibilityVerdict {
    let (n, m, t, y) = (n as u128, m as u128, t as u128, y as u128);
    let c2 = |x: u128| x * x.saturating_sub(1) / 2;
    let checks = vec![
        check("t <= n*y", t, n * y),
        check("t^2 <= m^2*y", t * t, m * m * y),
        check("y <= C(n-1,2)", y, c2(n.saturating_sub(1))),
        check("y <= n^2", y, n * n),
        check("m <= C(n,2)", m, c2(n)),
    ];
    let pass = checks.iter().all(|c| c.pass);
    FeasibilityVerdict { checks, pass }
}

/// Multiplicative constants applied to each reported bound, default all 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstantBundle {
    pub c: [f64; 6],
}

impl Default for ConstantBundle {
    fn default() -> Self {
        ConstantBundle { c: [1.0; 6] }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsInputs {
    pub n: u64,
    pub m: u64,
    pub t: u64,
    pub y: u64,
    pub y_clamped: u64,
}

/// Evaluated a1..a6 with the intermediate truncated-log values.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub inputs: BoundsInputs,
    /// tlog(n^2/y)
    pub f_n: f64,
    /// tlog(m/y)
    pub f_m: f64,
    /// tlog(t^2/y^3)
    pub g: f64,
    pub log_n: f64,
    pub log_m: f64,
    pub a: [f64; 6],
    /// 1-based index of the smallest bound.
    pub argmin: usize,
    pub constants: ConstantBundle,
    pub feasibility: FeasibilityVerdict,
}

impl BoundsReport {
    pub fn min_value(&self) -> f64 {
        self.a[self.argmin - 1]
    }
}

/// Evaluates the six bounds literally, with the truncated log in every log
/// position and `y` clamped to at least 1. Feasibility is checked on the raw
/// inputs; infeasible tuples error out carrying the verdict.
pub fn evaluate_bounds(
    n: u64,
    m: u64,
    t: u64,
    y: u64,
    constants: &ConstantBundle,
) -> Result<BoundsReport, BoundsError> {
    let feasibility = check_feasibility(n, m, t, y);
    if !feasibility.pass {
        return Err(BoundsError::Infeasible(feasibility));
    }
    let yc = y.max(1);
    let (nf, mf, tf, yf) = (n as f64, m as f64, t as f64, yc as f64);
    let log_n = tlog_clamped(nf);
    let log_m = tlog_clamped(mf);
    let f_n = tlog_clamped(nf * nf / yf);
    let f_m = tlog_clamped(mf / yf);
    let g = tlog_clamped(tf * tf / (yf * yf * yf));

    let sqrt_n_term = if n == 0 { 0.0 } else { (nf / log_n).sqrt() };
    let m_term = if m == 0 {
        0.0
    } else {
        mf.cbrt() / log_m.powf(2.0 / 3.0)
    };
    let a1_y_term = if n == 0 {
        0.0
    } else {
        nf.cbrt() * yf.cbrt() / f_n.powf(2.0 / 3.0)
    };
    let a2_y_term = if m == 0 {
        0.0
    } else {
        mf.powf(0.25) * yf.powf(0.25) / f_m.powf(0.75)
    };
    // log log(t^2/y^3) with the truncated log in both positions.
    let t_loglog_term = if t == 0 {
        0.0
    } else {
        tf.cbrt() * tlog_clamped(g) / g.powf(2.0 / 3.0)
    };
    let t_explicit_term = 6f64.cbrt() * tf.cbrt();

    let c = &constants.c;
    let a = [
        c[0] * (sqrt_n_term + a1_y_term),
        c[1] * (m_term + a2_y_term),
        c[2] * (sqrt_n_term + t_loglog_term),
        c[3] * (m_term + t_loglog_term),
        c[4] * (sqrt_n_term + t_explicit_term),
        c[5] * (m_term + t_explicit_term),
    ];
    let argmin = a
        .iter()
        .enumerate()
        .min_by(|(_, x), (_, y)| x.partial_cmp(y).unwrap())
        .map(|(i, _)| i + 1)
        .unwrap();
    debug_assert!(a.iter().all(|v| v.is_finite() && *v >= 0.0));
    Ok(BoundsReport {
        inputs: BoundsInputs {
            n,
            m,
            t,
            y,
            y_clamped: yc,
        },
        f_n,
        f_m,
        g,
        log_n,
        log_m,
        a,
        argmin,
        constants: constants.clone(),
        feasibility,
    })
}

/// The unconditional explicit bound `100*sqrt(n) + (6t)^(1/3)`.
pub fn explicit_bound(n: u64, t: u64) -> f64 {
    100.0 * (n as f64).sqrt() + (6.0 * t as f64).cbrt()
}

/// The coloring algorithms exposed by the workbench. The serialized tokens
/// double as CLI names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgorithmId {
    /// Degree-threshold peeling driven by the vertex count.
    #[serde(rename = "prop0")]
    VertexCount,
    /// Dyadic triangle-bucket peeling plus layered list coloring.
    #[serde(rename = "ttprop2")]
    TriangleBuckets,
    /// Degree split driven by the edge count.
    #[serde(rename = "prop0a")]
    EdgeCount,
    /// Triangle split on top of the edge-count colorer.
    #[serde(rename = "ttprop3")]
    EdgesTriangles,
    /// The explicit-constant peeling with the hard color-count guarantee.
    #[serde(rename = "twprop1")]
    ExplicitConstant,
    /// Triangle split routing the dense part to the explicit colorer,
    /// the rest to bucket peeling.
    #[serde(rename = "hybrid-n")]
    HybridN,
    /// Same split with the edge-count family on the sparse part.
    #[serde(rename = "hybrid-m")]
    HybridM,
    /// Experimental core/sparsifier peeling; no color-count guarantee.
    #[serde(rename = "conjectural")]
    Conjectural,
    /// Runs a set of algorithms and keeps the best coloring.
    #[serde(rename = "best")]
    BestOf,
}

impl AlgorithmId {
    pub const ALL_SINGLE: [AlgorithmId; 8] = [
        AlgorithmId::VertexCount,
        AlgorithmId::TriangleBuckets,
        AlgorithmId::EdgeCount,
        AlgorithmId::EdgesTriangles,
        AlgorithmId::ExplicitConstant,
        AlgorithmId::HybridN,
        AlgorithmId::HybridM,
        AlgorithmId::Conjectural,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            AlgorithmId::VertexCount => "prop0",
            AlgorithmId::TriangleBuckets => "ttprop2",
            AlgorithmId::EdgeCount => "prop0a",
            AlgorithmId::EdgesTriangles => "ttprop3",
            AlgorithmId::ExplicitConstant => "twprop1",
            AlgorithmId::HybridN => "hybrid-n",
            AlgorithmId::HybridM => "hybrid-m",
            AlgorithmId::Conjectural => "conjectural",
            AlgorithmId::BestOf => "best",
        }
    }

    pub fn parse(s: &str) -> Option<AlgorithmId> {
        let all = [
            AlgorithmId::VertexCount,
            AlgorithmId::TriangleBuckets,
            AlgorithmId::EdgeCount,
            AlgorithmId::EdgesTriangles,
            AlgorithmId::ExplicitConstant,
            AlgorithmId::HybridN,
            AlgorithmId::HybridM,
            AlgorithmId::Conjectural,
            AlgorithmId::BestOf,
        ];
        all.into_iter().find(|a| a.token() == s)
    }
}

/// Parameter values a proof recipe produced for one run: named reals plus
/// the integer roundings actually used downstream, and which branch of the
/// recipe fired.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ParamRecord {
    pub branch: String,
    pub values: Vec<(String, f64)>,
    pub rounded: Vec<(String, u64)>,
}

impl ParamRecord {
    fn with_branch(branch: impl Into<String>) -> Self {
        ParamRecord {
            branch: branch.into(),
            ..Default::default()
        }
    }

    fn put(mut self, name: &str, v: f64) -> Self {
        self.values.push((name.to_string(), v));
        self
    }

    fn round_down(mut self, name: &str, v: f64) -> Self {
        let r = if v <= 0.0 { 0 } else { v.floor() as u64 };
        self.rounded.push((name.to_string(), r));
        self
    }

    fn round_up(mut self, name: &str, v: f64) -> Self {
        let r = if v <= 0.0 { 0 } else { v.ceil() as u64 };
        self.rounded.push((name.to_string(), r));
        self
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn rounded(&self, name: &str) -> Option<u64> {
        self.rounded.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }
}

/// Evaluates the parameter recipe of one algorithm on the profile
/// (n, m, t, y). Degree thresholds are floored, set-size floors are ceiled,
/// and the selected branch is recorded.
pub fn choose_parameters(alg: AlgorithmId, n: u64, m: u64, t: u64, y: u64) -> ParamRecord {
    let yc = y.max(1);
    let (nf, mf, tf, yf) = (n as f64, m as f64, t as f64, yc as f64);
    match alg {
        AlgorithmId::VertexCount => {
            let f = tlog_clamped(nf * nf / yf);
            let pivot = (nf * tlog_clamped(nf)).sqrt();
            if yf <= pivot {
                let d = pivot;
                ParamRecord::with_branch("y <= sqrt(n log n)")
                    .put("d", d)
                    .put("f", f)
                    .round_down("d", d)
            } else {
                let d = (nf * yf * f).cbrt();
                ParamRecord::with_branch("y > sqrt(n log n)")
                    .put("d", d)
                    .put("f", f)
                    .round_down("d", d)
            }
        }
        AlgorithmId::TriangleBuckets => {
            let f = tlog_clamped(tf * tf / (yf * yf * yf));
            let d = (f * tf).cbrt() + nf.sqrt();
            let k = if d >= 1.0 { d.log2().floor() } else { 0.0 };
            let z = if n == 0 { 0.0 } else { tf / nf };
            ParamRecord::with_branch("core")
                .put("f", f)
                .put("d", d)
                .put("z", z)
                .put("k", k)
                .round_down("k", k)
        }
        AlgorithmId::EdgeCount => {
            let pivot = (mf * tlog_clamped(mf)).cbrt();
            if m > 0 && yf > pivot {
                let f = tlog_clamped(mf / yf);
                let d = (mf * yf * f).powf(0.25);
                ParamRecord::with_branch("y > (m log m)^(1/3)")
                    .put("f", f)
                    .put("d", d)
                    .put("y_eff", yf)
                    .round_down("d", d)
                    .round_up("y_eff", yf)
            } else {
                // The cube-root profile is itself a valid local bound, so the
                // recipe re-enters the first branch with y' in place of y.
                let y_eff = pivot.max(1.0);
                let f = tlog_clamped(mf / y_eff);
                let d = (mf * y_eff * f).powf(0.25);
                ParamRecord::with_branch("y <= (m log m)^(1/3), using y' = (m log m)^(1/3)")
                    .put("f", f)
                    .put("d", d)
                    .put("y_eff", y_eff)
                    .round_down("d", d)
                    .round_up("y_eff", y_eff)
            }
        }
        AlgorithmId::EdgesTriangles => {
            let f = tlog_clamped(tf * tf / (yf * yf * yf));
            let z = if t == 0 || m == 0 {
                0.0
            } else {
                f.cbrt() * tf.powf(2.0 / 3.0) / mf.cbrt()
            };
            ParamRecord::with_branch("core")
                .put("f", f)
                .put("z", z)
        }
        AlgorithmId::ExplicitConstant => {
            let d = explicit_bound(n, t);
            ParamRecord::with_branch("core").put("d", d).round_down("d", d)
        }
        AlgorithmId::HybridN | AlgorithmId::HybridM => {
            let y_split = tf.cbrt() * tlog_clamped(nf) * tlog_clamped(nf);
            ParamRecord::with_branch("split on y = t^(1/3) log^2 n").put("y_split", y_split)
        }
        AlgorithmId::Conjectural => {
            let f = tlog_clamped(tf * tf / (yf * yf * yf));
            let d = (tf * f).cbrt() + nf.sqrt();
            ParamRecord::with_branch("core")
                .put("f", f)
                .put("d", d)
                .round_down("d", d)
        }
        AlgorithmId::BestOf => ParamRecord::with_branch("dispatch"),
    }
}
