//! Report shaping: significant-digit policy and JSON builders shared by the
//! subcommands.

use num::BigRational;
use serde_json::{json, Value};
use tricolor_core::bounds::BoundsReport;
use tricolor_core::generate::CertifiedInstance;

/// Formats a float with 12 significant digits (the serialization policy for
/// every formula value the harness writes).
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let s = format!("{x:.11e}");
    // Trim zero-padding from the mantissa but keep the exponent readable.
    match s.split_once('e') {
        Some((mant, exp)) => {
            let mant = mant.trim_end_matches('0').trim_end_matches('.');
            format!("{mant}e{exp}")
        }
        None => s,
    }
}

/// Rounds to 12 significant digits so JSON numbers follow the same policy.
pub fn round12(x: f64) -> f64 {
    sig12(x).parse().unwrap_or(x)
}

pub fn bounds_json(report: &BoundsReport) -> Value {
    json!({
        "inputs": {
            "n": report.inputs.n,
            "m": report.inputs.m,
            "t": report.inputs.t,
            "y": report.inputs.y,
            "y_clamped": report.inputs.y_clamped,
        },
        "f_values": {
            "f_n": round12(report.f_n),
            "f_m": round12(report.f_m),
            "g": round12(report.g),
            "log_n": round12(report.log_n),
            "log_m": round12(report.log_m),
        },
        "a": report.a.iter().map(|&v| round12(v)).collect::<Vec<_>>(),
        "argmin": report.argmin,
        "feasibility": feasibility_json(&report.feasibility),
    })
}

pub fn feasibility_json(v: &tricolor_core::bounds::FeasibilityVerdict) -> Value {
    json!({
        "pass": v.pass,
        "checks": v.checks.iter().map(|c| json!({
            "name": c.name,
            "lhs": c.lhs.to_string(),
            "rhs": c.rhs.to_string(),
            "pass": c.pass,
        })).collect::<Vec<_>>(),
    })
}

/// Certificate JSON: family, params, seed, measured quantities, notes.
pub fn certificate_json(inst: &CertifiedInstance) -> Value {
    json!({
        "family": inst.family,
        "params": inst.target,
        "seed": inst.seed,
        "measured": {
            "n": inst.certificate.n,
            "m": inst.certificate.m,
            "t": inst.certificate.t,
            "y": inst.certificate.y,
            "max_degree": inst.certificate.max_degree,
        },
        "notes": inst.notes,
        "alpha": inst.alpha,
    })
}

/// Exact rational as a display string plus a float approximation.
pub fn rational_json(value: &BigRational) -> Value {
    let float: f64 = {
        let num: f64 = value.numer().to_string().parse().unwrap_or(f64::NAN);
        let den: f64 = value.denom().to_string().parse().unwrap_or(f64::NAN);
        num / den
    };
    json!({
        "exact": value.to_string(),
        "float": round12(float),
    })
}
