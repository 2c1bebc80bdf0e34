//! Subcommands as functions from parsed inputs to JSON reports.

use crate::json as enc;
use crate::{CliError, Result};
use cmforge::cmspace::{
    commutant_dim, euler_char, ext1_dim, generic_point, hom_a_dim, hom_dim, lambda_act, moduli_dim, omega_twist,
    tangent_dim, verify_relations, BModule, CMPoint, CmError, OneForm,
};
use cmforge::curve::CurveModel;
use cmforge::diffop::FractionalIdeal;
use cmforge::exact::Rational;
use cmforge::forge::{ideal_generators, ForgeError};
use cmforge::lattice::{codim as codim_report, default_kmax};
use serde_json::{json, Value};

fn cm_error(e: CmError) -> CliError {
    match e {
        CmError::Size(m) => CliError::Schema(m),
        other => CliError::precondition(other.to_string()),
    }
}

/// Fails with the relation report embedded when `p` is not a point.
fn require_point(p: &CMPoint) -> Result<()> {
    let report = verify_relations(p).map_err(cm_error)?;
    if report.pass {
        return Ok(());
    }
    let failing: Vec<_> = report.relations.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
    Err(CliError::Precondition {
        message: format!("relations fail: {}", failing.join(", ")),
        report: Some(enc::relation_report(&report)),
    })
}

pub fn make_point(curve: &CurveModel, pts: &[(Rational, Rational)], alphas: &[Rational]) -> Result<Value> {
    let p = generic_point(curve, pts, alphas).map_err(cm_error)?;
    let report = verify_relations(&p).map_err(cm_error)?;
    if !report.pass {
        return Err(CliError::Internal("generic point fails its relations".into()));
    }
    Ok(enc::point(&p))
}

/// The relation report and whether every relation holds.
pub fn verify(p: &CMPoint) -> Result<(Value, bool)> {
    let report = verify_relations(p).map_err(cm_error)?;
    Ok((enc::relation_report(&report), report.pass))
}

/// Text summary of a relation report for humans.
pub fn verify_summary(report: &Value) -> String {
    let mut out = String::new();
    for r in report["relations"].as_array().into_iter().flatten() {
        let mark = if r["pass"].as_bool() == Some(true) { "ok  " } else { "FAIL" };
        out.push_str(&format!("{mark} {}\n", r["name"].as_str().unwrap_or("?")));
    }
    let verdict = if report["pass"].as_bool() == Some(true) { "all relations hold" } else { "relations fail" };
    out.push_str(verdict);
    out.push('\n');
    out
}

pub fn forge(p: &CMPoint) -> Result<FractionalIdeal> {
    require_point(p)?;
    ideal_generators(p).map_err(|e| match e {
        ForgeError::ResidualDenominator { .. } => CliError::Internal(e.to_string()),
        ForgeError::Point(c) => cm_error(c),
        other => CliError::precondition(other.to_string()),
    })
}

/// Largest generator order, standing in for the point size.
fn max_order(gens: &FractionalIdeal) -> usize {
    gens.ops().map_or(0, |ops| ops.iter().filter_map(|o| o.order().ok()).max().unwrap_or(0))
}

/// `kmax` from the flag, else the environment override, else the default.
pub fn resolve_kmax(gens: &FractionalIdeal, flag: Option<usize>, env: Option<usize>) -> usize {
    flag.or(env).unwrap_or_else(|| default_kmax(max_order(gens), gens))
}

pub fn codim(gens: &FractionalIdeal, kmax: usize) -> Result<Value> {
    let rep = codim_report(gens, kmax).map_err(|e| CliError::precondition(e.to_string()))?;
    let rows: Vec<Value> = rep.rows.iter().map(|(k, c)| json!({"k": k, "codim": c})).collect();
    Ok(json!({"kmax": kmax, "rows": rows, "stabilized": rep.stabilized}))
}

pub fn act(p: &CMPoint, unit_power: Option<i64>, form: Option<&OneForm>) -> Result<Value> {
    let q = match (unit_power, form) {
        (Some(r), None) => lambda_act(p, r),
        (None, Some(w)) => omega_twist(p, w),
        _ => return Err(CliError::Schema("act needs exactly one of --unit-power and --form".into())),
    }
    .map_err(cm_error)?;
    Ok(enc::point(&q))
}

pub fn commutant(p: &CMPoint) -> Result<Value> {
    Ok(json!({"commutant_dim": commutant_dim(p)}))
}

pub fn tangent(p: &CMPoint) -> Result<Value> {
    require_point(p)?;
    let t = tangent_dim(p).map_err(cm_error)?;
    let m = moduli_dim(p).map_err(cm_error)?;
    Ok(json!({"n": p.n, "tangent_dim": t, "moduli_dim": m, "expected_tangent_dim": p.n * p.n + 2 * p.n}))
}

pub fn euler_pair(u: &BModule, v: &BModule) -> Result<Value> {
    let h = hom_dim(u, v).map_err(cm_error)?;
    let e = ext1_dim(u, v).map_err(cm_error)?;
    let ha = hom_a_dim(u, v).map_err(cm_error)?;
    let chi = euler_char(u, v);
    Ok(json!({
        "hom_dim": h,
        "hom_a_dim": ha,
        "ext1_dim": e,
        "euler_char": chi,
        "pass": h as i64 - e as i64 == chi,
    }))
}
