//! Seeded randomized suites and the fixed battery of points. Reports depend
//! only on the seed and trial count.

use crate::commands::euler_pair;
use crate::json as enc;
use crate::{CliError, Result};
use cmforge::cmspace::{commutant_dim, generic_point, moduli_dim, tangent_dim, verify_relations, BModule, CMPoint};
use cmforge::curve::CurveModel;
use cmforge::exact::{frac, int, BiPoly, Mat, Rational, Ring, UniPoly};
use cmforge::szego::{extract_operator, gamma_skew_check, residue_action, LocalKernel, DEFAULT_ORDER};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: usize = 100;

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn point(curve: &CurveModel, pts: &[(Rational, Rational)]) -> CMPoint {
    generic_point(curve, pts, &vec![int(0); pts.len()]).expect("battery point")
}

fn on_x(xs: &[i64]) -> Vec<(Rational, Rational)> {
    xs.iter().map(|&x| (int(x), int(0))).collect()
}

fn on_xy(pts: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
    pts.iter().map(|&(x, y)| (int(x), int(y))).collect()
}

/// Line and torus points with n ≤ 3, then plane curve points: `y² = x³ + 1`
/// through (0,1), (2,3), (−1,0); `y² = x³ − x` at the origin; `y² = x³ − x + 1`
/// through (0,1), (3,5), (5,11); and the hyperbola `xy = 1`.
pub fn battery() -> Vec<CMPoint> {
    let mut out = Vec::new();
    for xs in [&[0][..], &[0, 1], &[0, 1, 3]] {
        out.push(point(&CurveModel::AffineLine, &on_x(xs)));
    }
    for xs in [&[1][..], &[1, 2], &[1, -1, 2]] {
        out.push(point(&CurveModel::Torus, &on_x(xs)));
    }
    let hyper = |c: &[i64]| CurveModel::hyperelliptic(UniPoly::from_ints(c)).expect("squarefree");
    let elliptic = hyper(&[1, 0, 0, 1]);
    let shifted = hyper(&[1, -1, 0, 1]);
    out.push(point(&elliptic, &on_xy(&[(0, 1)])));
    out.push(point(&elliptic, &on_xy(&[(0, 1), (2, 3)])));
    out.push(point(&elliptic, &on_xy(&[(0, 1), (2, 3), (-1, 0)])));
    out.push(point(&hyper(&[0, -1, 0, 1]), &on_xy(&[(0, 0)])));
    out.push(point(&shifted, &on_xy(&[(0, 1)])));
    out.push(point(&shifted, &on_xy(&[(0, 1), (3, 5)])));
    out.push(point(&shifted, &on_xy(&[(0, 1), (3, 5), (5, 11)])));
    let hyperbola = CurveModel::plane(BiPoly::from_int_terms(&[(1, 1, 1), (0, 0, -1)])).expect("plane curve");
    out.push(point(&hyperbola, &[(int(1), int(1)), (int(2), frac(1, 2)), (int(-1), int(-1))]));
    out
}

/// Relations, commutant and tangent dimension at every battery point.
pub fn battery_report() -> Result<Value> {
    let mut rows = Vec::new();
    let mut pass = true;
    for p in battery() {
        let rel = verify_relations(&p).map_err(internal)?;
        let c = commutant_dim(&p);
        let t = tangent_dim(&p).map_err(internal)?;
        let m = moduli_dim(&p).map_err(internal)?;
        let ok = rel.pass && c == 1 && t == p.n * p.n + 2 * p.n && m == 2 * p.n as i64;
        pass &= ok;
        rows.push(json!({
            "curve": p.curve.kind_name(),
            "n": p.n,
            "relations": rel.pass,
            "commutant_dim": c,
            "tangent_dim": t,
            "moduli_dim": m,
            "pass": ok,
        }));
    }
    Ok(json!({"points": rows, "pass": pass}))
}

/// A module with one action, dims at most 3 and small integer entries.
pub fn random_module(rng: &mut ChaCha8Rng) -> BModule {
    let n = rng.gen_range(0..=3);
    let n_inf = rng.gen_range(0..=3);
    let mut mat = |r: usize, c: usize| Mat::new(r, c, (0..r * c).map(|_| int(rng.gen_range(-2..=2))).collect());
    let a = mat(n, n);
    let phi = mat(n, n_inf);
    BModule::new(n, n_inf, vec![a], phi).expect("shapes agree")
}

pub fn euler_suite(seed: u64, trials: usize) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(trials);
    let mut pass = true;
    for trial in 0..trials {
        let u = random_module(&mut rng);
        let v = random_module(&mut rng);
        let mut row = euler_pair(&u, &v)?;
        pass &= row["pass"] == json!(true);
        row["trial"] = json!(trial);
        row["dims_u"] = json!([u.n, u.n_inf]);
        row["dims_v"] = json!([v.n, v.n_inf]);
        rows.push(row);
    }
    Ok(json!({"seed": seed, "trials": trials, "rows": rows, "pass": pass}))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

/// `φ` with up to eight terms of bidegree at most 5.
pub fn random_phi(rng: &mut ChaCha8Rng) -> BiPoly {
    let terms = rng.gen_range(1..=8);
    BiPoly::from_terms((0..terms).map(|_| ((rng.gen_range(0..=5), rng.gen_range(0..=5)), random_rational(rng))))
}

/// Residue action against the extracted operator on `z^0..=z^5`, then the
/// kernel invariance checks for `z`, `2z` and `z + z²`.
pub fn szego_suite(seed: u64, trials: usize) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(trials);
    let mut pass = true;
    for trial in 0..trials {
        let phi = random_phi(&mut rng);
        let k = LocalKernel::new(phi.clone(), 2).map_err(internal)?;
        let op = extract_operator(&k).map_err(internal)?;
        let agree = (0..=5).all(|d| {
            let f = UniPoly::monomial(Rational::one(), d);
            residue_action(&k, &f) == op.apply(&f)
        });
        pass &= agree;
        rows.push(json!({
            "trial": trial,
            "phi": enc::bipoly(&phi),
            "a": enc::poly(&op.a),
            "b": enc::poly(&op.b),
            "agree": agree,
        }));
    }
    let mut gamma = Vec::new();
    for w in [[0, 1, 0], [0, 2, 0], [0, 1, 1]] {
        let w = UniPoly::from_ints(&w);
        let ok = gamma_skew_check(&w, DEFAULT_ORDER).map_err(internal)?;
        pass &= ok;
        gamma.push(json!({"w": enc::poly(&w), "pass": ok}));
    }
    Ok(json!({"seed": seed, "trials": trials, "rows": rows, "gamma": gamma, "pass": pass}))
}

/// Battery, Euler and residue suites in one report.
pub fn full_report(seed: u64, trials: usize) -> Result<Value> {
    let battery = battery_report()?;
    let euler = euler_suite(seed, trials)?;
    let szego = szego_suite(seed, trials)?;
    let pass = [&battery, &euler, &szego].iter().all(|r| r["pass"] == json!(true));
    Ok(json!({"battery": battery, "euler": euler, "szego": szego, "pass": pass}))
}
