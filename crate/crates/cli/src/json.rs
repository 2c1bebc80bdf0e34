//! JSON encodings of the exact data types. Rationals are `"p/q"` strings,
//! polynomials are coefficient lists in increasing degree, and objects are
//! emitted with sorted keys.

use crate::CliError;
use cmforge::cmspace::{BModule, CMPoint, OneForm, RelationReport};
use cmforge::curve::CurveModel;
use cmforge::diffop::{Coeff, CoeffRing, DiffOp, FractionalIdeal, IdealGenerator};
use cmforge::exact::{parse_rational, BiPoly, Mat, RatFunc, Rational, Ring, UniPoly};
use serde_json::{json, Map, Value};
use std::sync::Arc;

type Result<T> = std::result::Result<T, CliError>;

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

pub fn rational(q: &Rational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn parse_rational_value(v: &Value, at: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| schema(format!("{at}: bad rational {s:?}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(schema(format!("{at}: expected a rational string, got {v}"))),
    }
}

fn field<'a>(obj: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(format!("{at}: missing \"{key}\"")))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(format!("{at}: expected an array")))
}

fn usize_of(v: &Value, at: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| schema(format!("{at}: expected a non-negative integer")))
}

fn i64_of(v: &Value, at: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| schema(format!("{at}: expected an integer")))
}

pub fn poly(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational).collect())
}

pub fn parse_poly(v: &Value, at: &str) -> Result<UniPoly> {
    let cs = array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, c)| parse_rational_value(c, &format!("{at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(cs))
}

/// `[[r, s, "p/q"], …]` for `Σ c x^r y^s`.
pub fn bipoly(f: &BiPoly) -> Value {
    Value::Array(f.terms().map(|(&(r, s), c)| json!([r, s, rational(c)])).collect())
}

pub fn parse_bipoly(v: &Value, at: &str) -> Result<BiPoly> {
    let mut terms = Vec::new();
    for (i, t) in array(v, at)?.iter().enumerate() {
        let here = format!("{at}[{i}]");
        let t = array(t, &here)?;
        if t.len() != 3 {
            return Err(schema(format!("{here}: expected [r, s, coefficient]")));
        }
        let e = |j: usize| -> Result<u32> {
            t[j].as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| schema(format!("{here}: bad exponent")))
        };
        terms.push(((e(0)?, e(1)?), parse_rational_value(&t[2], &here)?));
    }
    Ok(BiPoly::from_terms(terms))
}

pub fn matrix(m: &Mat<Rational>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(rational).collect())).collect())
}

pub fn parse_matrix(v: &Value, rows: usize, cols: usize, at: &str) -> Result<Mat<Rational>> {
    let rs = array(v, at)?;
    if rs.len() != rows {
        return Err(schema(format!("{at}: expected {rows} rows, got {}", rs.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, r) in rs.iter().enumerate() {
        let here = format!("{at}[{i}]");
        let r = array(r, &here)?;
        if r.len() != cols {
            return Err(schema(format!("{here}: expected {cols} entries, got {}", r.len())));
        }
        for (j, c) in r.iter().enumerate() {
            entries.push(parse_rational_value(c, &format!("{here}[{j}]"))?);
        }
    }
    Ok(Mat::new(rows, cols, entries))
}

fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

fn parse_vector(v: &Value, len: usize, at: &str) -> Result<Vec<Rational>> {
    let m = parse_matrix(&Value::Array(vec![v.clone()]), 1, len, at)?;
    Ok(m.entries().to_vec())
}

pub fn curve(c: &CurveModel) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(c.kind_name()));
    if let Some(f) = c.equation() {
        obj.insert("F".into(), bipoly(f));
    }
    if let Some(p) = c.hyperelliptic_p() {
        obj.insert("P".into(), poly(p));
    }
    Value::Object(obj)
}

pub fn parse_curve(v: &Value, at: &str) -> Result<CurveModel> {
    let kind = field(v, "kind", at)?.as_str().ok_or_else(|| schema(format!("{at}.kind: expected a string")))?;
    match kind {
        "AffineLine" => Ok(CurveModel::AffineLine),
        "Torus" => Ok(CurveModel::Torus),
        "PlaneCurve" | "Hyperelliptic" => {
            let f = v.get("F").map(|f| parse_bipoly(f, &format!("{at}.F"))).transpose()?;
            let p = v.get("P").map(|p| parse_poly(p, &format!("{at}.P"))).transpose()?;
            let c = match (f, p) {
                (Some(f), _) => CurveModel::plane(f),
                (None, Some(p)) => CurveModel::hyperelliptic(p),
                (None, None) => return Err(schema(format!("{at}: plane curve needs \"F\" or \"P\""))),
            }
            .map_err(|e| schema(format!("{at}: {e}")))?;
            if let Some(p) = v.get("P") {
                let p = parse_poly(p, &format!("{at}.P"))?;
                if c.hyperelliptic_p() != Some(&p) {
                    return Err(schema(format!("{at}: \"P\" does not match \"F\"")));
                }
            }
            Ok(c)
        }
        other => Err(schema(format!("{at}.kind: unknown curve kind {other:?}"))),
    }
}

pub fn point(p: &CMPoint) -> Value {
    let mut obj = Map::new();
    obj.insert("curve".into(), curve(&p.curve));
    obj.insert("n".into(), json!(p.n));
    obj.insert("X".into(), matrix(&p.x));
    obj.insert("Y".into(), p.y.as_ref().map_or(Value::Null, matrix));
    obj.insert("Z".into(), matrix(&p.z));
    obj.insert("vs".into(), Value::Array(p.vs.iter().map(|v| vector(v)).collect()));
    obj.insert("ws".into(), Value::Array(p.ws.iter().map(|v| vector(v)).collect()));
    obj.insert("ideal".into(), Value::Array(p.ideal.iter().map(bipoly).collect()));
    Value::Object(obj)
}

pub fn parse_point(v: &Value) -> Result<CMPoint> {
    let at = "point";
    let curve = parse_curve(field(v, "curve", at)?, "point.curve")?;
    let n = usize_of(field(v, "n", at)?, "point.n")?;
    let x = parse_matrix(field(v, "X", at)?, n, n, "point.X")?;
    let y = match v.get("Y") {
        None | Some(Value::Null) => None,
        Some(y) => Some(parse_matrix(y, n, n, "point.Y")?),
    };
    let z = parse_matrix(field(v, "Z", at)?, n, n, "point.Z")?;
    let vectors = |key: &str| -> Result<Vec<Vec<Rational>>> {
        array(field(v, key, at)?, &format!("point.{key}"))?
            .iter()
            .enumerate()
            .map(|(i, e)| parse_vector(e, n, &format!("point.{key}[{i}]")))
            .collect()
    };
    let vs = vectors("vs")?;
    let ws = vectors("ws")?;
    let ideal = match v.get("ideal") {
        None | Some(Value::Null) => vec![BiPoly::one(); vs.len()],
        Some(g) => array(g, "point.ideal")?
            .iter()
            .enumerate()
            .map(|(i, e)| parse_bipoly(e, &format!("point.ideal[{i}]")))
            .collect::<Result<_>>()?,
    };
    let p = CMPoint { curve, n, x, y, z, vs, ws, ideal };
    p.check_sizes().map_err(|e| schema(e.to_string()))?;
    Ok(p)
}

/// One generator as `{"denominator_x", "coeffs"}`: the coefficient of `∂ⁱ`
/// is `coeffs[i]` over the common denominator, where `coeffs[i]` holds the
/// numerator, followed by the numerator of the `y` part on hyperelliptic
/// curves.
fn generator(g: &IdealGenerator, with_y: bool) -> Value {
    match g {
        IdealGenerator::Op(op) => {
            let den = op.common_denominator();
            let over = |r: &RatFunc| r.num().mul(&den.divrem(r.den()).0);
            let coeffs: Vec<Value> = op
                .coeffs()
                .iter()
                .map(|c| {
                    let mut parts = vec![poly(&over(&c.a))];
                    if with_y {
                        parts.push(poly(&over(&c.b)));
                    }
                    Value::Array(parts)
                })
                .collect();
            json!({"denominator_x": poly(&den), "coeffs": coeffs})
        }
        IdealGenerator::Symbolic(prod) => json!({"symbolic": prod.display()}),
    }
}

pub fn ideal(i: &FractionalIdeal) -> Value {
    let with_y = i.curve.has_y();
    json!({
        "curve": curve(&i.curve),
        "generators": i.generators.iter().map(|g| generator(g, with_y)).collect::<Vec<_>>(),
    })
}

pub fn parse_ideal(v: &Value) -> Result<FractionalIdeal> {
    let curve = parse_curve(field(v, "curve", "ideal")?, "ideal.curve")?;
    let ring = CoeffRing::for_curve(&curve)
        .map(Arc::new)
        .ok_or_else(|| schema("ideal: operator generators need a line, torus or hyperelliptic curve"))?;
    let with_y = curve.has_y();
    let mut generators = Vec::new();
    for (i, g) in array(field(v, "generators", "ideal")?, "ideal.generators")?.iter().enumerate() {
        let at = format!("ideal.generators[{i}]");
        if g.get("symbolic").is_some() {
            return Err(schema(format!("{at}: symbolic generators cannot be read back")));
        }
        let den = parse_poly(field(g, "denominator_x", &at)?, &format!("{at}.denominator_x"))?;
        if den.is_zero() {
            return Err(schema(format!("{at}: zero denominator")));
        }
        let mut coeffs = Vec::new();
        for (j, c) in array(field(g, "coeffs", &at)?, &format!("{at}.coeffs"))?.iter().enumerate() {
            let here = format!("{at}.coeffs[{j}]");
            let parts = array(c, &here)?;
            if parts.len() != 1 + with_y as usize {
                return Err(schema(format!("{here}: expected {} polynomials", 1 + with_y as usize)));
            }
            let a = RatFunc::new(parse_poly(&parts[0], &here)?, den.clone());
            let b = match parts.get(1) {
                Some(b) => RatFunc::new(parse_poly(b, &here)?, den.clone()),
                None => RatFunc::zero(),
            };
            coeffs.push(Coeff { a, b });
        }
        generators.push(IdealGenerator::Op(DiffOp::new(&ring, coeffs)));
    }
    Ok(FractionalIdeal { curve, generators })
}

pub fn bmodule(m: &BModule) -> Value {
    json!({
        "n": m.n,
        "n_inf": m.n_inf,
        "actions": m.actions.iter().map(matrix).collect::<Vec<_>>(),
        "phi": matrix(&m.phi),
    })
}

pub fn parse_bmodule(v: &Value, at: &str) -> Result<BModule> {
    let n = usize_of(field(v, "n", at)?, &format!("{at}.n"))?;
    let n_inf = usize_of(field(v, "n_inf", at)?, &format!("{at}.n_inf"))?;
    let actions = array(field(v, "actions", at)?, &format!("{at}.actions"))?
        .iter()
        .enumerate()
        .map(|(i, a)| parse_matrix(a, n, n, &format!("{at}.actions[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let phi = parse_matrix(field(v, "phi", at)?, n, n_inf, &format!("{at}.phi"))?;
    BModule::new(n, n_inf, actions, phi).map_err(|e| schema(format!("{at}: {e}")))
}

/// `{"curve", "coefficient", "x_shift"}`.
pub fn one_form(w: &OneForm) -> Value {
    json!({"curve": curve(&w.curve), "coefficient": bipoly(&w.coefficient), "x_shift": w.x_shift})
}

pub fn parse_one_form(v: &Value) -> Result<OneForm> {
    let curve = parse_curve(field(v, "curve", "form")?, "form.curve")?;
    let coefficient = parse_bipoly(field(v, "coefficient", "form")?, "form.coefficient")?;
    let x_shift = match v.get("x_shift") {
        None => 0,
        Some(s) => i64_of(s, "form.x_shift")?,
    };
    Ok(OneForm { curve, coefficient, x_shift })
}

pub fn relation_report(r: &RelationReport) -> Value {
    json!({
        "pass": r.pass,
        "relations": r.relations.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "residual": c.residual.as_ref().map_or(Value::Null, matrix),
        })).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline; `serde_json` maps keep keys sorted.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use cmforge::cmspace::generic_point;
    use cmforge::exact::{frac, int};
    use cmforge::forge::ideal_generators;

    fn round_trip_point(p: &CMPoint) {
        let v = point(p);
        let text = to_text(&v);
        let back = parse_point(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(&back, p);
    }

    #[test]
    fn rationals_are_fraction_strings() {
        assert_eq!(rational(&frac(-3, 6)), json!("-1/2"));
        assert_eq!(rational(&int(4)), json!("4/1"));
        assert_eq!(parse_rational_value(&json!("4"), "q").unwrap(), int(4));
        assert_eq!(parse_rational_value(&json!(7), "q").unwrap(), int(7));
        assert!(parse_rational_value(&json!("1/0"), "q").is_err());
        assert!(parse_rational_value(&json!(0.5), "q").is_err());
    }

    #[test]
    fn points_round_trip() {
        let line = generic_point(&CurveModel::AffineLine, &[(int(0), int(0)), (int(2), int(0))], &[int(1), frac(1, 3)])
            .unwrap();
        round_trip_point(&line);
        let e = CurveModel::hyperelliptic(UniPoly::from_ints(&[1, 0, 0, 1])).unwrap();
        let p = generic_point(&e, &[(int(0), int(1)), (int(2), int(3))], &[int(0), int(0)]).unwrap();
        round_trip_point(&p);
        let empty = generic_point(&CurveModel::Torus, &[], &[]).unwrap();
        round_trip_point(&empty);
    }

    #[test]
    fn ideals_round_trip() {
        let e = CurveModel::hyperelliptic(UniPoly::from_ints(&[1, 0, 0, 1])).unwrap();
        let points = [
            generic_point(&CurveModel::AffineLine, &[(int(0), int(0)), (int(1), int(0))], &[int(0), int(0)]).unwrap(),
            generic_point(&CurveModel::Torus, &[(int(1), int(0)), (int(2), int(0))], &[int(0), int(0)]).unwrap(),
            generic_point(&e, &[(int(0), int(1)), (int(2), int(3))], &[int(0), int(0)]).unwrap(),
        ];
        for p in points {
            let i = ideal_generators(&p).unwrap();
            let back = parse_ideal(&serde_json::from_str(&to_text(&ideal(&i))).unwrap()).unwrap();
            assert_eq!(back, i);
        }
    }

    #[test]
    fn curves_and_modules_round_trip() {
        let c = CurveModel::plane(BiPoly::from_int_terms(&[(1, 1, 1), (0, 0, -1)])).unwrap();
        assert_eq!(parse_curve(&curve(&c), "c").unwrap(), c);
        let h = CurveModel::hyperelliptic(UniPoly::from_ints(&[0, -1, 0, 1])).unwrap();
        assert_eq!(parse_curve(&curve(&h), "c").unwrap(), h);
        assert_eq!(parse_curve(&json!({"kind": "Hyperelliptic", "P": ["0", "-1", "0", "1"]}), "c").unwrap(), h);
        let m = BModule::new(2, 1, vec![Mat::from_ints(&[&[1, 2], &[0, 1]])], Mat::from_ints(&[&[1], &[0]])).unwrap();
        assert_eq!(parse_bmodule(&bmodule(&m), "m").unwrap(), m);
        let w = OneForm::log_unit(-2);
        assert_eq!(parse_one_form(&one_form(&w)).unwrap(), w);
    }

    #[test]
    fn schema_violations_are_located() {
        let mut v = point(&generic_point(&CurveModel::AffineLine, &[(int(0), int(0))], &[int(0)]).unwrap());
        v["X"] = json!([["1/2", "3"]]);
        match parse_point(&v) {
            Err(CliError::Schema(m)) => assert!(m.contains("point.X[0]"), "{m}"),
            other => panic!("{other:?}"),
        }
        assert!(parse_curve(&json!({"kind": "Sphere"}), "c").is_err());
        assert!(parse_curve(&json!({"kind": "PlaneCurve", "F": [[0, 2, "1"], [2, 0, "-1"]], "P": ["0"]}), "c").is_err());
    }
}
