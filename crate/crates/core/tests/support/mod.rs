#![allow(dead_code)]

pub mod oracle;

use cmforge::cmspace::{generic_point, CMPoint};
use cmforge::curve::CurveModel;
use cmforge::exact::{frac, int, BiPoly, Rational, UniPoly};

pub fn q(a: i64, b: i64) -> Rational {
    frac(a, b)
}

pub fn elliptic() -> CurveModel {
    CurveModel::hyperelliptic(UniPoly::from_ints(&[1, 0, 0, 1])).unwrap()
}

pub fn legendre() -> CurveModel {
    CurveModel::hyperelliptic(UniPoly::from_ints(&[0, -1, 0, 1])).unwrap()
}

pub fn shifted_legendre() -> CurveModel {
    CurveModel::hyperelliptic(UniPoly::from_ints(&[1, -1, 0, 1])).unwrap()
}

pub fn hyperbola() -> CurveModel {
    CurveModel::plane(BiPoly::from_int_terms(&[(1, 1, 1), (0, 0, -1)])).unwrap()
}

fn point(curve: &CurveModel, pts: &[(Rational, Rational)]) -> CMPoint {
    let alphas = vec![int(0); pts.len()];
    generic_point(curve, pts, &alphas).unwrap()
}

fn xs(v: &[i64]) -> Vec<(Rational, Rational)> {
    v.iter().map(|&a| (int(a), int(0))).collect()
}

fn xys(v: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
    v.iter().map(|&(a, b)| (int(a), int(b))).collect()
}

pub fn line_points() -> Vec<CMPoint> {
    [&[0][..], &[0, 1], &[0, 1, 3]].iter().map(|v| point(&CurveModel::AffineLine, &xs(v))).collect()
}

pub fn torus_points() -> Vec<CMPoint> {
    [&[1][..], &[1, 2], &[1, -1, 2]].iter().map(|v| point(&CurveModel::Torus, &xs(v))).collect()
}

pub fn plane_points() -> Vec<CMPoint> {
    let e = elliptic();
    let s = shifted_legendre();
    vec![
        point(&e, &xys(&[(0, 1)])),
        point(&e, &xys(&[(0, 1), (2, 3)])),
        point(&e, &xys(&[(0, 1), (2, 3), (-1, 0)])),
        point(&legendre(), &xys(&[(0, 0)])),
        point(&s, &xys(&[(0, 1)])),
        point(&s, &xys(&[(0, 1), (3, 5)])),
        point(&s, &xys(&[(0, 1), (3, 5), (5, 11)])),
        point(&hyperbola(), &[(int(1), int(1)), (int(2), q(1, 2)), (int(-1), int(-1))]),
    ]
}

/// Every battery point, line and torus first.
pub fn battery() -> Vec<CMPoint> {
    let mut v = line_points();
    v.extend(torus_points());
    v.extend(plane_points());
    v
}
