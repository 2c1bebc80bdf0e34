//! Fixed inputs shared by the benchmarks.

use cmforge::cmspace::{generic_point, CMPoint};
use cmforge::curve::CurveModel;
use cmforge::exact::{int, Rational, UniPoly};

/// The generic point through `x = xs` on the given curve, with `y = 0` off
/// plane curves and `Z` diagonal zero.
pub fn point(curve: &CurveModel, pts: &[(i64, i64)]) -> CMPoint {
    let pts: Vec<(Rational, Rational)> = pts.iter().map(|&(x, y)| (int(x), int(y))).collect();
    generic_point(curve, &pts, &vec![int(0); pts.len()]).expect("point on the curve")
}

pub fn elliptic() -> CurveModel {
    CurveModel::hyperelliptic(UniPoly::from_ints(&[1, 0, 0, 1])).expect("squarefree")
}
