//! Affine curve models: coordinate-ring presentation, the derivation
//! generator and its commutation relations, and the ν kernel.

use crate::exact::{resultant, BiPoly, Mat, Rational, Ring, UniPoly};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("plane curve equation must be nonconstant")]
    ConstantEquation,
    #[error("hyperelliptic polynomial P must have simple roots (gcd(P, P') = {0})")]
    RepeatedRoots(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CurveModel {
    /// `A = ℚ[x]`.
    AffineLine,
    /// `A = ℚ[x, x⁻¹]`.
    Torus,
    /// `A = ℚ[x, y]/(F)`. `hyperelliptic` holds `P` when `F = y² − P(x)`
    /// with `P` squarefree.
    PlaneCurve { f: BiPoly, hyperelliptic: Option<UniPoly> },
}

impl CurveModel {
    /// Builds a plane curve, recognizing the hyperelliptic shape `y² − P(x)`.
    pub fn plane(f: BiPoly) -> Result<Self, CurveError> {
        if f.total_degree().unwrap_or(0) == 0 {
            return Err(CurveError::ConstantEquation);
        }
        let hyperelliptic = hyperelliptic_part(&f).filter(|p| p.gcd(&p.derivative()).is_constant());
        Ok(CurveModel::PlaneCurve { f, hyperelliptic })
    }

    /// The curve `y² = P(x)`; `P` must be squarefree.
    pub fn hyperelliptic(p: UniPoly) -> Result<Self, CurveError> {
        let g = p.gcd(&p.derivative());
        if !g.is_constant() || p.is_zero() {
            return Err(CurveError::RepeatedRoots(g.display_in("x")));
        }
        let f = BiPoly::y().pow(2).sub(&BiPoly::from_x_poly(&p));
        Ok(CurveModel::PlaneCurve { f, hyperelliptic: Some(p) })
    }

    pub fn equation(&self) -> Option<&BiPoly> {
        match self {
            CurveModel::PlaneCurve { f, .. } => Some(f),
            _ => None,
        }
    }

    pub fn hyperelliptic_p(&self) -> Option<&UniPoly> {
        match self {
            CurveModel::PlaneCurve { hyperelliptic, .. } => hyperelliptic.as_ref(),
            _ => None,
        }
    }

    /// Whether the coordinate ring has a second generator `y`.
    pub fn has_y(&self) -> bool {
        matches!(self, CurveModel::PlaneCurve { .. })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CurveModel::AffineLine => "AffineLine",
            CurveModel::Torus => "Torus",
            CurveModel::PlaneCurve { .. } => "PlaneCurve",
        }
    }

    /// Membership of a rational point. For the line and torus `y` is ignored.
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        match self {
            CurveModel::AffineLine => true,
            CurveModel::Torus => !x.is_zero(),
            CurveModel::PlaneCurve { f, .. } => f.eval(x, y).is_zero(),
        }
    }
}

/// `P` such that `f = y² − P(x)`, if `f` has that shape.
fn hyperelliptic_part(f: &BiPoly) -> Option<UniPoly> {
    let mut p = Vec::new();
    let mut saw_y2 = false;
    for (&(r, s), c) in f.terms() {
        match s {
            0 => {
                if p.len() <= r as usize {
                    p.resize(r as usize + 1, Rational::zero());
                }
                p[r as usize] = -c.clone();
            }
            2 if r == 0 && c.is_one() => saw_y2 = true,
            _ => return None,
        }
    }
    let p = UniPoly::new(p);
    (saw_y2 && !p.is_zero()).then_some(p)
}

/// Letters of words in the path algebra: the two coordinate generators and
/// the canonical double derivation `Δ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    X,
    Y,
    Delta,
}

/// `coeff · l₁^{e₁} l₂^{e₂} …`
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    pub coeff: Rational,
    pub letters: Vec<(Letter, u32)>,
}

impl Word {
    fn new(coeff: Rational, letters: &[(Letter, u32)]) -> Self {
        Word { coeff, letters: letters.iter().copied().filter(|l| l.1 > 0).collect() }
    }

    /// Evaluates with `x ↦ xm`, `y ↦ ym`, `Δ ↦ delta`.
    pub fn eval<R: Ring>(&self, xm: &Mat<R>, ym: &Mat<R>, delta: &Mat<R>) -> Mat<R> {
        let n = delta.rows();
        let mut acc = Mat::identity(n);
        for &(l, e) in &self.letters {
            let m = match l {
                Letter::X => xm,
                Letter::Y => ym,
                Letter::Delta => delta,
            };
            acc = acc.mul(&m.pow(e));
        }
        acc.scale(&R::from_rational(&self.coeff))
    }

    /// Value in the ring of differential operators, where `Δ ↦ 1` and the
    /// word becomes a commutative monomial.
    pub fn collapse(&self) -> BiPoly {
        let (mut r, mut s) = (0, 0);
        for &(l, e) in &self.letters {
            match l {
                Letter::X => r += e,
                Letter::Y => s += e,
                Letter::Delta => {}
            }
        }
        BiPoly::from_terms([((r, s), self.coeff.clone())])
    }
}

pub fn eval_words<R: Ring>(ws: &[Word], xm: &Mat<R>, ym: &Mat<R>, delta: &Mat<R>) -> Mat<R> {
    let n = delta.rows();
    ws.iter().fold(Mat::zeros(n, n), |acc, w| acc.add(&w.eval(xm, ym, delta)))
}

/// Images of the coordinates under the derivation generator, and the
/// commutators `[z, x]`, `[z, y]` as sums of words in `x`, `y`, `Δ`.
#[derive(Clone, PartialEq, Debug)]
pub struct DerivationData {
    pub partial_x: BiPoly,
    pub partial_y: BiPoly,
    pub zx: Vec<Word>,
    pub zy: Vec<Word>,
}

/// Commutation relations for a general plane curve `Σ a_rs x^r y^s`.
fn plane_words(f: &BiPoly) -> (Vec<Word>, Vec<Word>) {
    let mut zx = Vec::new();
    let mut zy = Vec::new();
    for (&(r, s), a) in f.terms() {
        for k in 0..s {
            zx.push(Word::new(
                a.clone(),
                &[(Letter::Y, s - k - 1), (Letter::Delta, 1), (Letter::Y, k), (Letter::X, r)],
            ));
        }
        for l in 0..r {
            zy.push(Word::new(
                -a.clone(),
                &[(Letter::Y, s), (Letter::X, r - l - 1), (Letter::Delta, 1), (Letter::X, l)],
            ));
        }
    }
    (zx, zy)
}

/// The simplified relations for `y² = Σ a_s x^s`.
fn hyperelliptic_words(p: &UniPoly) -> (Vec<Word>, Vec<Word>) {
    let one = Rational::one();
    let zx = vec![
        Word::new(one.clone(), &[(Letter::Y, 1), (Letter::Delta, 1)]),
        Word::new(one, &[(Letter::Delta, 1), (Letter::Y, 1)]),
    ];
    let mut zy = Vec::new();
    for (s, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let s = s as u32;
        for l in 0..s {
            zy.push(Word::new(a.clone(), &[(Letter::X, s - l - 1), (Letter::Delta, 1), (Letter::X, l)]));
        }
    }
    (zx, zy)
}

pub fn derivation_data(c: &CurveModel) -> DerivationData {
    match c {
        CurveModel::AffineLine | CurveModel::Torus => DerivationData {
            partial_x: BiPoly::one(),
            partial_y: BiPoly::zero(),
            zx: vec![Word::new(Rational::one(), &[(Letter::Delta, 1)])],
            zy: Vec::new(),
        },
        CurveModel::PlaneCurve { f, hyperelliptic } => {
            let (zx, zy) = match hyperelliptic {
                Some(p) => hyperelliptic_words(p),
                None => plane_words(f),
            };
            DerivationData { partial_x: f.partial_y(), partial_y: f.partial_x().neg(), zx, zy }
        }
    }
}

/// The kernel ν of the embedding of double derivations into two-variable
/// rational functions, on the derivation generator; `ν(Δ) = 1` always.
///
/// Under the dual representation the right tensor factor becomes the
/// transposed matrix, so `Line` reads `(Xᵗ − x)⁻¹` and `Plane` reads
/// `−(Xᵗ − x)⁻¹(Yᵗ − y)⁻¹ F(Xᵗ, y)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NuKernel {
    /// `(1⊗x − x⊗1)⁻¹`
    Line,
    /// `−(Σ a_rs y^s⊗x^r) / ((1⊗x − x⊗1)(1⊗y − y⊗1))`
    Plane { f: BiPoly },
}

impl NuKernel {
    pub fn describe(&self) -> String {
        match self {
            NuKernel::Line => "(1⊗x - x⊗1)^-1".into(),
            NuKernel::Plane { f } => {
                let num = f.display_in("1⊗x", "y⊗1");
                format!("-({num}) / ((1⊗x - x⊗1)(1⊗y - y⊗1))")
            }
        }
    }

    /// `ν(Δ)`.
    pub fn on_delta(&self) -> Rational {
        Rational::one()
    }

    /// Value of `ν(z)` at a pair of points `(p₁, p₂)` off the diagonal, where
    /// the left tensor factor is evaluated at `p₁` and the right at `p₂`.
    /// For the line only the `x` coordinates matter.
    pub fn eval_at(&self, p1: (&Rational, &Rational), p2: (&Rational, &Rational)) -> Option<Rational> {
        let dx = p2.0 - p1.0;
        match self {
            NuKernel::Line => (!dx.is_zero()).then(|| dx.recip()),
            NuKernel::Plane { f } => {
                let dy = p2.1 - p1.1;
                if dx.is_zero() || dy.is_zero() {
                    return None;
                }
                Some(-f.eval(p2.0, p1.1) / (dx * dy))
            }
        }
    }
}

pub fn nu_kernel(c: &CurveModel) -> NuKernel {
    match c {
        CurveModel::AffineLine | CurveModel::Torus => NuKernel::Line,
        CurveModel::PlaneCurve { f, .. } => NuKernel::Plane { f: f.clone() },
    }
}

/// Outcome of the resultant-based smoothness test.
#[derive(Clone, PartialEq, Debug)]
pub struct SmoothnessReport {
    pub smooth: bool,
    /// Common factor of the resultants eliminating `y` (a polynomial in `x`).
    pub x_factor: UniPoly,
    /// Common factor of the resultants eliminating `x` (a polynomial in `y`).
    pub y_factor: UniPoly,
    /// A rational singular point, when one was found by substitution.
    pub point: Option<(Rational, Rational)>,
}

fn common_resultant_factor(f: &BiPoly) -> UniPoly {
    let fx = f.partial_x();
    let fy = f.partial_y();
    let res = |a: &BiPoly, b: &BiPoly| -> UniPoly {
        resultant(&a.coeffs_in_y(), &b.coeffs_in_y()).unwrap_or_else(|_| UniPoly::zero())
    };
    let g = res(f, &fy).gcd(&res(f, &fx));
    g.gcd(&res(&fx, &fy))
}

/// Best-effort check that `F`, `F_x`, `F_y` have no common zero over the
/// algebraic closure. A constant common factor of the resultants in either
/// variable proves smoothness; otherwise the curve is reported singular and
/// rational roots of the factors are tried for an explicit singular point.
///
/// Returns `None` for models other than plane curves.
pub fn smoothness_check(c: &CurveModel) -> Option<SmoothnessReport> {
    let f = c.equation()?;
    let x_factor = common_resultant_factor(f);
    let y_factor = common_resultant_factor(&f.swap_vars());
    let smooth = x_factor.is_constant() || y_factor.is_constant();
    let mut point = None;
    if !smooth {
        let (fx, fy) = (f.partial_x(), f.partial_y());
        'search: for x0 in x_factor.rational_roots() {
            let g = f.eval_x(&x0).gcd(&fx.eval_x(&x0)).gcd(&fy.eval_x(&x0));
            if let Some(y0) = g.rational_roots().into_iter().next() {
                point = Some((x0.clone(), y0));
                break 'search;
            }
        }
    }
    Some(SmoothnessReport { smooth, x_factor, y_factor, point })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    fn elliptic() -> CurveModel {
        CurveModel::hyperelliptic(UniPoly::from_ints(&[1, 0, 0, 1])).unwrap()
    }

    #[test]
    fn line_derivation() {
        let d = derivation_data(&CurveModel::AffineLine);
        assert_eq!(d.partial_x, BiPoly::one());
        assert_eq!(d.zx.len(), 1);
        assert_eq!(d.zx[0].letters, vec![(Letter::Delta, 1)]);
    }

    #[test]
    fn hyperelliptic_derivation() {
        let d = derivation_data(&elliptic());
        assert_eq!(d.partial_x, BiPoly::from_int_terms(&[(0, 1, 2)]));
        assert_eq!(d.partial_y, BiPoly::from_int_terms(&[(2, 0, 3)]));
    }

    #[test]
    fn general_plane_derivation() {
        let c = CurveModel::plane(BiPoly::from_int_terms(&[(1, 1, 1), (0, 0, -1)])).unwrap();
        let d = derivation_data(&c);
        assert_eq!(d.partial_x, BiPoly::x());
        assert_eq!(d.partial_y, BiPoly::y().neg());
        assert!(c.hyperelliptic_p().is_none());
    }

    #[test]
    fn plane_recognizes_hyperelliptic() {
        let f = BiPoly::from_int_terms(&[(0, 2, 1), (3, 0, -1), (0, 0, -1)]);
        let c = CurveModel::plane(f).unwrap();
        assert_eq!(c.hyperelliptic_p(), Some(&UniPoly::from_ints(&[1, 0, 0, 1])));
        let cusp = CurveModel::plane(BiPoly::from_int_terms(&[(0, 2, 1), (3, 0, -1)])).unwrap();
        assert!(cusp.hyperelliptic_p().is_none());
        assert!(CurveModel::hyperelliptic(UniPoly::from_ints(&[0, 0, 0, 1])).is_err());
        assert!(CurveModel::plane(BiPoly::one()).is_err());
    }

    #[test]
    fn collapsed_commutators_are_the_partials() {
        for c in [
            elliptic(),
            CurveModel::plane(BiPoly::from_int_terms(&[(1, 1, 1), (0, 0, -1)])).unwrap(),
            CurveModel::plane(BiPoly::from_int_terms(&[(2, 3, 2), (1, 1, -5), (4, 0, 1)])).unwrap(),
        ] {
            let d = derivation_data(&c);
            let zx = d.zx.iter().fold(BiPoly::zero(), |a, w| a.add(&w.collapse()));
            let zy = d.zy.iter().fold(BiPoly::zero(), |a, w| a.add(&w.collapse()));
            assert_eq!(zx, d.partial_x);
            assert_eq!(zy, d.partial_y);
        }
    }

    #[test]
    fn nu_values() {
        let nu = nu_kernel(&CurveModel::AffineLine);
        assert_eq!(nu.on_delta(), int(1));
        assert_eq!(nu.eval_at((&int(1), &int(0)), (&int(3), &int(0))), Some(frac(1, 2)));
        let nu = nu_kernel(&elliptic());
        // -F(x2, y1) / ((x2 - x1)(y2 - y1)) at (0,1), (2,3): F(2,1) = -8
        assert_eq!(nu.eval_at((&int(0), &int(1)), (&int(2), &int(3))), Some(int(2)));
        assert!(nu.describe().starts_with("-("));
    }

    #[test]
    fn smoothness_examples() {
        assert!(smoothness_check(&elliptic()).unwrap().smooth);
        let cusp = CurveModel::plane(BiPoly::from_int_terms(&[(0, 2, 1), (3, 0, -1)])).unwrap();
        let r = smoothness_check(&cusp).unwrap();
        assert!(!r.smooth);
        assert_eq!(r.point, Some((int(0), int(0))));
        let graph = CurveModel::plane(BiPoly::from_int_terms(&[(0, 1, 1), (2, 0, -1)])).unwrap();
        assert!(smoothness_check(&graph).unwrap().smooth);
        assert!(smoothness_check(&CurveModel::AffineLine).is_none());
    }
}
