//! Normal-form differential operators `Σ cᵢ ∂ⁱ` (coefficients on the left)
//! over the line, the torus and hyperelliptic curves, with coefficients
//! allowed a denominator in `x`.

use crate::curve::CurveModel;
use crate::exact::{binomial, BiPoly, Field, RatFunc, Rational, Ring, UniPoly};
use crate::forge::OrderedProduct;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffOpError {
    #[error("the zero operator has no order")]
    ZeroOperator,
    #[error("operation not supported for {0}")]
    Unsupported(String),
    #[error("element {0} does not lie in the coefficient ring")]
    NotInRing(String),
}

/// Coefficient ring of the operators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CoeffRing {
    Line,
    Torus,
    /// `ℚ[x, y]/(y² − P)`, elements stored as `a + b·y`.
    Hyperelliptic {
        p: UniPoly,
    },
}

impl CoeffRing {
    /// `None` for plane curves that are not hyperelliptic.
    pub fn for_curve(c: &CurveModel) -> Option<Self> {
        match c {
            CurveModel::AffineLine => Some(CoeffRing::Line),
            CurveModel::Torus => Some(CoeffRing::Torus),
            CurveModel::PlaneCurve { hyperelliptic: Some(p), .. } => Some(CoeffRing::Hyperelliptic { p: p.clone() }),
            CurveModel::PlaneCurve { .. } => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CoeffRing::Line => "AffineLine",
            CoeffRing::Torus => "Torus",
            CoeffRing::Hyperelliptic { .. } => "hyperelliptic curve",
        }
    }

    pub fn mul(&self, u: &Coeff, v: &Coeff) -> Coeff {
        let a = u.a.mul(&v.a);
        let ab = u.a.mul(&v.b).add(&u.b.mul(&v.a));
        if u.b.is_zero() || v.b.is_zero() {
            return Coeff { a, b: ab };
        }
        let p = self.p().expect("y-part outside the hyperelliptic ring");
        Coeff { a: a.add(&u.b.mul(&v.b).mul(&p)), b: ab }
    }

    fn p(&self) -> Option<RatFunc> {
        match self {
            CoeffRing::Hyperelliptic { p } => Some(RatFunc::from_poly(p.clone())),
            _ => None,
        }
    }

    /// The derivation `∂`: `d/dx` on the line and torus, and on a hyperelliptic
    /// curve `∂(a + b·y) = (2P·b' + P'·b) + 2a'·y`.
    pub fn derive(&self, u: &Coeff) -> Coeff {
        match self {
            CoeffRing::Line | CoeffRing::Torus => Coeff::from_x(u.a.derivative()),
            CoeffRing::Hyperelliptic { p } => {
                let pr = RatFunc::from_poly(p.clone());
                let dp = RatFunc::from_poly(p.derivative());
                let two = RatFunc::from_int(2);
                let a = two.mul(&pr).mul(&u.b.derivative()).add(&dp.mul(&u.b));
                let b = two.mul(&u.a.derivative());
                Coeff { a, b }
            }
        }
    }

    /// Inverse in the localized ring, using `(a + by)⁻¹ = (a − by)/(a² − b²P)`.
    pub fn inv(&self, u: &Coeff) -> Option<Coeff> {
        if u.b.is_zero() {
            return u.a.inv().map(Coeff::from_x);
        }
        let p = self.p()?;
        let norm = u.a.mul(&u.a).sub(&u.b.mul(&u.b).mul(&p));
        let ni = norm.inv()?;
        Some(Coeff { a: u.a.mul(&ni), b: u.b.neg().mul(&ni) })
    }

    /// Image of a coordinate-ring polynomial, reducing `y²` to `P`.
    pub fn from_bipoly(&self, f: &BiPoly) -> Result<Coeff, DiffOpError> {
        match self {
            CoeffRing::Line | CoeffRing::Torus => {
                if f.deg_y().unwrap_or(0) > 0 {
                    return Err(DiffOpError::NotInRing(f.to_string()));
                }
                Ok(Coeff::from_x(RatFunc::from_poly(f.eval_y(&Rational::zero()))))
            }
            CoeffRing::Hyperelliptic { .. } => {
                let mut acc = Coeff::zero();
                let y = Coeff::y();
                for (s, c) in f.coeffs_in_y().into_iter().enumerate() {
                    let mut term = Coeff::from_x(RatFunc::from_poly(c));
                    for _ in 0..s {
                        term = self.mul(&term, &y);
                    }
                    acc = acc.add(&term);
                }
                Ok(acc)
            }
        }
    }

    /// Whether `u` lies in the (unlocalized) coordinate ring.
    pub fn is_regular(&self, u: &Coeff) -> bool {
        let ok = |r: &RatFunc| match self {
            CoeffRing::Torus => {
                let d = r.den();
                d.degree().is_some_and(|k| *d == UniPoly::monomial(Rational::one(), k))
            }
            _ => r.is_polynomial(),
        };
        ok(&u.a) && ok(&u.b)
    }
}

/// Element `a + b·y` of the (localized) coefficient ring; `b = 0` on the line
/// and torus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coeff {
    pub a: RatFunc,
    pub b: RatFunc,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { a: RatFunc::zero(), b: RatFunc::zero() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_x(RatFunc::from_rational(&c))
    }

    pub fn from_x(a: RatFunc) -> Self {
        Coeff { a, b: RatFunc::zero() }
    }

    pub fn x() -> Self {
        Self::from_x(RatFunc::var())
    }

    pub fn y() -> Self {
        Coeff { a: RatFunc::zero(), b: RatFunc::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Coeff { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Coeff { a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }

    pub fn neg(&self) -> Self {
        Coeff { a: self.a.neg(), b: self.b.neg() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Coeff { a: self.a.scale(c), b: self.b.scale(c) }
    }

    /// Monic lcm of the denominators of both parts.
    pub fn denominator(&self) -> UniPoly {
        lcm(self.a.den(), self.b.den())
    }

    pub fn display(&self) -> String {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => self.a.display_in("x"),
            (true, false) => format!("({})*y", self.b.display_in("x")),
            (false, false) => format!("{} + ({})*y", self.a.display_in("x"), self.b.display_in("x")),
        }
    }
}

pub(crate) fn lcm(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_zero() || b.is_zero() {
        return UniPoly::zero();
    }
    a.mul(b).divrem(&a.gcd(b)).0.monic()
}

/// Differential operator `Σ cᵢ ∂ⁱ` in normal form.
///
/// Operators built without a ring (such as `Ring::one()`) are constants that
/// combine with operators over any ring.
#[derive(Clone)]
pub struct DiffOp {
    ring: Option<Arc<CoeffRing>>,
    coeffs: Vec<Coeff>,
}

impl DiffOp {
    pub fn new(ring: &Arc<CoeffRing>, mut coeffs: Vec<Coeff>) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        DiffOp { ring: Some(ring.clone()), coeffs }
    }

    /// The order-0 operator "multiply by `c`".
    pub fn mult(ring: &Arc<CoeffRing>, c: Coeff) -> Self {
        Self::new(ring, vec![c])
    }

    pub fn constant(c: Rational) -> Self {
        let mut op = DiffOp { ring: None, coeffs: vec![Coeff::constant(c)] };
        op.trim();
        op
    }

    /// `∂`.
    pub fn partial(ring: &Arc<CoeffRing>) -> Self {
        Self::new(ring, vec![Coeff::zero(), Coeff::constant(Rational::one())])
    }

    pub fn x(ring: &Arc<CoeffRing>) -> Self {
        Self::mult(ring, Coeff::x())
    }

    pub fn y(ring: &Arc<CoeffRing>) -> Self {
        Self::mult(ring, Coeff::y())
    }

    /// `Σ cᵢ ∂ⁱ` with scalar coefficients: a polynomial in `∂`.
    pub fn from_partial_poly(ring: &Arc<CoeffRing>, p: &UniPoly) -> Self {
        Self::new(ring, p.coeffs().iter().map(|c| Coeff::constant(c.clone())).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Coeff::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> Option<&Arc<CoeffRing>> {
        self.ring.as_ref()
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Coeff {
        self.coeffs.get(i).cloned().unwrap_or_else(Coeff::zero)
    }

    fn join_ring(&self, o: &Self) -> Option<Arc<CoeffRing>> {
        match (&self.ring, &o.ring) {
            (Some(a), Some(b)) => {
                assert!(a == b, "operators over different coefficient rings");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    pub fn order(&self) -> Result<usize, DiffOpError> {
        self.coeffs.len().checked_sub(1).ok_or(DiffOpError::ZeroOperator)
    }

    pub fn principal_symbol(&self) -> Result<Coeff, DiffOpError> {
        self.coeffs.last().cloned().ok_or(DiffOpError::ZeroOperator)
    }

    /// `Σ cᵢ ∂ⁱ(f)`.
    pub fn apply(&self, f: &Coeff) -> Coeff {
        let Some(ring) = &self.ring else {
            return f.scale(&self.coeff(0).a.num().coeff(0));
        };
        let mut acc = Coeff::zero();
        let mut d = f.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                d = ring.derive(&d);
            }
            acc = acc.add(&ring.mul(c, &d));
        }
        acc
    }

    /// Whether every coefficient lies in the unlocalized coordinate ring.
    pub fn is_regular(&self) -> bool {
        match &self.ring {
            Some(r) => self.coeffs.iter().all(|c| r.is_regular(c)),
            None => true,
        }
    }

    /// Monic lcm of all coefficient denominators.
    pub fn common_denominator(&self) -> UniPoly {
        self.coeffs.iter().fold(UniPoly::one(), |acc, c| lcm(&acc, &c.denominator()))
    }

    /// `x^r · self · x^{-r}` (torus, or the line for `r ≥ 0` up to
    /// localization).
    pub fn conjugate_by_x_power(&self, r: i64) -> Self {
        let ring = self.ring.clone().unwrap_or_else(|| Arc::new(CoeffRing::Torus));
        let left = DiffOp::mult(&ring, Coeff::from_x(RatFunc::var_pow(r)));
        let right = DiffOp::mult(&ring, Coeff::from_x(RatFunc::var_pow(-r)));
        left.mul(self).mul(&right)
    }

    pub fn display(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.display();
            parts.push(match i {
                0 => format!("({cs})"),
                1 => format!("({cs})*d"),
                _ => format!("({cs})*d^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl PartialEq for DiffOp {
    fn eq(&self, o: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.ring, &o.ring) {
            if a != b {
                return false;
            }
        }
        self.coeffs == o.coeffs
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({})", self.display())
    }
}

/// Noncommutative: `mul` composes operators, `a.mul(b) = a ∘ b`.
impl Ring for DiffOp {
    fn zero() -> Self {
        DiffOp { ring: None, coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut op =
            DiffOp { ring: self.join_ring(o), coeffs: (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect() };
        op.trim();
        op
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return DiffOp { ring: self.join_ring(o), coeffs: Vec::new() };
        }
        let ring = self.join_ring(o);
        let Some(r) = &ring else {
            // both constant
            let c = self.coeff(0).a.mul(&o.coeff(0).a);
            return DiffOp { ring: None, coeffs: vec![Coeff::from_x(c)] };
        };
        let top = self.coeffs.len() - 1;
        // derivs[j][k] = ∂^k(o_j)
        let derivs: Vec<Vec<Coeff>> = o
            .coeffs
            .iter()
            .map(|b| {
                let mut ds = vec![b.clone()];
                for _ in 0..top {
                    let next = r.derive(ds.last().unwrap());
                    ds.push(next);
                }
                ds
            })
            .collect();
        let mut out = vec![Coeff::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, ds) in derivs.iter().enumerate() {
                for k in 0..=i {
                    if ds[k].is_zero() {
                        continue;
                    }
                    let term = r.mul(a, &ds[k]).scale(&binomial(i as u32, k as u32));
                    out[i - k + j] = out[i - k + j].add(&term);
                }
            }
        }
        DiffOp::new(r, out)
    }
    fn neg(&self) -> Self {
        DiffOp { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(Coeff::neg).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}

/// `D_k` as the free module `⟨1, ∂, …, ∂^k⟩` over the coefficient ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiltrationBasis {
    pub ring: CoeffRing,
    pub k: usize,
}

impl FiltrationBasis {
    pub fn rank(&self) -> usize {
        self.k + 1
    }
}

pub fn filtration_basis(ring: &CoeffRing, k: usize) -> Result<FiltrationBasis, DiffOpError> {
    match ring {
        CoeffRing::Line | CoeffRing::Torus => Ok(FiltrationBasis { ring: ring.clone(), k }),
        CoeffRing::Hyperelliptic { .. } => {
            Err(DiffOpError::Unsupported("filtration bases over a hyperelliptic coordinate ring (not a PID)".into()))
        }
    }
}

/// One generator of a fractional ideal.
#[derive(Clone, PartialEq, Debug)]
pub enum IdealGenerator {
    Op(DiffOp),
    /// Left unevaluated for plane curves without operator normal forms.
    Symbolic(OrderedProduct),
}

impl IdealGenerator {
    pub fn as_op(&self) -> Option<&DiffOp> {
        match self {
            IdealGenerator::Op(op) => Some(op),
            IdealGenerator::Symbolic(_) => None,
        }
    }
}

/// Left `𝒟`-submodule of the quotient field generated by finitely many
/// elements.
#[derive(Clone, PartialEq, Debug)]
pub struct FractionalIdeal {
    pub curve: CurveModel,
    pub generators: Vec<IdealGenerator>,
}

impl FractionalIdeal {
    /// All generators as operators, or `None` if some are symbolic.
    pub fn ops(&self) -> Option<Vec<DiffOp>> {
        self.generators.iter().map(|g| g.as_op().cloned()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn line() -> Arc<CoeffRing> {
        Arc::new(CoeffRing::Line)
    }

    fn elliptic() -> Arc<CoeffRing> {
        Arc::new(CoeffRing::Hyperelliptic { p: UniPoly::from_ints(&[1, 0, 0, 1]) })
    }

    fn xpow(k: i64) -> Coeff {
        Coeff::from_x(RatFunc::var_pow(k))
    }

    #[test]
    fn weyl_relation() {
        let r = line();
        let d = DiffOp::partial(&r);
        let x = DiffOp::x(&r);
        // ∂x = x∂ + 1
        assert_eq!(d.mul(&x), x.mul(&d).add(&DiffOp::one()));
        assert_eq!(x.mul(&d).coeffs(), &[Coeff::zero(), Coeff::x()]);
    }

    #[test]
    fn hyperelliptic_commutation() {
        let r = elliptic();
        let d = DiffOp::partial(&r);
        let y = DiffOp::y(&r);
        let expected = y.mul(&d).add(&DiffOp::mult(&r, xpow(2).scale(&int(3))));
        assert_eq!(d.mul(&y), expected);
        assert_eq!(d.apply(&Coeff::y()), xpow(2).scale(&int(3)));
        // y·y reduces to P
        assert_eq!(
            r.mul(&Coeff::y(), &Coeff::y()),
            Coeff::from_x(RatFunc::from_poly(UniPoly::from_ints(&[1, 0, 0, 1])))
        );
    }

    #[test]
    fn apply_examples() {
        let r = line();
        let d2 = DiffOp::partial(&r).pow(2);
        assert_eq!(d2.apply(&xpow(3)), xpow(1).scale(&int(6)));
        let op = DiffOp::x(&r).mul(&DiffOp::partial(&r)).add(&DiffOp::one());
        assert_eq!(op.apply(&xpow(1)), xpow(1).scale(&int(2)));
    }

    #[test]
    fn order_and_symbol() {
        let r = line();
        let op = DiffOp::x(&r).mul(&DiffOp::partial(&r).pow(3));
        assert_eq!(op.order(), Ok(3));
        assert_eq!(op.principal_symbol(), Ok(Coeff::x()));
        assert_eq!(DiffOp::zero().order(), Err(DiffOpError::ZeroOperator));
    }

    #[test]
    fn localized_coefficients() {
        let r = Arc::new(CoeffRing::Torus);
        let d = DiffOp::partial(&r);
        // ∂ · x⁻¹ = x⁻¹∂ − x⁻²
        let lhs = d.mul(&DiffOp::mult(&r, xpow(-1)));
        let rhs = DiffOp::new(&r, vec![xpow(-2).neg(), xpow(-1)]);
        assert_eq!(lhs, rhs);
        assert!(lhs.is_regular());
        // x ∂ x⁻¹ = ∂ − 1/x
        let c = d.conjugate_by_x_power(1);
        assert_eq!(c, DiffOp::new(&r, vec![xpow(-1).neg(), Coeff::constant(int(1))]));
    }

    #[test]
    fn hyperelliptic_inverse() {
        let r = elliptic();
        let u = Coeff::x().add(&Coeff::y());
        let inv = r.inv(&u).unwrap();
        assert_eq!(r.mul(&u, &inv), Coeff::constant(int(1)));
    }

    #[test]
    fn bipoly_images() {
        let r = elliptic();
        let f = BiPoly::from_int_terms(&[(0, 3, 1)]);
        // y³ = P·y
        let c = r.from_bipoly(&f).unwrap();
        assert_eq!(c.b, RatFunc::from_poly(UniPoly::from_ints(&[1, 0, 0, 1])));
        assert!(CoeffRing::Line.from_bipoly(&BiPoly::y()).is_err());
    }

    #[test]
    fn filtration_support() {
        assert_eq!(filtration_basis(&CoeffRing::Line, 3).unwrap().rank(), 4);
        assert!(filtration_basis(&elliptic(), 1).is_err());
    }
}
