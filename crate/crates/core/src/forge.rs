//! From a Calogero-Moser point to generators of the corresponding fractional
//! ideal of the ring of differential operators.
//!
//! Every closed form involved is a sum of ordered products whose factors are
//! matrices over a one-variable function field in a single operator symbol.
//! Factors in the same symbol commute entrywise, so they can be multiplied
//! as ordinary matrices; different symbols are kept apart until
//! [`normal_order`] turns the product into a differential operator.

use crate::cmspace::{verify_relations, CMPoint, CmError};
use crate::curve::CurveModel;
use crate::diffop::{Coeff, CoeffRing, DiffOp, FractionalIdeal, IdealGenerator};
use crate::exact::{BiPoly, Mat, MatrixError, RatFunc, Rational, Ring, UniPoly};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForgeError {
    #[error(transparent)]
    Point(#[from] CmError),
    #[error("the point does not satisfy the relations: {0}")]
    Relations(String),
    #[error("no generator with index {0}")]
    Index(usize),
    #[error("singular matrix {0}")]
    Singular(String),
    #[error("term {term}, factor {factor}: entries are not polynomial in {symbol}")]
    ResidualDenominator { term: usize, factor: usize, symbol: Symbol },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Operator symbols: the two coordinate generators and the derivation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Symbol {
    X,
    Y,
    Z,
}

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::X => "x",
            Symbol::Y => "y",
            Symbol::Z => "z",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Factor {
    Scalar(Mat<Rational>),
    /// Matrix over `ℚ(symbol)`.
    Op {
        symbol: Symbol,
        mat: Mat<RatFunc>,
    },
    /// Right multiplication by an element of the coordinate ring (1×1).
    Element(BiPoly),
}

impl Factor {
    fn shape(&self) -> (usize, usize) {
        match self {
            Factor::Scalar(m) => (m.rows(), m.cols()),
            Factor::Op { mat, .. } => (mat.rows(), mat.cols()),
            Factor::Element(_) => (1, 1),
        }
    }

    pub fn display(&self) -> String {
        let rows = |m: Vec<Vec<String>>| {
            let r: Vec<String> = m.into_iter().map(|row| format!("[{}]", row.join(", "))).collect();
            format!("[{}]", r.join(", "))
        };
        match self {
            Factor::Scalar(m) => {
                rows(m.to_rows().iter().map(|r| r.iter().map(crate::exact::format_rational).collect()).collect())
            }
            Factor::Op { symbol, mat } => format!(
                "{}{}",
                symbol.name(),
                rows(mat.to_rows().iter().map(|r| r.iter().map(|e| e.display_in(symbol.name())).collect()).collect())
            ),
            Factor::Element(b) => format!("({b})"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Factor>,
}

/// A sum of ordered matrix products.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct OrderedProduct {
    pub terms: Vec<Term>,
}

impl OrderedProduct {
    pub fn zero() -> Self {
        OrderedProduct::default()
    }

    pub fn single(coeff: Rational, factors: Vec<Factor>) -> Self {
        OrderedProduct { terms: vec![Term { coeff, factors }] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(mut self, o: OrderedProduct) -> Self {
        self.terms.extend(o.terms);
        self
    }

    /// Prepends `f` to every term.
    pub fn left_mul(mut self, f: &Factor) -> Self {
        for t in &mut self.terms {
            t.factors.insert(0, f.clone());
        }
        self
    }

    /// Shape of the value, taken from the first term.
    pub fn shape(&self) -> Option<(usize, usize)> {
        let t = self.terms.first()?;
        Some((t.factors.first().map_or(1, |f| f.shape().0), t.factors.last().map_or(1, |f| f.shape().1)))
    }

    /// Merges adjacent factors in the same symbol and absorbs scalar
    /// matrices into a neighbour.
    pub fn coalesce(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut out: Vec<Factor> = Vec::new();
                for f in &t.factors {
                    let merged = match (out.last(), f) {
                        (Some(Factor::Scalar(a)), Factor::Scalar(b)) => Some(Factor::Scalar(a.mul(b))),
                        (Some(Factor::Op { symbol, mat }), Factor::Scalar(b)) => {
                            Some(Factor::Op { symbol: *symbol, mat: mat.mul(&lift(b)) })
                        }
                        (Some(Factor::Scalar(a)), Factor::Op { symbol, mat }) => {
                            Some(Factor::Op { symbol: *symbol, mat: lift(a).mul(mat) })
                        }
                        (Some(Factor::Op { symbol: s, mat: a }), Factor::Op { symbol, mat }) if s == symbol => {
                            Some(Factor::Op { symbol: *symbol, mat: a.mul(mat) })
                        }
                        _ => None,
                    };
                    match merged {
                        Some(m) => *out.last_mut().unwrap() = m,
                        None => out.push(f.clone()),
                    }
                }
                Term { coeff: t.coeff.clone(), factors: out }
            })
            .collect();
        OrderedProduct { terms }
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = crate::exact::format_rational(&t.coeff);
                for f in &t.factors {
                    s.push_str(" * ");
                    s.push_str(&f.display());
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

fn lift(m: &Mat<Rational>) -> Mat<RatFunc> {
    m.map(RatFunc::from_rational)
}

/// `M − t·Id` over `ℚ(t)`.
fn shifted(m: &Mat<Rational>) -> Mat<RatFunc> {
    lift(m).sub(&Mat::scalar(m.rows(), RatFunc::var()))
}

fn inverse(m: Mat<RatFunc>, what: &str) -> Result<Mat<RatFunc>, ForgeError> {
    m.inverse().map_err(|e: MatrixError| ForgeError::Singular(format!("{what}: {e}")))
}

/// `det(M − t·Id)` as a 1×1 factor in `symbol`.
fn det_factor(m: &Mat<Rational>, symbol: Symbol) -> Factor {
    let p: UniPoly = m.char_poly().expect("square");
    Factor::Op { symbol, mat: Mat::scalar(1, RatFunc::from_poly(p)) }
}

/// The ν kernel at the derivation generator with the transposed matrices
/// substituted, as a signed list of factors.
fn nu_factors(p: &CMPoint) -> Result<(Rational, Vec<Factor>), ForgeError> {
    let xt = p.x.transpose();
    let xinv = inverse(shifted(&xt), "X^t - x")?;
    let xf = Factor::Op { symbol: Symbol::X, mat: xinv };
    match &p.curve {
        CurveModel::AffineLine | CurveModel::Torus => Ok((Rational::one(), vec![xf])),
        CurveModel::PlaneCurve { f, hyperelliptic } => {
            let yt = p.y.as_ref().expect("checked").transpose();
            if hyperelliptic.is_some() {
                let yplus = lift(&yt).add(&Mat::scalar(p.n, RatFunc::var()));
                return Ok((Rational::one(), vec![xf, Factor::Op { symbol: Symbol::Y, mat: yplus }]));
            }
            // F(Xᵗ, y) = Σ_s (Σ_r a_rs (Xᵗ)^r) y^s
            let mut fy = Mat::zeros(p.n, p.n);
            for (&(r, s), c) in f.terms() {
                let coeff = lift(&xt.pow(r).scale(c));
                fy = fy.add(&coeff.scale(&RatFunc::var().pow(s)));
            }
            let yinv = inverse(shifted(&yt), "Y^t - y")?;
            Ok((-Rational::one(), vec![xf, Factor::Op { symbol: Symbol::Y, mat: yinv.mul(&fy) }]))
        }
    }
}

fn checked(p: &CMPoint) -> Result<(), ForgeError> {
    let report = verify_relations(p)?;
    if !report.pass {
        let failed: Vec<_> = report.relations.iter().filter(|r| !r.pass).map(|r| r.name.clone()).collect();
        return Err(ForgeError::Relations(failed.join(", ")));
    }
    Ok(())
}

/// `δ_V` on the derivation generator: the column `Σᵢ ν(z)·w̄ᵢᵗ·vᵢ`.
pub fn delta_v(p: &CMPoint) -> Result<OrderedProduct, ForgeError> {
    checked(p)?;
    if p.n == 0 {
        return Ok(OrderedProduct::zero());
    }
    let (sign, nu) = nu_factors(p)?;
    let mut out = OrderedProduct::zero();
    for (w, v) in p.ws.iter().zip(&p.ideal) {
        let mut fs = nu.clone();
        fs.push(Factor::Scalar(Mat::column(w.clone())));
        fs.push(Factor::Element(v.clone()));
        out = out.add(OrderedProduct::single(sign.clone(), fs));
    }
    Ok(out)
}

/// `δ_V` on the canonical double derivation: `Σᵢ w̄ᵢᵗ·vᵢ`, the ν kernel
/// being 1 there.
pub fn delta_v_on_delta(p: &CMPoint) -> Result<OrderedProduct, ForgeError> {
    checked(p)?;
    if p.n == 0 {
        return Ok(OrderedProduct::zero());
    }
    let nu = crate::curve::nu_kernel(&p.curve).on_delta();
    let mut out = OrderedProduct::zero();
    for (w, v) in p.ws.iter().zip(&p.ideal) {
        out = out.add(OrderedProduct::single(
            nu.clone(),
            vec![Factor::Scalar(Mat::column(w.clone())), Factor::Element(v.clone())],
        ));
    }
    Ok(out)
}

/// `κ(vᵢ) = vᵢ − v̄ᵢᵗ (Z̄ᵗ − z)⁻¹ δ_V(z)`.
#[derive(Clone, PartialEq, Debug)]
pub struct KappaElement {
    pub curve: CurveModel,
    pub index: usize,
    /// The leading term `vᵢ`.
    pub v: BiPoly,
    /// The correction, a 1×1 valued sum of ordered products.
    pub expression: OrderedProduct,
}

impl KappaElement {
    /// `κ` as a single sum, the leading term being a bare element factor.
    pub fn as_product(&self) -> OrderedProduct {
        OrderedProduct::single(Rational::one(), vec![Factor::Element(self.v.clone())]).add(self.expression.clone())
    }
}

pub fn kappa(p: &CMPoint, i: usize) -> Result<KappaElement, ForgeError> {
    if i >= p.ideal.len() {
        return Err(ForgeError::Index(i));
    }
    let delta = delta_v(p)?;
    let v = p.ideal[i].clone();
    if p.n == 0 {
        return Ok(KappaElement { curve: p.curve.clone(), index: i, v, expression: OrderedProduct::zero() });
    }
    let zinv = inverse(shifted(&p.z.transpose()), "Z^t - z")?;
    let mut expression = delta
        .left_mul(&Factor::Op { symbol: Symbol::Z, mat: zinv })
        .left_mul(&Factor::Scalar(Mat::row_vector(p.vs[i].clone())));
    for t in &mut expression.terms {
        t.coeff = -t.coeff.clone();
    }
    Ok(KappaElement { curve: p.curve.clone(), index: i, v, expression })
}

/// Turns an ordered product into a differential operator over `ring`.
/// After coalescing, every `z`-factor must be polynomial; `x`-factors
/// become multiplication operators and `y`-factors must be polynomial.
pub fn normal_order(expr: &OrderedProduct, ring: &CoeffRing) -> Result<DiffOp, ForgeError> {
    let ring = Arc::new(ring.clone());
    let mut acc = DiffOp::zero();
    for (ti, t) in expr.coalesce().terms.iter().enumerate() {
        let mut value: Option<Mat<DiffOp>> = None;
        for (fi, f) in t.factors.iter().enumerate() {
            let m = factor_ops(f, &ring).map_err(|e| match e {
                FactorError::Denominator(symbol) => ForgeError::ResidualDenominator { term: ti, factor: fi, symbol },
                FactorError::Other(e) => e,
            })?;
            value = Some(match value {
                None => m,
                Some(v) => v.mul(&m),
            });
        }
        let op = match value {
            None => DiffOp::one(),
            Some(v) => {
                if (v.rows(), v.cols()) != (1, 1) {
                    return Err(ForgeError::Unsupported(format!("product has shape {}x{}", v.rows(), v.cols())));
                }
                v.get(0, 0).clone()
            }
        };
        acc = acc.add(&DiffOp::constant(t.coeff.clone()).mul(&op));
    }
    // attach the ring even when the result is a constant
    Ok(DiffOp::mult(&ring, Coeff::zero()).add(&acc))
}

enum FactorError {
    Denominator(Symbol),
    Other(ForgeError),
}

fn factor_ops(f: &Factor, ring: &Arc<CoeffRing>) -> Result<Mat<DiffOp>, FactorError> {
    match f {
        Factor::Scalar(m) => Ok(m.map(|c| DiffOp::constant(c.clone()))),
        Factor::Element(b) => {
            let c = ring.from_bipoly(b).map_err(|e| FactorError::Other(ForgeError::Unsupported(e.to_string())))?;
            Ok(Mat::scalar(1, DiffOp::mult(ring, c)))
        }
        Factor::Op { symbol, mat } => {
            let mut entries = Vec::with_capacity(mat.entries().len());
            for e in mat.entries() {
                let op = match symbol {
                    Symbol::X => DiffOp::mult(ring, Coeff::from_x(e.clone())),
                    Symbol::Z => DiffOp::from_partial_poly(ring, e.as_poly().ok_or(FactorError::Denominator(*symbol))?),
                    Symbol::Y => {
                        let p = e.as_poly().ok_or(FactorError::Denominator(*symbol))?;
                        let c = ring
                            .from_bipoly(&BiPoly::from_y_poly(p))
                            .map_err(|e| FactorError::Other(ForgeError::Unsupported(e.to_string())))?;
                        DiffOp::mult(ring, c)
                    }
                };
                entries.push(op);
            }
            Ok(Mat::new(mat.rows(), mat.cols(), entries))
        }
    }
}

/// The generators `det(X̄ − x)·vᵢ`, `det(Ȳ − y)·vᵢ` (plane curves) and
/// `det(Z̄ − z)·κ(vᵢ)` for each generator `vᵢ` of `ℐ`, in that order.
/// They are normal-ordered on the line, the torus and hyperelliptic curves
/// and left symbolic on other plane curves. Generators are not normalized.
pub fn ideal_generators(p: &CMPoint) -> Result<FractionalIdeal, ForgeError> {
    checked(p)?;
    let ring = CoeffRing::for_curve(&p.curve);
    let mut generators = Vec::new();
    for (i, v) in p.ideal.iter().enumerate() {
        let mut products = vec![OrderedProduct::single(
            Rational::one(),
            vec![det_factor(&p.x, Symbol::X), Factor::Element(v.clone())],
        )];
        if let Some(y) = &p.y {
            products.push(OrderedProduct::single(
                Rational::one(),
                vec![det_factor(y, Symbol::Y), Factor::Element(v.clone())],
            ));
        }
        products.push(kappa(p, i)?.as_product().left_mul(&det_factor(&p.z, Symbol::Z)));
        for prod in products {
            generators.push(match &ring {
                Some(r) => IdealGenerator::Op(normal_order(&prod, r)?),
                None => IdealGenerator::Symbolic(prod.coalesce()),
            });
        }
    }
    Ok(FractionalIdeal { curve: p.curve.clone(), generators })
}
