//! Local model of operators on half-forms: kernels `φ(z₁, z₂)dz₂/(z₂ − z₁)^m`
//! acting by residue on the diagonal, and the invariance of the Szegő-type
//! kernel `dz₁^{1/2}dz₂^{1/2}/(z₁ − z₂)` under a change of coordinate.

use crate::exact::{binomial, int, BiPoly, Field, RatFunc, Rational, Ring, UniPoly};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SzegoError {
    #[error("pole order must be at least 1")]
    ZeroPoleOrder,
    #[error("expected pole order {expected}, got {got}")]
    PoleOrder { expected: u32, got: u32 },
    #[error("coordinate change {0} has w'(0) = 0")]
    NotInvertible(String),
}

/// `φ(z₁, z₂)·dz₂/(z₂ − z₁)^m`, with `z₁` stored as `x` and `z₂` as `y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalKernel {
    pub phi: BiPoly,
    pub pole_order: u32,
}

impl LocalKernel {
    pub fn new(phi: BiPoly, pole_order: u32) -> Result<Self, SzegoError> {
        if pole_order == 0 {
            return Err(SzegoError::ZeroPoleOrder);
        }
        Ok(LocalKernel { phi, pole_order })
    }

    /// `[tˡ] φ(z, z + t)` as a polynomial in `z`, for `l = 0..=top`.
    fn diagonal_expansion(&self, top: u32) -> Vec<UniPoly> {
        let mut out = vec![UniPoly::zero(); top as usize + 1];
        for (&(r, s), c) in self.phi.terms() {
            for l in 0..=s.min(top) {
                let term = UniPoly::monomial(c * binomial(s, l), (r + s - l) as usize);
                out[l as usize] = out[l as usize].add(&term);
            }
        }
        out
    }
}

/// `f·dz^{1/2} ↦ (a·f′ + b·f)·dz^{1/2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfFormOp {
    pub a: UniPoly,
    pub b: UniPoly,
}

impl HalfFormOp {
    pub fn apply(&self, f: &UniPoly) -> UniPoly {
        self.a.mul(&f.derivative()).add(&self.b.mul(f))
    }

    /// The kernel `φ = a(z₁) + b(z₁)(z₂ − z₁)` with a double pole.
    pub fn kernel(&self) -> LocalKernel {
        let a = BiPoly::from_x_poly(&self.a);
        let b = BiPoly::from_x_poly(&self.b);
        LocalKernel { phi: a.add(&b.mul(&BiPoly::y().sub(&BiPoly::x()))), pole_order: 2 }
    }
}

/// `[t^{m−1}] f(z + t)·φ(z, z + t)`: the residue at `z₂ = z₁` of
/// `f(z₂)·K`, as a polynomial in `z = z₁`.
pub fn residue_action(k: &LocalKernel, f: &UniPoly) -> UniPoly {
    let top = k.pole_order - 1;
    let phi = k.diagonal_expansion(top);
    // Taylor coefficients of f about z
    let mut taylor = Vec::with_capacity(top as usize + 1);
    let mut d = f.clone();
    let mut fact = Rational::one();
    for j in 0..=top {
        if j > 0 {
            d = d.derivative();
            fact *= int(j as i64);
        }
        taylor.push(d.scale(&fact.recip()));
    }
    (0..=top as usize).fold(UniPoly::zero(), |acc, j| acc.add(&taylor[j].mul(&phi[top as usize - j])))
}

pub fn extract_operator(k: &LocalKernel) -> Result<HalfFormOp, SzegoError> {
    if k.pole_order != 2 {
        return Err(SzegoError::PoleOrder { expected: 2, got: k.pole_order });
    }
    let mut e = k.diagonal_expansion(1).into_iter();
    Ok(HalfFormOp { a: e.next().unwrap(), b: e.next().unwrap() })
}

/// Truncated power series in `t` over `ℚ(z)`.
#[derive(Clone, PartialEq, Debug)]
struct Series(Vec<RatFunc>);

impl Series {
    fn mul(&self, o: &Series, n: usize) -> Series {
        let mut out = vec![RatFunc::zero(); n];
        for (i, a) in self.0.iter().enumerate().take(n) {
            for (j, b) in o.0.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Series(out)
    }

    fn inverse(&self, n: usize) -> Option<Series> {
        let c0 = self.0.first()?.inv()?;
        let mut out = vec![RatFunc::zero(); n];
        out[0] = c0.clone();
        for k in 1..n {
            let s = (1..=k.min(self.0.len() - 1)).fold(RatFunc::zero(), |acc, j| acc.add(&self.0[j].mul(&out[k - j])));
            out[k] = s.mul(&c0).neg();
        }
        Some(Series(out))
    }

    /// `√(1 + ε)` for `ε = self − 1` with no constant term, by the binomial
    /// series.
    fn sqrt_one_plus(&self, n: usize) -> Series {
        let mut eps = self.clone();
        eps.0[0] = RatFunc::zero();
        let mut out = Series(vec![RatFunc::zero(); n]);
        out.0[0] = RatFunc::one();
        let mut power = Series(vec![RatFunc::one()]);
        let mut coeff = Rational::one();
        let half = Rational::new(1.into(), 2.into());
        for j in 1..n {
            power = power.mul(&eps, n);
            coeff = coeff * (&half - int(j as i64 - 1)) / int(j as i64);
            for (i, c) in power.0.iter().enumerate() {
                out.0[i] = out.0[i].add(&c.scale(&coeff));
            }
        }
        out
    }
}

/// Taylor coefficients of `p(z + t)` in `t`, as functions of `z`.
fn shifted(p: &UniPoly, n: usize) -> Vec<RatFunc> {
    let mut out = Vec::with_capacity(n);
    let mut d = p.clone();
    let mut fact = Rational::one();
    for j in 0..n {
        if j > 0 {
            d = d.derivative();
            fact *= int(j as i64);
        }
        out.push(RatFunc::from_poly(d.scale(&fact.recip())));
    }
    out
}

/// Coefficients of `t⁰ … t^{order−1}` in
/// `√(w′(z₁)w′(z₂))·(z₁ − z₂)/(w(z₁) − w(z₂)) − 1` along `z₂ = z₁ + t`.
pub fn gamma_defect(w: &UniPoly, order: usize) -> Result<Vec<RatFunc>, SzegoError> {
    let dw = w.derivative();
    if dw.coeff(0).is_zero() {
        return Err(SzegoError::NotInvertible(w.display_in("z")));
    }
    let n = order.max(2);
    // w′(z₁ + t)/w′(z₁), so that √(w′(z₁)w′(z₂)) = w′(z₁)·√(that)
    let u = RatFunc::from_poly(dw.clone());
    let ui = u.inv().expect("nonzero derivative");
    let ratio = Series(shifted(&dw, n).into_iter().map(|c| c.mul(&ui)).collect());
    let s = ratio.sqrt_one_plus(n);
    // (w(z₁ + t) − w(z₁))/t
    let q = Series(shifted(w, n + 1).into_iter().skip(1).collect());
    let qi = q.inverse(n).expect("leading coefficient is w′");
    let mut out = Series(vec![u]).mul(&s, n).mul(&qi, n);
    out.0[0] = out.0[0].sub(&RatFunc::one());
    Ok(out.0)
}

/// Whether the transformed kernel agrees with `1/(z₁ − z₂)` up to terms
/// vanishing to second order on the diagonal.
pub fn gamma_skew_check(w: &UniPoly, order: usize) -> Result<bool, SzegoError> {
    let d = gamma_defect(w, order)?;
    Ok(d[0].is_zero() && d[1].is_zero())
}

pub const DEFAULT_ORDER: usize = 6;

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: usize) -> UniPoly {
        UniPoly::monomial(Rational::one(), k)
    }

    #[test]
    fn residue_examples() {
        let k = LocalKernel::new(BiPoly::one(), 2).unwrap();
        assert_eq!(residue_action(&k, &z(2)), z(1).scale(&int(2)));
        let id = LocalKernel::new(BiPoly::one(), 1).unwrap();
        let f = UniPoly::from_ints(&[3, 1, 4]);
        assert_eq!(residue_action(&id, &f), f);
        let diff = LocalKernel::new(BiPoly::y().sub(&BiPoly::x()), 2).unwrap();
        assert_eq!(residue_action(&diff, &f), f);
    }

    #[test]
    fn extraction_examples() {
        let op = |phi: BiPoly| extract_operator(&LocalKernel::new(phi, 2).unwrap()).unwrap();
        assert_eq!(op(BiPoly::one()), HalfFormOp { a: UniPoly::one(), b: UniPoly::zero() });
        assert_eq!(op(BiPoly::x()), HalfFormOp { a: z(1), b: UniPoly::zero() });
        assert_eq!(op(BiPoly::y()), HalfFormOp { a: z(1), b: UniPoly::one() });
        assert!(extract_operator(&LocalKernel::new(BiPoly::one(), 3).unwrap()).is_err());
        assert_eq!(LocalKernel::new(BiPoly::one(), 0), Err(SzegoError::ZeroPoleOrder));
    }

    #[test]
    fn gamma_examples() {
        assert!(gamma_skew_check(&z(1), DEFAULT_ORDER).unwrap());
        assert!(gamma_skew_check(&z(1).scale(&int(2)), DEFAULT_ORDER).unwrap());
        let w = UniPoly::from_ints(&[0, 1, 1]);
        assert!(gamma_skew_check(&w, DEFAULT_ORDER).unwrap());
        // the second-order term is the first that survives
        assert!(!gamma_defect(&w, DEFAULT_ORDER).unwrap()[2].is_zero());
        assert!(gamma_skew_check(&z(2), DEFAULT_ORDER).is_err());
    }
}
