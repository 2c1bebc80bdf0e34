use super::{Domain, Field, Rational, Ring, UniPoly};
use std::fmt;

/// Element of ℚ(t) in canonical form: monic denominator, coprime parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Panics when `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.divrem(&g).0, den.divrem(&g).0);
        let lc = den.leading();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn var() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Polynomial part when the denominator is 1.
    pub fn as_poly(&self) -> Option<&UniPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }

    /// `None` at a pole.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    /// `t^k` for any integer `k`.
    pub fn var_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(UniPoly::monomial(Rational::one(), k as usize))
        } else {
            Self::new(UniPoly::one(), UniPoly::monomial(Rational::one(), (-k) as usize))
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.display_in(var)
        } else {
            format!("({})/({})", self.num.display_in(var), self.den.display_in(var))
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(UniPoly::constant(q.clone()))
    }
}

impl Domain for RatFunc {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.mul(&i))
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl From<UniPoly> for RatFunc {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int};

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn canonical_form() {
        // (2x^2 - 2) / (4x - 4) = (x + 1)/2
        let r = RatFunc::new(p(&[-2, 0, 2]), p(&[-4, 4]));
        assert_eq!(r.den(), &UniPoly::one());
        assert_eq!(r.num(), &UniPoly::new(vec![frac(1, 2), frac(1, 2)]));
        let s = RatFunc::new(p(&[1]), p(&[0, 3]));
        assert_eq!(s.den(), &p(&[0, 1]));
        assert_eq!(s.num(), &UniPoly::constant(frac(1, 3)));
    }

    #[test]
    fn normalization_idempotent() {
        let r = RatFunc::new(p(&[3, 3]), p(&[6, 0, -6]));
        let again = RatFunc::new(r.num().clone(), r.den().clone());
        assert_eq!(r, again);
    }

    #[test]
    fn quotient_rule() {
        // d/dx 1/x = -1/x^2
        let r = RatFunc::var_pow(-1);
        assert_eq!(r.derivative(), RatFunc::var_pow(-2).neg());
        assert_eq!(RatFunc::var_pow(-1).eval(&int(0)), None);
    }

    #[test]
    fn field_ops() {
        let a = RatFunc::new(p(&[1, 1]), p(&[-1, 1]));
        let inv = a.inv().unwrap();
        assert_eq!(a.mul(&inv), RatFunc::one());
        assert_eq!(a.sub(&a), RatFunc::zero());
    }
}
