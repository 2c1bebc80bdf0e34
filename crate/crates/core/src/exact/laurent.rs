use super::{Mat, MatrixError, RatFunc, Rational, Ring, UniPoly};

/// Laurent polynomial `x^shift * base(x)` with `base(0) != 0` (or zero).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    base: UniPoly,
    shift: i64,
}

impl LaurentPoly {
    pub fn new(p: UniPoly, shift: i64) -> Self {
        if p.is_zero() {
            return LaurentPoly { base: p, shift: 0 };
        }
        let v = p.x_valuation();
        LaurentPoly { base: p.strip_x(), shift: shift + v as i64 }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::new(p, 0)
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: i64) -> Self {
        Self::new(UniPoly::constant(c), k)
    }

    pub fn base(&self) -> &UniPoly {
        &self.base
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Lowest exponent present (0 for zero).
    pub fn min_exponent(&self) -> i64 {
        self.shift
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_poly(self.base.clone()).mul(&RatFunc::var_pow(self.shift))
    }

    /// Converts a rational function whose denominator is a power of `x`.
    pub fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        let d = r.den();
        let k = d.degree()?;
        if *d != UniPoly::monomial(Rational::one(), k) {
            return None;
        }
        Some(Self::new(r.num().clone(), -(k as i64)))
    }

    /// Evaluates at an invertible matrix.
    pub fn eval_matrix(&self, m: &Mat<Rational>) -> Result<Mat<Rational>, MatrixError> {
        let b = self.base.eval_matrix(m);
        let p = if self.shift >= 0 { m.pow(self.shift as u32) } else { m.inverse()?.pow((-self.shift) as u32) };
        Ok(b.mul(&p))
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly { base: UniPoly::zero(), shift: 0 }
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.base.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(other.shift);
        let a = self.base.shift_up((self.shift - lo) as usize);
        let b = other.base.shift_up((other.shift - lo) as usize);
        Self::new(a.add(&b), lo)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        Self::new(self.base.mul(&other.base), self.shift + other.shift)
    }
    fn neg(&self) -> Self {
        LaurentPoly { base: self.base.neg(), shift: self.shift }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(UniPoly::constant(q.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn normalizes_shift() {
        let l = LaurentPoly::new(UniPoly::from_ints(&[0, 0, 1, 1]), -3);
        assert_eq!(l.shift(), -1);
        assert_eq!(l.base(), &UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn ring_ops_match_ratfunc() {
        let a = LaurentPoly::new(UniPoly::from_ints(&[1, 2]), -2);
        let b = LaurentPoly::new(UniPoly::from_ints(&[3, 0, 1]), 1);
        assert_eq!(a.add(&b).to_ratfunc(), a.to_ratfunc().add(&b.to_ratfunc()));
        assert_eq!(a.mul(&b).to_ratfunc(), a.to_ratfunc().mul(&b.to_ratfunc()));
        assert_eq!(LaurentPoly::from_ratfunc(&a.to_ratfunc()), Some(a));
    }

    #[test]
    fn inverse_power_at_matrix() {
        let m = Mat::diag(&[int(2), int(4)]);
        let l = LaurentPoly::monomial(int(1), -1);
        let inv = l.eval_matrix(&m).unwrap();
        assert_eq!(inv.mul(&m), Mat::identity(2));
    }
}
