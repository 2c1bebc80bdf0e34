use super::{Rational, Ring};

/// Dual number `a + b·ε` with `ε² = 0`, used for exact first-order
/// linearization of polynomial equations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dual<R> {
    pub re: R,
    pub eps: R,
}

impl<R: Ring> Dual<R> {
    pub fn new(re: R, eps: R) -> Self {
        Dual { re, eps }
    }

    pub fn constant(re: R) -> Self {
        Dual { re, eps: R::zero() }
    }
}

impl<R: Ring> Ring for Dual<R> {
    fn zero() -> Self {
        Self::constant(R::zero())
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Dual { re: self.re.add(&o.re), eps: self.eps.add(&o.eps) }
    }
    fn sub(&self, o: &Self) -> Self {
        Dual { re: self.re.sub(&o.re), eps: self.eps.sub(&o.eps) }
    }
    fn mul(&self, o: &Self) -> Self {
        Dual { re: self.re.mul(&o.re), eps: self.re.mul(&o.eps).add(&self.eps.mul(&o.re)) }
    }
    fn neg(&self) -> Self {
        Dual { re: self.re.neg(), eps: self.eps.neg() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn derivative_of_cube() {
        // d/dx x^3 at x = 2 is 12
        let x = Dual::new(int(2), int(1));
        let c = x.pow(3);
        assert_eq!(c.re, int(8));
        assert_eq!(c.eps, int(12));
    }
}
