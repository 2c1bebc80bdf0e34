//! Exact arithmetic kernel.
//!
//! Everything in this crate is computed over ℚ. The [`Ring`] trait is the
//! common vocabulary for matrices and determinants: every ring here is a
//! ℚ-algebra, so constants can always be injected with [`Ring::from_rational`].

mod bipoly;
mod dual;
mod laurent;
mod matrix;
mod poly;
mod ratfunc;
mod resultant;

pub use bipoly::BiPoly;
pub use dual::Dual;
pub use laurent::LaurentPoly;
pub use matrix::{Mat, MatrixError};
pub use poly::UniPoly;
pub use ratfunc::RatFunc;
pub use resultant::{resultant, sylvester, ZeroResultant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Commutative (unless stated otherwise) ℚ-algebra with exact arithmetic.
pub trait Ring: Sized + Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(i: i64) -> Self {
        Self::from_rational(&int(i))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Integral domain with exact division, as needed by Bareiss elimination.
pub trait Domain: Ring {
    /// `self / d` when `d` divides `self`, `None` otherwise (or when `d = 0`).
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

pub trait Field: Domain {
    fn inv(&self) -> Option<Self>;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Domain for Rational {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            None
        } else {
            Some(self / d)
        }
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn int(i: i64) -> Rational {
    Rational::from_integer(BigInt::from(i))
}

/// `num/den`; panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `"p/q"`, or `"p"` when it is an integer.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p/q"`, `"p"` or a plain decimal integer string.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return <Rational as Zero>::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Lowest common multiple of the denominators in `qs` (1 for an empty list).
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub(crate) fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}
