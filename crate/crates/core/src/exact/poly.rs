use super::{binomial, int, Domain, Mat, Rational, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use std::fmt;

/// Dense univariate polynomial over ℚ, coefficients lowest degree first.
///
/// The variable is implicit: the surrounding context (a matrix factor, a
/// curve coordinate, a series parameter) says what it stands for.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn var() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - a`
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let lc = self.leading().recip();
        self.scale(&lc)
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Largest `k` with `x^k | self` (0 for the zero polynomial).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count().min(self.coeffs.len())
    }

    /// Removes every factor of `x`.
    pub fn strip_x(&self) -> Self {
        let v = self.x_valuation();
        Self::new(self.coeffs[v.min(self.coeffs.len())..].to_vec())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.coeffs.is_empty(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lc_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.coeffs.is_empty() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// `p(m)` for a square matrix `m`.
    pub fn eval_matrix<R: Ring>(&self, m: &Mat<R>) -> Mat<R> {
        let n = m.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Mat::identity(n).scale(&R::from_rational(c)));
        }
        acc
    }

    /// Substitution `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }

    /// Taylor shift `self(x + a)`.
    pub fn shift_arg(&self, a: &Rational) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut apow = Rational::one();
            for j in (0..=k).rev() {
                out[j] += c * binomial(k as u32, j as u32) * &apow;
                apow *= a;
            }
        }
        Self::new(out)
    }

    /// All rational roots, without multiplicity, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.coeffs.is_empty() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.x_valuation() > 0 {
            roots.push(Rational::zero());
            p = p.strip_x();
        }
        if p.is_constant() {
            return roots;
        }
        // the squarefree part has the same roots and smaller coefficients
        p = p.divrem(&p.gcd(&p.derivative())).0;
        // clear denominators, then candidates are ±(d | a0)/(d | an)
        let l = super::denominator_lcm(p.coeffs.iter());
        let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let small = |b: &BigInt| b <= &BigInt::from(1_000_000u64);
        if !small(&a0) || !small(&an) {
            return roots;
        }
        let divisors = |m: &BigInt| -> Vec<BigInt> {
            let mut ds = Vec::new();
            let mut d = BigInt::from(1);
            while &d * &d <= *m {
                if num_traits::Zero::is_zero(&(m % &d)) {
                    ds.push(d.clone());
                    ds.push(m / &d);
                }
                d += 1;
            }
            ds
        };
        for num in divisors(&a0) {
            for den in divisors(&an) {
                for sign in [1, -1] {
                    let r = Rational::new(&num * sign, den.clone());
                    if p.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = super::format_rational(c);
            let term = match (i, c.is_one()) {
                (0, _) => cs,
                (1, true) => var.to_string(),
                (1, false) => format!("{cs}*{var}"),
                (_, true) => format!("{var}^{i}"),
                (_, false) => format!("{cs}*{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    /// Content-free integer version (positive leading coefficient); used to
    /// make gcd-like witnesses presentable.
    pub fn primitive(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let l = super::denominator_lcm(self.coeffs.iter());
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::from(0), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        Self::new(ints.into_iter().map(|c| Rational::from_integer(c * sign / &g)).collect())
    }
}

impl Ring for UniPoly {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}

impl Domain for UniPoly {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.coeffs.is_empty() {
            return None;
        }
        let (q, r) = self.divrem(d);
        r.coeffs.is_empty().then_some(q)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.display_in("x"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}
