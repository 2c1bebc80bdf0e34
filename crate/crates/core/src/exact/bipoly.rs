use super::{format_rational, int, is_negative, Mat, Rational, Ring, UniPoly};
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in two commuting variables, `Σ a_rs x^r y^s`, keyed by `(r, s)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    /// Zero coefficients are dropped; repeated exponents are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = BiPoly::default();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(r, s, c)| ((r, s), int(c))))
    }

    pub fn x() -> Self {
        Self::from_int_terms(&[(1, 0, 1)])
    }

    pub fn y() -> Self {
        Self::from_int_terms(&[(0, 1, 1)])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    /// `Σ c_i x^i`.
    pub fn from_x_poly(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
    }

    /// `Σ c_i y^i`.
    pub fn from_y_poly(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((0, i as u32), c.clone())))
    }

    fn add_term(&mut self, e: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, r: u32, s: u32) -> Rational {
        self.terms.get(&(r, s)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e.0 > 0).map(|(&(r, s), c)| ((r - 1, s), c * int(r as i64))))
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e.1 > 0).map(|(&(r, s), c)| ((r, s - 1), c * int(s as i64))))
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&(r, s), c)| acc + c * Ring::pow(x, r) * Ring::pow(y, s))
    }

    /// Swaps the roles of the two variables.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(r, s), c)| ((s, r), c.clone())))
    }

    /// Coefficients of the powers of `y`, each a polynomial in `x`.
    pub fn coeffs_in_y(&self) -> Vec<UniPoly> {
        let Some(d) = self.deg_y() else { return Vec::new() };
        let mut cs = vec![vec![Rational::zero(); 1 + self.deg_x().unwrap_or(0) as usize]; d as usize + 1];
        for (&(r, s), c) in &self.terms {
            cs[s as usize][r as usize] = c.clone();
        }
        cs.into_iter().map(UniPoly::new).collect()
    }

    /// Coefficients of the powers of `x`, each a polynomial in `y`.
    pub fn coeffs_in_x(&self) -> Vec<UniPoly> {
        self.swap_vars().coeffs_in_y()
    }

    /// `F(x0, y)` as a polynomial in `y`.
    pub fn eval_x(&self, x0: &Rational) -> UniPoly {
        let cs = self.coeffs_in_y();
        UniPoly::new(cs.iter().map(|c| c.eval(x0)).collect())
    }

    /// `F(x, y0)` as a polynomial in `x`.
    pub fn eval_y(&self, y0: &Rational) -> UniPoly {
        self.swap_vars().eval_x(y0)
    }

    /// `Σ a_rs X^r Y^s` for matrices over any ring; the order of the two
    /// factors matters only when `X` and `Y` do not commute.
    pub fn eval_matrices<R: Ring>(&self, x: &Mat<R>, y: &Mat<R>) -> Mat<R> {
        let n = x.rows();
        let mut acc = Mat::zeros(n, n);
        for (&(r, s), c) in &self.terms {
            let t = x.pow(r).mul(&y.pow(s)).scale(&R::from_rational(c));
            acc = acc.add(&t);
        }
        acc
    }

    pub fn display_in(&self, xv: &str, yv: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&(r, s), c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = Vec::new();
            for (v, e) in [(xv, r), (yv, s)] {
                match e {
                    0 => {}
                    1 => mono.push(v.to_string()),
                    _ => mono.push(format!("{v}^{e}")),
                }
            }
            if mono.is_empty() {
                out.push_str(&format_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&format_rational(&a));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl Ring for BiPoly {
    fn zero() -> Self {
        BiPoly::default()
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (&e, c) in &other.terms {
            p.add_term(e, c.clone());
        }
        p
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let mut p = BiPoly::default();
        for (&(r1, s1), a) in &self.terms {
            for (&(r2, s2), b) in &other.terms {
                p.add_term((r1 + r2, s1 + s2), a * b);
            }
        }
        p
    }
    fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self.display_in("x", "y"))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x", "y"))
    }
}
