use super::{Domain, Mat, Ring};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("resultant of two zero polynomials")]
pub struct ZeroResultant;

/// Sylvester matrix of `p` and `q`, given by coefficient lists (lowest degree
/// first, trailing zeros already trimmed).
pub fn sylvester<R: Ring>(p: &[R], q: &[R]) -> Mat<R> {
    let m = p.len().saturating_sub(1);
    let n = q.len().saturating_sub(1);
    let size = m + n;
    let mut s = Mat::zeros(size, size);
    for i in 0..n {
        for (j, c) in p.iter().rev().enumerate() {
            s.set(i, i + j, c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in q.iter().rev().enumerate() {
            s.set(n + i, i + j, c.clone());
        }
    }
    s
}

/// Resultant of two polynomials over an integral domain, as the determinant of
/// their Sylvester matrix. A zero polynomial against a nonzero one gives 0.
pub fn resultant<R: Domain>(p: &[R], q: &[R]) -> Result<R, ZeroResultant> {
    match (p.is_empty(), q.is_empty()) {
        (true, true) => Err(ZeroResultant),
        (true, false) | (false, true) => Ok(R::zero()),
        _ => Ok(sylvester(p, q).det().expect("Sylvester matrix is square")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, UniPoly};

    #[test]
    fn common_root_gives_zero() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        let q = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(resultant(p.coeffs(), q.coeffs()).unwrap(), int(0));
    }

    #[test]
    fn product_of_root_differences() {
        // Res(x - a, x - b) = b - a in the Sylvester convention... with a=2, b=5
        let p = UniPoly::from_ints(&[-2, 1]);
        let q = UniPoly::from_ints(&[-5, 1]);
        assert_eq!(resultant(p.coeffs(), q.coeffs()).unwrap(), int(-3));
        // Res(x^2 + 1, x - 3) = 3^2 + 1 up to sign
        let r = resultant(UniPoly::from_ints(&[1, 0, 1]).coeffs(), UniPoly::from_ints(&[-3, 1]).coeffs());
        assert_eq!(r.unwrap(), int(10));
    }

    #[test]
    fn zero_inputs() {
        let z: [crate::exact::Rational; 0] = [];
        assert!(resultant(&z, &z).is_err());
    }
}
