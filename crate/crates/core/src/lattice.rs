//! Modules over `ℚ[x]` (or `ℚ[x, x⁻¹]`) cut out by ideals of differential
//! operators at a fixed order bound: Hermite normal form, spans of
//! generators inside `D_k = ⟨1, ∂, …, ∂^k⟩` and their codimension.

use crate::curve::CurveModel;
use crate::diffop::{lcm, CoeffRing, DiffOp, FractionalIdeal};
use crate::exact::{denominator_lcm, int, LaurentPoly, Mat, RatFunc, Rational, Ring, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size mismatch: {0}")]
    Size(String),
}

/// Row-style Hermite normal form over `ℚ[x]`: returns `(H, U)` with
/// `U·m = H`, `U` invertible over `ℚ[x]`, `H` in row echelon form with monic
/// pivots and every entry above a pivot of lower degree than the pivot.
pub fn hnf(m: &Mat<UniPoly>) -> (Mat<UniPoly>, Mat<UniPoly>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let mut u = Mat::<UniPoly>::identity(rows).to_rows();
    let sub_row = |a: &mut Vec<Vec<UniPoly>>, i: usize, r: usize, q: &UniPoly| {
        for j in 0..a[i].len() {
            let t = a[r][j].mul(q);
            a[i][j] = a[i][j].sub(&t);
        }
    };
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].degree());
            let Some(p) = best else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let (q, rem) = a[i][c].divrem(&a[r][c]);
                sub_row(&mut a, i, r, &q);
                sub_row(&mut u, i, r, &q);
                done &= rem.is_zero();
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        let lead = UniPoly::constant(a[r][c].leading().recip());
        for row in [&mut a[r], &mut u[r]] {
            for e in row.iter_mut() {
                *e = e.mul(&lead);
            }
        }
        for i in 0..r {
            if a[i][c].is_zero() {
                continue;
            }
            let q = a[i][c].divrem(&a[r][c]).0;
            sub_row(&mut a, i, r, &q);
            sub_row(&mut u, i, r, &q);
        }
        r += 1;
    }
    (Mat::new(rows, cols, a.into_iter().flatten().collect()), Mat::new(rows, rows, u.into_iter().flatten().collect()))
}

/// `(column, entry)` of each nonzero row of an echelon matrix.
fn pivots(h: &Mat<UniPoly>) -> Vec<(usize, UniPoly)> {
    (0..h.rows())
        .filter_map(|i| h.row(i).iter().enumerate().find(|(_, e)| !e.is_zero()).map(|(c, e)| (c, e.clone())))
        .collect()
}

/// Rescales a row by a nonzero rational so that its coefficients are
/// coprime integers. Such a rescaling is a unit over `ℚ[x]`.
fn make_primitive(row: &mut [UniPoly]) {
    let cs: Vec<&Rational> = row.iter().flat_map(|e| e.coeffs()).collect();
    if cs.is_empty() {
        return;
    }
    let l = Rational::from_integer(denominator_lcm(cs.iter().copied()));
    let g = cs.iter().fold(BigInt::from(0), |acc, c| acc.gcd(&(*c * &l).to_integer()));
    let s = l / Rational::from_integer(g);
    if !s.is_one() {
        for e in row.iter_mut() {
            *e = e.scale(&s);
        }
    }
}

/// `row_i ← a·row_i − b·x^d·row_r` for rational `a`, `b`.
fn combine(rows: &mut [Vec<UniPoly>], i: usize, r: usize, a: &Rational, b: &UniPoly) {
    for j in 0..rows[i].len() {
        let t = rows[r][j].mul(b);
        rows[i][j] = rows[i][j].scale(a).sub(&t);
    }
}

/// Triangular basis of the row span over `ℚ[x]`, zero rows dropped. Rows
/// are kept primitive, which keeps the integers small; pivots are not
/// normalized and entries above them are not reduced.
pub fn echelon(rows: Vec<Vec<UniPoly>>, cols: usize) -> Mat<UniPoly> {
    let mut a: Vec<Vec<UniPoly>> = rows.into_iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect();
    for row in a.iter_mut() {
        make_primitive(row);
    }
    let mut r = 0;
    for c in 0..cols {
        loop {
            let best = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].degree());
            let Some(p) = best else { break };
            a.swap(r, p);
            let dp = a[r][c].degree().unwrap();
            let lp = a[r][c].leading();
            let mut done = true;
            for i in r + 1..a.len() {
                while let Some(di) = a[i][c].degree().filter(|&d| d >= dp) {
                    let b = UniPoly::monomial(a[i][c].leading(), di - dp);
                    combine(&mut a, i, r, &lp, &b);
                    make_primitive(&mut a[i]);
                }
                make_primitive(&mut a[i]);
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            r += 1;
        }
        a.retain(|row| row.iter().any(|e| !e.is_zero()));
    }
    let n = a.len();
    Mat::new(n, cols, a.into_iter().flatten().collect())
}

/// The `ℚ[x]`-span of the operators `∂^s·gⱼ` (`s ≤ k − ord gⱼ`) inside
/// `D_k ⊗ ℚ(x)`, in coefficients of `1, ∂, …, ∂^k`; over `ℚ[x, x⁻¹]` on the
/// torus.
#[derive(Clone, Debug)]
pub struct FiltrationModule {
    pub k: usize,
    pub torus: bool,
    rows: Vec<ClearedOp>,
    /// Some spanning operator is a nonzero function, which makes the span
    /// of full rank.
    has_function: bool,
}

/// Triangular basis of a span after clearing a common denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct ClearedSpan {
    pub denominator: UniPoly,
    pub rows: Mat<UniPoly>,
}

impl FiltrationModule {
    fn cols(&self) -> usize {
        self.k + 1
    }

    /// The spanning operators as `(numerators, denominator)`.
    pub fn generators(&self) -> Vec<(Vec<UniPoly>, UniPoly)> {
        self.rows.iter().map(|r| (r.num.clone(), r.den.clone())).collect()
    }

    /// Clears the common denominator and row-reduces over `ℚ[x]`. Exact but
    /// slow for large `k`.
    pub fn cleared(&self) -> ClearedSpan {
        let denominator = self.rows.iter().fold(UniPoly::one(), |acc, r| lcm(&acc, &r.den));
        let cleared: Vec<Vec<UniPoly>> = self
            .rows
            .iter()
            .map(|r| {
                let f = denominator.divrem(&r.den).0;
                (0..self.cols()).map(|i| r.num.get(i).map_or(UniPoly::zero(), |c| c.mul(&f))).collect()
            })
            .collect();
        ClearedSpan { denominator, rows: echelon(cleared, self.cols()) }
    }

    pub fn is_full_rank(&self) -> bool {
        self.has_function || self.cleared().rows.rows() == self.cols()
    }

    fn degree(&self, p: &UniPoly) -> i64 {
        let p = if self.torus { p.strip_x() } else { p.clone() };
        p.degree().unwrap_or(0) as i64
    }

    /// Signed index of the module relative to `D_k`:
    /// `dim D_k/(D_k ∩ M) − dim M/(D_k ∩ M)`, defined for full rank.
    pub fn codim(&self) -> Option<i64> {
        if !self.is_full_rank() {
            return None;
        }
        if self.has_function {
            if let Some(c) = local_codim(&self.rows, self.cols(), self.torus) {
                return Some(c);
            }
        }
        Some(self.codim_global())
    }

    /// The same index from the pivot degrees of a global triangular basis.
    pub fn codim_global(&self) -> i64 {
        let span = self.cleared();
        let pivot_sum: i64 = pivots(&span.rows).iter().map(|(_, p)| self.degree(p)).sum();
        pivot_sum - (self.cols() as i64) * self.degree(&span.denominator)
    }

    /// Canonical Hermite form of the cleared span (over `ℚ[x]`).
    pub fn hermite(&self) -> ClearedSpan {
        let span = self.cleared();
        ClearedSpan { denominator: span.denominator, rows: hnf(&span.rows).0 }
    }

    fn with_rows(&self, extra: &[ClearedOp]) -> FiltrationModule {
        let mut m = self.clone();
        m.rows.extend(extra.iter().cloned());
        m
    }

    /// Whether the operator `(1/den)·Σ numᵢ ∂ⁱ` lies in the module.
    pub fn contains(&self, num: &[UniPoly], den: &UniPoly) -> bool {
        if num.len() > self.cols() {
            return false;
        }
        let op = ClearedOp { num: num.to_vec(), den: den.clone() };
        if self.has_function {
            if let (Some(a), Some(b)) = (self.codim(), self.with_rows(std::slice::from_ref(&op)).codim()) {
                return a == b;
            }
        }
        let span = self.cleared();
        let mut padded = num.to_vec();
        padded.resize(self.cols(), UniPoly::zero());
        span_contains(&span, &padded, den, self.torus)
    }
}

fn span_contains(span: &ClearedSpan, num: &[UniPoly], den: &UniPoly, laurent: bool) -> bool {
    let lift = |p: &UniPoly| LaurentPoly::from_poly(p.clone());
    // compare q·num with den·span
    let mut v: Vec<LaurentPoly> = num.iter().map(|e| lift(&e.mul(&span.denominator))).collect();
    for (i, (c, _)) in pivots(&span.rows).into_iter().enumerate() {
        if v[..c].iter().any(|e| !e.is_zero()) {
            return false;
        }
        let row: Vec<LaurentPoly> = span.rows.row(i).iter().map(|e| lift(&e.mul(den))).collect();
        let Some(t) = divide(&v[c], &row[c], laurent) else { return false };
        for (j, e) in row.iter().enumerate() {
            v[j] = v[j].sub(&t.mul(e));
        }
    }
    v.iter().all(LaurentPoly::is_zero)
}

/// Exact quotient in `ℚ[x]` (or `ℚ[x, x⁻¹]`).
fn divide(a: &LaurentPoly, b: &LaurentPoly, laurent: bool) -> Option<LaurentPoly> {
    let (q, r) = a.base().divrem(b.base());
    if !r.is_zero() {
        return None;
    }
    let t = LaurentPoly::new(q, a.shift() - b.shift());
    (laurent || t.shift() >= 0).then_some(t)
}

/// Rational roots of `p`, or `None` if `p` has an irreducible factor of
/// degree above one.
fn split_roots(p: &UniPoly) -> Option<Vec<Rational>> {
    let roots = p.rational_roots();
    let mut rest = p.clone();
    for a in &roots {
        let lin = UniPoly::linear_root(a);
        loop {
            let (q, r) = rest.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
    }
    rest.is_constant().then_some(roots)
}

/// Sum of local indices at the points where the span can differ from
/// `D_k`: the roots of the denominators and of a spanning function. `None`
/// when some of these points are not rational.
fn local_codim(rows: &[ClearedOp], cols: usize, torus: bool) -> Option<i64> {
    let mut support: Vec<Rational> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let function = rows.iter().find(|r| r.num.len() == 1)?;
    let polys = rows.iter().map(|r| &r.den).chain([&function.num[0]]);
    for p in polys {
        if !seen.insert(p.clone()) {
            continue;
        }
        for a in split_roots(p)? {
            if !support.contains(&a) {
                support.push(a);
            }
        }
    }
    let mut total = 0;
    for a in support {
        if torus && a.is_zero() {
            continue;
        }
        total += local_index(rows, cols, &a);
    }
    Some(total)
}

/// `[O^cols : span]` over the local ring `O` of `ℚ[x]` at `x = a`, computed
/// from truncated Laurent expansions in `t = x − a`.
fn local_index(rows: &[ClearedOp], cols: usize, a: &Rational) -> i64 {
    let mut n = 8;
    loop {
        if let Some(v) = local::smith_valuation_sum(rows, cols, a, n) {
            return v;
        }
        n *= 2;
    }
}

mod local {
    use super::ClearedOp;
    use crate::exact::{Rational, Ring, UniPoly};
    use std::collections::HashMap;

    /// `Σ cᵢ t^{lo+i}` modulo `t^prec`, where `lo + c.len() = prec`.
    #[derive(Clone)]
    struct Series {
        lo: i64,
        c: Vec<Rational>,
    }

    impl Series {
        fn valuation(&self) -> Option<i64> {
            self.c.iter().position(|x| !x.is_zero()).map(|i| self.lo + i as i64)
        }

        fn coeff(&self, e: i64) -> Rational {
            let i = e - self.lo;
            if i < 0 || i as usize >= self.c.len() {
                Rational::zero()
            } else {
                self.c[i as usize].clone()
            }
        }
    }

    /// Power series inverse of `u` (with `u(0) ≠ 0`) modulo `t^len`.
    fn inverse(u: &[Rational], len: usize) -> Vec<Rational> {
        let c0 = u[0].recip();
        let mut out = vec![Rational::zero(); len];
        if len == 0 {
            return out;
        }
        out[0] = c0.clone();
        for k in 1..len {
            let mut s = Rational::zero();
            for j in 1..=k.min(u.len() - 1) {
                if !u[j].is_zero() {
                    s += &u[j] * &out[k - j];
                }
            }
            out[k] = -(s * &c0);
        }
        out
    }

    /// `p(a + t) = t^v·u(t)` with `u(0) ≠ 0`.
    fn split(p: &UniPoly, a: &Rational) -> (i64, Vec<Rational>) {
        let s = p.shift_arg(a);
        let v = s.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
        (v as i64, s.coeffs()[v..].to_vec())
    }

    fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    /// Sum of the valuations of the elementary divisors of the span over
    /// `ℚ[[t]]`, or `None` if `prec` terms do not determine it.
    pub(super) fn smith_valuation_sum(rows: &[ClearedOp], cols: usize, a: &Rational, prec: i64) -> Option<i64> {
        let mut dens: HashMap<&UniPoly, (i64, Vec<Rational>)> = HashMap::new();
        for r in rows {
            dens.entry(&r.den).or_insert_with(|| split(&r.den, a));
        }
        let lo = -dens.values().map(|d| d.0).max().unwrap_or(0);
        let len = (prec - lo) as usize;
        // expansions of 1/u for each denominator
        let invs: HashMap<&UniPoly, (i64, Vec<Rational>)> =
            dens.iter().map(|(k, (v, u))| (*k, (*v, inverse(u, len)))).collect();
        let mut m: Vec<Vec<Series>> = rows
            .iter()
            .map(|r| {
                let (v, uinv) = &invs[&r.den];
                (0..cols)
                    .map(|j| {
                        let num = r.num.get(j).map(|p| p.shift_arg(a)).unwrap_or_else(UniPoly::zero);
                        // t^{-v}·num·u⁻¹, stored from exponent lo
                        let prod = mul_trunc(num.coeffs(), uinv, (prec + v) as usize);
                        let mut c = vec![Rational::zero(); len];
                        for (i, x) in prod.into_iter().enumerate() {
                            let e = i as i64 - v;
                            if e >= lo && e < prec {
                                c[(e - lo) as usize] = x;
                            }
                        }
                        Series { lo, c }
                    })
                    .collect()
            })
            .collect();

        let mut live_rows: Vec<usize> = (0..m.len()).collect();
        let mut live_cols: Vec<usize> = (0..cols).collect();
        let mut total = 0;
        while !live_cols.is_empty() {
            let mut best: Option<(i64, usize, usize)> = None;
            for &i in &live_rows {
                for &j in &live_cols {
                    if let Some(v) = m[i][j].valuation() {
                        if best.is_none_or(|b| v < b.0) {
                            best = Some((v, i, j));
                        }
                    }
                }
            }
            let (v, pi, pj) = best?;
            total += v;
            let pivot = &m[pi][pj];
            let unit: Vec<Rational> = (v..prec).map(|e| pivot.coeff(e)).collect();
            let uinv = inverse(&unit, (prec - v) as usize);
            let prow = m[pi].clone();
            for &i in &live_rows {
                if i == pi || m[i][pj].valuation().is_none() {
                    continue;
                }
                // ratio = e_{i,pj}/pivot, a power series known mod t^{prec − v}
                let shifted: Vec<Rational> = (v..prec).map(|e| m[i][pj].coeff(e)).collect();
                let ratio = mul_trunc(&shifted, &uinv, (prec - v) as usize);
                for &j in &live_cols {
                    let b = &prow[j];
                    let Some(vb) = b.valuation() else { continue };
                    let target = &mut m[i][j];
                    for (ri, r) in ratio.iter().enumerate() {
                        if r.is_zero() {
                            continue;
                        }
                        for e in vb..prec - ri as i64 {
                            let x = b.coeff(e);
                            if !x.is_zero() {
                                let idx = (e + ri as i64 - lo) as usize;
                                target.c[idx] -= r * x;
                            }
                        }
                    }
                }
            }
            live_rows.retain(|&i| i != pi);
            live_cols.retain(|&j| j != pj);
        }
        Some(total)
    }
}

fn ring_of(curve: &CurveModel) -> Result<Arc<CoeffRing>, LatticeError> {
    match curve {
        CurveModel::AffineLine => Ok(Arc::new(CoeffRing::Line)),
        CurveModel::Torus => Ok(Arc::new(CoeffRing::Torus)),
        CurveModel::PlaneCurve { .. } => {
            Err(LatticeError::Unsupported("filtration lattices need the line or the torus".into()))
        }
    }
}

/// An operator `(1/den)·Σ numᵢ ∂ⁱ` with polynomial numerators.
#[derive(Clone, Debug)]
struct ClearedOp {
    num: Vec<UniPoly>,
    den: UniPoly,
}

/// The operators `∂^s·g` for `s = 0..=top`, computed with polynomial
/// arithmetic only. With `D` the denominator of `g` and `r` its squarefree
/// part, `∂^s·g` has denominator `D·r^s`.
fn partial_shifts(g: &DiffOp, top: usize) -> Result<Vec<ClearedOp>, LatticeError> {
    if g.coeffs().iter().any(|c| !c.b.is_zero()) {
        return Err(LatticeError::Unsupported("coefficients involve y".into()));
    }
    let d = g.common_denominator();
    let qd = RatFunc::from_poly(d.clone());
    let mut num: Vec<UniPoly> = g.coeffs().iter().map(|c| c.a.mul(&qd).as_poly().expect("cleared").clone()).collect();
    let dd = d.derivative();
    let r = if dd.is_zero() { UniPoly::one() } else { d.divrem(&d.gcd(&dd)).0 };
    let h = dd.mul(&r).divrem(&d).0;
    let dr = r.derivative();
    let mut den = d;
    let mut out = Vec::with_capacity(top + 1);
    for s in 0..=top {
        out.push(ClearedOp { num: num.clone(), den: den.clone() });
        if s == top {
            break;
        }
        // (c/D_s)' = (c'·r − c·(h + s·r'))/(D_s·r)
        let hs = h.add(&dr.scale(&int(s as i64)));
        let mut next = vec![UniPoly::zero(); num.len() + 1];
        for (i, c) in num.iter().enumerate() {
            next[i] = next[i].add(&c.derivative().mul(&r).sub(&c.mul(&hs)));
            next[i + 1] = next[i + 1].add(&c.mul(&r));
        }
        while next.last().is_some_and(|e| e.is_zero()) {
            next.pop();
        }
        num = next;
        den = den.mul(&r);
    }
    Ok(out)
}

/// `Σⱼ D_{k − ord gⱼ}·gⱼ` as a module over the coefficient ring.
pub fn span_filtration(gens: &FractionalIdeal, k: usize) -> Result<FiltrationModule, LatticeError> {
    let ring = ring_of(&gens.curve)?;
    let ops = gens.ops().ok_or_else(|| LatticeError::Unsupported("symbolic generators".into()))?;
    span_ops(&ring, &ops, k)
}

pub(crate) fn span_ops(ring: &Arc<CoeffRing>, ops: &[DiffOp], k: usize) -> Result<FiltrationModule, LatticeError> {
    let torus = **ring == CoeffRing::Torus;
    let mut rows: Vec<ClearedOp> = Vec::new();
    let mut has_function = false;
    for g in ops {
        let Ok(ord) = g.order() else { continue };
        if ord <= k {
            has_function |= ord == 0;
            rows.extend(partial_shifts(g, k - ord)?);
        }
    }
    Ok(FiltrationModule { k, torus, rows, has_function })
}

/// Per-`k` codimensions and the stabilized value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodimReport {
    /// `(k, codim)`; `None` while the span is not of full rank.
    pub rows: Vec<(usize, Option<i64>)>,
    /// Set when the last three values agree.
    pub stabilized: Option<i64>,
}

/// `2n + (maximal generator order) + 2`.
pub fn default_kmax(n: usize, gens: &FractionalIdeal) -> usize {
    let max_order = gens.ops().map_or(0, |ops| ops.iter().filter_map(|o| o.order().ok()).max().unwrap_or(0));
    2 * n + max_order + 2
}

pub fn codim(gens: &FractionalIdeal, kmax: usize) -> Result<CodimReport, LatticeError> {
    let mut rows = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        rows.push((k, span_filtration(gens, k)?.codim()));
    }
    let stabilized = match rows.len() {
        n if n >= 3 => {
            let tail: Vec<_> = rows[n - 3..].iter().map(|r| r.1).collect();
            tail[0].filter(|_| tail.iter().all(|v| *v == tail[0]))
        }
        _ => None,
    };
    Ok(CodimReport { rows, stabilized })
}

/// Equality of the two spans. For full-rank spans this compares the index
/// of each with the index of their sum; otherwise it checks mutual
/// containment of triangular bases.
pub fn module_equal(a: &FiltrationModule, b: &FiltrationModule) -> Result<bool, LatticeError> {
    if a.k != b.k || a.torus != b.torus {
        return Err(LatticeError::Size(format!("k = {} vs k = {}", a.k, b.k)));
    }
    if let (Some(ia), Some(ib)) = (a.codim(), b.codim()) {
        let sum = a.with_rows(&b.rows);
        return Ok(ia == ib && sum.codim() == Some(ia));
    }
    let (sa, sb) = (a.cleared(), b.cleared());
    let inside = |p: &ClearedSpan, q: &ClearedSpan| {
        (0..p.rows.rows()).all(|i| span_contains(q, p.rows.row(i), &p.denominator, a.torus))
    };
    Ok(inside(&sa, &sb) && inside(&sb, &sa))
}
