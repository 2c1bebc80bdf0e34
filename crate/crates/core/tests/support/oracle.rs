//! Brute-force reference computations over ℚ, independent of the crate's
//! lattice and module code paths.

use cmforge::cmspace::BModule;
use cmforge::diffop::{CoeffRing, DiffOp, FractionalIdeal};
use cmforge::exact::{Mat, RatFunc, Rational, Ring, UniPoly};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Row space of ℚ-vectors kept in echelon form keyed by pivot column.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Vec<Rational>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<Rational>) {
        let mut i = 0;
        while i < v.len() {
            if v[i].is_zero() {
                i += 1;
                continue;
            }
            match self.rows.get(&i) {
                Some(row) => {
                    let c = v[i].clone();
                    for (a, b) in v[i..].iter_mut().zip(&row[i..]) {
                        if !b.is_zero() {
                            *a -= &c * b;
                        }
                    }
                }
                None => {
                    let c = v[i].recip();
                    for a in v[i..].iter_mut() {
                        *a *= &c;
                    }
                    self.rows.insert(i, v);
                    return;
                }
            }
            i += 1;
        }
    }
}

fn poly_mod(p: &UniPoly, f: &UniPoly) -> UniPoly {
    p.divrem(f).1
}

fn lcm(a: &UniPoly, b: &UniPoly) -> UniPoly {
    a.mul(b).divrem(&a.gcd(b)).0.monic()
}

/// Splits `f` into pairwise coprime factors: one power of `x − a` per
/// rational root `a` and the remaining cofactor.
fn coprime_parts(f: &UniPoly) -> Vec<UniPoly> {
    let mut rest = f.clone();
    let mut parts = Vec::new();
    let squarefree = f.divrem(&f.gcd(&f.derivative())).0;
    for a in squarefree.rational_roots() {
        let lin = UniPoly::linear_root(&a);
        let mut part = UniPoly::one();
        loop {
            let (q, r) = rest.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            rest = q;
            part = part.mul(&lin);
        }
        parts.push(part);
    }
    if !rest.is_constant() {
        parts.push(rest);
    }
    parts
}

/// Rank of the ℚ-span of `{xʲ·r mod f : j < deg f}` for the given
/// polynomial rows of length `width`, summed over a coprime splitting of
/// `f`.
fn span_rank_mod(rows: &[Vec<UniPoly>], f: &UniPoly, width: usize) -> usize {
    coprime_parts(f).iter().map(|g| span_rank_mod_part(rows, g, width)).sum()
}

fn span_rank_mod_part(rows: &[Vec<UniPoly>], f: &UniPoly, width: usize) -> usize {
    let d = f.degree().unwrap();
    let mut ech = Echelon::default();
    let x = UniPoly::var();
    for r in rows {
        let mut cur: Vec<UniPoly> = r.iter().map(|c| poly_mod(c, f)).collect();
        for _ in 0..d {
            let mut v = vec![Rational::zero(); width * d];
            for (i, c) in cur.iter().enumerate() {
                for (e, a) in c.coeffs().iter().enumerate() {
                    v[i * d + e] = a.clone();
                }
            }
            ech.insert(v);
            cur = cur.iter().map(|c| poly_mod(&c.mul(&x), f)).collect();
        }
    }
    ech.rank()
}

/// The operators `∂ˢ·g` spanning the `k`-th filtration piece, as rational
/// coefficient vectors of `1, ∂, …, ∂ᵏ`.
fn filtration_rows(ring: &Arc<CoeffRing>, ops: &[DiffOp], k: usize) -> Vec<Vec<RatFunc>> {
    let d = DiffOp::partial(ring);
    let mut out = Vec::new();
    for g in ops {
        let ord = g.order().unwrap();
        if ord > k {
            continue;
        }
        let mut cur = g.clone();
        for _ in 0..=k - ord {
            let mut row = vec![RatFunc::zero(); k + 1];
            for (i, c) in cur.coeffs().iter().enumerate() {
                assert!(c.b.is_zero());
                row[i] = c.a.clone();
            }
            out.push(row);
            cur = d.mul(&cur);
        }
    }
    out
}

/// Index `dim D_k/(D_k ∩ M) − dim M/(D_k ∩ M)` of `M = Σ D_{k−ord g}·g`,
/// by plain ℚ-linear algebra in `D_k/f·D_k` for a large enough modulus
/// `f`. Needs a nonzero order-0 generator.
pub fn brute_codim(ideal: &FractionalIdeal, k: usize) -> i64 {
    let ops = ideal.ops().expect("operator generators");
    let ring = ops.iter().find_map(|o| o.ring().cloned()).expect("ring");
    let torus = *ring == CoeffRing::Torus;
    let strip = |p: &UniPoly| if torus { p.strip_x() } else { p.clone() };
    let function = ops.iter().find(|o| o.order() == Ok(0)).expect("order-0 generator");
    let c = &function.coeffs()[0].a;
    let p0 = strip(c.num()).monic();
    assert!(strip(c.den()).is_constant());

    let rows = filtration_rows(&ring, &ops, k);
    let den = rows.iter().flatten().fold(UniPoly::one(), |acc, c| lcm(&acc, c.den()));
    let clear = |rows: &[Vec<RatFunc>]| -> Vec<Vec<UniPoly>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        let q = c.mul(&RatFunc::from_poly(den.clone()));
                        q.as_poly().expect("cleared").clone()
                    })
                    .collect()
            })
            .collect()
    };
    let core = strip(&den);
    let f = core.mul(&p0.pow(k as u32 + 1));
    let width = k + 1;
    let rank_m = span_rank_mod(&clear(&rows), &f, width);

    let base = DiffOp::mult(&ring, cmforge::diffop::Coeff::from_x(RatFunc::from_poly(p0.clone())));
    let l_rows = filtration_rows(&ring, &[base], k);
    let rank_l = span_rank_mod(&clear(&l_rows), &f, width);
    let deg = |p: &UniPoly| p.degree().unwrap() as i64;
    let (w, df) = (width as i64, deg(&f));
    // f·D_k lies in den·L exactly when den·L has the expected codimension
    assert_eq!(rank_l as i64, w * (df - deg(&core) - deg(&p0)), "modulus too small");
    w * deg(&p0) - (rank_m as i64 - rank_l as i64)
}

/// `(dim Hom, dim Ext¹)` between representations of the quiver with one
/// loop per action at the finite vertex and one arrow from the vertex at
/// infinity, from the standard two-term complex
/// `⊕_vertices Hom(U_i, V_i) → ⊕_arrows Hom(U_s, V_t)`.
pub fn quiver_hom_ext(u: &BModule, v: &BModule) -> (usize, usize) {
    let (un, ui, vn, vi) = (u.n, u.n_inf, v.n, v.n_inf);
    let vertex_vars = vn * un + vi * ui;
    let arrow_dim = u.actions.len() * vn * un + vn * ui;
    // columns indexed by the vertex variables
    let mut columns = Vec::with_capacity(vertex_vars);
    for idx in 0..vertex_vars {
        let (f, f_inf) = if idx < vn * un {
            let mut f = Mat::<Rational>::zeros(vn, un);
            f.set(idx / un, idx % un, Rational::one());
            (f, Mat::zeros(vi, ui))
        } else {
            let j = idx - vn * un;
            let mut g = Mat::<Rational>::zeros(vi, ui);
            g.set(j / ui, j % ui, Rational::one());
            (Mat::zeros(vn, un), g)
        };
        let mut col = Vec::with_capacity(arrow_dim);
        for (au, av) in u.actions.iter().zip(&v.actions) {
            col.extend(f.mul(au).sub(&av.mul(&f)).entries().iter().cloned());
        }
        col.extend(f.mul(&u.phi).sub(&v.phi.mul(&f_inf)).entries().iter().cloned());
        columns.push(col);
    }
    let rank = if vertex_vars == 0 || arrow_dim == 0 { 0 } else { Mat::from_rows(columns).rank() };
    (vertex_vars - rank, arrow_dim - rank)
}
