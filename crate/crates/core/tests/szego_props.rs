use cmforge::exact::{frac, int, BiPoly, Field, RatFunc, Rational, Ring, UniPoly};
use cmforge::szego::{
    extract_operator, gamma_defect, gamma_skew_check, residue_action, HalfFormOp, LocalKernel, DEFAULT_ORDER,
};
use proptest::prelude::*;

/// `(1/(m−1)!)·∂^{m−1}_{z₂}[f(z₂)φ(z₁, z₂)]` at `z₂ = z₁`.
fn residue_oracle(k: &LocalKernel, f: &UniPoly) -> UniPoly {
    let mut g = BiPoly::from_y_poly(f).mul(&k.phi);
    let mut fact = Rational::one();
    for j in 1..k.pole_order {
        g = g.partial_y();
        fact *= int(j as i64);
    }
    let mut out = UniPoly::zero();
    for (&(r, s), c) in g.terms() {
        out = out.add(&UniPoly::monomial(c.clone(), (r + s) as usize));
    }
    out.scale(&fact.recip())
}

fn schwarzian_over_12(w: &UniPoly) -> RatFunc {
    let d1 = RatFunc::from_poly(w.derivative());
    let d2 = RatFunc::from_poly(w.derivative().derivative());
    let d3 = RatFunc::from_poly(w.derivative().derivative().derivative());
    let inv = d1.inv().unwrap();
    let r = d2.mul(&inv);
    d3.mul(&inv).sub(&r.mul(&r).scale(&frac(3, 2))).scale(&frac(1, 12))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=3).prop_map(|(a, b)| frac(a, b))
}

fn phi() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..=5, 0u32..=5), rational()), 0..8).prop_map(BiPoly::from_terms)
}

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(UniPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_matches_direct_differentiation(phi in phi(), m in 1u32..=4, f in poly(5)) {
        let k = LocalKernel::new(phi, m).unwrap();
        prop_assert_eq!(residue_action(&k, &f), residue_oracle(&k, &f));
    }

    #[test]
    fn double_pole_kernels_are_first_order_operators(phi in phi()) {
        let k = LocalKernel::new(phi, 2).unwrap();
        let op = extract_operator(&k).unwrap();
        for d in 0..=5 {
            let f = UniPoly::monomial(Rational::one(), d);
            prop_assert_eq!(residue_action(&k, &f), op.apply(&f));
        }
    }

    #[test]
    fn residue_is_linear(p1 in phi(), p2 in phi(), f in poly(5), g in poly(5), c in rational()) {
        let k1 = LocalKernel::new(p1.clone(), 2).unwrap();
        let k2 = LocalKernel::new(p2.clone(), 2).unwrap();
        let ks = LocalKernel::new(p1.add(&p2), 2).unwrap();
        prop_assert_eq!(residue_action(&ks, &f), residue_action(&k1, &f).add(&residue_action(&k2, &f)));
        let h = f.add(&g.scale(&c));
        prop_assert_eq!(residue_action(&k1, &h), residue_action(&k1, &f).add(&residue_action(&k1, &g).scale(&c)));
    }

    #[test]
    fn operator_kernel_round_trip(a in poly(4), b in poly(4)) {
        let op = HalfFormOp { a, b };
        prop_assert_eq!(extract_operator(&op.kernel()).unwrap(), op);
    }

    #[test]
    fn gamma_defect_starts_with_the_schwarzian(a in 1i64..=4, b in -3i64..=3, c in -2i64..=2) {
        let w = UniPoly::from_ints(&[0, a, b, c]);
        let d = gamma_defect(&w, DEFAULT_ORDER).unwrap();
        prop_assert!(d[0].is_zero() && d[1].is_zero());
        prop_assert_eq!(d[2].clone(), schwarzian_over_12(&w));
        prop_assert!(gamma_skew_check(&w, DEFAULT_ORDER).unwrap());
    }
}

#[test]
fn gamma_on_the_standard_changes() {
    for w in [UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[0, 2]), UniPoly::from_ints(&[0, 1, 1])] {
        assert!(gamma_skew_check(&w, DEFAULT_ORDER).unwrap());
    }
    // affine changes leave the kernel exactly invariant
    assert!(gamma_defect(&UniPoly::from_ints(&[3, 2]), DEFAULT_ORDER).unwrap().iter().all(|c| c.is_zero()));
    assert!(gamma_defect(&UniPoly::from_ints(&[0, 0, 1]), DEFAULT_ORDER).is_err());
}
