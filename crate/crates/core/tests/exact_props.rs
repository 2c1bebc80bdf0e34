use cmforge::exact::{
    format_rational, frac, int, parse_rational, resultant, BiPoly, Dual, Field, LaurentPoly, Mat, RatFunc, Rational,
    Ring, UniPoly,
};
use cmforge::lattice::hnf;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| frac(a, b))
}

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(UniPoly::new)
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn square(max_n: usize) -> impl Strategy<Value = Mat<Rational>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| Mat::new(n, n, v.into_iter().map(int).collect()))
    })
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..=3, 0u32..=3, -4i64..=4), 0..6).prop_map(|t| BiPoly::from_int_terms(&t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cayley_hamilton(m in square(4)) {
        let chi = m.char_poly().unwrap();
        prop_assert_eq!(chi.degree(), Some(m.rows()));
        prop_assert!(chi.eval_matrix(&m).is_zero());
        prop_assert_eq!(chi.eval(&int(0)), m.det().unwrap());
    }

    #[test]
    fn adjugate_identity(m in square(4)) {
        let det = m.det().unwrap();
        let adj = m.adjugate().unwrap();
        prop_assert_eq!(m.mul(&adj), Mat::scalar(m.rows(), det.clone()));
        prop_assert_eq!(adj.mul(&m), Mat::scalar(m.rows(), det.clone()));
        if !det.is_zero() {
            prop_assert_eq!(m.inverse().unwrap().mul(&m), Mat::identity(m.rows()));
        }
    }

    #[test]
    fn det_is_multiplicative(a in square(3), b in square(3)) {
        prop_assume!(a.rows() == b.rows());
        prop_assert_eq!(a.mul(&b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn rank_nullity(m in square(4)) {
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in kernel {
            prop_assert!(m.mul(&Mat::column(v)).is_zero());
        }
    }

    #[test]
    fn division_with_remainder(a in poly(6), d in nonzero_poly(3)) {
        let (q, r) = a.divrem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides(a in nonzero_poly(4), b in nonzero_poly(4), c in nonzero_poly(2)) {
        let (a, b) = (a.mul(&c), b.mul(&c));
        let g = a.gcd(&b);
        prop_assert!(a.divrem(&g).1.is_zero());
        prop_assert!(b.divrem(&g).1.is_zero());
        prop_assert!(g.divrem(&c.monic()).1.is_zero());
    }

    #[test]
    fn polynomial_ring_laws(a in poly(4), b in poly(4), c in poly(4), t in rational()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).eval(&t), a.eval(&t) * b.eval(&t));
        prop_assert_eq!(a.mul(&b).derivative(), a.derivative().mul(&b).add(&a.mul(&b.derivative())));
        prop_assert_eq!(a.compose(&b).eval(&t), a.eval(&b.eval(&t)));
    }

    #[test]
    fn rational_roots_are_roots(roots in prop::collection::vec(rational(), 1..4), extra in nonzero_poly(2)) {
        let p = roots.iter().fold(extra, |acc, r| acc.mul(&UniPoly::linear_root(r)));
        let found = p.rational_roots();
        for r in &roots {
            prop_assert!(found.contains(r));
        }
        for r in &found {
            prop_assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn ratfunc_field(a in nonzero_poly(3), b in nonzero_poly(3), c in nonzero_poly(2)) {
        let f = RatFunc::new(a.clone(), b.clone());
        let g = RatFunc::new(c.clone(), a.clone());
        prop_assert_eq!(f.mul(&f.inv().unwrap()), RatFunc::one());
        prop_assert_eq!(f.mul(&g).derivative(), f.derivative().mul(&g).add(&f.mul(&g.derivative())));
        // lowest terms with a monic denominator
        prop_assert!(f.num().gcd(f.den()).is_constant());
        prop_assert!(f.den().leading() == int(1));
    }

    #[test]
    fn resultant_detects_common_roots(a in nonzero_poly(3), b in nonzero_poly(3), r in rational()) {
        prop_assume!(a.degree().unwrap() > 0 && b.degree().unwrap() > 0);
        let lin = UniPoly::linear_root(&r);
        let shared = resultant(a.mul(&lin).coeffs(), b.mul(&lin).coeffs()).unwrap();
        prop_assert!(shared.is_zero());
        let res = resultant(a.coeffs(), b.coeffs()).unwrap();
        prop_assert_eq!(res.is_zero(), !a.gcd(&b).is_constant());
    }

    #[test]
    fn laurent_matches_ratfunc(a in poly(3), b in poly(3), s in -3i64..=3, t in -3i64..=3) {
        let (la, lb) = (LaurentPoly::new(a, s), LaurentPoly::new(b, t));
        prop_assert_eq!(la.add(&lb).to_ratfunc(), la.to_ratfunc().add(&lb.to_ratfunc()));
        prop_assert_eq!(la.mul(&lb).to_ratfunc(), la.to_ratfunc().mul(&lb.to_ratfunc()));
    }

    #[test]
    fn dual_numbers_differentiate(p in poly(5), t in rational()) {
        let x = Dual::new(t.clone(), int(1));
        let value = p.coeffs().iter().rev().fold(Dual::<Rational>::zero(), |acc, c| {
            acc.mul(&x).add(&Dual::constant(c.clone()))
        });
        prop_assert_eq!(value.re, p.eval(&t));
        prop_assert_eq!(value.eps, p.derivative().eval(&t));
    }

    #[test]
    fn bipoly_eval_is_a_homomorphism(f in bipoly(), g in bipoly(), x in rational(), y in rational()) {
        prop_assert_eq!(f.mul(&g).eval(&x, &y), f.eval(&x, &y) * g.eval(&x, &y));
        prop_assert_eq!(f.add(&g).eval(&x, &y), f.eval(&x, &y) + g.eval(&x, &y));
        let dx = Mat::diag(std::slice::from_ref(&x));
        let dy = Mat::diag(std::slice::from_ref(&y));
        prop_assert_eq!(f.eval_matrices(&dx, &dy).get(0, 0).clone(), f.eval(&x, &y));
    }

    #[test]
    fn rational_text_round_trip(q in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&q)), Some(q));
    }

    #[test]
    fn hermite_form_is_canonical(
        entries in prop::collection::vec(poly(2), 6),
        mult in poly(1),
        swap in any::<bool>(),
    ) {
        let m = Mat::new(3, 2, entries);
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        let det = u.det().unwrap();
        prop_assert!(det.is_constant() && !det.is_zero());
        prop_assert_eq!(hnf(&h).0, h.clone());
        // a unimodular change of rows gives the same form
        let mut e = Mat::<UniPoly>::identity(3);
        e.set(1, 0, mult);
        if swap {
            e = Mat::from_rows(vec![e.row(2).to_vec(), e.row(0).to_vec(), e.row(1).to_vec()]);
        }
        prop_assert_eq!(hnf(&e.mul(&m)).0, h);
    }
}
