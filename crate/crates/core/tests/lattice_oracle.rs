mod support;

use cmforge::cmspace::{lambda_act, omega_twist, OneForm};
use cmforge::diffop::{FractionalIdeal, IdealGenerator};
use cmforge::forge::ideal_generators;
use cmforge::lattice::{codim, default_kmax, module_equal, span_filtration, LatticeError};
use support::oracle::brute_codim;

#[test]
fn codim_stabilizes_at_n_and_matches_brute_force() {
    for p in support::line_points().into_iter().chain(support::torus_points()).filter(|p| p.n <= 2) {
        let ideal = ideal_generators(&p).unwrap();
        let kmax = 2 * p.n + 6;
        let rep = codim(&ideal, kmax).unwrap();
        assert_eq!(rep.stabilized, Some(p.n as i64), "{:?}", rep.rows);
        for k in [p.n, kmax - 1, kmax] {
            assert_eq!(Some(brute_codim(&ideal, k)), rep.rows[k].1, "{:?} n={} k={k}", p.curve, p.n);
        }
    }
}

#[test]
fn codim_of_three_points() {
    for p in support::line_points().into_iter().chain(support::torus_points()).filter(|p| p.n == 3) {
        let ideal = ideal_generators(&p).unwrap();
        let kmax = default_kmax(p.n, &ideal);
        let rep = codim(&ideal, kmax).unwrap();
        assert_eq!(rep.stabilized, Some(3), "{:?}", rep.rows);
        assert_eq!(Some(brute_codim(&ideal, p.n)), rep.rows[p.n].1);
    }
}

#[test]
fn codim_is_non_increasing_once_every_generator_is_present() {
    for p in support::line_points().into_iter().chain(support::torus_points()).filter(|p| p.n <= 2) {
        let ideal = ideal_generators(&p).unwrap();
        let rep = codim(&ideal, 2 * p.n + 6).unwrap();
        let tail: Vec<i64> = rep.rows[p.n..].iter().map(|r| r.1.expect("full rank")).collect();
        assert!(tail.windows(2).all(|w| w[1] <= w[0]), "{tail:?}");
        assert_eq!(*tail.last().unwrap(), p.n as i64);
    }
}

fn conjugated(ideal: &FractionalIdeal, r: i64) -> FractionalIdeal {
    let generators = ideal.ops().unwrap().iter().map(|g| IdealGenerator::Op(g.conjugate_by_x_power(r))).collect();
    FractionalIdeal { curve: ideal.curve.clone(), generators }
}

#[test]
fn unit_twist_conjugates_the_ideal() {
    for p in support::torus_points().into_iter().filter(|p| p.n <= 2) {
        let ideal = ideal_generators(&p).unwrap();
        let k = default_kmax(p.n, &ideal);
        for r in [-1i64, 1] {
            let twisted = ideal_generators(&lambda_act(&p, r).unwrap()).unwrap();
            let a = span_filtration(&conjugated(&ideal, r), k).unwrap();
            let b = span_filtration(&twisted, k).unwrap();
            assert!(module_equal(&a, &b).unwrap(), "n={} r={r}", p.n);
            // the untwisted span differs
            let c = span_filtration(&ideal, k).unwrap();
            assert!(!module_equal(&c, &b).unwrap(), "n={} r={r}", p.n);
            assert_eq!(omega_twist(&p, &OneForm::log_unit(r)).unwrap(), lambda_act(&p, r).unwrap());
        }
    }
}

#[test]
fn plane_curves_have_no_lattice() {
    for p in support::plane_points().into_iter().take(2) {
        let ideal = ideal_generators(&p).unwrap();
        assert!(matches!(span_filtration(&ideal, 2), Err(LatticeError::Unsupported(_))));
    }
}
