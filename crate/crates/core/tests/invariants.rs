use proptest::prelude::*;
use wonderland::invariants::{
    express_in_generators, invariants_of_degree, matrix_polys, trace_generators, ActionSpec, Domain,
    FactorKind,
};
use wonderland::{int, rat, Matrix, Poly};

fn v(spec: &ActionSpec, i: usize) -> Poly {
    Poly::var(&spec.vars, i)
}

#[test]
fn actions_are_representations() {
    let kinds = [FactorKind::Conjugation, FactorKind::Line, FactorKind::DualLine];
    let spec = ActionSpec::sl2_factors("mixed", &kinds).unwrap();
    assert!(spec.representation_residual().iter().all(|x| *x == int(0)));
    assert!(ActionSpec::conjugation(2).unwrap().representation_residual().iter().all(|x| *x == int(0)));
}

#[test]
fn conjugation_invariants_low_degree() {
    let spec = ActionSpec::conjugation(1).unwrap();
    let (a, d) = (v(&spec, 0), v(&spec, 3));
    let tr = &a + &d;
    let det = matrix_polys::det(&spec.vars, 0);
    let d1 = invariants_of_degree(&spec, &[1]).unwrap();
    assert_eq!(d1.basis, vec![tr.clone()]);
    let d2 = invariants_of_degree(&spec, &[2]).unwrap();
    assert_eq!(d2.dim(), 2);
    assert!(d2.contains(&spec, &(&tr * &tr)).unwrap());
    assert!(d2.contains(&spec, &det).unwrap());
    let tr_sq = matrix_polys::trace_word(&spec.vars, &[0, 0]);
    assert!(d2.contains(&spec, &tr_sq).unwrap());
    assert!(!d2.contains(&spec, &(&a * &a)).unwrap());
    assert_eq!(invariants_of_degree(&spec, &[0]).unwrap().basis, vec![Poly::one(&spec.vars)]);
}

#[test]
fn pair_invariants_bidegree_one_one() {
    let spec = ActionSpec::conjugation(2).unwrap();
    let s = invariants_of_degree(&spec, &[1, 1]).unwrap();
    assert_eq!(s.dim(), 2);
    let tra = matrix_polys::trace(&spec.vars, 0);
    let trb = matrix_polys::trace(&spec.vars, 4);
    assert!(s.contains(&spec, &(&tra * &trb)).unwrap());
    assert!(s.contains(&spec, &matrix_polys::trace_prod(&spec.vars, 0, 4)).unwrap());
}

#[test]
fn clebsch_gordan_counts_on_lines() {
    let four = ActionSpec::sl2_factors("p1^4", &[FactorKind::Line; 4]).unwrap();
    assert_eq!(invariants_of_degree(&four, &[1, 1, 1, 1]).unwrap().dim(), 2);
    let one = ActionSpec::sl2_factors("p1", &[FactorKind::Line]).unwrap();
    for d in [1, 3, 5] {
        assert_eq!(invariants_of_degree(&one, &[d]).unwrap().dim(), 0);
    }
}

#[test]
fn trace_generator_fixtures() {
    let (spec, gens) = trace_generators(2).unwrap();
    let at = |a: &Matrix, b: &Matrix| -> Vec<_> {
        let z: Vec<_> = a.entries().iter().chain(b.entries()).cloned().collect();
        gens.iter().map(|(_, g)| g.eval(&z).unwrap()).collect()
    };
    let i = Matrix::identity(2);
    assert_eq!(at(&i, &i), vec![int(2), int(2), int(2)]);
    let t = rat(3, 2);
    let a = Matrix::from_rows(vec![vec![t.clone(), int(0)], vec![int(0), int(1) / t.clone()]]).unwrap();
    let b = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
    assert_eq!(at(&a, &b), vec![t.clone() + int(1) / t, int(0), int(0)]);
    let a = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
    let b = Matrix::from_i64(&[&[1, 0], &[1, 1]]);
    assert_eq!(at(&a, &b), vec![int(2), int(2), int(3)]);
    assert_eq!(spec.vars.len(), 8);
    assert!(trace_generators(3).is_err());

    let (spec1, g1) = trace_generators(1).unwrap();
    let z = [int(2), int(-1), int(3), int(5)];
    let jac = Matrix::from_rows(
        g1.iter()
            .map(|(_, g)| (0..4).map(|i| g.diff_index(i).eval(&z).unwrap()).collect())
            .collect(),
    )
    .unwrap();
    assert_eq!(jac.rank(), 2);
    assert_eq!(spec1.vars.len(), 4);
}

#[test]
fn express_trace_of_square() {
    let (spec, gens) = trace_generators(1).unwrap();
    let f = matrix_polys::trace_word(&spec.vars, &[0, 0]);
    let e = express_in_generators(&f, &gens, 2, Domain::Affine, 5).unwrap().unwrap();
    assert_eq!(e.to_string(), "tr^2 - 2*det");
    let det = gens[1].1.clone();
    let e = express_in_generators(&det, &gens[1..], 1, Domain::Affine, 5).unwrap().unwrap();
    assert_eq!(e.to_string(), "det");
    let a = v(&spec, 0);
    assert_eq!(express_in_generators(&a, &gens, 2, Domain::Affine, 5).unwrap(), None);
}

#[test]
fn express_trace_of_abab_on_sl2() {
    let (spec, gens) = trace_generators(2).unwrap();
    let f = matrix_polys::trace_word(&spec.vars, &[0, 4, 0, 4]);
    let e = express_in_generators(&f, &gens, 2, Domain::Sl2, 11).unwrap().unwrap();
    assert_eq!(e.to_string(), "trAB^2 - 2");
    assert_eq!(express_in_generators(&f, &gens, 2, Domain::Affine, 11).unwrap(), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn invariant_products_stay_invariant(i in 0usize..2, j in 0usize..2) {
        let spec = ActionSpec::conjugation(1).unwrap();
        let d2 = invariants_of_degree(&spec, &[2]).unwrap();
        let d4 = invariants_of_degree(&spec, &[4]).unwrap();
        let p = &d2.basis[i] * &d2.basis[j];
        prop_assert!(spec.annihilates(&p));
        prop_assert!(d4.contains(&spec, &p).unwrap());
    }

    #[test]
    fn basis_elements_are_annihilated(d in 0u32..4) {
        let spec = ActionSpec::conjugation(2).unwrap();
        let s = invariants_of_degree(&spec, &[d, 1]).unwrap();
        for b in &s.basis {
            prop_assert!(spec.annihilates(b));
        }
    }
}

#[test]
fn actions_by_name() {
    assert_eq!(ActionSpec::by_name("conj-m2").unwrap().vars.len(), 4);
    assert_eq!(ActionSpec::by_name("conj-m2x3").unwrap().ngroups(), 3);
    assert_eq!(ActionSpec::by_name("line-c2x4").unwrap().vars.len(), 8);
    for bad in ["conj-m2x0", "conj-m3", "line-c2x", "torus"] {
        assert!(ActionSpec::by_name(bad).is_err(), "{bad}");
    }
}
