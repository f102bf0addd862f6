use proptest::prelude::*;
use wonderland::lie::{build_sl, double_form, is_lagrangian, killing_form, standard_bd_splitting, LieAlgebra};
use wonderland::sampling::Sampler;
use wonderland::{int, Matrix, WonderError};

/// `ad e`, `ad h`, `ad f` in the basis `(e, h, f)`, written out by hand.
fn hand_ad() -> [Matrix; 3] {
    [
        Matrix::from_i64(&[&[0, -2, 0], &[0, 0, 1], &[0, 0, 0]]),
        Matrix::from_i64(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]),
        Matrix::from_i64(&[&[0, 0, 0], &[-1, 0, 0], &[0, 2, 0]]),
    ]
}

#[test]
fn killing_gram_of_sl2() {
    let g = build_sl(2).unwrap();
    let ads = hand_ad();
    for (i, a) in ads.iter().enumerate() {
        assert_eq!(&g.ad(&g.basis_vector(i)), a);
    }
    let oracle = Matrix::from_fn(3, 3, |i, j| ads[i].mul(&ads[j]).trace());
    let k = killing_form(&g);
    assert_eq!(k.gram, oracle);
    assert_eq!(k.gram, Matrix::from_i64(&[&[0, 0, 4], &[0, 8, 0], &[4, 0, 0]]));
    assert_eq!(k.gram.determinant(), int(-128));
    assert!(k.is_ad_invariant(&g));
}

#[test]
fn jacobi_tensors_vanish() {
    for n in 2..=3 {
        let g = build_sl(n).unwrap();
        assert_eq!(g.dim(), n * n - 1);
        assert!(g.jacobi_tensor().iter().all(|c| *c == int(0)));
        assert!(killing_form(&g).is_ad_invariant(&g));
    }
}

#[test]
fn bad_structure_constants_are_rejected() {
    let names = vec!["a".to_string(), "b".to_string()];
    let r = LieAlgebra::from_structure_constants(names, &[(0, 1, 0, int(1))]);
    assert!(matches!(r, Err(WonderError::InvalidAlgebra(_))));
}

#[test]
fn double_of_sl2() {
    let g = build_sl(2).unwrap();
    let d = double_form(&g).unwrap();
    assert_eq!(d.d.dim(), 6);
    assert_eq!(d.form.gram.rank(), 6);
    assert!(d.form.is_ad_invariant(&d.d));
}

#[test]
fn standard_splitting_axioms() {
    for n in 2..=3 {
        let s = standard_bd_splitting(&build_sl(n).unwrap()).unwrap();
        let d = &s.double;
        assert!(is_lagrangian(&d.d, &d.form, &s.x).is_lagrangian);
        assert!(is_lagrangian(&d.d, &d.form, &s.l2_basis).is_lagrangian);
        let both: Vec<_> = s.x.iter().chain(&s.l2_basis).cloned().collect();
        assert_eq!(Matrix::from_rows(both).unwrap().rank(), 2 * s.n());
        assert_eq!(s.duality_gram(), Matrix::identity(s.n()));
        assert!(s.r_matrix().is_antisymmetric());
    }
}

#[test]
fn non_lagrangian_complement_is_rejected() {
    let g = build_sl(2).unwrap();
    let d = double_form(&g).unwrap();
    let l2: Vec<_> = (0..3).map(|i| d.embed_left(&g.basis_vector(i))).collect();
    assert!(matches!(
        wonderland::lie::DoubleSplitting::with_l2(d, l2),
        Err(WonderError::InvalidSplitting(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn r_does_not_depend_on_dual_bases(seed in 0u64..10_000) {
        let s = standard_bd_splitting(&build_sl(2).unwrap()).unwrap();
        let p = Sampler::new(seed, "remix", 0).invertible_matrix(3, 4);
        let t = s.remix(&p).unwrap();
        prop_assert_eq!(t.duality_gram(), Matrix::identity(3));
        prop_assert_eq!(t.r_matrix(), s.r_matrix());
    }

    #[test]
    fn killing_form_is_adjoint_invariant_under_group(seed in 0u64..10_000) {
        let g = build_sl(2).unwrap();
        let k = killing_form(&g);
        let a = g.adjoint_action(&Sampler::new(seed, "ad", 0).sl(2, 4)).unwrap();
        prop_assert_eq!(a.transpose().mul(&k.gram).mul(&a), k.gram);
    }

    #[test]
    fn matrix_round_trip(seed in 0u64..10_000) {
        let g = build_sl(3).unwrap();
        let v = Sampler::new(seed, "rt", 0).vector(8, 9);
        let m = g.to_matrix(&v).unwrap();
        prop_assert_eq!(m.trace(), int(0));
        prop_assert_eq!(g.from_matrix(&m).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn r_pairs_l1_against_l2(seed in 0u64..10_000) {
        let s = standard_bd_splitting(&build_sl(2).unwrap()).unwrap();
        let form = &s.double.form;
        let mut smp = Sampler::new(seed, "pairing", 0);
        let combo = |smp: &mut Sampler, basis: &[Vec<wonderland::Rational>]| -> Vec<wonderland::Rational> {
            let c = smp.vector(basis.len(), 5);
            (0..6).map(|t| c.iter().zip(basis).fold(int(0), |acc, (a, b)| acc + a.clone() * b[t].clone())).collect()
        };
        let (v, w) = (combo(&mut smp, &s.x), combo(&mut smp, &s.x));
        let (f1, f2) = (combo(&mut smp, &s.l2_basis), combo(&mut smp, &s.l2_basis));
        let add = |a: &[wonderland::Rational], b: &[wonderland::Rational]| -> Vec<wonderland::Rational> {
            a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
        };
        let want = (form.eval(&f1, &w) - form.eval(&f2, &v)) * wonderland::rat(1, 2);
        prop_assert_eq!(s.r_pairing(&add(&v, &f1), &add(&w, &f2)), want);
    }
}
