use proptest::prelude::*;
use wonderland::exact::Scalar;
use wonderland::experiment::{tangency_points, Divisor};
use wonderland::geometry::{
    grassmann_chart_at, pgl2_point_to_lagrangian, proj_chart_at, Chart, ChartPiece, GroupPair, ProjMatrixPoint,
};
use wonderland::models::{boundary_point, interior_point};
use wonderland::lie::{build_sl, standard_bd_splitting, DoubleSplitting};
use wonderland::poisson::field::IdentityResidual;
use wonderland::poisson::structures::{evens_lu_at, evens_lu_field, mixed_product_at, mixed_product_field, CrossTerm};
use wonderland::poisson::{diagonal_action_residual, multiplicativity_residual, poisson_action_residual, GbarPoint};
use wonderland::sampling::Sampler;
use wonderland::{int, Matrix};

fn sl2() -> DoubleSplitting {
    standard_bd_splitting(&build_sl(2).unwrap()).unwrap()
}

fn pair(s: &mut Sampler) -> GroupPair {
    GroupPair::new(s.sl(2, 3), s.sl(2, 3)).unwrap()
}

fn show(rs: &[IdentityResidual]) -> bool {
    let mut ok = true;
    for r in rs {
        if !r.pass {
            eprintln!("{} failed: {:?}", r.identity, r.residual);
            ok = false;
        }
    }
    ok
}

#[test]
fn pi_is_multiplicative() {
    let s = sl2();
    for i in 0..10 {
        let mut smp = Sampler::new(7, "mult", i);
        let r = multiplicativity_residual(&s, &pair(&mut smp), &pair(&mut smp)).unwrap();
        assert!(show(&[r]));
    }
}

#[test]
fn evens_lu_action_identities_on_projective_model() {
    let s = sl2();
    for i in 0..10 {
        let mut smp = Sampler::new(7, "act-proj", i);
        let m = ProjMatrixPoint::new(smp.matrix(2, 2, 4)).unwrap();
        let u = pair(&mut smp);
        let v = pair(&mut smp);
        let rs = poisson_action_residual(&s, &u, &GbarPoint::Proj(m), &v).unwrap();
        assert_eq!(rs.len(), 5);
        assert!(show(&rs));
    }
}

#[test]
fn evens_lu_action_identities_on_lagrangian_model() {
    let s = sl2();
    for i in 0..4 {
        let mut smp = Sampler::new(7, "act-lag", i);
        let m = ProjMatrixPoint::new(smp.matrix(2, 2, 4)).unwrap();
        let l = pgl2_point_to_lagrangian(&s.double.g, &m).unwrap();
        let u = pair(&mut smp);
        let v = pair(&mut smp);
        let rs = poisson_action_residual(&s, &u, &GbarPoint::Lagrangian(l), &v).unwrap();
        assert!(show(&rs));
    }
}

fn diagonal_sweep(s: &DoubleSplitting, cross: CrossTerm) -> (bool, bool) {
    let mut act = true;
    for i in 0..4 {
        let mut smp = Sampler::new(7, "diag", i);
        let c = smp.sl(2, 3);
        let pts: Vec<GbarPoint> = (0..2)
            .map(|_| GbarPoint::Proj(ProjMatrixPoint::new(smp.matrix(2, 2, 4)).unwrap()))
            .collect();
        act &= diagonal_action_residual(s, &c, &pts, cross).unwrap()[0].pass;
    }
    let a = Matrix::from_i64(&[&[2, 1], &[1, 3]]);
    let b = Matrix::from_i64(&[&[1, -1], &[2, 1]]);
    let chart = proj_chart_at(&[a, b]).unwrap();
    let d = mixed_product_field(&chart, s, cross).unwrap().derivatives();
    let mut jac = true;
    for i in 0..5 {
        let z = Sampler::new(7, "diag-jac", i).vector(chart.dim(), 3);
        jac &= d.coordinate_jacobiators(&z).unwrap().iter().all(|(_, v)| *v == int(0));
    }
    (act, jac)
}

#[test]
fn cross_term_orientation() {
    let s = sl2();
    assert_eq!(diagonal_sweep(&s, CrossTerm::XY), (true, true));
    // the opposite orientation is neither Poisson nor compatible with the diagonal action
    assert_eq!(diagonal_sweep(&s, CrossTerm::YX), (false, false));
}

#[test]
fn lambda_vanishes_at_identity() {
    let s = sl2();
    let chart = proj_chart_at(&[Matrix::identity(2)]).unwrap();
    assert!(evens_lu_at(&chart, &s, chart.center()).unwrap().matrix().is_zero());
    assert!(evens_lu_field(&chart, &s).unwrap().eval(chart.center()).unwrap().matrix().is_zero());
    let m = Matrix::from_i64(&[&[2, 1], &[1, 3]]);
    let c2 = proj_chart_at(&[m]).unwrap();
    assert!(!evens_lu_at(&c2, &s, c2.center()).unwrap().matrix().is_zero());
}

#[test]
fn symbolic_and_pointwise_fields_agree() {
    let s = sl2();
    for i in 0..6 {
        let mut smp = Sampler::new(3, "agree", i);
        let reps = [interior_point(&mut smp).rep().clone(), boundary_point(&mut smp).rep().clone()];
        let c1 = proj_chart_at(&reps[..1]).unwrap();
        assert_eq!(evens_lu_field(&c1, &s).unwrap().eval(c1.center()).unwrap(), evens_lu_at(&c1, &s, c1.center()).unwrap());
        let c2 = proj_chart_at(&reps).unwrap();
        assert_eq!(
            mixed_product_field(&c2, &s, CrossTerm::XY).unwrap().eval(c2.center()).unwrap(),
            mixed_product_at(&c2, &s, CrossTerm::XY, c2.center()).unwrap()
        );
    }
}

#[test]
fn mixed_product_of_one_factor_is_evens_lu() {
    let s = sl2();
    let chart = proj_chart_at(&[Matrix::from_i64(&[&[2, 1], &[1, 3]])]).unwrap();
    for cross in [CrossTerm::XY, CrossTerm::YX] {
        assert_eq!(mixed_product_field(&chart, &s, cross).unwrap(), evens_lu_field(&chart, &s).unwrap());
    }
}

fn texts(b: &wonderland::Bivector) -> Vec<Vec<String>> {
    b.matrix().to_rows().iter().map(|r| r.iter().map(|x| x.to_text()).collect()).collect()
}

#[test]
fn mixed_product_at_identity_pair() {
    // every λ(x_i) vanishes at [I], since [I] is fixed by the diagonal
    let s = sl2();
    let id = Matrix::identity(2);
    let chart = proj_chart_at(&[id.clone(), id]).unwrap();
    let b = mixed_product_at(&chart, &s, CrossTerm::XY, chart.center()).unwrap();
    assert!(b.matrix().is_zero());
}

#[test]
fn mixed_product_regression_fixture() {
    // frozen from the first exact run; charts scale d₁ and c₂ to one
    let s = sl2();
    let a = Matrix::from_i64(&[&[2, 1], &[1, 3]]);
    let b = Matrix::from_i64(&[&[1, -1], &[2, 1]]);
    let chart = proj_chart_at(&[a, b]).unwrap();
    let got = texts(&mixed_product_at(&chart, &s, CrossTerm::XY, chart.center()).unwrap());
    let want = [
        ["0/1", "-5/36", "5/36", "-35/144", "-5/144", "-5/144"],
        ["5/36", "0/1", "5/36", "-5/72", "1/72", "-5/72"],
        ["-5/36", "-5/36", "0/1", "-25/144", "-7/144", "5/144"],
        ["35/144", "5/72", "25/144", "0/1", "1/8", "-1/8"],
        ["5/144", "-1/72", "7/144", "-1/8", "0/1", "1/8"],
        ["5/144", "5/72", "-5/144", "1/8", "-1/8", "0/1"],
    ];
    assert_eq!(got, want.map(|r| r.map(String::from).to_vec()).to_vec());
}

#[test]
fn evens_lu_is_poisson_on_lagrangian_charts() {
    let s = sl2();
    for i in 0..4 {
        let mut smp = Sampler::new(13, "gr-jac", i);
        let p = if i % 2 == 0 { interior_point(&mut smp) } else { boundary_point(&mut smp) };
        let l = pgl2_point_to_lagrangian(&s.double.g, &p).unwrap();
        let chart = grassmann_chart_at(l.basis()).unwrap();
        assert_eq!(chart.dim(), 9);
        let d = evens_lu_field(&chart, &s).unwrap().derivatives();
        let j = d.coordinate_jacobiators(chart.center()).unwrap();
        assert_eq!(j.len(), 84);
        assert!(j.iter().all(|(_, v)| *v == int(0)));
    }
}

#[test]
fn boundary_divisor_is_poisson() {
    let s = sl2();
    let det0 = tangency_points(&s, 5, 10, Divisor::Det0).unwrap();
    assert!(det0.iter().all(|r| r.pass));
    let plane = tangency_points(&s, 5, 10, Divisor::Hyperplane).unwrap();
    assert!(plane.iter().any(|r| !r.pass));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn evens_lu_jacobi_in_every_chart(seed: u64, k in 0usize..4) {
        let s = sl2();
        let mut m = Sampler::new(seed, "pj", 0).matrix(2, 2, 5);
        m[(k / 2, k % 2)] = int(1);
        let chart = Chart::new(vec![ChartPiece::ProjMatrix { n: 2, pivot: (k / 2, k % 2) }], &[m]).unwrap();
        let z = Sampler::new(seed, "pj", 1).vector(3, 7);
        let d = evens_lu_field(&chart, &s).unwrap().derivatives();
        prop_assert!(d.coordinate_jacobiators(&z).unwrap().iter().all(|(_, v)| *v == int(0)));
    }
}

#[test]
fn lambda_does_not_depend_on_dual_bases() {
    let s = sl2();
    let chart = proj_chart_at(&[Matrix::from_i64(&[&[2, 1], &[1, 3]])]).unwrap();
    let base = evens_lu_field(&chart, &s).unwrap();
    for i in 0..4 {
        let p = Sampler::new(8, "remix", i).invertible_matrix(3, 4);
        assert_eq!(evens_lu_field(&chart, &s.remix(&p).unwrap()).unwrap(), base);
    }
}
