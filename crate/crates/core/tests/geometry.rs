use proptest::prelude::*;
use wonderland::geometry::{
    boundary_detect, diagonal_point, field_at, orbit_dimension, orbit_dimension_sweep, pgl2_point_to_lagrangian,
    proj_chart_at, segre, segre_factor, GroupPair, ProjMatrixPoint,
};
use wonderland::lie::{build_sl, double_form};
use wonderland::models::{boundary_point, interior_point};
use wonderland::sampling::Sampler;
use wonderland::{int, Matrix, Rational};

#[test]
fn graph_of_an_element_and_a_boundary_intersection() {
    let d = double_form(&build_sl(2).unwrap()).unwrap();
    let delta = diagonal_point(&d.g);
    assert!(delta.lagrangian_certificate(&d).is_lagrangian);
    let g = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
    let moved = delta.act(&d.g, &GroupPair::new(g.clone(), Matrix::identity(2)).unwrap()).unwrap();
    // (g, e)·g_Δ = {(Ad_g x, x)}, the image of [g]
    let ad = d.g.adjoint_action(&g).unwrap();
    let graph = wonderland::geometry::LagrangianPoint::new(ad.transpose().hstack(&Matrix::identity(3))).unwrap();
    assert_eq!(moved, graph);
    let img = pgl2_point_to_lagrangian(&d.g, &ProjMatrixPoint::new(g.clone()).unwrap()).unwrap();
    assert_eq!(img, graph);
    // L(E11) meets the diagonal in the multiples of H
    let e11 = ProjMatrixPoint::new(Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
    let l = pgl2_point_to_lagrangian(&d.g, &e11).unwrap();
    assert!(l.lagrangian_certificate(&d).is_lagrangian);
    assert_eq!(l.intersection_dim(&delta), 1);
}

#[test]
fn two_orbit_dimensions() {
    let d = double_form(&build_sl(2).unwrap()).unwrap();
    let mut pts = Vec::new();
    for i in 0..20 {
        let mut s = Sampler::new(11, "orbits", i);
        pts.push(if i % 2 == 0 { interior_point(&mut s) } else { boundary_point(&mut s) });
    }
    let dims = orbit_dimension_sweep(&d, &pts).unwrap();
    assert_eq!(dims.into_iter().collect::<Vec<_>>(), vec![2, 3]);
    assert_eq!(orbit_dimension(&d, &diagonal_point(&d.g)).unwrap(), 3);
}

#[test]
fn boundary_is_the_determinant_divisor() {
    let mut s = Sampler::new(2, "bd", 0);
    for _ in 0..20 {
        let b = boundary_point(&mut s);
        assert!(boundary_detect(&b));
        assert_eq!(b.rep().rank(), 1);
        assert!(!boundary_detect(&interior_point(&mut s)));
    }
}

/// `d/dt|₀` of the chart coordinates of `(I + tE₁₂) A` by the quotient rule.
fn nilpotent_flow_oracle(a: &Matrix, pivot: (usize, usize)) -> Vec<Rational> {
    let e = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
    let dm = e.mul(a);
    let p = a[pivot].clone();
    let dp = dm[pivot].clone();
    (0..4)
        .map(|k| (k / 2, k % 2))
        .filter(|&ij| ij != pivot)
        .map(|ij| (dm[ij].clone() * p.clone() - a[ij].clone() * dp.clone()) / (p.clone() * p.clone()))
        .collect()
}

#[test]
fn infinitesimal_field_matches_flow() {
    let d = double_form(&build_sl(2).unwrap()).unwrap();
    let elem = d.embed_left(&d.g.basis_vector(0));
    for i in 0..10 {
        let a = interior_point(&mut Sampler::new(4, "flow", i)).rep().clone();
        let chart = proj_chart_at(std::slice::from_ref(&a)).unwrap();
        let wonderland::geometry::ChartPiece::ProjMatrix { pivot, .. } = chart.pieces()[0] else { unreachable!() };
        let scaled = a.scale(&(int(1) / a[pivot].clone()));
        assert_eq!(field_at(&chart, &d, &elem, chart.center()).unwrap(), nilpotent_flow_oracle(&scaled, pivot));
    }
}

#[test]
fn chart_transition() {
    let a = Matrix::from_i64(&[&[3, 1], &[2, 5]]);
    let c1 = proj_chart_at(std::slice::from_ref(&a)).unwrap();
    let b = Matrix::from_i64(&[&[7, 1], &[2, 1]]);
    let c2 = proj_chart_at(std::slice::from_ref(&b)).unwrap();
    assert_ne!(c1.pieces(), c2.pieces());
    let z1 = c1.center().to_vec();
    let amb = c1.param(&z1);
    let z2 = c2.coords(&amb).unwrap();
    let back = c1.coords(&c2.param(&z2)).unwrap();
    assert_eq!(back, z1);
    assert_eq!(ProjMatrixPoint::new(c2.param(&z2)[0].clone()).unwrap(), ProjMatrixPoint::new(a).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn segre_round_trip(seed: u64) {
        let b = boundary_point(&mut Sampler::new(seed, "segre", 0));
        let (u, v) = segre_factor(&b).unwrap();
        prop_assert_eq!(segre(&u, &v).unwrap(), b);
    }

    #[test]
    fn lagrangian_image_is_three_dimensional_and_lagrangian(seed: u64, boundary: bool) {
        let d = double_form(&build_sl(2).unwrap()).unwrap();
        let mut s = Sampler::new(seed, "lag", 0);
        let p = if boundary { boundary_point(&mut s) } else { interior_point(&mut s) };
        let l = pgl2_point_to_lagrangian(&d.g, &p).unwrap();
        prop_assert_eq!(l.basis().rows(), 3);
        prop_assert!(l.lagrangian_certificate(&d).is_lagrangian);
    }

    #[test]
    fn lagrangian_correspondence_is_equivariant(seed: u64) {
        let d = double_form(&build_sl(2).unwrap()).unwrap();
        let mut s = Sampler::new(seed, "equi", 0);
        let p = if s.below(2) == 0 { boundary_point(&mut s) } else { interior_point(&mut s) };
        let (g, h) = (s.sl(2, 3), s.sl(2, 3));
        let lhs = pgl2_point_to_lagrangian(&d.g, &p.act(&g, &h).unwrap()).unwrap();
        let rhs = pgl2_point_to_lagrangian(&d.g, &p).unwrap().act(&d.g, &GroupPair::new(g, h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn diagonal_stabilizes_the_diagonal() {
    let d = double_form(&build_sl(2).unwrap()).unwrap();
    let delta = diagonal_point(&d.g);
    for i in 0..10 {
        let g = Sampler::new(6, "stab", i).sl(2, 4);
        assert_eq!(delta.act(&d.g, &GroupPair::diagonal(g).unwrap()).unwrap(), delta);
    }
}
