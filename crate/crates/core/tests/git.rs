use wonderland::geometry::proj_chart_at;
use wonderland::git::{
    affine_quotient_bracket, divisor_saturation, glue_consistency, graded_ring, projection_residual, semistable_charts,
    separation, uncovered_points, AffineChartQuotient, OverlapFunction, ProductPoint, Separation,
};
use wonderland::invariants::{matrix_polys, ActionSpec, Fraction};
use wonderland::models::{
    ambient_center, boundary_point, conjugation_sample, interior_point, pgl2_field, sl2_splitting, surrogates,
};
use wonderland::poisson::actions::diagonal_restriction;
use wonderland::sampling::Sampler;
use wonderland::{int, Matrix, Poly, Rational};

fn flat(m: &Matrix) -> Vec<Rational> {
    m.entries().to_vec()
}

#[test]
fn conjugation_ring_of_one_matrix() {
    let spec = ActionSpec::conjugation(1).unwrap();
    let ring = graded_ring(&spec, 4).unwrap();
    assert_eq!(ring.dims(), vec![1, 1, 2, 2, 3]);
    let degs: Vec<u32> = ring.generators.iter().map(|g| g.degree).collect();
    assert_eq!(degs, vec![1, 2]);
    assert_eq!(ring.generators[0].poly, matrix_polys::trace(&spec.vars, 0));
}

#[test]
fn conjugation_ring_of_two_matrices() {
    // monomials of bidegree (2,2) in trA, trB, detA, detB, trAB: six of them
    let ring = graded_ring(&ActionSpec::conjugation(2).unwrap(), 2).unwrap();
    assert_eq!(ring.dims(), vec![1, 2, 6]);
    let degs: Vec<u32> = ring.generators.iter().map(|g| g.degree).collect();
    assert_eq!(degs, vec![1, 1, 2, 2, 2]);
}

#[test]
fn semistable_cover_of_projective_matrices() {
    let spec = ActionSpec::conjugation(1).unwrap();
    let ring = graded_ring(&spec, 2).unwrap();
    let charts = semistable_charts(&ring);
    let det = AffineChartQuotient::new("det", matrix_polys::det(&spec.vars, 0), 2);
    assert!(det.contains(&[int(1), int(0), int(0), int(1)]).unwrap());
    assert!(!det.contains(&[int(1), int(0), int(0), int(0)]).unwrap());
    let pts = vec![
        vec![int(1), int(0), int(0), int(1)],
        vec![int(0), int(1), int(0), int(0)],
        vec![int(1), int(0), int(0), int(0)],
    ];
    assert_eq!(uncovered_points(&charts, &pts).unwrap(), vec![1]);
    let mut s = Sampler::new(3, "ss", 0);
    let interior: Vec<_> = (0..20).map(|_| flat(interior_point(&mut s).rep())).collect();
    assert!(uncovered_points(&[det], &interior).unwrap().is_empty());
}

#[test]
fn product_bracket_projection_is_poisson() {
    let s = sl2_splitting().unwrap();
    let (spec2, fx) = surrogates(2).unwrap();
    let g1 = vec![0usize; 4];
    let v1 = ActionSpec::conjugation(1).unwrap().vars;
    let a = Poly::var(&v1, 0);
    let b = Poly::var(&v1, 1);
    let phi1 = Fraction::new("b/a", b.clone(), a.clone(), &g1).unwrap();
    let phi2 = Fraction::new("tr^2/det", &matrix_polys::trace(&v1, 0) * &matrix_polys::trace(&v1, 0), matrix_polys::det(&v1, 0), &g1).unwrap();
    assert_eq!(spec2.vars.len(), 8);
    for i in 0..8 {
        let mut smp = Sampler::new(5, "product", i);
        let c = smp.sl(2, 3);
        let (pi_g, _) = diagonal_restriction(&s, &c).unwrap();
        let cg = proj_chart_at(std::slice::from_ref(&c)).unwrap();
        let (cx, _) = conjugation_sample(&mut smp, 2).unwrap();
        let lx = pgl2_field(&s, &cx).unwrap().eval(cx.center()).unwrap();
        let p = ProductPoint { pi_g: &pi_g, zg: cg.center(), lambda_x: &lx, zx: cx.center() };
        let r = projection_residual(
            &phi1.in_chart(&cg).unwrap(),
            &fx[0].in_chart(&cx).unwrap(),
            &phi2.in_chart(&cg).unwrap(),
            &fx[2].in_chart(&cx).unwrap(),
            &p,
        )
        .unwrap();
        assert!(r.pass, "{:?}", r.residual);
    }
}

#[test]
fn f2_bracket_table_fixture() {
    let s = sl2_splitting().unwrap();
    let (_, gens) = surrogates(2).unwrap();
    let samples: Vec<_> = (0..3)
        .map(|i| conjugation_sample(&mut Sampler::new(42, "f2", i), 2).unwrap())
        .collect();
    let field = |c: &wonderland::geometry::Chart| pgl2_field(&s, c);
    let t = affine_quotient_bracket(&field, &gens, &samples).unwrap();
    assert!(t.antisymmetry_residual().unwrap().pass);
    assert!(t.jacobi_residual().unwrap().pass);
    for smp in &t.samples {
        assert!(smp.table.iter().enumerate().all(|(i, row)| row[i] == "0/1"));
    }
    // the three trace surrogates Poisson-commute: every table entry is zero
    assert!(t.samples.iter().all(|x| x.is_zero()));
    // while non-invariant functions of different factors do not
    let (spec, _) = surrogates(2).unwrap();
    let ratio = Fraction::new(
        "b1/a1",
        Poly::var(&spec.vars, 1),
        Poly::var(&spec.vars, 0),
        &spec.groups,
    )
    .unwrap();
    let (chart, _) = &samples[0];
    let l = pgl2_field(&s, chart).unwrap().eval(chart.center()).unwrap();
    let other = Fraction::new(
        "c2/a2",
        Poly::var(&spec.vars, 6),
        Poly::var(&spec.vars, 4),
        &spec.groups,
    )
    .unwrap();
    let v = wonderland::invariants::ratfn_bracket(
        &l,
        &other.in_chart(chart).unwrap(),
        &ratio.in_chart(chart).unwrap(),
        chart.center(),
    )
    .unwrap();
    assert_ne!(v, int(0));
}

#[test]
fn rank_one_bracket_table_vanishes() {
    let s = sl2_splitting().unwrap();
    let (_, gens) = surrogates(1).unwrap();
    let samples: Vec<_> = (0..5)
        .map(|i| conjugation_sample(&mut Sampler::new(42, "r1", i), 1).unwrap())
        .collect();
    let field = |c: &wonderland::geometry::Chart| pgl2_field(&s, c);
    let t = affine_quotient_bracket(&field, &gens, &samples).unwrap();
    assert!(t.samples.iter().all(|x| x.is_zero()));
}

#[test]
fn gluing_on_one_and_two_factors() {
    let s = sl2_splitting().unwrap();
    let field_at = |c: &wonderland::geometry::Chart| pgl2_field(&s, c)?.eval(c.center());

    let spec = ActionSpec::conjugation(1).unwrap();
    let v = &spec.vars;
    let tr = matrix_polys::trace(v, 0);
    let det = matrix_polys::det(v, 0);
    let cf = AffineChartQuotient::new("tr", tr.clone(), 1);
    let cg = AffineChartQuotient::new("det", det.clone(), 2);
    let u = OverlapFunction { name: "det/tr^2".into(), h: det.clone(), a: 2, b: 0 };
    let w = OverlapFunction { name: "tr(A^2)/det".into(), h: matrix_polys::trace_word(v, &[0, 0]), a: 0, b: 1 };
    let pts: Vec<_> = (0..20).map(|i| conjugation_sample(&mut Sampler::new(9, "glue1", i), 1).unwrap().0).collect();
    let r = glue_consistency(&cf, &cg, &field_at, &u, &w, &spec.groups, &pts).unwrap();
    assert!(r.pass, "{:?}", r.residual);

    let spec = ActionSpec::conjugation(2).unwrap();
    let v = &spec.vars;
    let f = &matrix_polys::trace(v, 0) * &matrix_polys::trace(v, 4);
    let g = matrix_polys::trace_prod(v, 0, 4);
    let (da, db) = (matrix_polys::det(v, 0), matrix_polys::det(v, 4));
    let cf = AffineChartQuotient::new("trA trB", f, 1);
    let cg = AffineChartQuotient::new("trAB", g, 1);
    let u = OverlapFunction { name: "detA detB/(f g)".into(), h: &da * &db, a: 1, b: 1 };
    let ta2 = &matrix_polys::trace(v, 0) * &matrix_polys::trace(v, 0);
    let w = OverlapFunction { name: "trA^2 detB/f^2".into(), h: &ta2 * &db, a: 2, b: 0 };
    let pts: Vec<_> = (0..10).map(|i| conjugation_sample(&mut Sampler::new(9, "glue2", i), 2).unwrap().0).collect();
    let r = glue_consistency(&cf, &cg, &field_at, &u, &w, &spec.groups, &pts).unwrap();
    assert!(r.pass, "{:?}", r.residual);
    assert!(r.residual.len() >= 2);

    // non-invariant fractions: the brackets are nonzero and must still glue
    let spec = ActionSpec::conjugation(1).unwrap();
    let v = &spec.vars;
    let cf = AffineChartQuotient::new("tr", matrix_polys::trace(v, 0), 1);
    let cg = AffineChartQuotient::new("det", matrix_polys::det(v, 0), 2);
    let u = OverlapFunction { name: "ab/tr^2".into(), h: &Poly::var(v, 0) * &Poly::var(v, 1), a: 2, b: 0 };
    let w = OverlapFunction { name: "c^2 tr/(tr det)".into(), h: &(&Poly::var(v, 2) * &Poly::var(v, 2)) * &matrix_polys::trace(v, 0), a: 1, b: 1 };
    let pts: Vec<_> = (0..20).map(|i| conjugation_sample(&mut Sampler::new(9, "glue3", i), 1).unwrap().0).collect();
    let r = glue_consistency(&cf, &cg, &field_at, &u, &w, &spec.groups, &pts).unwrap();
    assert!(r.pass, "{:?}", r.residual);
    let values: Vec<String> = serde_json::from_value(r.sample["brackets"].clone()).unwrap();
    assert!(values.iter().any(|v| v != "0/1"));
}

#[test]
fn boundary_is_separated_from_interior() {
    let spec = ActionSpec::conjugation(1).unwrap();
    let ring = graded_ring(&spec, 4).unwrap();
    let det = matrix_polys::det(&spec.vars, 0);
    let e11 = vec![int(1), int(0), int(0), int(0)];
    let id = vec![int(1), int(0), int(0), int(1)];
    assert_eq!(separation(&ring, &e11, &id).unwrap(), Separation::Separated(2));
    let nil = vec![int(0), int(1), int(0), int(0)];
    assert_eq!(separation(&ring, &nil, &id).unwrap(), Separation::Unstable);
    let a = Matrix::from_i64(&[&[2, 1], &[0, 3]]);
    let c = Matrix::from_i64(&[&[1, 2], &[1, 3]]);
    let ca = c.mul(&a).mul(&c.inverse().unwrap());
    assert_eq!(separation(&ring, &flat(&a), &flat(&ca)).unwrap(), Separation::NotSeparated);
    let mut smp = Sampler::new(3, "sat", 0);
    let pairs: Vec<_> = (0..30)
        .map(|_| (flat(boundary_point(&mut smp).rep()), flat(interior_point(&mut smp).rep())))
        .collect();
    let r = divisor_saturation(&det, &ring, &pairs).unwrap();
    assert!(r.pass);
    assert!(divisor_saturation(&det, &ring, &[(id.clone(), id.clone())]).is_err());
    let _ = ambient_center;
}
