//! Ready-made PGL₂ data: charts on `ℙ(M₂)ʳ`, the Poisson fields on them,
//! degree-zero trace invariants and seeded sample points.

use wonderland_exact::{int, Matrix, Poly};

use crate::error::Result;
use crate::geometry::{proj_chart_at, segre, Chart, ProjMatrixPoint};
use crate::invariants::{matrix_polys, ActionSpec, Fraction};
use crate::lie::{build_sl, standard_bd_splitting, DoubleSplitting};
use crate::poisson::field::BivectorField;
use crate::poisson::structures::{evens_lu_field, mixed_product_field, CrossTerm};
use crate::sampling::Sampler;

pub fn sl2_splitting() -> Result<DoubleSplitting> {
    standard_bd_splitting(&build_sl(2)?)
}

/// `Λ` on one factor, the mixed product bivector on several.
pub fn pgl2_field(s: &DoubleSplitting, chart: &Chart) -> Result<BivectorField> {
    if chart.pieces().len() == 1 {
        evens_lu_field(chart, s)
    } else {
        mixed_product_field(chart, s, CrossTerm::XY)
    }
}

/// A random point of `ℙ(M₂)` with nonzero determinant.
pub fn interior_point(s: &mut Sampler) -> ProjMatrixPoint {
    loop {
        let m = s.matrix(2, 2, 5);
        if m.determinant() != int(0) {
            return ProjMatrixPoint::new(m).expect("nonzero");
        }
    }
}

/// A random point of the boundary divisor `det = 0`.
pub fn boundary_point(s: &mut Sampler) -> ProjMatrixPoint {
    let (u, v) = s.rank_one(2, 5);
    segre(&u, &v).expect("nonzero factors")
}

/// Degree-zero invariants standing in for trace coordinates: for one factor
/// `tr²/det` and `tr(A²)/det`; for two, `tr²A/det A`, `tr²B/det B` and
/// `tr²(AB)/(det A det B)`.
pub fn surrogates(r: usize) -> Result<(ActionSpec, Vec<Fraction>)> {
    let spec = ActionSpec::conjugation(r)?;
    let v = spec.vars.clone();
    let g = &spec.groups;
    let sq = |p: &Poly| p * p;
    let fr = if r == 1 {
        let det = matrix_polys::det(&v, 0);
        vec![
            Fraction::new("tr^2/det", sq(&matrix_polys::trace(&v, 0)), det.clone(), g)?,
            Fraction::new("tr(A^2)/det", matrix_polys::trace_word(&v, &[0, 0]), det, g)?,
        ]
    } else {
        let (da, db) = (matrix_polys::det(&v, 0), matrix_polys::det(&v, 4));
        vec![
            Fraction::new("s1", sq(&matrix_polys::trace(&v, 0)), da.clone(), g)?,
            Fraction::new("s2", sq(&matrix_polys::trace(&v, 4)), db.clone(), g)?,
            Fraction::new("s3", sq(&matrix_polys::trace_prod(&v, 0, 4)), &da * &db, g)?,
        ]
    };
    Ok((spec, fr))
}

/// `(chart at m, chart at c·m·c⁻¹)` for a random interior tuple `m` and a
/// random `c ∈ SL₂`.
pub fn conjugation_sample(s: &mut Sampler, r: usize) -> Result<(Chart, Chart)> {
    let m: Vec<Matrix> = (0..r).map(|_| interior_point(s).rep().clone()).collect();
    let c = s.sl(2, 3);
    let ci = c.inverse()?;
    let cm: Vec<Matrix> = m.iter().map(|a| c.mul(a).mul(&ci)).collect();
    Ok((proj_chart_at(&m)?, proj_chart_at(&cm)?))
}

/// Ambient coordinates of the center of a chart.
pub fn ambient_center(chart: &Chart) -> Vec<wonderland_exact::Rational> {
    chart
        .param(chart.center())
        .iter()
        .flat_map(|m| m.entries().to_vec())
        .collect()
}
