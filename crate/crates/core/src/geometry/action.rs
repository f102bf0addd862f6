//! Infinitesimal `G × G` action in chart coordinates.

use wonderland_exact::{Matrix, Poly, Rational};

use crate::error::Result;
use crate::geometry::chart::{Chart, ChartPiece, PolyMat};
use crate::lie::Double;

/// The pair `(a, b)` of matrices for an element of the double.
pub fn elem_matrices(double: &Double, elem: &[Rational]) -> Result<(Matrix, Matrix)> {
    let (a, b) = double.split(elem);
    Ok((double.g.to_matrix(a)?, double.g.to_matrix(b)?))
}

/// Ambient velocity of `elem` on one factor: `aM − Mb` on `ℙ(M_n)`,
/// `P · (ad_elem)ᵀ` on a Grassmannian.
pub fn ambient_velocity(
    double: &Double,
    piece: &ChartPiece,
    point: &Matrix,
    elem: &[Rational],
) -> Result<Matrix> {
    Ok(match piece {
        ChartPiece::ProjMatrix { .. } => {
            let (a, b) = elem_matrices(double, elem)?;
            a.mul(point).sub(&point.mul(&b))
        }
        ChartPiece::Grassmann { .. } => point.mul(&double.ad(elem).transpose()),
    })
}

fn symbolic_velocity(
    double: &Double,
    piece: &ChartPiece,
    p: &PolyMat,
    elem: &[Rational],
) -> Result<PolyMat> {
    Ok(match piece {
        ChartPiece::ProjMatrix { .. } => {
            let (a, b) = elem_matrices(double, elem)?;
            p.lmul(&a).sub(&p.rmul(&b))
        }
        ChartPiece::Grassmann { .. } => p.rmul(&double.ad(elem).transpose()),
    })
}

/// `(i_j)_* λ(elem)`: the field of `elem` acting on factor `factor` only.
pub fn factor_field(
    chart: &Chart,
    double: &Double,
    factor: usize,
    elem: &[Rational],
) -> Result<Vec<Poly>> {
    let piece = &chart.pieces()[factor];
    let params = chart.param_poly();
    let vel = symbolic_velocity(double, piece, &params[factor], elem)?;
    Ok(chart.vector_field(|i, _| (i == factor).then(|| vel.clone())))
}

/// `λ(elem)`, acting diagonally on every factor of the chart.
pub fn infinitesimal_field(chart: &Chart, double: &Double, elem: &[Rational]) -> Result<Vec<Poly>> {
    let params = chart.param_poly();
    let vels = chart
        .pieces()
        .iter()
        .zip(&params)
        .map(|(piece, p)| symbolic_velocity(double, piece, p, elem))
        .collect::<Result<Vec<_>>>()?;
    Ok(chart.vector_field(|i, _| Some(vels[i].clone())))
}

/// Pointwise value of `λ(elem)` at chart coordinates `z`.
pub fn field_at(chart: &Chart, double: &Double, elem: &[Rational], z: &[Rational]) -> Result<Vec<Rational>> {
    let ambient = chart.param(z);
    let vel = chart
        .pieces()
        .iter()
        .zip(&ambient)
        .map(|(piece, m)| ambient_velocity(double, piece, m, elem))
        .collect::<Result<Vec<_>>>()?;
    chart.tangent(&ambient, &vel)
}
