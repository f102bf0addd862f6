//! The Evens–Lu bivector on `Ḡ`, the bivector `Π` on `G × G` and the mixed
//! product bivector on `Ḡⁿ`.

use wonderland_exact::{rat, Bivector, Matrix, Poly, Rational};

use crate::error::Result;
use crate::geometry::action::{ambient_velocity, elem_matrices, factor_field, field_at, infinitesimal_field};
use crate::geometry::{Chart, PolyMat};
use crate::lie::DoubleSplitting;
use crate::poisson::field::BivectorField;

/// `Λ = ½ Σ λ(x_i) ∧ λ(y_i)`.
pub fn evens_lu_field(chart: &Chart, s: &DoubleSplitting) -> Result<BivectorField> {
    let pairs = s
        .x
        .iter()
        .zip(&s.y)
        .map(|(x, y)| {
            Ok((
                infinitesimal_field(chart, &s.double, x)?,
                infinitesimal_field(chart, &s.double, y)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BivectorField::half_wedge_sum(chart, &pairs))
}

/// Pointwise `Λ` at chart coordinates `z`.
pub fn evens_lu_at(chart: &Chart, s: &DoubleSplitting, z: &[Rational]) -> Result<Bivector> {
    let mut acc = Bivector::zero(chart.dim());
    for (x, y) in s.x.iter().zip(&s.y) {
        let fx = field_at(chart, &s.double, x, z)?;
        let fy = field_at(chart, &s.double, y, z)?;
        acc = acc.add(&Bivector::wedge(&fx, &fy));
    }
    Ok(acc.scale(&rat(1, 2)))
}

/// Which side a group element is translated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Translation {
    /// `x ↦ x g`
    Right,
    /// `x ↦ g x`
    Left,
}

fn translate(t: Translation, e: &Matrix, g: &Matrix) -> Matrix {
    match t {
        Translation::Right => e.mul(g),
        Translation::Left => g.mul(e),
    }
}

fn translate_poly(t: Translation, e: &Matrix, g: &PolyMat) -> PolyMat {
    match t {
        Translation::Right => g.lmul(e),
        Translation::Left => g.rmul(e),
    }
}

/// Translated field of `elem = (a, b)` on a `ℙ(M_n) × ℙ(M_n)` chart of `G × G`.
fn translated_field(chart: &Chart, s: &DoubleSplitting, t: Translation, elem: &[Rational]) -> Result<Vec<Poly>> {
    let (a, b) = elem_matrices(&s.double, elem)?;
    let params = chart.param_poly();
    let vels = [translate_poly(t, &a, &params[0]), translate_poly(t, &b, &params[1])];
    Ok(chart.vector_field(|i, _| Some(vels[i].clone())))
}

/// `½ Σ (μ_*x_i) ∧ (μ_*y_i)` for one translation side.
pub fn translated_r_field(chart: &Chart, s: &DoubleSplitting, t: Translation) -> Result<BivectorField> {
    let pairs = s
        .x
        .iter()
        .zip(&s.y)
        .map(|(x, y)| Ok((translated_field(chart, s, t, x)?, translated_field(chart, s, t, y)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BivectorField::half_wedge_sum(chart, &pairs))
}

/// `Π = r^R − r^L` on a `ℙ(M_n) × ℙ(M_n)` chart of `G × G`.
pub fn bd_pi_field(chart: &Chart, s: &DoubleSplitting) -> Result<BivectorField> {
    Ok(translated_r_field(chart, s, Translation::Right)?.sub(&translated_r_field(chart, s, Translation::Left)?))
}

/// Pointwise translated `r` at chart coordinates `z` of `G × G`.
pub fn translated_r_at(chart: &Chart, s: &DoubleSplitting, t: Translation, z: &[Rational]) -> Result<Bivector> {
    let ambient = chart.param(z);
    let vel = |elem: &[Rational]| -> Result<Vec<Rational>> {
        let (a, b) = elem_matrices(&s.double, elem)?;
        let v = [translate(t, &a, &ambient[0]), translate(t, &b, &ambient[1])];
        chart.tangent(&ambient, &v)
    };
    let mut acc = Bivector::zero(chart.dim());
    for (x, y) in s.x.iter().zip(&s.y) {
        acc = acc.add(&Bivector::wedge(&vel(x)?, &vel(y)?));
    }
    Ok(acc.scale(&rat(1, 2)))
}

pub fn bd_pi_at(chart: &Chart, s: &DoubleSplitting, z: &[Rational]) -> Result<Bivector> {
    Ok(translated_r_at(chart, s, Translation::Right, z)?.sub(&translated_r_at(chart, s, Translation::Left, z)?))
}

/// Orientation of the cross terms of the mixed product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossTerm {
    /// `Σ_{j<k} Σ_i λ_j(x_i) ∧ λ_k(y_i)`
    XY,
    /// `Σ_{j<k} Σ_i λ_j(y_i) ∧ λ_k(x_i)`
    YX,
}

/// `(Λ, …, Λ)` plus the cross terms between every pair of factors.
pub fn mixed_product_field(chart: &Chart, s: &DoubleSplitting, cross: CrossTerm) -> Result<BivectorField> {
    let n = chart.pieces().len();
    let d = &s.double;
    let fx = (0..n)
        .map(|j| s.x.iter().map(|x| factor_field(chart, d, j, x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let fy = (0..n)
        .map(|j| s.y.iter().map(|y| factor_field(chart, d, j, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..s.n() {
            pairs.push((fx[j][i].clone(), fy[j][i].clone()));
        }
    }
    let mut field = BivectorField::half_wedge_sum(chart, &pairs);
    for j in 0..n {
        for k in j + 1..n {
            for i in 0..s.n() {
                let w = match cross {
                    CrossTerm::XY => BivectorField::wedge(chart, &fx[j][i], &fy[k][i]),
                    CrossTerm::YX => BivectorField::wedge(chart, &fy[j][i], &fx[k][i]),
                };
                field = field.add(&w);
            }
        }
    }
    Ok(field)
}

/// Pointwise mixed product bivector.
pub fn mixed_product_at(chart: &Chart, s: &DoubleSplitting, cross: CrossTerm, z: &[Rational]) -> Result<Bivector> {
    let n = chart.pieces().len();
    let ambient = chart.param(z);
    let factor_vel = |j: usize, elem: &[Rational]| -> Result<Vec<Rational>> {
        let vel = chart
            .pieces()
            .iter()
            .zip(&ambient)
            .enumerate()
            .map(|(i, (piece, m))| {
                if i == j {
                    ambient_velocity(&s.double, piece, m, elem)
                } else {
                    Ok(Matrix::zeros(m.rows(), m.cols()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        chart.tangent(&ambient, &vel)
    };
    let fx = (0..n)
        .map(|j| s.x.iter().map(|x| factor_vel(j, x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let fy = (0..n)
        .map(|j| s.y.iter().map(|y| factor_vel(j, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut base = Bivector::zero(chart.dim());
    for j in 0..n {
        for i in 0..s.n() {
            base = base.add(&Bivector::wedge(&fx[j][i], &fy[j][i]));
        }
    }
    let mut acc = base.scale(&rat(1, 2));
    for j in 0..n {
        for k in j + 1..n {
            for i in 0..s.n() {
                let w = match cross {
                    CrossTerm::XY => Bivector::wedge(&fx[j][i], &fy[k][i]),
                    CrossTerm::YX => Bivector::wedge(&fy[j][i], &fx[k][i]),
                };
                acc = acc.add(&w);
            }
        }
    }
    Ok(acc)
}
