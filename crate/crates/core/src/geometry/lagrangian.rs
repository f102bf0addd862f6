//! Lagrangian subspaces of the double as points of `Gr(n, 2n)`.

use serde::{Deserialize, Serialize};
use wonderland_exact::{int, Matrix, Rational};

use crate::error::{Result, WonderError};
use crate::geometry::chart::grassmann_chart_at;
use crate::geometry::proj::ProjMatrixPoint;
use crate::lie::{is_lagrangian, Double, LagrangianCertificate, LieAlgebra};

/// An element of `SL_n × SL_n`, standing in for its image in the adjoint group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupPair {
    pub g: Matrix,
    pub h: Matrix,
}

impl GroupPair {
    pub fn new(g: Matrix, h: Matrix) -> Result<Self> {
        for m in [&g, &h] {
            if !m.is_square() || m.determinant() != int(1) {
                return Err(WonderError::Invalid("group elements need determinant 1".into()));
            }
        }
        if g.rows() != h.rows() {
            return Err(WonderError::Invalid("factors of different size".into()));
        }
        Ok(Self { g, h })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            g: Matrix::identity(n),
            h: Matrix::identity(n),
        }
    }

    pub fn diagonal(g: Matrix) -> Result<Self> {
        Self::new(g.clone(), g)
    }

    /// Componentwise product.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            g: self.g.mul(&rhs.g),
            h: self.h.mul(&rhs.h),
        }
    }
}

/// Row span of an `n × 2n` matrix, stored in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct LagrangianPoint {
    basis: Matrix,
}

impl TryFrom<Matrix> for LagrangianPoint {
    type Error = WonderError;

    fn try_from(m: Matrix) -> Result<Self> {
        Self::new(m)
    }
}

impl From<LagrangianPoint> for Matrix {
    fn from(p: LagrangianPoint) -> Matrix {
        p.basis
    }
}

impl LagrangianPoint {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.cols() != 2 * m.rows() {
            return Err(WonderError::Invalid("span matrix must be n × 2n".into()));
        }
        let r = m.rref();
        if r.rank != m.rows() {
            return Err(WonderError::Invalid(format!(
                "span matrix has rank {} < {}",
                r.rank,
                m.rows()
            )));
        }
        Ok(Self { basis: r.matrix })
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.basis.to_rows()
    }

    pub fn lagrangian_certificate(&self, double: &Double) -> LagrangianCertificate {
        is_lagrangian(&double.d, &double.form, &self.rows())
    }

    /// Transforms the span by `Ad_g ⊕ Ad_h`.
    pub fn act(&self, g: &LieAlgebra, pair: &GroupPair) -> Result<Self> {
        let block = Matrix::block_diagonal(&g.adjoint_action(&pair.g)?, &g.adjoint_action(&pair.h)?);
        Self::new(self.basis.mul(&block.transpose()))
    }

    /// Dimension of `self ∩ other`.
    pub fn intersection_dim(&self, other: &Self) -> usize {
        let r = self.basis.rows() + other.basis.rows();
        r - self.basis.vstack(&other.basis).rank()
    }
}

/// `g_Δ` as `[I | I]`.
pub fn diagonal_point(g: &LieAlgebra) -> LagrangianPoint {
    let n = g.dim();
    LagrangianPoint::new(Matrix::identity(n).hstack(&Matrix::identity(n))).expect("full rank")
}

/// `{(x, y) ∈ sl₂ ⊕ sl₂ : x A = A y}`, solved in `sl₂` coordinates.
pub fn pgl2_point_to_lagrangian(g: &LieAlgebra, p: &ProjMatrixPoint) -> Result<LagrangianPoint> {
    let r = g.realization().ok_or(WonderError::NoRealization)?;
    let a = p.rep();
    if a.rows() != r.n {
        return Err(WonderError::Invalid("matrix size does not match the algebra".into()));
    }
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(2 * g.dim());
    for b in &r.basis {
        cols.push(b.mul(a).entries().to_vec());
    }
    for b in &r.basis {
        cols.push(a.mul(b).scale(&int(-1)).entries().to_vec());
    }
    let system = Matrix::from_columns(&cols)?;
    let kernel = system.kernel_basis();
    if kernel.len() != g.dim() {
        return Err(WonderError::SolutionDimension {
            expected: g.dim(),
            found: kernel.len(),
        });
    }
    LagrangianPoint::new(Matrix::from_rows(kernel)?)
}

/// Rank of `d → T_p Gr`, `z ↦ (v ↦ ad_z v mod p)`.
pub fn orbit_dimension(double: &Double, p: &LagrangianPoint) -> Result<usize> {
    let chart = grassmann_chart_at(p.basis())?;
    let ambient = std::slice::from_ref(p.basis());
    let dim = 2 * double.n();
    let cols = (0..dim)
        .map(|m| {
            let mut e = vec![int(0); dim];
            e[m] = int(1);
            let vel = p.basis().mul(&double.ad(&e).transpose());
            chart.tangent(ambient, &[vel])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&cols)?.rank())
}

/// Distinct `G × G` orbit dimensions met by the Lagrangian images of the
/// given `ℙ(M₂)` points.
pub fn orbit_dimension_sweep(double: &Double, points: &[ProjMatrixPoint]) -> Result<std::collections::BTreeSet<usize>> {
    points
        .iter()
        .map(|p| orbit_dimension(double, &pgl2_point_to_lagrangian(&double.g, p)?))
        .collect()
}
