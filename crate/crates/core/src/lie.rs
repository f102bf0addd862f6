//! Lie algebras from structure constants, the Killing form, the double
//! `d = g ⊕ g` and Lagrangian splittings of it.

use serde::{Deserialize, Serialize};
use wonderland_exact::{dot, int, rat, Matrix, Rational, Scalar, Zero};

use crate::error::{Result, WonderError};

/// Matrix realization of `sl_n`, used to move between coordinates and
/// matrices.
#[derive(Clone, Debug)]
pub struct Realization {
    pub n: usize,
    pub basis: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    names: Vec<String>,
    /// `c[(i * dim + j) * dim + k]` is the coefficient of `b_k` in `[b_i, b_j]`.
    constants: Vec<Rational>,
    realization: Option<Realization>,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn from_structure_constants(
        names: Vec<String>,
        entries: &[(usize, usize, usize, Rational)],
    ) -> Result<Self> {
        let dim = names.len();
        let mut constants = vec![int(0); dim * dim * dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(WonderError::InvalidAlgebra(format!(
                    "index ({i},{j},{k}) out of range"
                )));
            }
            constants[(i * dim + j) * dim + k] = c.clone();
        }
        let alg = Self {
            names,
            constants,
            realization: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c(i, j, k) != -self.c(j, i, k) {
                        return Err(WonderError::InvalidAlgebra(format!(
                            "c^{k}_{{{i}{j}}} is not antisymmetric"
                        )));
                    }
                }
            }
        }
        if !self.jacobi_tensor_is_zero() {
            return Err(WonderError::InvalidAlgebra("Jacobi identity fails".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> Rational {
        let n = self.dim();
        self.constants[(i * n + j) * n + k].clone()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![int(0); self.dim()];
        v[i] = int(1);
        v
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![int(0); n];
        for i in (0..n).filter(|&i| !u[i].is_zero()) {
            for j in (0..n).filter(|&j| !v[j].is_zero()) {
                let uv = u[i].clone() * v[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.constants[(i * n + j) * n + k];
                    if !c.is_zero() {
                        *o += uv.clone() * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad u` (column `j` holds `[u, b_j]`).
    pub fn ad(&self, u: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim())
            .map(|j| self.bracket(u, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(&cols).expect("square")
    }

    /// Entries of `Σ_m c^m_{ij} c^l_{mk} + cyclic` for all `i, j, k, l`.
    pub fn jacobi_tensor(&self) -> Vec<Rational> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n.pow(4));
        let term = |i: usize, j: usize, k: usize, l: usize| {
            (0..n).fold(int(0), |acc, m| acc + self.c(i, j, m) * self.c(m, k, l))
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        out.push(term(i, j, k, l) + term(j, k, i, l) + term(k, i, j, l));
                    }
                }
            }
        }
        out
    }

    pub fn jacobi_tensor_is_zero(&self) -> bool {
        self.jacobi_tensor().iter().all(Rational::is_zero)
    }

    /// Direct sum with componentwise bracket; names get a `(x,0)` / `(0,x)` form.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let names = self
            .names
            .iter()
            .map(|s| format!("({s},0)"))
            .chain(other.names.iter().map(|s| format!("(0,{s})")))
            .collect();
        let d = n + m;
        let mut constants = vec![int(0); d * d * d];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    constants[(i * d + j) * d + k] = self.c(i, j, k);
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    constants[((n + i) * d + n + j) * d + n + k] = other.c(i, j, k);
                }
            }
        }
        Self {
            names,
            constants,
            realization: None,
        }
    }

    pub fn to_matrix(&self, v: &[Rational]) -> Result<Matrix> {
        let r = self.realization.as_ref().ok_or(WonderError::NoRealization)?;
        let mut m = Matrix::zeros(r.n, r.n);
        for (c, b) in v.iter().zip(&r.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        Ok(m)
    }

    /// Coordinates of a traceless matrix in the `sl_n` basis.
    pub fn from_matrix(&self, m: &Matrix) -> Result<Vec<Rational>> {
        let r = self.realization.as_ref().ok_or(WonderError::NoRealization)?;
        let n = r.n;
        if m.trace() != int(0) {
            return Err(WonderError::Invalid("matrix is not traceless".into()));
        }
        let upper = upper_pairs(n);
        let mut v = Vec::with_capacity(self.dim());
        v.extend(upper.iter().map(|&(i, j)| m[(i, j)].clone()));
        let mut cum = int(0);
        for k in 0..n - 1 {
            cum += m[(k, k)].clone();
            v.push(cum.clone());
        }
        v.extend(upper.iter().map(|&(i, j)| m[(j, i)].clone()));
        Ok(v)
    }

    /// Matrix of `Ad_g` on coordinates.
    pub fn adjoint_action(&self, g: &Matrix) -> Result<Matrix> {
        let r = self.realization.as_ref().ok_or(WonderError::NoRealization)?;
        let gi = g.inverse()?;
        let cols = r
            .basis
            .iter()
            .map(|b| self.from_matrix(&g.mul(b).mul(&gi)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&cols)?)
    }

    pub fn to_json(&self) -> LieAlgebraJson {
        let n = self.dim();
        let mut sc = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        sc.push((i, j, k, c.to_text()));
                    }
                }
            }
        }
        LieAlgebraJson {
            dim: n,
            names: self.names.clone(),
            structure_constants: sc,
        }
    }

    pub fn from_json(j: &LieAlgebraJson) -> Result<Self> {
        if j.names.len() != j.dim {
            return Err(WonderError::Invalid("dim does not match names".into()));
        }
        let entries = j
            .structure_constants
            .iter()
            .map(|(i, jj, k, c)| Ok((*i, *jj, *k, Rational::from_text(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_structure_constants(j.names.clone(), &entries)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub dim: usize,
    pub names: Vec<String>,
    pub structure_constants: Vec<(usize, usize, usize, String)>,
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn elementary(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = int(1);
    m
}

/// `sl_n` in the basis `E_ij (i<j)`, `H_k`, `E_ji`, with constants read off
/// matrix commutators.
pub fn build_sl(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(WonderError::RankTooSmall(n));
    }
    let upper = upper_pairs(n);
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for &(i, j) in &upper {
        basis.push(elementary(n, i, j));
        names.push(format!("E{}{}", i + 1, j + 1));
    }
    for k in 0..n - 1 {
        basis.push(elementary(n, k, k).sub(&elementary(n, k + 1, k + 1)));
        names.push(format!("H{}", k + 1));
    }
    for &(i, j) in &upper {
        basis.push(elementary(n, j, i));
        names.push(format!("E{}{}", j + 1, i + 1));
    }
    let dim = basis.len();
    let mut alg = LieAlgebra {
        names,
        constants: vec![int(0); dim * dim * dim],
        realization: Some(Realization {
            n,
            basis: basis.clone(),
        }),
    };
    for i in 0..dim {
        for j in 0..dim {
            let comm = basis[i].mul(&basis[j]).sub(&basis[j].mul(&basis[i]));
            let coords = alg.from_matrix(&comm)?;
            for (k, c) in coords.into_iter().enumerate() {
                alg.constants[(i * dim + j) * dim + k] = c;
            }
        }
    }
    alg.validate()?;
    Ok(alg)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    pub gram: Matrix,
}

impl BilinearForm {
    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Rational {
        dot(u, &self.gram.mul_vec(v))
    }

    /// `⟨[x,y],z⟩ + ⟨y,[x,z]⟩` over all basis triples; all zero iff invariant.
    pub fn invariance_residuals(&self, g: &LieAlgebra) -> Vec<Rational> {
        let n = g.dim();
        let mut out = Vec::with_capacity(n * n * n);
        for x in 0..n {
            let bx = g.basis_vector(x);
            for y in 0..n {
                let by = g.basis_vector(y);
                let xy = g.bracket(&bx, &by);
                for z in 0..n {
                    let bz = g.basis_vector(z);
                    let xz = g.bracket(&bx, &bz);
                    out.push(self.eval(&xy, &bz) + self.eval(&by, &xz));
                }
            }
        }
        out
    }

    pub fn is_ad_invariant(&self, g: &LieAlgebra) -> bool {
        self.invariance_residuals(g).iter().all(Rational::is_zero)
    }
}

/// `κ(b_i, b_j) = tr(ad b_i ∘ ad b_j)`.
pub fn killing_form(g: &LieAlgebra) -> BilinearForm {
    let ads: Vec<Matrix> = (0..g.dim()).map(|i| g.ad(&g.basis_vector(i))).collect();
    let gram = Matrix::from_fn(g.dim(), g.dim(), |i, j| ads[i].mul(&ads[j]).trace());
    BilinearForm { gram }
}

/// The double `d = g ⊕ g` with form `κ ⊕ −κ`.
#[derive(Clone, Debug)]
pub struct Double {
    pub g: LieAlgebra,
    pub d: LieAlgebra,
    pub killing: BilinearForm,
    pub form: BilinearForm,
}

impl Double {
    pub fn n(&self) -> usize {
        self.g.dim()
    }

    pub fn embed_left(&self, x: &[Rational]) -> Vec<Rational> {
        let mut v = x.to_vec();
        v.extend(std::iter::repeat_n(int(0), self.n()));
        v
    }

    pub fn embed_right(&self, x: &[Rational]) -> Vec<Rational> {
        let mut v = vec![int(0); self.n()];
        v.extend_from_slice(x);
        v
    }

    pub fn diagonal(&self, x: &[Rational]) -> Vec<Rational> {
        let mut v = x.to_vec();
        v.extend_from_slice(x);
        v
    }

    pub fn split<'a>(&self, v: &'a [Rational]) -> (&'a [Rational], &'a [Rational]) {
        v.split_at(self.n())
    }

    /// Matrix of `ad_a ⊕ ad_b` on `d`.
    pub fn ad(&self, v: &[Rational]) -> Matrix {
        self.d.ad(v)
    }
}

pub fn double_form(g: &LieAlgebra) -> Result<Double> {
    let killing = killing_form(g);
    if killing.gram.determinant().is_zero() {
        return Err(WonderError::DegenerateForm);
    }
    let d = g.direct_sum(g);
    let form = BilinearForm {
        gram: Matrix::block_diagonal(&killing.gram, &killing.gram.scale(&int(-1))),
    };
    Ok(Double {
        g: g.clone(),
        d,
        killing,
        form,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    Dimension { expected: usize, found: usize },
    Isotropy(usize, usize),
    Closure(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LagrangianCertificate {
    pub is_lagrangian: bool,
    pub violations: Vec<Violation>,
}

/// Dimension `n`, total isotropy and bracket closure, with every violating
/// pair listed.
pub fn is_lagrangian(
    d: &LieAlgebra,
    form: &BilinearForm,
    subspace: &[Vec<Rational>],
) -> LagrangianCertificate {
    let mut violations = Vec::new();
    let half = d.dim() / 2;
    let span = if subspace.is_empty() {
        Matrix::zeros(0, d.dim())
    } else {
        Matrix::from_rows(subspace.to_vec()).expect("vectors in d")
    };
    let rank = span.rank();
    if rank != half {
        violations.push(Violation::Dimension {
            expected: half,
            found: rank,
        });
    }
    for (i, u) in subspace.iter().enumerate() {
        for (j, v) in subspace.iter().enumerate().skip(i) {
            if !form.eval(u, v).is_zero() {
                violations.push(Violation::Isotropy(i, j));
            }
        }
    }
    for (i, u) in subspace.iter().enumerate() {
        for (j, v) in subspace.iter().enumerate().skip(i + 1) {
            let w = d.bracket(u, v);
            let stacked = span.vstack(&Matrix::from_rows(vec![w]).expect("row"));
            if stacked.rank() != rank {
                violations.push(Violation::Closure(i, j));
            }
        }
    }
    LagrangianCertificate {
        is_lagrangian: violations.is_empty(),
        violations,
    }
}

/// A Lagrangian splitting `d = l1 + l2` with `l1` the diagonal, together with
/// dual bases `⟨x_i, y_j⟩ = δ_ij`.
#[derive(Clone, Debug)]
pub struct DoubleSplitting {
    pub double: Double,
    pub l2_basis: Vec<Vec<Rational>>,
    pub x: Vec<Vec<Rational>>,
    pub y: Vec<Vec<Rational>>,
}

impl DoubleSplitting {
    /// Validates a user-supplied `l2` against the diagonal `l1`.
    pub fn with_l2(double: Double, l2_basis: Vec<Vec<Rational>>) -> Result<Self> {
        let n = double.n();
        let x: Vec<Vec<Rational>> = (0..n)
            .map(|i| double.diagonal(&double.g.basis_vector(i)))
            .collect();
        Self::from_bases(double, x, l2_basis)
    }

    pub fn from_bases(
        double: Double,
        x: Vec<Vec<Rational>>,
        l2_basis: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let n = double.n();
        if l2_basis.iter().chain(&x).any(|v| v.len() != 2 * n) {
            return Err(WonderError::InvalidSplitting(
                "basis vectors must have length 2n".into(),
            ));
        }
        for (label, basis) in [("l1", &x), ("l2", &l2_basis)] {
            let cert = is_lagrangian(&double.d, &double.form, basis);
            if !cert.is_lagrangian {
                return Err(WonderError::InvalidSplitting(format!(
                    "{label} fails: {:?}",
                    cert.violations
                )));
            }
        }
        let stacked = Matrix::from_rows(x.iter().chain(&l2_basis).cloned().collect())?;
        if stacked.rank() != 2 * n {
            return Err(WonderError::InvalidSplitting(
                "l1 and l2 are not transversal".into(),
            ));
        }
        // C^T = M^{-1} with M_ik = ⟨x_i, l2_k⟩ gives y_j = Σ_k C_jk l2_k.
        let m = Matrix::from_fn(n, n, |i, k| double.form.eval(&x[i], &l2_basis[k]));
        let c = m
            .inverse()
            .map_err(|_| WonderError::Internal("duality system is singular".into()))?
            .transpose();
        let y = (0..n)
            .map(|j| {
                (0..2 * n)
                    .map(|t| {
                        (0..n).fold(int(0), |acc, k| {
                            acc + c[(j, k)].clone() * l2_basis[k][t].clone()
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            double,
            l2_basis,
            x,
            y,
        })
    }

    pub fn n(&self) -> usize {
        self.double.n()
    }

    pub fn duality_gram(&self) -> Matrix {
        let n = self.n();
        Matrix::from_fn(n, n, |i, j| self.double.form.eval(&self.x[i], &self.y[j]))
    }

    /// `r = ½ Σ x_i ∧ y_i` as an antisymmetric `2n × 2n` matrix.
    pub fn r_matrix(&self) -> Matrix {
        let d = 2 * self.n();
        let half = rat(1, 2);
        Matrix::from_fn(d, d, |a, b| {
            self.x
                .iter()
                .zip(&self.y)
                .fold(int(0), |acc, (x, y)| {
                    acc + x[a].clone() * y[b].clone() - y[a].clone() * x[b].clone()
                })
                * half.clone()
        })
    }

    /// `r` evaluated on a pair of elements of `d`, using the form to identify
    /// `d` with its dual.
    pub fn r_pairing(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let g = &self.double.form.gram;
        dot(&g.mul_vec(u), &self.r_matrix().mul_vec(&g.mul_vec(v)))
    }

    /// Replaces `x` by `P x` and `y` by `P^{-T} y`.
    pub fn remix(&self, p: &Matrix) -> Result<Self> {
        let n = self.n();
        let pit = p.inverse()?.transpose();
        let combine = |m: &Matrix, vs: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
            (0..n)
                .map(|i| {
                    (0..2 * n)
                        .map(|t| (0..n).fold(int(0), |acc, k| acc + m[(i, k)].clone() * vs[k][t].clone()))
                        .collect()
                })
                .collect()
        };
        Ok(Self {
            double: self.double.clone(),
            l2_basis: self.l2_basis.clone(),
            x: combine(p, &self.x),
            y: combine(&pit, &self.y),
        })
    }

    pub fn to_json(&self) -> SplittingJson {
        SplittingJson {
            l2_basis: self
                .l2_basis
                .iter()
                .map(|v| v.iter().map(Scalar::to_text).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplittingJson {
    pub l2_basis: Vec<Vec<String>>,
}

impl SplittingJson {
    pub fn parse(&self) -> Result<Vec<Vec<Rational>>> {
        self.l2_basis
            .iter()
            .map(|v| {
                v.iter()
                    .map(|s| Rational::from_text(s).map_err(WonderError::from))
                    .collect()
            })
            .collect()
    }
}

/// `l2 = {(h + u, −h + v)}` with `h` Cartan, `u` strictly upper and `v`
/// strictly lower triangular.
pub fn standard_bd_splitting(g: &LieAlgebra) -> Result<DoubleSplitting> {
    let r = g.realization().ok_or(WonderError::NoRealization)?;
    let n = r.n;
    let upper = n * (n - 1) / 2;
    let double = double_form(g)?;
    let mut l2 = Vec::with_capacity(g.dim());
    for i in 0..upper {
        l2.push(double.embed_left(&g.basis_vector(i)));
    }
    for k in 0..n - 1 {
        let h = g.basis_vector(upper + k);
        let mut v = h.clone();
        v.extend(h.iter().map(|c| -c.clone()));
        l2.push(v);
    }
    for i in 0..upper {
        l2.push(double.embed_right(&g.basis_vector(upper + n - 1 + i)));
    }
    DoubleSplitting::with_l2(double, l2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_brackets() {
        let g = build_sl(2).unwrap();
        assert_eq!(g.names(), ["E12", "H1", "E21"]);
        let (e, h, f) = (g.basis_vector(0), g.basis_vector(1), g.basis_vector(2));
        assert_eq!(g.bracket(&h, &e), vec![int(2), int(0), int(0)]);
        assert_eq!(g.bracket(&h, &f), vec![int(0), int(0), int(-2)]);
        assert_eq!(g.bracket(&e, &f), h);
    }

    #[test]
    fn build_sl_rejects_small_n() {
        assert!(matches!(build_sl(1), Err(WonderError::RankTooSmall(1))));
    }

    #[test]
    fn json_round_trip() {
        let g = build_sl(2).unwrap();
        let back = LieAlgebra::from_json(&g.to_json()).unwrap();
        assert_eq!(back.to_json(), g.to_json());
    }
}
