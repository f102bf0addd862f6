//! Bivector fields with polynomial entries, brackets and the Jacobiator.

use serde::Serialize;
use wonderland_exact::jet::matrix_jet1;
use wonderland_exact::{int, rat, Bivector, Jet2, Matrix, Poly, Rational, Scalar, Zero};

use crate::error::{Result, WonderError};
use crate::geometry::Chart;

/// `Σ Λ_ij ∂_i ∧ ∂_j` on a chart, stored as the full antisymmetric matrix of
/// polynomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct BivectorField {
    chart: Chart,
    entries: Vec<Vec<Poly>>,
}

impl BivectorField {
    pub fn zero(chart: &Chart) -> Self {
        let n = chart.dim();
        Self {
            chart: chart.clone(),
            entries: vec![vec![Poly::zero(chart.vars()); n]; n],
        }
    }

    pub fn from_entries(chart: &Chart, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let f = Self {
            chart: chart.clone(),
            entries,
        };
        if !f.is_antisymmetric() {
            return Err(WonderError::Invalid("bivector entries are not antisymmetric".into()));
        }
        Ok(f)
    }

    /// `X ∧ Y`, with matrix `X Yᵀ − Y Xᵀ`.
    pub fn wedge(chart: &Chart, x: &[Poly], y: &[Poly]) -> Self {
        let n = chart.dim();
        let mut entries = vec![vec![Poly::zero(chart.vars()); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let e = &(&x[i] * &y[j]) - &(&y[i] * &x[j]);
                entries[j][i] = -&e;
                entries[i][j] = e;
            }
        }
        Self {
            chart: chart.clone(),
            entries,
        }
    }

    /// `½ Σ X_i ∧ Y_i`.
    pub fn half_wedge_sum(chart: &Chart, pairs: &[(Vec<Poly>, Vec<Poly>)]) -> Self {
        let mut acc = Self::zero(chart);
        for (x, y) in pairs {
            acc = acc.add(&Self::wedge(chart, x, y));
        }
        acc.scale(&rat(1, 2))
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            chart: self.chart.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|p| p.scale(c)).collect())
                .collect(),
        }
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        Self {
            chart: self.chart.clone(),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
                .collect(),
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == -&self.entries[j][i]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn eval(&self, z: &[Rational]) -> Result<Bivector> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = self.entries[i][j].eval(z)?;
                m[(j, i)] = -v.clone();
                m[(i, j)] = v;
            }
        }
        Ok(Bivector::new(m)?)
    }

    /// `{f, g}` at `z`.
    pub fn bracket_at(&self, f: &Poly, g: &Poly, z: &[Rational]) -> Result<Rational> {
        let df = gradient(f, z)?;
        let dg = gradient(g, z)?;
        Ok(self.eval(z)?.bracket_eval(&df, &dg)?)
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}` at `z`.
    pub fn jacobiator(&self, f: &Poly, g: &Poly, h: &Poly, z: &[Rational]) -> Result<Rational> {
        let jets = [f, g, h]
            .map(|p| Jet2::of_poly(p, z))
            .into_iter()
            .collect::<std::result::Result<Vec<_>, _>>()?;
        self.jacobiator_jets(&jets[0], &jets[1], &jets[2], z)
    }

    /// Jacobiator from second-order jets of the three functions.
    pub fn jacobiator_jets(&self, f: &Jet2, g: &Jet2, h: &Jet2, z: &[Rational]) -> Result<Rational> {
        let (l, dl) = matrix_jet1(&self.entries, z)?;
        Ok(jacobiator_from_jets(&l, &dl, f, g, h))
    }

    /// Precomputes first derivatives of every entry, for repeated Jacobiator
    /// evaluation on coordinate triples.
    pub fn derivatives(&self) -> FieldDerivatives {
        let n = self.dim();
        let d = (0..n)
            .map(|k| {
                self.entries
                    .iter()
                    .map(|row| row.iter().map(|p| p.diff_index(k)).collect())
                    .collect()
            })
            .collect();
        FieldDerivatives {
            field: self.clone(),
            d,
        }
    }
}

/// `Σ_{ab} Λ_ab f_a [∂_bΛ_cd g_c h_d + Λ_cd g_cb h_d + Λ_cd g_c h_db]`, summed
/// cyclically.
fn jacobiator_from_jets(l: &Matrix, dl: &[Matrix], f: &Jet2, g: &Jet2, h: &Jet2) -> Rational {
    let n = l.rows();
    let nested = |f: &Jet2, g: &Jet2, h: &Jet2| -> Rational {
        // gradient of {g,h} = Σ_cd Λ_cd g_c h_d
        let lg = l.transpose().mul_vec(&g.grad); // (Λᵀ g)_d = Σ_c Λ_cd g_c
        let lh = l.mul_vec(&h.grad); // (Λ h)_c = Σ_d Λ_cd h_d
        let grad: Vec<Rational> = (0..n)
            .map(|b| {
                let mut acc = int(0);
                let dlb = &dl[b];
                for c in 0..n {
                    if g.grad[c].is_zero() {
                        continue;
                    }
                    for d in 0..n {
                        let e = &dlb[(c, d)];
                        if !e.is_zero() && !h.grad[d].is_zero() {
                            acc += e.clone() * g.grad[c].clone() * h.grad[d].clone();
                        }
                    }
                }
                for c in 0..n {
                    acc += g.hess[(c, b)].clone() * lh[c].clone();
                }
                for d in 0..n {
                    acc += lg[d].clone() * h.hess[(d, b)].clone();
                }
                acc
            })
            .collect();
        wonderland_exact::dot(&f.grad, &l.mul_vec(&grad))
    };
    nested(f, g, h) + nested(g, h, f) + nested(h, f, g)
}

pub struct FieldDerivatives {
    field: BivectorField,
    d: Vec<Vec<Vec<Poly>>>,
}

impl FieldDerivatives {
    /// Value and partial derivatives of `Λ` at `z`.
    pub fn at(&self, z: &[Rational]) -> Result<(Matrix, Vec<Matrix>)> {
        let n = self.field.dim();
        let l = self.field.eval(z)?.matrix().clone();
        let dl = self
            .d
            .iter()
            .map(|dk| {
                let mut m = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        if !dk[i][j].is_zero() {
                            m[(i, j)] = dk[i][j].eval(z)?;
                        }
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((l, dl))
    }

    /// `J_abc = Σ_d Λ_ad ∂_dΛ_bc + Λ_bd ∂_dΛ_ca + Λ_cd ∂_dΛ_ab` for every
    /// coordinate triple `a < b < c`.
    pub fn coordinate_jacobiators(&self, z: &[Rational]) -> Result<Vec<((usize, usize, usize), Rational)>> {
        let n = self.field.dim();
        let (l, dl) = self.at(z)?;
        let term = |a: usize, b: usize, c: usize| {
            (0..n).fold(int(0), |acc, d| {
                let x = &l[(a, d)];
                if x.is_zero() {
                    acc
                } else {
                    acc + x.clone() * dl[d][(b, c)].clone()
                }
            })
        };
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    out.push(((a, b, c), term(a, b, c) + term(b, c, a) + term(c, a, b)));
                }
            }
        }
        Ok(out)
    }

    pub fn jacobiator_jets(&self, f: &Jet2, g: &Jet2, h: &Jet2, z: &[Rational]) -> Result<Rational> {
        let (l, dl) = self.at(z)?;
        Ok(jacobiator_from_jets(&l, &dl, f, g, h))
    }
}

pub fn gradient(f: &Poly, z: &[Rational]) -> Result<Vec<Rational>> {
    (0..f.nvars())
        .map(|i| Ok(f.diff_index(i).eval(z)?))
        .collect()
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityResidual {
    pub identity: String,
    pub sample: serde_json::Value,
    pub residual: Vec<String>,
    pub pass: bool,
}

impl IdentityResidual {
    pub fn new(identity: impl Into<String>, sample: serde_json::Value, residual: &[Rational]) -> Self {
        Self {
            identity: identity.into(),
            sample,
            residual: residual.iter().map(Scalar::to_text).collect(),
            pass: residual.iter().all(Zero::is_zero),
        }
    }

    pub fn from_bivector(identity: impl Into<String>, sample: serde_json::Value, b: &Bivector) -> Self {
        Self::new(identity, sample, b.matrix().entries())
    }
}

/// Checks that `Λ(dF, ·)` vanishes at `z` for every defining polynomial `F`,
/// i.e. that the zero set is a Poisson subvariety to first order there.
pub fn tangency_check(
    field: &BivectorField,
    defining: &[Poly],
    z: &[Rational],
) -> Result<IdentityResidual> {
    for f in defining {
        if !f.eval(z)?.is_zero() {
            return Err(WonderError::NotOnSubvariety);
        }
    }
    let l = field.eval(z)?;
    let mut residual = Vec::new();
    for f in defining {
        residual.extend(l.contract(&gradient(f, z)?));
    }
    let point: Vec<String> = z.iter().map(Scalar::to_text).collect();
    Ok(IdentityResidual::new(
        "tangency",
        serde_json::json!({
            "chart_vars": field.chart().vars().to_vec(),
            "point": point,
            "defining": defining.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        }),
        &residual,
    ))
}
