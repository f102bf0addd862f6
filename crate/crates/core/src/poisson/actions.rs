//! Exact checks of multiplicativity of `Π` and of the Poisson-action
//! identities, transported through chart Jacobians.

use serde::{Deserialize, Serialize};
use serde_json::json;
use wonderland_exact::{Bivector, Matrix, Rational};

use crate::error::{Result, WonderError};
use crate::geometry::{
    grassmann_chart_at, pgl2_point_to_lagrangian, proj_chart_at, Chart, GroupPair, LagrangianPoint,
    ProjMatrixPoint,
};
use crate::lie::{Double, DoubleSplitting};
use crate::poisson::field::IdentityResidual;
use crate::poisson::structures::{
    bd_pi_at, evens_lu_at, mixed_product_at, translated_r_at, CrossTerm, Translation,
};

/// A point of `Ḡ` in either model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GbarPoint {
    Proj(ProjMatrixPoint),
    Lagrangian(LagrangianPoint),
}

impl GbarPoint {
    pub fn ambient(&self) -> Matrix {
        match self {
            GbarPoint::Proj(p) => p.rep().clone(),
            GbarPoint::Lagrangian(l) => l.basis().clone(),
        }
    }

    pub fn chart(&self) -> Result<Chart> {
        match self {
            GbarPoint::Proj(p) => proj_chart_at(std::slice::from_ref(p.rep())),
            GbarPoint::Lagrangian(l) => grassmann_chart_at(l.basis()),
        }
    }

    pub fn act(&self, double: &Double, pair: &GroupPair) -> Result<Self> {
        Ok(match self {
            GbarPoint::Proj(p) => GbarPoint::Proj(p.act(&pair.g, &pair.h)?),
            GbarPoint::Lagrangian(l) => GbarPoint::Lagrangian(l.act(&double.g, pair)?),
        })
    }

    fn is_proj(&self) -> bool {
        matches!(self, GbarPoint::Proj(_))
    }

    /// `(g, h)` applied to an ambient representative (or velocity, the map
    /// being linear).
    fn act_ambient(&self, double: &Double, m: &Matrix, g: &Matrix, h: &Matrix) -> Result<Matrix> {
        if self.is_proj() {
            Ok(g.mul(m).mul(&h.inverse()?))
        } else {
            let block = Matrix::block_diagonal(&double.g.adjoint_action(g)?, &double.g.adjoint_action(h)?);
            Ok(m.mul(&block.transpose()))
        }
    }

    /// Derivative of `(g, h) ↦ (g, h)·m` along `(ġ, ḣ)`.
    fn act_group_derivative(
        &self,
        double: &Double,
        m: &Matrix,
        (g, h): (&Matrix, &Matrix),
        (gd, hd): (&Matrix, &Matrix),
    ) -> Result<Matrix> {
        let gi = g.inverse()?;
        let hi = h.inverse()?;
        if self.is_proj() {
            let gmh = g.mul(m).mul(&hi);
            Ok(gd.mul(m).mul(&hi).sub(&gmh.mul(hd).mul(&hi)))
        } else {
            let dad = |x: &Matrix, xd: &Matrix, xi: &Matrix| -> Result<Matrix> {
                let xi_dot = xd.mul(xi);
                let n = xi_dot.rows();
                let shift = Matrix::identity(n).scale(&(xi_dot.trace() / Rational::from_integer(n.into())));
                let traceless = double.g.from_matrix(&xi_dot.sub(&shift))?;
                Ok(double.g.ad(&traceless).mul(&double.g.adjoint_action(x)?))
            };
            let block = Matrix::block_diagonal(&dad(g, gd, &gi)?, &dad(h, hd, &hi)?);
            Ok(m.mul(&block.transpose()))
        }
    }

    fn canonical(&self) -> Matrix {
        match self {
            GbarPoint::Proj(p) => p.rep().clone(),
            GbarPoint::Lagrangian(l) => l.basis().clone(),
        }
    }
}

fn product_chart(points: &[GbarPoint]) -> Result<Chart> {
    let pieces = points
        .iter()
        .map(|p| Ok(p.chart()?.pieces()[0].clone()))
        .collect::<Result<Vec<_>>>()?;
    let ambient: Vec<Matrix> = points.iter().map(GbarPoint::ambient).collect();
    Chart::new(pieces, &ambient)
}

fn pair_chart(g: &Matrix, h: &Matrix) -> Result<Chart> {
    proj_chart_at(&[g.clone(), h.clone()])
}

fn difference(a: &Matrix, b: &Matrix) -> Vec<Rational> {
    a.sub(b).entries().to_vec()
}

/// `Π_{uv} − (L_u)_*Π_v − (R_v)_*Π_u`.
pub fn multiplicativity_residual(s: &DoubleSplitting, u: &GroupPair, v: &GroupPair) -> Result<IdentityResidual> {
    let w = u.mul(v);
    let tw = pair_chart(&w.g, &w.h)?;
    let lhs = bd_pi_at(&tw, s, tw.center())?;

    let cv = pair_chart(&v.g, &v.h)?;
    let (jl, _) = cv.push_jacobian(
        cv.center(),
        &tw,
        |a| Ok(vec![u.g.mul(&a[0]), u.h.mul(&a[1])]),
        |_, d| Ok(vec![u.g.mul(&d[0]), u.h.mul(&d[1])]),
    )?;
    let left = bd_pi_at(&cv, s, cv.center())?.push_forward(&jl);

    let cu = pair_chart(&u.g, &u.h)?;
    let (jr, _) = cu.push_jacobian(
        cu.center(),
        &tw,
        |a| Ok(vec![a[0].mul(&v.g), a[1].mul(&v.h)]),
        |_, d| Ok(vec![d[0].mul(&v.g), d[1].mul(&v.h)]),
    )?;
    let right = bd_pi_at(&cu, s, cu.center())?.push_forward(&jr);

    Ok(IdentityResidual::from_bivector(
        "pi-multiplicativity",
        json!({ "u": u, "v": v }),
        &lhs.sub(&left).sub(&right),
    ))
}

/// `Λ_{u·m} − (ρ_u)_*Λ_m − (ρ_m)_*Π_u`, followed by the two proof identities
/// `ρ_{u·m} = ρ_m ∘ R_u`, `ρ_u ∘ ρ_m = ρ_m ∘ L_u` (at the probe `v`) and their
/// bivector forms `(ρ_m)_* r^R_u = Λ_{u·m}`, `(ρ_m)_* r^L_u = (ρ_u)_*Λ_m`.
pub fn poisson_action_residual(
    s: &DoubleSplitting,
    u: &GroupPair,
    m: &GbarPoint,
    probe: &GroupPair,
) -> Result<Vec<IdentityResidual>> {
    let d = &s.double;
    let um = m.act(d, u)?;
    let tgt = um.chart()?;
    let lhs = evens_lu_at(&tgt, s, tgt.center())?;

    let cm = m.chart()?;
    let (j1, _) = cm.push_jacobian(
        cm.center(),
        &tgt,
        |a| Ok(vec![m.act_ambient(d, &a[0], &u.g, &u.h)?]),
        |_, v| Ok(vec![m.act_ambient(d, &v[0], &u.g, &u.h)?]),
    )?;
    let t1 = evens_lu_at(&cm, s, cm.center())?.push_forward(&j1);

    let cu = pair_chart(&u.g, &u.h)?;
    let base = m.ambient();
    let (j2, _) = cu.push_jacobian(
        cu.center(),
        &tgt,
        |a| Ok(vec![m.act_ambient(d, &base, &a[0], &a[1])?]),
        |a, v| Ok(vec![m.act_group_derivative(d, &base, (&a[0], &a[1]), (&v[0], &v[1]))?]),
    )?;
    let t2 = bd_pi_at(&cu, s, cu.center())?.push_forward(&j2);

    let sample = json!({ "pair": u, "point": m, "probe": probe });
    let main = IdentityResidual::from_bivector("poisson-action", sample.clone(), &lhs.sub(&t1).sub(&t2));

    let right_map = difference(
        &um.act(d, probe)?.canonical(),
        &m.act(d, &probe.mul(u))?.canonical(),
    );
    let left_map = difference(
        &m.act(d, probe)?.act(d, u)?.canonical(),
        &m.act(d, &u.mul(probe))?.canonical(),
    );
    let r_right = translated_r_at(&cu, s, Translation::Right, cu.center())?.push_forward(&j2);
    let r_left = translated_r_at(&cu, s, Translation::Left, cu.center())?.push_forward(&j2);
    Ok(vec![
        main,
        IdentityResidual::new("action-map-right", sample.clone(), &right_map),
        IdentityResidual::new("action-map-left", sample.clone(), &left_map),
        IdentityResidual::from_bivector("action-right-translates", sample.clone(), &r_right.sub(&lhs)),
        IdentityResidual::from_bivector("action-left-translates", sample, &r_left.sub(&t1)),
    ])
}

/// Restriction of `Π` to the diagonal at `(c, c)`: checks that all four
/// blocks agree (tangency to `G_Δ`) and returns the common block.
pub fn diagonal_restriction(s: &DoubleSplitting, c: &Matrix) -> Result<(Bivector, Vec<Rational>)> {
    let chart = pair_chart(c, c)?;
    let pi = bd_pi_at(&chart, s, chart.center())?;
    let k = chart.pieces()[0].dim();
    let first: Vec<usize> = (0..k).collect();
    let second: Vec<usize> = (k..2 * k).collect();
    let m = pi.matrix();
    let b11 = m.select_rows(&first).select_columns(&first);
    let mut residual = Vec::new();
    for (r, cidx) in [(&first, &second), (&second, &first), (&second, &second)] {
        residual.extend(difference(&m.select_rows(r).select_columns(cidx), &b11));
    }
    Ok((Bivector::new(b11)?, residual))
}

/// Poisson-action condition for `G_Δ` acting by conjugation on `Ḡⁿ` with the
/// mixed product bivector, plus the subgroup check for `G_Δ ⊂ G × G` and the
/// identification with conjugation through the Lagrangian model.
pub fn diagonal_action_residual(
    s: &DoubleSplitting,
    c: &Matrix,
    points: &[GbarPoint],
    cross: CrossTerm,
) -> Result<Vec<IdentityResidual>> {
    if points.is_empty() {
        return Err(WonderError::Invalid("need at least one factor".into()));
    }
    let d = &s.double;
    let pair = GroupPair::diagonal(c.clone())?;
    let images = points
        .iter()
        .map(|p| p.act(d, &pair))
        .collect::<Result<Vec<_>>>()?;
    let tgt = product_chart(&images)?;
    let lhs = mixed_product_at(&tgt, s, cross, tgt.center())?;

    let src = product_chart(points)?;
    let (j1, _) = src.push_jacobian(
        src.center(),
        &tgt,
        |a| a.iter().zip(points).map(|(m, p)| p.act_ambient(d, m, c, c)).collect(),
        |_, v| v.iter().zip(points).map(|(m, p)| p.act_ambient(d, m, c, c)).collect(),
    )?;
    let t1 = mixed_product_at(&src, s, cross, src.center())?.push_forward(&j1);

    let (pi_g, subgroup) = diagonal_restriction(s, c)?;
    let cg = proj_chart_at(std::slice::from_ref(c))?;
    let bases: Vec<Matrix> = points.iter().map(GbarPoint::ambient).collect();
    let (j2, _) = cg.push_jacobian(
        cg.center(),
        &tgt,
        |a| {
            bases
                .iter()
                .zip(points)
                .map(|(m, p)| p.act_ambient(d, m, &a[0], &a[0]))
                .collect()
        },
        |a, v| {
            bases
                .iter()
                .zip(points)
                .map(|(m, p)| p.act_group_derivative(d, m, (&a[0], &a[0]), (&v[0], &v[0])))
                .collect()
        },
    )?;
    let t2 = pi_g.push_forward(&j2);

    let sample = json!({ "g": c, "points": points, "cross": cross });
    let mut out = vec![
        IdentityResidual::from_bivector("diagonal-action", sample.clone(), &lhs.sub(&t1).sub(&t2)),
        IdentityResidual::new("diagonal-subgroup", sample.clone(), &subgroup),
    ];
    let mut conj = Vec::new();
    for p in points {
        if let GbarPoint::Proj(a) = p {
            let lhs = pgl2_point_to_lagrangian(&d.g, &a.conjugate(c)?)?;
            let rhs = pgl2_point_to_lagrangian(&d.g, a)?.act(&d.g, &pair)?;
            conj.extend(difference(lhs.basis(), rhs.basis()));
        }
    }
    out.push(IdentityResidual::new("diagonal-is-conjugation", sample, &conj));
    Ok(out)
}
