//! Poisson GIT quotients: graded invariant rings for the Segre
//! linearization, brackets on product spaces and on quotients, the
//! semistable chart cover, chart gluing and separation of the boundary.

use serde::Serialize;
use wonderland_exact::{int, Bivector, Jet2, Matrix, Monomial, Poly, RatFn, Rational, Scalar, Zero};

use crate::error::{Result, WonderError};
use crate::geometry::Chart;
use crate::invariants::{
    fraction_bracket, invariant_bracket_closure, invariants_of_degree, ratfn_bracket, ActionSpec, Fraction,
    InvariantSpace,
};
use crate::poisson::field::{BivectorField, IdentityResidual};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generator {
    pub name: String,
    /// Segre degree `k`: multidegree `(k, …, k)`.
    pub degree: u32,
    pub poly: Poly,
}

/// `R = ⊕_k R_k` with `R_k` the invariants of multidegree `(k, …, k)`,
/// computed for `k ≤ bound`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedInvariantRing {
    pub action: String,
    pub bound: u32,
    pub components: Vec<InvariantSpace>,
    pub generators: Vec<Generator>,
}

impl GradedInvariantRing {
    pub fn component(&self, k: u32) -> Option<&InvariantSpace> {
        self.components.get(k as usize)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(InvariantSpace::dim).collect()
    }
}

/// All products of generators of total degree `k`.
fn products_of_degree(gens: &[Generator], k: u32, one: &Poly) -> Vec<Poly> {
    fn rec(gens: &[Generator], start: usize, left: u32, acc: &Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..gens.len() {
            if gens[i].degree <= left {
                rec(gens, i, left - gens[i].degree, &(acc * &gens[i].poly), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, k, one, &mut out);
    out
}

/// Builds the graded ring and chooses generators greedily: in each degree,
/// basis elements not in the span of products of earlier generators.
pub fn graded_ring(spec: &ActionSpec, bound: u32) -> Result<GradedInvariantRing> {
    let ng = spec.ngroups();
    let components = (0..=bound)
        .map(|k| invariants_of_degree(spec, &vec![k; ng]))
        .collect::<Result<Vec<_>>>()?;
    let one = Poly::one(&spec.vars);
    if components[0].basis != vec![one.clone()] {
        return Err(WonderError::Internal("degree-zero invariants are not the constants".into()));
    }
    let mut generators: Vec<Generator> = Vec::new();
    for k in 1..=bound {
        let mons = spec.monomials(&vec![k; ng])?;
        let coeffs = |p: &Poly| p.coefficients_in(&mons).expect("homogeneous of degree k");
        let mut rows: Vec<Vec<Rational>> = products_of_degree(&generators, k, &one).iter().map(coeffs).collect();
        let mut rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.clone())?.rank() };
        for b in &components[k as usize].basis {
            rows.push(coeffs(b));
            let r = Matrix::from_rows(rows.clone())?.rank();
            if r > rank {
                rank = r;
                generators.push(Generator {
                    name: format!("g{}", generators.len() + 1),
                    degree: k,
                    poly: b.clone(),
                });
            } else {
                rows.pop();
            }
        }
    }
    Ok(GradedInvariantRing {
        action: spec.name.clone(),
        bound,
        components,
        generators,
    })
}

/// The affine piece `X_f`, whose coordinate ring is the degree-zero part of
/// `R[f⁻¹]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineChartQuotient {
    pub name: String,
    pub f: Poly,
    pub degree: u32,
}

impl AffineChartQuotient {
    pub fn new(name: &str, f: Poly, degree: u32) -> Self {
        Self {
            name: name.to_string(),
            f,
            degree,
        }
    }

    /// `f(z) ≠ 0` at an ambient point.
    pub fn contains(&self, z: &[Rational]) -> Result<bool> {
        Ok(!self.f.eval(z)?.is_zero())
    }

    /// `h / fʳ`, checked to be of degree zero.
    pub fn fraction(&self, name: &str, h: &Poly, r: u32, groups: &[usize]) -> Result<Fraction> {
        let want = vec![r * self.degree; groups.iter().copied().max().map_or(0, |g| g + 1)];
        if !h.is_zero() && h.multidegree(groups) != Some(want) {
            return Err(WonderError::Invalid(format!("deg {name} ≠ {r}·deg {}", self.name)));
        }
        Fraction::new(name, h.clone(), self.f.pow(r), groups)
    }
}

/// One chart per generator.
pub fn semistable_charts(ring: &GradedInvariantRing) -> Vec<AffineChartQuotient> {
    ring.generators
        .iter()
        .map(|g| AffineChartQuotient::new(&g.name, g.poly.clone(), g.degree))
        .collect()
}

/// Indices of sample points lying in no chart.
pub fn uncovered_points(charts: &[AffineChartQuotient], points: &[Vec<Rational>]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, z) in points.iter().enumerate() {
        let mut covered = false;
        for c in charts {
            if c.contains(z)? {
                covered = true;
                break;
            }
        }
        if !covered {
            out.push(i);
        }
    }
    Ok(out)
}

/// Value and gradient of a rational function at `z`.
fn value_grad(f: &RatFn, z: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
    let grad = (0..z.len())
        .map(|i| f.diff_index(i).eval(z))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((f.eval(z)?, grad))
}

/// A point of `G × X`: the two bivectors and coordinates of each factor.
pub struct ProductPoint<'a> {
    pub pi_g: &'a Bivector,
    pub zg: &'a [Rational],
    pub lambda_x: &'a Bivector,
    pub zx: &'a [Rational],
}

/// `{φ₁⊗f₁, φ₂⊗f₂} = {φ₁,φ₂}_G f₁f₂ + φ₁φ₂ {f₁,f₂}_X`.
pub fn product_bracket(phi1: &RatFn, f1: &RatFn, phi2: &RatFn, f2: &RatFn, p: &ProductPoint) -> Result<Rational> {
    let g_part = ratfn_bracket(p.pi_g, phi1, phi2, p.zg)?;
    let x_part = ratfn_bracket(p.lambda_x, f1, f2, p.zx)?;
    Ok(g_part * f1.eval(p.zx)? * f2.eval(p.zx)? + phi1.eval(p.zg)? * phi2.eval(p.zg)? * x_part)
}

/// The same bracket from the block-diagonal bivector on concatenated
/// coordinates, with `φ⊗f` differentiated as a single function.
pub fn product_bracket_direct(phi1: &RatFn, f1: &RatFn, phi2: &RatFn, f2: &RatFn, p: &ProductPoint) -> Result<Rational> {
    let total = Bivector::new(Matrix::block_diagonal(p.pi_g.matrix(), p.lambda_x.matrix()))?;
    let grad = |phi: &RatFn, f: &RatFn| -> Result<Vec<Rational>> {
        let (pv, pg) = value_grad(phi, p.zg)?;
        let (fv, fg) = value_grad(f, p.zx)?;
        Ok(pg.into_iter().map(|x| x * fv.clone()).chain(fg.into_iter().map(|x| x * pv.clone())).collect())
    };
    Ok(total.bracket_eval(&grad(phi1, f1)?, &grad(phi2, f2)?)?)
}

/// `formula − direct` and `{p*f₁, p*f₂} − p*{f₁,f₂}` at one point.
pub fn projection_residual(phi1: &RatFn, f1: &RatFn, phi2: &RatFn, f2: &RatFn, p: &ProductPoint) -> Result<IdentityResidual> {
    let formula = product_bracket(phi1, f1, phi2, f2, p)?;
    let direct = product_bracket_direct(phi1, f1, phi2, f2, p)?;
    let one = RatFn::constant(phi1.vars(), int(1));
    let pulled = product_bracket_direct(&one, f1, &one, f2, p)?;
    let below = ratfn_bracket(p.lambda_x, f1, f2, p.zx)?;
    let zg: Vec<String> = p.zg.iter().map(Scalar::to_text).collect();
    let zx: Vec<String> = p.zx.iter().map(Scalar::to_text).collect();
    Ok(IdentityResidual::new(
        "product-bracket",
        serde_json::json!({ "zg": zg, "zx": zx, "bracket": formula.to_text() }),
        &[formula - direct, pulled - below],
    ))
}

/// Brackets of invariant generators on the quotient, tabulated at sample
/// points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketTable {
    pub names: Vec<String>,
    pub samples: Vec<TableSample>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableSample {
    pub point: Vec<Matrix>,
    /// `table[i][j] = {g_i, g_j}`.
    pub table: Vec<Vec<String>>,
    /// Jacobiator of each generator triple `i < j < k`.
    pub jacobi: Vec<String>,
}

impl TableSample {
    pub fn is_zero(&self) -> bool {
        self.table
            .iter()
            .flatten()
            .all(|v| Rational::from_text(v).is_ok_and(|x| x.is_zero()))
    }
}

impl BracketTable {
    pub fn jacobi_residual(&self) -> Result<IdentityResidual> {
        let vals = self
            .samples
            .iter()
            .flat_map(|s| s.jacobi.iter())
            .map(|t| Rational::from_text(t))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IdentityResidual::new(
            "quotient-jacobi",
            serde_json::json!({ "generators": self.names }),
            &vals,
        ))
    }

    pub fn antisymmetry_residual(&self) -> Result<IdentityResidual> {
        let mut vals = Vec::new();
        for s in &self.samples {
            let n = s.table.len();
            for i in 0..n {
                for j in 0..n {
                    vals.push(Rational::from_text(&s.table[i][j])? + Rational::from_text(&s.table[j][i])?);
                }
            }
        }
        Ok(IdentityResidual::new(
            "quotient-antisymmetry",
            serde_json::json!({ "generators": self.names }),
            &vals,
        ))
    }
}

/// Bracket table of degree-zero invariants. The closure check on every pair
/// (`samples` holds charts at `m` and at `c·m`) must pass first; a failure
/// is an internal inconsistency.
pub fn affine_quotient_bracket(
    field: &dyn Fn(&Chart) -> Result<BivectorField>,
    gens: &[Fraction],
    samples: &[(Chart, Chart)],
) -> Result<BracketTable> {
    let field_at = |c: &Chart| -> Result<Bivector> { field(c)?.eval(c.center()) };
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let r = invariant_bracket_closure(&field_at, &gens[i], &gens[j], samples)?;
            if !r.pass {
                return Err(WonderError::Internal(format!(
                    "bracket {{{}, {}}} is not invariant",
                    gens[i].name, gens[j].name
                )));
            }
        }
    }
    let mut out = Vec::with_capacity(samples.len());
    for (chart, _) in samples {
        let lf = field(chart)?;
        let z = chart.center();
        let l = lf.eval(z)?;
        let fns = gens.iter().map(|g| g.in_chart(chart)).collect::<Result<Vec<_>>>()?;
        let n = gens.len();
        let mut table = vec![vec![String::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = ratfn_bracket(&l, &fns[i], &fns[j], z)?.to_text();
            }
        }
        let derivs = lf.derivatives();
        let jets = fns.iter().map(|f| Jet2::of_ratfn(f, z)).collect::<std::result::Result<Vec<_>, _>>()?;
        let mut jacobi = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    jacobi.push(derivs.jacobiator_jets(&jets[i], &jets[j], &jets[k], z)?.to_text());
                }
            }
        }
        let point = chart.param(z);
        out.push(TableSample { point, table, jacobi });
    }
    Ok(BracketTable {
        names: gens.iter().map(|g| g.name.clone()).collect(),
        samples: out,
    })
}

/// `h / (fᵃ gᵇ)` on the overlap of two charts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapFunction {
    pub name: String,
    pub h: Poly,
    pub a: u32,
    pub b: u32,
}

/// `{a/s, b/t} = ({a,b}st − {a,t}bs − {s,b}at + {s,t}ab) / (s²t²)`.
fn quotient_bracket(
    field_at: &dyn Fn(&Chart) -> Result<Bivector>,
    chart: &Chart,
    (a, s): (&Fraction, &Fraction),
    (b, t): (&Fraction, &Fraction),
) -> Result<Rational> {
    let z = chart.param(chart.center());
    let amb: Vec<Rational> = z.iter().flat_map(|m| m.entries().to_vec()).collect();
    let v = |f: &Fraction| f.eval_ambient(&amb);
    let br = |f: &Fraction, g: &Fraction| fraction_bracket(field_at, chart, f, g);
    let (av, sv, bv, tv) = (v(a)?, v(s)?, v(b)?, v(t)?);
    let num = br(a, b)? * sv.clone() * tv.clone() - br(a, t)? * bv.clone() * sv.clone() - br(s, b)? * av.clone() * tv.clone()
        + br(s, t)? * av * bv;
    Ok(num / (sv.clone() * sv * tv.clone() * tv))
}

/// Presents `h/(fᵃgᵇ)` on `X_f` as `A / Sᵇ` with `S = g^{deg f}/f^{deg g}`
/// and `A = h g^{b(deg f − 1)} / f^{a + b deg g}`, both in `R[f⁻¹]₀`.
fn chart_presentation(
    f: &AffineChartQuotient,
    g: &AffineChartQuotient,
    u: &OverlapFunction,
    a: u32,
    b: u32,
    groups: &[usize],
) -> Result<(Fraction, Fraction)> {
    let (df, dg) = (f.degree, g.degree);
    let num = &u.h * &g.f.pow(b * (df - 1));
    let big_a = f.fraction(&format!("{}-num", u.name), &num, a + b * dg, groups)?;
    let s = Fraction::new(&format!("{}-den", u.name), g.f.pow(b * df), f.f.pow(b * dg), groups)?;
    Ok((big_a, s))
}

/// Brackets of two functions on `Y_f ∩ Y_g`, computed once through the
/// presentation on `Y_f` and once through `Y_g`, at each overlap chart.
pub fn glue_consistency(
    f: &AffineChartQuotient,
    g: &AffineChartQuotient,
    field_at: &dyn Fn(&Chart) -> Result<Bivector>,
    u: &OverlapFunction,
    w: &OverlapFunction,
    groups: &[usize],
    points: &[Chart],
) -> Result<IdentityResidual> {
    let mut residual = Vec::new();
    let mut values = Vec::new();
    let mut used = 0;
    for chart in points {
        let amb: Vec<Rational> = chart.param(chart.center()).iter().flat_map(|m| m.entries().to_vec()).collect();
        if !f.contains(&amb)? || !g.contains(&amb)? {
            continue;
        }
        used += 1;
        let (uf, wf) = (
            chart_presentation(f, g, u, u.a, u.b, groups)?,
            chart_presentation(f, g, w, w.a, w.b, groups)?,
        );
        let via_f = quotient_bracket(field_at, chart, (&uf.0, &uf.1), (&wf.0, &wf.1))?;
        let (ug, wg) = (
            chart_presentation(g, f, u, u.b, u.a, groups)?,
            chart_presentation(g, f, w, w.b, w.a, groups)?,
        );
        let via_g = quotient_bracket(field_at, chart, (&ug.0, &ug.1), (&wg.0, &wg.1))?;
        let fu = Fraction::new(&u.name, u.h.clone(), &f.f.pow(u.a) * &g.f.pow(u.b), groups)?;
        let fw = Fraction::new(&w.name, w.h.clone(), &f.f.pow(w.a) * &g.f.pow(w.b), groups)?;
        let direct = fraction_bracket(field_at, chart, &fu, &fw)?;
        values.push(via_f.to_text());
        residual.push(via_f.clone() - via_g);
        residual.push(via_f - direct);
    }
    if used == 0 {
        return Err(WonderError::NoOverlap);
    }
    Ok(IdentityResidual::new(
        "glue-consistency",
        serde_json::json!({
            "charts": [f.name, g.name],
            "functions": [u.name, w.name],
            "overlap_points": used,
            "brackets": values,
        }),
        &residual,
    ))
}

/// How two points relate under the invariants of degree `≤ bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Separation {
    /// Separated by the invariants of this degree.
    Separated(u32),
    NotSeparated,
    /// One of the points is killed by every invariant.
    Unstable,
}

fn evals(space: &InvariantSpace, z: &[Rational]) -> Result<Vec<Rational>> {
    Ok(space.basis.iter().map(|b| b.eval(z)).collect::<std::result::Result<_, _>>()?)
}

fn proportional(u: &[Rational], v: &[Rational]) -> bool {
    let rows = vec![u.to_vec(), v.to_vec()];
    Matrix::from_rows(rows).map(|m| m.rank() <= 1).unwrap_or(false)
        && u.iter().any(|x| !x.is_zero()) == v.iter().any(|x| !x.is_zero())
}

pub fn separation(ring: &GradedInvariantRing, p: &[Rational], q: &[Rational]) -> Result<Separation> {
    let mut ev = Vec::new();
    for k in 1..=ring.bound {
        let sp = &ring.components[k as usize];
        ev.push((k, evals(sp, p)?, evals(sp, q)?));
    }
    let zero = |v: &[Rational]| v.iter().all(Zero::is_zero);
    if ev.iter().all(|(_, a, _)| zero(a)) || ev.iter().all(|(_, _, b)| zero(b)) {
        return Ok(Separation::Unstable);
    }
    for (k, a, b) in &ev {
        if !proportional(a, b) {
            return Ok(Separation::Separated(*k));
        }
    }
    Ok(Separation::NotSeparated)
}

/// Every `(boundary, interior)` pair must be separated; pairs involving an
/// unstable point are listed separately and do not count.
pub fn divisor_saturation(
    divisor: &Poly,
    ring: &GradedInvariantRing,
    pairs: &[(Vec<Rational>, Vec<Rational>)],
) -> Result<IdentityResidual> {
    let mut residual = Vec::new();
    let mut report = Vec::new();
    let mut unstable = Vec::new();
    for (i, (b, q)) in pairs.iter().enumerate() {
        if !divisor.eval(b)?.is_zero() || divisor.eval(q)?.is_zero() {
            return Err(WonderError::Invalid(format!("pair {i} is not (boundary, interior)")));
        }
        match separation(ring, b, q)? {
            Separation::Unstable => unstable.push(i),
            Separation::Separated(k) => {
                report.push(serde_json::json!({ "pair": i, "separating_degree": k }));
                residual.push(int(0));
            }
            Separation::NotSeparated => {
                report.push(serde_json::json!({ "pair": i, "separating_degree": null }));
                residual.push(int(1));
            }
        }
    }
    Ok(IdentityResidual::new(
        "divisor-saturation",
        serde_json::json!({ "divisor": divisor.to_string(), "pairs": report, "unstable": unstable }),
        &residual,
    ))
}

/// Monomials of a given multidegree, re-exported for callers building
/// fractions by hand.
pub fn segre_monomials(spec: &ActionSpec, k: u32) -> Result<Vec<Monomial>> {
    spec.monomials(&vec![k; spec.ngroups()])
}
