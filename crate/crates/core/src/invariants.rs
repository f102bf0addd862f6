//! Polynomial invariants of `SL₂` actions, computed as common kernels of the
//! infinitesimal action on homogeneous pieces.

use serde::{Deserialize, Serialize};
use wonderland_exact::{int, vars, Bivector, Matrix, Monomial, Poly, RatFn, Rational, Scalar, Vars, Zero};

use crate::error::{Result, WonderError};
use crate::geometry::Chart;
use crate::lie::{build_sl, LieAlgebra};
use crate::poisson::field::IdentityResidual;
use crate::sampling::Sampler;

/// Infinitesimal action of a Lie algebra on a polynomial ring graded by
/// variable groups. `derivations[x]` has `D_x(z_j) = Σ_i M_ij z_i`.
#[derive(Clone, Debug)]
pub struct ActionSpec {
    pub name: String,
    pub algebra: LieAlgebra,
    pub vars: Vars,
    /// Grading group of each variable.
    pub groups: Vec<usize>,
    pub derivations: Vec<Matrix>,
}

/// How a factor of the ambient space transforms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    /// `A ↦ g A g⁻¹` on `2 × 2` matrices.
    Conjugation,
    /// `u ↦ g u` on `ℂ²`.
    Line,
    /// `v ↦ g⁻ᵀ v` on `ℂ²`.
    DualLine,
}

fn matrix_names(count: usize) -> Vec<String> {
    if count == 1 {
        return ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    }
    (1..=count)
        .flat_map(|t| ["a", "b", "c", "d"].map(move |s| format!("{s}{t}")))
        .collect()
}

impl ActionSpec {
    /// `SL₂` acting factorwise; matrices are named `a,b,c,d` (suffixed by
    /// factor number when there are several), lines `x{j}, y{j}`.
    pub fn sl2_factors(name: &str, kinds: &[FactorKind]) -> Result<Self> {
        let algebra = build_sl(2)?;
        let matrices = kinds.iter().filter(|k| **k == FactorKind::Conjugation).count();
        let mut mnames = matrix_names(matrices).into_iter();
        let mut names = Vec::new();
        let mut groups = Vec::new();
        let mut line = 0;
        for (g, k) in kinds.iter().enumerate() {
            match k {
                FactorKind::Conjugation => names.extend(mnames.by_ref().take(4)),
                FactorKind::Line | FactorKind::DualLine => {
                    line += 1;
                    names.push(format!("x{line}"));
                    names.push(format!("y{line}"));
                }
            }
            groups.resize(names.len(), g);
        }
        let nv = names.len();
        let derivations = (0..algebra.dim())
            .map(|e| {
                let x = algebra.to_matrix(&algebra.basis_vector(e))?;
                let mut m = Matrix::zeros(nv, nv);
                let mut off = 0;
                for k in kinds {
                    match k {
                        FactorKind::Conjugation => {
                            // [A, x]_{rc} = Σ_k A_rk x_kc − x_rk A_kc
                            for r in 0..2 {
                                for c in 0..2 {
                                    let j = off + 2 * r + c;
                                    for k in 0..2 {
                                        m[(off + 2 * r + k, j)] += x[(k, c)].clone();
                                        m[(off + 2 * k + c, j)] -= x[(r, k)].clone();
                                    }
                                }
                            }
                            off += 4;
                        }
                        FactorKind::Line => {
                            for r in 0..2 {
                                for k in 0..2 {
                                    m[(off + k, off + r)] -= x[(r, k)].clone();
                                }
                            }
                            off += 2;
                        }
                        FactorKind::DualLine => {
                            for r in 0..2 {
                                for k in 0..2 {
                                    m[(off + k, off + r)] += x[(k, r)].clone();
                                }
                            }
                            off += 2;
                        }
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name: name.to_string(),
            algebra,
            vars: vars(&names),
            groups,
            derivations,
        })
    }

    /// Simultaneous conjugation on `r` copies of `M₂`.
    pub fn conjugation(r: usize) -> Result<Self> {
        let name = if r == 1 { "conj-m2".to_string() } else { format!("conj-m2x{r}") };
        Self::sl2_factors(&name, &vec![FactorKind::Conjugation; r])
    }

    /// `conj-m2`, `conj-m2x{r}`, `line-c2` or `line-c2x{k}`.
    pub fn by_name(name: &str) -> Result<Self> {
        let count = |prefix: &str| -> Option<usize> {
            let rest = name.strip_prefix(prefix)?;
            if rest.is_empty() {
                Some(1)
            } else {
                rest.strip_prefix('x')?.parse().ok().filter(|&r| r >= 1)
            }
        };
        if let Some(r) = count("conj-m2") {
            Self::conjugation(r)
        } else if let Some(k) = count("line-c2") {
            Self::sl2_factors(name, &vec![FactorKind::Line; k])
        } else {
            Err(WonderError::Invalid(format!("unknown action {name:?}")))
        }
    }

    pub fn ngroups(&self) -> usize {
        self.groups.iter().copied().max().map_or(0, |g| g + 1)
    }

    /// `D_{[x,y]} − [D_x, D_y]` for all basis pairs, flattened.
    pub fn representation_residual(&self) -> Vec<Rational> {
        let g = &self.algebra;
        let n = g.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let br = g.bracket(&g.basis_vector(i), &g.basis_vector(j));
                let mut lhs = Matrix::zeros(self.vars.len(), self.vars.len());
                for (k, c) in br.iter().enumerate() {
                    if !c.is_zero() {
                        lhs = lhs.add(&self.derivations[k].scale(c));
                    }
                }
                let (a, b) = (&self.derivations[i], &self.derivations[j]);
                out.extend(lhs.sub(&a.mul(b).sub(&b.mul(a))).entries().iter().cloned());
            }
        }
        out
    }

    fn images(&self, x: usize) -> Vec<Poly> {
        let m = &self.derivations[x];
        let nv = self.vars.len();
        (0..nv)
            .map(|j| {
                let mut p = Poly::zero(&self.vars);
                for i in 0..nv {
                    if !m[(i, j)].is_zero() {
                        p = &p + &Poly::var(&self.vars, i).scale(&m[(i, j)]);
                    }
                }
                p
            })
            .collect()
    }

    /// `D_x f` for the basis element `x`.
    pub fn derive(&self, x: usize, f: &Poly) -> Poly {
        let images = self.images(x);
        let mut out = Poly::zero(&self.vars);
        for (j, img) in images.iter().enumerate() {
            if !img.is_zero() {
                out = &out + &(&f.diff_index(j) * img);
            }
        }
        out
    }

    pub fn annihilates(&self, f: &Poly) -> bool {
        (0..self.derivations.len()).all(|x| self.derive(x, f).is_zero())
    }

    /// Monomials of the given multidegree in descending graded-lex order.
    pub fn monomials(&self, degree: &[u32]) -> Result<Vec<Monomial>> {
        if degree.len() != self.ngroups() {
            return Err(WonderError::Invalid(format!(
                "multidegree has {} entries, action has {} groups",
                degree.len(),
                self.ngroups()
            )));
        }
        let total: u32 = degree.iter().sum();
        let nv = self.vars.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; nv];
        let mut left = degree.to_vec();
        fill(&self.groups, 0, &mut cur, &mut left, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        debug_assert!(out.iter().all(|m| m.degree() == total));
        Ok(out)
    }
}

fn fill(groups: &[usize], i: usize, cur: &mut Vec<u32>, left: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == cur.len() {
        if left.iter().all(|&l| l == 0) {
            let mut m = Monomial::one(cur.len());
            for (k, &e) in cur.iter().enumerate() {
                for _ in 0..e {
                    m = m.mul(&Monomial::unit(cur.len(), k));
                }
            }
            out.push(m);
        }
        return;
    }
    let g = groups[i];
    let last_in_group = !groups[i + 1..].contains(&g);
    let range: Vec<u32> = if last_in_group { vec![left[g]] } else { (0..=left[g]).collect() };
    for e in range {
        cur[i] = e;
        left[g] -= e;
        fill(groups, i + 1, cur, left, out);
        left[g] += e;
    }
    cur[i] = 0;
}

/// Invariants of one (multi)degree, as an echelonized basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSpace {
    pub action: String,
    pub degree: Vec<u32>,
    pub basis: Vec<Poly>,
}

impl InvariantSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether `f` lies in the span of the basis.
    pub fn contains(&self, spec: &ActionSpec, f: &Poly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let mons = spec.monomials(&self.degree)?;
        let Some(v) = f.coefficients_in(&mons) else {
            return Ok(false);
        };
        let mut rows: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| b.coefficients_in(&mons).expect("basis in degree"))
            .collect();
        let r0 = rows.len();
        rows.push(v);
        let m = Matrix::from_rows(rows)?;
        Ok(m.rank() == r0)
    }
}

pub fn invariants_of_degree(spec: &ActionSpec, degree: &[u32]) -> Result<InvariantSpace> {
    let mons = spec.monomials(degree)?;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for x in 0..spec.derivations.len() {
        let images = spec.images(x);
        let cols: Vec<Vec<Rational>> = mons
            .iter()
            .map(|m| {
                let p = Poly::from_coefficients(&spec.vars, std::slice::from_ref(m), &[int(1)]);
                let mut d = Poly::zero(&spec.vars);
                for (j, img) in images.iter().enumerate() {
                    if m.exponents()[j] > 0 && !img.is_zero() {
                        d = &d + &(&p.diff_index(j) * img);
                    }
                }
                d.coefficients_in(&mons).ok_or_else(|| {
                    WonderError::Internal("derivation does not preserve the grading".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for r in 0..mons.len() {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    let basis = if mons.is_empty() {
        Vec::new()
    } else if rows.is_empty() {
        wonderland_exact::echelon_basis(
            (0..mons.len())
                .map(|i| (0..mons.len()).map(|j| int((i == j) as i64)).collect())
                .collect(),
            mons.len(),
        )
    } else {
        Matrix::from_rows(rows)?.kernel_basis()
    };
    Ok(InvariantSpace {
        action: spec.name.clone(),
        degree: degree.to_vec(),
        basis: basis
            .iter()
            .map(|v| Poly::from_coefficients(&spec.vars, &mons, v))
            .collect(),
    })
}

fn trace_of(v: &Vars, off: usize) -> Poly {
    &Poly::var(v, off) + &Poly::var(v, off + 3)
}

fn det_of(v: &Vars, off: usize) -> Poly {
    &(&Poly::var(v, off) * &Poly::var(v, off + 3)) - &(&Poly::var(v, off + 1) * &Poly::var(v, off + 2))
}

/// `tr(AB)` for matrices at variable offsets `p`, `q`.
fn trace_product(v: &Vars, p: usize, q: usize) -> Poly {
    let e = |o: usize, i: usize, j: usize| Poly::var(v, o + 2 * i + j);
    let mut out = Poly::zero(v);
    for i in 0..2 {
        for k in 0..2 {
            out = &out + &(&e(p, i, k) * &e(q, k, i));
        }
    }
    out
}

/// `r = 1`: `(tr A, det A)`; `r = 2`: `(tr A, tr B, tr AB)`. Each is checked
/// against the invariant space of its degree.
pub fn trace_generators(r: usize) -> Result<(ActionSpec, Vec<(String, Poly)>)> {
    let spec = match r {
        1 | 2 => ActionSpec::conjugation(r)?,
        _ => return Err(WonderError::Unsupported(format!("trace generators for r = {r}"))),
    };
    let v = spec.vars.clone();
    let gens = if r == 1 {
        vec![("tr".to_string(), trace_of(&v, 0)), ("det".to_string(), det_of(&v, 0))]
    } else {
        vec![
            ("trA".to_string(), trace_of(&v, 0)),
            ("trB".to_string(), trace_of(&v, 4)),
            ("trAB".to_string(), trace_product(&v, 0, 4)),
        ]
    };
    for (name, g) in &gens {
        let deg = g
            .multidegree(&spec.groups)
            .ok_or_else(|| WonderError::Internal(format!("{name} is not multihomogeneous")))?;
        if !invariants_of_degree(&spec, &deg)?.contains(&spec, g)? {
            return Err(WonderError::Internal(format!("{name} is not invariant")));
        }
    }
    Ok((spec, gens))
}

/// Common polynomial helpers for `2 × 2` matrix factors at variable offsets.
pub mod matrix_polys {
    use super::*;

    pub fn trace(v: &Vars, off: usize) -> Poly {
        trace_of(v, off)
    }

    pub fn det(v: &Vars, off: usize) -> Poly {
        det_of(v, off)
    }

    pub fn trace_prod(v: &Vars, p: usize, q: usize) -> Poly {
        trace_product(v, p, q)
    }

    /// Entries of the product of the matrices at the given offsets.
    pub fn product(v: &Vars, offsets: &[usize]) -> Vec<Poly> {
        let mut acc: Vec<Poly> = (0..4)
            .map(|k| Poly::constant(v, int((k == 0 || k == 3) as i64)))
            .collect();
        for &o in offsets {
            let mut next = Vec::with_capacity(4);
            for i in 0..2 {
                for j in 0..2 {
                    let mut s = Poly::zero(v);
                    for k in 0..2 {
                        s = &s + &(&acc[2 * i + k] * &Poly::var(v, o + 2 * k + j));
                    }
                    next.push(s);
                }
            }
            acc = next;
        }
        acc
    }

    /// Trace of the product of the matrices at the given offsets.
    pub fn trace_word(v: &Vars, offsets: &[usize]) -> Poly {
        let p = product(v, offsets);
        &p[0] + &p[3]
    }
}

/// Where sample points for [`express_in_generators`] are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    /// All of affine space.
    Affine,
    /// Consecutive blocks of four variables are `SL₂` matrices.
    Sl2,
}

impl Domain {
    fn sample(&self, s: &mut Sampler, nv: usize) -> Vec<Rational> {
        match self {
            Domain::Affine => s.vector(nv, 5),
            Domain::Sl2 => (0..nv / 4).flat_map(|_| s.sl(2, 4).entries().to_vec()).collect(),
        }
    }

    /// Whether `p` vanishes on the domain, decided symbolically.
    fn vanishes(&self, p: &Poly) -> Result<bool> {
        match self {
            Domain::Affine => Ok(p.is_zero()),
            Domain::Sl2 => {
                let v = p.vars();
                let images: Vec<RatFn> = (0..v.len())
                    .map(|i| {
                        if i % 4 == 3 {
                            let a = Poly::var(v, i - 3);
                            let bc = &Poly::var(v, i - 2) * &Poly::var(v, i - 1);
                            Ok(RatFn::new(&Poly::one(v) + &bc, a)?)
                        } else {
                            Ok(RatFn::from_poly(Poly::var(v, i)))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(substitute(p, &images).is_zero())
            }
        }
    }
}

/// `p(images)` as a rational function.
pub fn substitute(p: &Poly, images: &[RatFn]) -> RatFn {
    let target = images[0].vars().clone();
    let mut out = RatFn::constant(&target, int(0));
    for (m, c) in p.terms() {
        let mut t = RatFn::constant(&target, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t = t.mul(&images[i].pow(e));
            }
        }
        out = out.add(&t);
    }
    out
}

/// Exponent vectors of total degree at most `bound` in `k` variables,
/// ascending by degree.
fn exponents_up_to(k: usize, bound: u32) -> Vec<Monomial> {
    (0..=bound)
        .flat_map(|d| wonderland_exact::monomials_of_degree(k, d))
        .collect()
}

/// Writes `f` as a polynomial of degree at most `bound` in `gens`, fitting
/// coefficients at seeded points of `domain` and then confirming the
/// expression symbolically. `Ok(None)` means no expression at this bound.
pub fn express_in_generators(
    f: &Poly,
    gens: &[(String, Poly)],
    bound: u32,
    domain: Domain,
    seed: u64,
) -> Result<Option<Poly>> {
    let nv = f.nvars();
    let basis = exponents_up_to(gens.len(), bound);
    let n = basis.len();
    let gen_vars = vars(&gens.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>());
    let eval_row = |z: &[Rational]| -> Result<Vec<Rational>> {
        let g: Vec<Rational> = gens.iter().map(|(_, p)| p.eval(z)).collect::<std::result::Result<_, _>>()?;
        basis
            .iter()
            .map(|m| {
                Ok(Poly::from_coefficients(&gen_vars, std::slice::from_ref(m), &[int(1)]).eval(&g)?)
            })
            .collect()
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut sampler = Sampler::new(seed, "express", 0);
    let max_points = 4 * n + 20;
    let mut rank = 0;
    for attempt in 0..max_points {
        let z = domain.sample(&mut sampler, nv);
        rows.push(eval_row(&z)?);
        rhs.push(f.eval(&z)?);
        if attempt + 1 >= n + 4 {
            rank = Matrix::from_rows(rows.clone())?.rank();
            if rank == n {
                break;
            }
        }
    }
    if rank < n {
        return Err(WonderError::InsufficientSamples(format!(
            "rank {rank} of {n} after {max_points} points"
        )));
    }
    let Some(coeffs) = Matrix::from_rows(rows)?.solve(&rhs) else {
        return Ok(None);
    };
    let expr = Poly::from_coefficients(&gen_vars, &basis, &coeffs);
    let expanded = expr.compose(&gens.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>())?;
    if !domain.vanishes(&(f - &expanded))? {
        return Ok(None);
    }
    Ok(Some(expr))
}

/// A ratio of ambient polynomials of equal multidegree, hence a function on
/// a product of projective spaces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fraction {
    pub name: String,
    pub num: Poly,
    pub den: Poly,
}

impl Fraction {
    pub fn new(name: &str, num: Poly, den: Poly, groups: &[usize]) -> Result<Self> {
        let dn = num.multidegree(groups);
        let dd = den.multidegree(groups);
        if den.is_zero() || dn.is_none() || (!num.is_zero() && dn != dd) {
            return Err(WonderError::Invalid(format!("{name} is not of degree zero")));
        }
        Ok(Self {
            name: name.to_string(),
            num,
            den,
        })
    }

    /// The fraction in the coordinates of a chart whose pieces together
    /// parametrize the ambient variables in order.
    pub fn in_chart(&self, chart: &Chart) -> Result<RatFn> {
        let images: Vec<Poly> = chart
            .param_poly()
            .iter()
            .flat_map(|pm| {
                (0..pm.rows).flat_map(move |i| (0..pm.cols).map(move |j| pm.get(i, j).clone()))
            })
            .collect();
        Ok(RatFn::new(self.num.compose(&images)?, self.den.compose(&images)?)?)
    }

    pub fn eval_ambient(&self, z: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(z)?;
        if d.is_zero() {
            return Err(WonderError::OutsideChart);
        }
        Ok(self.num.eval(z)? / d)
    }
}

/// `Λ(df, dg)` at `z` for rational functions in chart coordinates.
pub fn ratfn_bracket(l: &Bivector, f: &RatFn, g: &RatFn, z: &[Rational]) -> Result<Rational> {
    let df = (0..z.len()).map(|i| f.diff_index(i).eval(z)).collect::<std::result::Result<Vec<_>, _>>()?;
    let dg = (0..z.len()).map(|i| g.diff_index(i).eval(z)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(l.bracket_eval(&df, &dg)?)
}

/// `{f, g}` at the center of `chart`, with the bivector supplied by `field_at`.
pub fn fraction_bracket(
    field_at: &dyn Fn(&Chart) -> Result<Bivector>,
    chart: &Chart,
    f: &Fraction,
    g: &Fraction,
) -> Result<Rational> {
    let l = field_at(chart)?;
    ratfn_bracket(&l, &f.in_chart(chart)?, &g.in_chart(chart)?, chart.center())
}

/// Checks `{f, g}(c·m) = {f, g}(m)` for each `(chart at m, chart at c·m)`.
pub fn invariant_bracket_closure(
    field_at: &dyn Fn(&Chart) -> Result<Bivector>,
    f: &Fraction,
    g: &Fraction,
    samples: &[(Chart, Chart)],
) -> Result<IdentityResidual> {
    let mut residual = Vec::with_capacity(samples.len());
    let mut values = Vec::with_capacity(samples.len());
    for (at_m, at_cm) in samples {
        let before = fraction_bracket(field_at, at_m, f, g)?;
        let after = fraction_bracket(field_at, at_cm, f, g)?;
        values.push(before.to_text());
        residual.push(after - before);
    }
    Ok(IdentityResidual::new(
        "invariant-bracket-closure",
        serde_json::json!({ "f": f.name, "g": g.name, "brackets": values }),
        &residual,
    ))
}
