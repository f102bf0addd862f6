//! Representation and character varieties of finitely presented groups in
//! `SL₂`/`PGL₂`: words, relators, trace coordinates, boundary strata of
//! `Ḡʳ` and the rank-one compactified model.

use serde::{Deserialize, Serialize};
use wonderland_exact::{int, monomials_of_degree, vars, Matrix, Poly, Rational, Scalar, Zero};

use crate::error::{Result, WonderError};
use crate::geometry::{boundary_detect, normalize_projective, segre_factor, ProjMatrixPoint};
use crate::invariants::{invariants_of_degree, ActionSpec, FactorKind, InvariantSpace};
use crate::poisson::field::IdentityResidual;

/// `⟨g₁, …, g_r | relators⟩`; letters are `±i` for `g_i^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson", into = "PresentationJson")]
pub struct Presentation {
    r: usize,
    relators: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    r: usize,
    relators: Vec<Vec<i64>>,
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = WonderError;

    fn try_from(j: PresentationJson) -> Result<Self> {
        Self::new(j.r, j.relators)
    }
}

impl From<Presentation> for PresentationJson {
    fn from(p: Presentation) -> Self {
        Self {
            r: p.r,
            relators: p.relators,
        }
    }
}

fn check_word(word: &[i64], r: usize) -> Result<()> {
    for &l in word {
        if l == 0 || l.unsigned_abs() as usize > r {
            return Err(WonderError::GeneratorOutOfRange { index: l, count: r });
        }
    }
    Ok(())
}

impl Presentation {
    pub fn new(r: usize, relators: Vec<Vec<i64>>) -> Result<Self> {
        for w in &relators {
            check_word(w, r)?;
            if w.windows(2).any(|p| p[0] == -p[1]) {
                return Err(WonderError::Invalid(format!("relator {w:?} is not reduced")));
            }
        }
        Ok(Self { r, relators })
    }

    pub fn free(r: usize) -> Self {
        Self {
            r,
            relators: Vec::new(),
        }
    }

    /// `⟨a, b | aba⁻¹b⁻¹⟩`.
    pub fn z2() -> Self {
        Self {
            r: 2,
            relators: vec![vec![1, 2, -1, -2]],
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn relators(&self) -> &[Vec<i64>] {
        &self.relators
    }
}

/// A tuple of `SL₂` matrices; as a `PGL₂` point it is taken up to signs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Matrix>", into = "Vec<Matrix>")]
pub struct RepresentationPoint {
    mats: Vec<Matrix>,
}

impl TryFrom<Vec<Matrix>> for RepresentationPoint {
    type Error = WonderError;

    fn try_from(m: Vec<Matrix>) -> Result<Self> {
        Self::new(m)
    }
}

impl From<RepresentationPoint> for Vec<Matrix> {
    fn from(p: RepresentationPoint) -> Self {
        p.mats
    }
}

impl RepresentationPoint {
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != 2 || m.cols() != 2 || m.determinant() != int(1) {
                return Err(WonderError::Invalid(format!("matrix {} is not in SL2", i + 1)));
            }
        }
        Ok(Self { mats })
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn conjugate(&self, g: &Matrix) -> Result<Self> {
        let gi = g.inverse()?;
        Self::new(self.mats.iter().map(|m| g.mul(m).mul(&gi)).collect())
    }
}

/// Product of the letters of `word`, inverses included.
pub fn evaluate_word(point: &RepresentationPoint, word: &[i64]) -> Result<Matrix> {
    check_word(word, point.mats.len())?;
    let mut acc = Matrix::identity(2);
    for &l in word {
        let m = &point.mats[l.unsigned_abs() as usize - 1];
        acc = if l > 0 { acc.mul(m) } else { acc.mul(&m.inverse()?) };
    }
    Ok(acc)
}

pub fn is_scalar(m: &Matrix) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| if i == j { m[(i, i)] == m[(0, 0)] } else { m[(i, j)].is_zero() }))
}

/// Every relator evaluates to a scalar matrix.
pub fn relator_check(pres: &Presentation, point: &RepresentationPoint) -> Result<bool> {
    if point.mats.len() != pres.r {
        return Err(WonderError::Invalid(format!(
            "presentation has {} generators, point has {}",
            pres.r,
            point.mats.len()
        )));
    }
    for w in &pres.relators {
        if !is_scalar(&evaluate_word(point, w)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(tr A, tr B, tr AB)`.
pub fn trace_point(point: &RepresentationPoint) -> Result<[Rational; 3]> {
    let [a, b] = point.mats.as_slice() else {
        return Err(WonderError::Invalid(format!("trace coordinates need r = 2, got {}", point.mats.len())));
    };
    Ok([a.trace(), b.trace(), a.mul(b).trace()])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FactorMarker {
    Interior { matrix: Matrix },
    /// `[u vᵀ]` with `[u], [v] ∈ ℙ¹`.
    Boundary {
        #[serde(with = "wonderland_exact::json::scalar_vec")]
        u: Vec<Rational>,
        #[serde(with = "wonderland_exact::json::scalar_vec")]
        v: Vec<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryStratum {
    pub factors: Vec<FactorMarker>,
    /// One-based indices of the boundary factors.
    pub signature: Vec<usize>,
}

impl BoundaryStratum {
    pub fn is_interior(&self) -> bool {
        self.signature.is_empty()
    }

    /// Factor kinds of the parabolic model: a matrix for each interior factor,
    /// `G/B × G/B` for each boundary one.
    pub fn kinds(&self) -> Vec<FactorKind> {
        self.factors
            .iter()
            .flat_map(|f| match f {
                FactorMarker::Interior { .. } => vec![FactorKind::Conjugation],
                FactorMarker::Boundary { .. } => vec![FactorKind::Line, FactorKind::DualLine],
            })
            .collect()
    }
}

pub fn stratify(tuple: &[ProjMatrixPoint]) -> Result<BoundaryStratum> {
    let mut factors = Vec::with_capacity(tuple.len());
    let mut signature = Vec::new();
    for (i, p) in tuple.iter().enumerate() {
        if p.n() != 2 {
            return Err(WonderError::Invalid("stratification is for 2 × 2 matrices".into()));
        }
        if boundary_detect(p) {
            let (u, v) = segre_factor(p)?;
            factors.push(FactorMarker::Boundary { u, v });
            signature.push(i + 1);
        } else {
            factors.push(FactorMarker::Interior { matrix: p.rep().clone() });
        }
    }
    Ok(BoundaryStratum { factors, signature })
}

/// Compares `stratify(g·tuple·g⁻¹)` with the stratum of `tuple` moved by
/// `g`: matrices conjugated, `[u] ↦ [gu]`, `[v] ↦ [g⁻ᵀv]`.
pub fn stratify_equivariance(tuple: &[ProjMatrixPoint], g: &Matrix) -> Result<IdentityResidual> {
    let before = stratify(tuple)?;
    let moved: Vec<ProjMatrixPoint> = tuple.iter().map(|p| p.conjugate(g)).collect::<Result<_>>()?;
    let after = stratify(&moved)?;
    let git = g.inverse()?.transpose();
    let mut residual = vec![if before.signature == after.signature { int(0) } else { int(1) }];
    for (b, a) in before.factors.iter().zip(&after.factors) {
        match (b, a) {
            (FactorMarker::Interior { matrix }, FactorMarker::Interior { matrix: m2 }) => {
                let expect = ProjMatrixPoint::new(matrix.clone())?.conjugate(g)?;
                residual.extend(expect.rep().sub(m2).entries().iter().cloned());
            }
            (FactorMarker::Boundary { u, v }, FactorMarker::Boundary { u: u2, v: v2 }) => {
                let gu = normalize_projective(&g.mul_vec(u))?;
                let gv = normalize_projective(&git.mul_vec(v))?;
                residual.extend(gu.iter().zip(u2).map(|(x, y)| x.clone() - y.clone()));
                residual.extend(gv.iter().zip(v2).map(|(x, y)| x.clone() - y.clone()));
            }
            _ => residual.push(int(1)),
        }
    }
    Ok(IdentityResidual::new(
        "stratify-equivariance",
        serde_json::json!({ "tuple": tuple, "g": g, "signature": before.signature }),
        &residual,
    ))
}

/// Invariants of the mixed action `g·(h, [u], [v], …)` of the given kinds.
pub fn parabolic_invariants(kinds: &[FactorKind], degree: &[u32]) -> Result<InvariantSpace> {
    let spec = ActionSpec::sl2_factors("parabolic", kinds)?;
    invariants_of_degree(&spec, degree)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rank1Report {
    /// The torus closure inside `ℙ(M₂)`.
    pub torus: String,
    /// `(name, restriction to [x:0:0:y])`.
    pub restricted: Vec<(String, String)>,
    /// `x + y` and `xy` are fixed by the swap.
    pub swap_fixed: bool,
    /// Dimension of swap invariants in degrees `1..=max_degree`.
    pub w_invariant_dims: Vec<usize>,
    /// Dimension of the degree-`k` part of `ℂ[x+y, xy]`.
    pub ring_dims: Vec<usize>,
    /// `ℂ[x+y, xy]_k` equals the swap invariants in every degree.
    pub generated: bool,
}

/// `T̄ ⊂ ℙ(M₂)`, the coordinate line `[x:0:0:y]`, with the restrictions of
/// `tr`, `det` and its Weyl-group invariants.
pub fn rank1_compactified_model(max_degree: u32) -> Result<Rank1Report> {
    let ambient = ActionSpec::conjugation(1)?;
    let t = vars(&["x", "y"]);
    let (x, y) = (Poly::var(&t, 0), Poly::var(&t, 1));
    let zero = Poly::zero(&t);
    let images = [x.clone(), zero.clone(), zero, y.clone()];
    let av = &ambient.vars;
    let tr = &Poly::var(av, 0) + &Poly::var(av, 3);
    let det = &(&Poly::var(av, 0) * &Poly::var(av, 3)) - &(&Poly::var(av, 1) * &Poly::var(av, 2));
    let (rt, rd) = (tr.compose(&images)?, det.compose(&images)?);
    let swap = |p: &Poly| p.compose(&[y.clone(), x.clone()]);
    let swap_fixed = swap(&rt)? == rt && swap(&rd)? == rd;
    let mut w_dims = Vec::new();
    let mut ring_dims = Vec::new();
    let mut generated = true;
    for k in 1..=max_degree {
        let mons = monomials_of_degree(2, k);
        // columns: (σ − 1) applied to each monomial
        let cols = mons
            .iter()
            .map(|m| {
                let p = Poly::from_coefficients(&t, std::slice::from_ref(m), &[int(1)]);
                Ok((&swap(&p)? - &p).coefficients_in(&mons).expect("same degree"))
            })
            .collect::<Result<Vec<_>>>()?;
        let inv = Matrix::from_columns(&cols)?.kernel_basis();
        w_dims.push(inv.len());
        let gens: Vec<Vec<Rational>> = (0..=k / 2)
            .map(|j| {
                (&rt.pow(k - 2 * j) * &rd.pow(j))
                    .coefficients_in(&mons)
                    .expect("same degree")
            })
            .collect();
        let rg = Matrix::from_rows(gens.clone())?.rank();
        ring_dims.push(rg);
        let both = Matrix::from_rows(gens.into_iter().chain(inv.iter().cloned()).collect())?.rank();
        generated &= both == rg && rg == inv.len();
    }
    Ok(Rank1Report {
        torus: "[x:0:0:y]".into(),
        restricted: vec![("tr".into(), rt.to_string()), ("det".into(), rd.to_string())],
        swap_fixed,
        w_invariant_dims: w_dims,
        ring_dims,
        generated,
    })
}

/// Trace triple as text, for reports.
pub fn trace_text(t: &[Rational; 3]) -> Vec<String> {
    t.iter().map(Scalar::to_text).collect()
}
