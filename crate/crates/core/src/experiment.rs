//! Named experiments over seeded samples, and their JSON reports.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use wonderland_exact::{int, Matrix, Poly, Rational, Scalar};

use crate::charvar::{rank1_compactified_model, trace_point, RepresentationPoint};
use crate::error::{Result, WonderError};
use crate::geometry::{
    grassmann_chart_at, pgl2_point_to_lagrangian, proj_chart_at, Chart, ChartPiece, GroupPair, ProjMatrixPoint,
};
use crate::git::{
    affine_quotient_bracket, divisor_saturation, glue_consistency, graded_ring, AffineChartQuotient, OverlapFunction,
};
use crate::invariants::{fraction_bracket, invariant_bracket_closure, matrix_polys, ActionSpec};
use crate::lie::DoubleSplitting;
use crate::models::{
    ambient_center, boundary_point, conjugation_sample, interior_point, pgl2_field, sl2_splitting, surrogates,
};
use crate::poisson::field::{tangency_check, IdentityResidual};
use crate::poisson::structures::{evens_lu_field, CrossTerm};
use crate::poisson::{diagonal_action_residual, poisson_action_residual, GbarPoint};
use crate::sampling::{par_indexed, Sampler};

pub const EXPERIMENTS: [&str; 8] = [
    "jacobi",
    "action",
    "diagonal-action",
    "tangency",
    "glue",
    "saturation",
    "rank1",
    "f2-demo",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    /// `Ḡ` as Lagrangian subalgebras of `sl₂ ⊕ sl₂` in `Gr(3, 6)`.
    #[serde(rename = "sl2-grassmann")]
    Sl2Grassmann,
    /// `Ḡ = ℙ(M₂)`.
    #[serde(rename = "pgl2-projective")]
    Pgl2Projective,
}

impl FromStr for Model {
    type Err = WonderError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl2-grassmann" | "sl2" | "grassmann" => Ok(Model::Sl2Grassmann),
            "pgl2-projective" | "pgl2" | "projective" => Ok(Model::Pgl2Projective),
            _ => Err(WonderError::UnknownModel(s.to_string())),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::Sl2Grassmann => "sl2-grassmann",
            Model::Pgl2Projective => "pgl2-projective",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub model: Model,
    pub samples: usize,
    pub seed: u64,
    /// Degree bound for invariant computations.
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: &str, model: Model, samples: usize, seed: u64) -> Self {
        Self {
            experiment: experiment.to_string(),
            model,
            samples,
            seed,
            degree: 4,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !EXPERIMENTS.contains(&self.experiment.as_str()) {
            return Err(WonderError::UnknownExperiment(self.experiment.clone()));
        }
        if self.samples == 0 {
            return Err(WonderError::Invalid("sample count must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

/// Report of one run. It holds no timing, so equal configs give
/// byte-identical reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub tool_version: String,
    pub config: ExperimentConfig,
    pub checks: Vec<IdentityResidual>,
    pub summary: Summary,
}

impl ExperimentReport {
    fn new(config: &ExperimentConfig, checks: Vec<IdentityResidual>) -> Self {
        let pass = checks.iter().filter(|c| c.pass).count();
        let mut config = config.clone();
        config.out = None;
        Self {
            schema: 1,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            summary: Summary {
                pass,
                fail: checks.len() - pass,
            },
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Writes the report to `path` and the wall time to `path.timing.json`.
pub fn write_report(report: &ExperimentReport, wall: Duration, path: &Path) -> Result<()> {
    std::fs::write(path, report.to_json()?)?;
    let mut timing = path.as_os_str().to_owned();
    timing.push(".timing.json");
    let t = serde_json::json!({ "wall_time_ms": wall.as_millis() as u64 });
    std::fs::write(PathBuf::from(timing), serde_json::to_string_pretty(&t)? + "\n")?;
    Ok(())
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let s = sl2_splitting()?;
    let checks = match config.experiment.as_str() {
        "jacobi" => jacobi(&s, config)?,
        "action" => action(&s, config)?,
        "diagonal-action" => diagonal_action(&s, config)?,
        "tangency" => tangency(&s, config)?,
        "glue" => glue(&s, config)?,
        "saturation" => saturation(config)?,
        "rank1" => rank1(&s, config)?,
        "f2-demo" => f2_demo(&s, config)?,
        other => return Err(WonderError::UnknownExperiment(other.to_string())),
    };
    Ok(ExperimentReport::new(config, checks))
}

/// Runs the experiment and measures wall time.
pub fn run_timed(config: &ExperimentConfig) -> Result<(ExperimentReport, Duration)> {
    let start = Instant::now();
    let report = run_experiment(config)?;
    let wall = start.elapsed();
    log::info!(
        "{}: {} pass, {} fail in {:.2?}",
        config.experiment,
        report.summary.pass,
        report.summary.fail,
        wall
    );
    Ok((report, wall))
}

fn collect(results: Vec<Result<Vec<IdentityResidual>>>) -> Result<Vec<IdentityResidual>> {
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Chart on `ℙ(M₂)` scaling entry `k` to one, centered at a random point.
fn pivot_chart(k: usize, s: &mut Sampler) -> Result<Chart> {
    let mut m = s.matrix(2, 2, 5);
    m[(k / 2, k % 2)] = int(1);
    Chart::new(vec![ChartPiece::ProjMatrix { n: 2, pivot: (k / 2, k % 2) }], &[m])
}

fn text(v: &[Rational]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

/// Coordinate Jacobiators of `Λ` at each sample: on `ℙ(M₂)` cycling
/// through the four standard charts, on `Gr(3, 6)` at points of `Ḡ`.
pub fn jacobi(s: &DoubleSplitting, config: &ExperimentConfig) -> Result<Vec<IdentityResidual>> {
    match config.model {
        Model::Pgl2Projective => {
            let fields = (0..4)
                .map(|k| {
                    let chart = pivot_chart(k, &mut Sampler::new(config.seed, "jacobi-chart", k as u64))?;
                    Ok(evens_lu_field(&chart, s)?.derivatives())
                })
                .collect::<Result<Vec<_>>>()?;
            collect(par_indexed(config.samples, |i| {
                let k = i as usize % 4;
                let mut smp = Sampler::new(config.seed, "jacobi", i);
                let z = smp.vector(3, 5);
                let j = fields[k].coordinate_jacobiators(&z)?;
                let vals: Vec<Rational> = j.into_iter().map(|(_, v)| v).collect();
                Ok(vec![IdentityResidual::new(
                    "jacobi",
                    serde_json::json!({ "chart_pivot": k, "point": text(&z) }),
                    &vals,
                )])
            }))
        }
        Model::Sl2Grassmann => collect(par_indexed(config.samples, |i| {
            let mut smp = Sampler::new(config.seed, "jacobi", i);
            let p = if i % 2 == 0 { interior_point(&mut smp) } else { boundary_point(&mut smp) };
            let l = pgl2_point_to_lagrangian(&s.double.g, &p)?;
            let chart = grassmann_chart_at(l.basis())?;
            let d = evens_lu_field(&chart, s)?.derivatives();
            let vals: Vec<Rational> = d.coordinate_jacobiators(chart.center())?.into_iter().map(|(_, v)| v).collect();
            Ok(vec![IdentityResidual::new(
                "jacobi",
                serde_json::json!({ "point": p, "lagrangian": l }),
                &vals,
            )])
        })),
    }
}

fn gbar_point(model: Model, s: &DoubleSplitting, smp: &mut Sampler, boundary: bool) -> Result<GbarPoint> {
    let p = if boundary { boundary_point(smp) } else { interior_point(smp) };
    Ok(match model {
        Model::Pgl2Projective => GbarPoint::Proj(p),
        Model::Sl2Grassmann => GbarPoint::Lagrangian(pgl2_point_to_lagrangian(&s.double.g, &p)?),
    })
}

fn random_pair(smp: &mut Sampler) -> Result<GroupPair> {
    GroupPair::new(smp.sl(2, 3), smp.sl(2, 3))
}

pub fn action(s: &DoubleSplitting, config: &ExperimentConfig) -> Result<Vec<IdentityResidual>> {
    collect(par_indexed(config.samples, |i| {
        let mut smp = Sampler::new(config.seed, "action", i);
        let m = gbar_point(config.model, s, &mut smp, i % 3 == 2)?;
        let u = random_pair(&mut smp)?;
        let probe = random_pair(&mut smp)?;
        poisson_action_residual(s, &u, &m, &probe)
    }))
}

pub fn diagonal_action(s: &DoubleSplitting, config: &ExperimentConfig) -> Result<Vec<IdentityResidual>> {
    diagonal_action_n(s, config.model, config.seed, config.samples, 2)
}

/// Diagonal action of `G` on `Ḡⁿ` with the mixed product structure.
pub fn diagonal_action_n(
    s: &DoubleSplitting,
    model: Model,
    seed: u64,
    samples: usize,
    n: usize,
) -> Result<Vec<IdentityResidual>> {
    if n == 0 {
        return Err(WonderError::Invalid("need at least one factor".into()));
    }
    collect(par_indexed(samples, |i| {
        let mut smp = Sampler::new(seed, "diagonal-action", i);
        let pts = (0..n)
            .map(|j| gbar_point(model, s, &mut smp, j == 0 && i % 4 == 3))
            .collect::<Result<Vec<_>>>()?;
        let c = smp.sl(2, 3);
        diagonal_action_residual(s, &c, &pts, CrossTerm::XY)
    }))
}

/// Which subvariety [`tangency`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Divisor {
    /// The boundary `det = 0`.
    Det0,
    /// The hyperplane `b = a` through the sample, which is not invariant.
    Hyperplane,
}

/// `Λ(dF, ·)` at boundary points of `ℙ(M₂)`, in the chart centered there.
pub fn tangency_points(s: &DoubleSplitting, seed: u64, samples: usize, divisor: Divisor) -> Result<Vec<IdentityResidual>> {
    collect(par_indexed(samples, |i| {
        let mut smp = Sampler::new(seed, "tangency", i);
        let p = match divisor {
            Divisor::Det0 => boundary_point(&mut smp),
            Divisor::Hyperplane => {
                let mut m = interior_point(&mut smp).rep().clone();
                m[(0, 1)] = m[(0, 0)].clone();
                ProjMatrixPoint::new(m)?
            }
        };
        let chart = proj_chart_at(std::slice::from_ref(p.rep()))?;
        let params = chart.param_poly();
        let ent = |r: usize, c: usize| params[0].get(r, c).clone();
        let f: Poly = match divisor {
            Divisor::Det0 => &(&ent(0, 0) * &ent(1, 1)) - &(&ent(0, 1) * &ent(1, 0)),
            Divisor::Hyperplane => &ent(0, 1) - &ent(0, 0),
        };
        let field = evens_lu_field(&chart, s)?;
        let mut r = tangency_check(&field, &[f], chart.center())?;
        if divisor == Divisor::Hyperplane {
            r.identity = "tangency-hyperplane".into();
        }
        Ok(vec![r])
    }))
}

pub fn tangency(s: &DoubleSplitting, config: &ExperimentConfig) -> Result<Vec<IdentityResidual>> {
    match config.model {
        Model::Pgl2Projective => tangency_points(s, config.seed, config.samples, Divisor::Det0),
        Model::Sl2Grassmann => Err(WonderError::Unsupported(
            "tangency is checked on the ℙ(M₂) model only".into(),
        )),
    }
}

pub fn glue(s: &DoubleSplitting, config: &ExperimentConfig) -> Result<Vec<IdentityResidual>> {
    if config.model != Model::Pgl2Projective {
        return Err(WonderError::Unsupported("gluing is checked on the ℙ(M₂) model only".into()));
    }
    let mut out = glue_tr_det(s, config.seed, config.samples)?;
    out.extend(glue_pair(s, config.seed, config.samples)?);
    Ok(out)
}

/// The `tr` and `det` charts of `ℙ(M₂)⫽PGL₂`.
pub fn glue_tr_det(s: &DoubleSplitting, seed: u64, samples: usize) -> Result<Vec<IdentityResidual>> {
    let field_at = |c: &Chart| pgl2_field(s, c)?.eval(c.center());
    let spec = ActionSpec::conjugation(1)?;
    let v = &spec.vars;
    let cf = AffineChartQuotient::new("tr", matrix_polys::trace(v, 0), 1);
    let cg = AffineChartQuotient::new("det", matrix_polys::det(v, 0), 2);
    let pts = (0..samples as u64)
        .map(|i| Ok(conjugation_sample(&mut Sampler::new(seed, "glue-1", i), 1)?.0))
        .collect::<Result<Vec<_>>>()?;
    let pairs = [
        (
            OverlapFunction { name: "det/tr^2".into(), h: matrix_polys::det(v, 0), a: 2, b: 0 },
            OverlapFunction { name: "tr(A^2)/det".into(), h: matrix_polys::trace_word(v, &[0, 0]), a: 0, b: 1 },
        ),
        (
            OverlapFunction { name: "ab/tr^2".into(), h: &Poly::var(v, 0) * &Poly::var(v, 1), a: 2, b: 0 },
            OverlapFunction { name: "c^2/det".into(), h: &Poly::var(v, 2) * &Poly::var(v, 2), a: 0, b: 1 },
        ),
    ];
    pairs
        .iter()
        .map(|(u, w)| glue_consistency(&cf, &cg, &field_at, u, w, &spec.groups, &pts))
        .collect()
}

/// The `trA trB` and `trAB` charts of `Ḡ²⫽PGL₂`.
pub fn glue_pair(s: &DoubleSplitting, seed: u64, samples: usize) -> Result<Vec<IdentityResidual>> {
    let field_at = |c: &Chart| pgl2_field(s, c)?.eval(c.center());
    let spec = ActionSpec::conjugation(2)?;
    let v = &spec.vars;
    let (da, db) = (matrix_polys::det(v, 0), matrix_polys::det(v, 4));
    let ta = matrix_polys::trace(v, 0);
    let cf = AffineChartQuotient::new("trA trB", &ta * &matrix_polys::trace(v, 4), 1);
    let cg = AffineChartQuotient::new("trAB", matrix_polys::trace_prod(v, 0, 4), 1);
    let pts = (0..samples as u64)
        .map(|i| Ok(conjugation_sample(&mut Sampler::new(seed, "glue-2", i), 2)?.0))
        .collect::<Result<Vec<_>>>()?;
    let pairs = [
        (
            OverlapFunction { name: "detA detB/(trA trB trAB)".into(), h: &da * &db, a: 1, b: 1 },
            OverlapFunction { name: "trA^2 detB/(trA trB)^2".into(), h: &(&ta * &ta) * &db, a: 2, b: 0 },
        ),
        (
            OverlapFunction { name: "a1 b2/(trA trB)".into(), h: &Poly::var(v, 0) * &Poly::var(v, 5), a: 1, b: 0 },
            OverlapFunction { name: "c1 d2/trAB".into(), h: &Poly::var(v, 2) * &Poly::var(v, 7), a: 0, b: 1 },
        ),
    ];
    pairs
        .iter()
        .map(|(u, w)| glue_consistency(&cf, &cg, &field_at, u, w, &spec.groups, &pts))
        .collect()
}

/// Boundary/interior pairs of `ℙ(M₂)` against the conjugation ring.
pub fn saturation(config: &ExperimentConfig) -> Result<Vec<IdentityResidual>> {
    let spec = ActionSpec::conjugation(1)?;
    let ring = graded_ring(&spec, config.degree)?;
    let det = matrix_polys::det(&spec.vars, 0);
    let pairs: Vec<_> = (0..config.samples as u64)
        .map(|i| {
            let mut smp = Sampler::new(config.seed, "saturation", i);
            (
                boundary_point(&mut smp).rep().entries().to_vec(),
                interior_point(&mut smp).rep().entries().to_vec(),
            )
        })
        .collect();
    Ok(vec![divisor_saturation(&det, &ring, &pairs)?])
}

pub fn rank1(s: &DoubleSplitting, config: &ExperimentConfig) -> Result<Vec<IdentityResidual>> {
    let r = rank1_compactified_model(config.degree)?;
    let dims: Vec<Rational> = r
        .w_invariant_dims
        .iter()
        .zip(&r.ring_dims)
        .map(|(a, b)| int(*a as i64 - *b as i64))
        .collect();
    let flag = |b: bool| if b { int(0) } else { int(1) };
    let mut out = vec![
        IdentityResidual::new(
            "rank1-ring",
            serde_json::to_value(&r)?,
            &[dims, vec![flag(r.swap_fixed), flag(r.generated)]].concat(),
        ),
    ];
    let (_, gens) = surrogates(1)?;
    let samples = (0..config.samples as u64)
        .map(|i| conjugation_sample(&mut Sampler::new(config.seed, "rank1", i), 1))
        .collect::<Result<Vec<_>>>()?;
    let field = |c: &Chart| pgl2_field(s, c);
    let table = affine_quotient_bracket(&field, &gens, &samples)?;
    let entries = table
        .samples
        .iter()
        .flat_map(|t| t.table.iter().flatten())
        .map(|x| Rational::from_text(x))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    out.push(IdentityResidual::new(
        "rank1-bracket-table",
        serde_json::json!({ "generators": table.names }),
        &entries,
    ));
    Ok(out)
}

/// Trace coordinates and the bracket table of the degree-zero trace
/// invariants on `Ḡ²`, with closure, antisymmetry and Jacobi checks.
pub fn f2_demo(s: &DoubleSplitting, config: &ExperimentConfig) -> Result<Vec<IdentityResidual>> {
    let a = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
    let b = Matrix::from_i64(&[&[1, 0], &[1, 1]]);
    let t = trace_point(&RepresentationPoint::new(vec![a, b])?)?;
    let mut out = vec![IdentityResidual::new(
        "trace-fixture",
        serde_json::json!({ "A": [[1, 1], [0, 1]], "B": [[1, 0], [1, 1]], "traces": text(&t) }),
        &[t[0].clone() - int(2), t[1].clone() - int(2), t[2].clone() - int(3)],
    )];
    let (_, gens) = surrogates(2)?;
    let samples = (0..config.samples as u64)
        .map(|i| conjugation_sample(&mut Sampler::new(config.seed, "f2", i), 2))
        .collect::<Result<Vec<_>>>()?;
    let field = |c: &Chart| pgl2_field(s, c);
    let field_at = |c: &Chart| pgl2_field(s, c)?.eval(c.center());
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            out.push(invariant_bracket_closure(&field_at, &gens[i], &gens[j], &samples)?);
        }
    }
    let table = affine_quotient_bracket(&field, &gens, &samples)?;
    out.push(table.antisymmetry_residual()?);
    out.push(table.jacobi_residual()?);
    let first = &samples[0].0;
    let tab: Vec<Vec<String>> = gens
        .iter()
        .map(|f| {
            gens.iter()
                .map(|g| Ok(fraction_bracket(&field_at, first, f, g)?.to_text()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    out.push(IdentityResidual::new(
        "f2-table",
        serde_json::json!({ "point": ambient_center(first).iter().map(Scalar::to_text).collect::<Vec<_>>(), "table": tab }),
        &[],
    ));
    Ok(out)
}
