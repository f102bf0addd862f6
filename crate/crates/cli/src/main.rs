//! `wonderland`: exact checks on wonderful compactifications from the shell.
//!
//! Exit status is 0 when every check passes, 1 when some check fails and 2 on
//! usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wonderland::charvar::{rank1_compactified_model, stratify, trace_point, trace_text, RepresentationPoint};
use wonderland::exact::Scalar;
use wonderland::experiment::{
    diagonal_action_n, glue_pair, glue_tr_det, run_timed, tangency_points, write_report, Divisor, ExperimentConfig,
    Model,
};
use wonderland::geometry::{
    boundary_detect, orbit_dimension, pgl2_point_to_lagrangian, segre_factor, LagrangianPoint, ProjMatrixPoint,
};
use wonderland::git::graded_ring;
use wonderland::invariants::{
    express_in_generators, invariants_of_degree, matrix_polys, trace_generators, ActionSpec, Domain, InvariantSpace,
};
use wonderland::lie::{build_sl, double_form, is_lagrangian, standard_bd_splitting, DoubleSplitting, SplittingJson};
use wonderland::poisson::field::IdentityResidual;
use wonderland::sampling::init_thread_pool;
use wonderland::{Matrix, Rational, Result, WonderError};

#[derive(Parser)]
#[command(name = "wonderland", version, about = "Exact checks on wonderful compactifications and their quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lie algebras and splittings of the double.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Orbits and boundary of the compactification.
    #[command(subcommand)]
    Geom(GeomCmd),
    /// Identity checks for the Poisson structures.
    #[command(subcommand)]
    Poisson(PoissonCmd),
    /// Invariant spaces, or `express` to write an invariant in generators.
    Invariants(InvariantsArgs),
    /// Invariant rings, chart gluing and saturation.
    #[command(subcommand)]
    Git(GitCmd),
    /// Trace coordinates, boundary strata and the rank-one model.
    #[command(subcommand)]
    Charvar(CharvarCmd),
    /// Runs a named experiment and writes its report.
    Run(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraType {
    Sl,
}

#[derive(Subcommand)]
enum LieCmd {
    /// Structure constants of `sl_n`.
    Build {
        #[arg(long = "type", value_enum, default_value = "sl")]
        kind: AlgebraType,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Validates a splitting of `sl_n ⊕ sl_n` and prints its dual bases.
    Splitting {
        /// Use the standard splitting.
        #[arg(long, conflicts_with = "l2")]
        standard: bool,
        /// A complement `{"l2_basis": [[...], ...]}`, inline or as a file.
        #[arg(long)]
        l2: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum GeomCmd {
    /// `G × G` orbit dimension through a point.
    OrbitDim {
        #[arg(long, default_value = "pgl2")]
        model: String,
        /// A 2×2 matrix, or a 3×6 span matrix for the Grassmann model.
        #[arg(long)]
        point: String,
    },
    /// Boundary membership and Segre factors of a list of 2×2 matrices.
    Boundary {
        #[arg(long)]
        sweep: String,
    },
}

#[derive(Args)]
struct Sweep {
    #[arg(long, default_value = "pgl2")]
    model: String,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum DivisorArg {
    /// The boundary divisor.
    Det0,
    /// A hyperplane that is not invariant; expected to fail.
    Hyperplane,
}

#[derive(Subcommand)]
enum PoissonCmd {
    /// Jacobiator on coordinate triples.
    Jacobi(Sweep),
    /// Poisson action of `G × G` (`--n 1`) or of the diagonal on `Ḡⁿ`.
    Action {
        #[command(flatten)]
        sweep: Sweep,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Tangency of the bivector to a divisor of `ℙ(M₂)`.
    Tangency {
        #[arg(long, value_enum, default_value = "det0")]
        divisor: DivisorArg,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct InvariantsArgs {
    #[command(subcommand)]
    express: Option<ExpressCmd>,
    /// `conj-m2`, `conj-m2x{r}`, `line-c2` or `line-c2x{k}`.
    #[arg(long, default_value = "conj-m2")]
    action: String,
    /// Total degree, or a comma-separated multidegree.
    #[arg(long, default_value = "2")]
    degree: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// `tr(A²)` in `tr A, det A`.
    Tra2,
    /// `tr(A³)` in `tr A, det A`.
    Tra3,
    /// `tr(ABAB)` in `tr A, tr B, tr AB` on `SL₂ × SL₂`.
    Traba,
}

#[derive(Subcommand)]
enum ExpressCmd {
    /// Writes a trace function as a polynomial in the standard generators.
    Express {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, default_value = "standard")]
        gens: String,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GitCmd {
    /// Graded ring of conjugation invariants of `r` matrices.
    Ring {
        #[arg(long, default_value = "pgl2")]
        model: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Bracket agreement on the overlap of two affine charts.
    Glue {
        /// `tr,det` on `ℙ(M₂)`, or `trAtrB,trAB` on its square.
        #[arg(long, default_value = "tr,det")]
        charts: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Boundary points are never identified with interior points.
    Saturation {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum CharvarCmd {
    /// `(tr A, tr B, tr AB)` of a pair in `SL₂`.
    Trace {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Boundary signature of a tuple of 2×2 matrices.
    Stratify {
        #[arg(long)]
        tuple: String,
    },
    /// The compactified model for `r = 1`.
    Rank1 {
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    experiment: String,
    #[arg(long, default_value = "pgl2-projective")]
    model: String,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    degree: u32,
    /// Report path; a `.timing.json` sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::init();
    init_thread_pool();
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a closed pipe (as with `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print(v: &Value) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn print_residuals(rs: &[IdentityResidual]) -> Result<bool> {
    print(&serde_json::to_value(rs)?)?;
    Ok(rs.iter().all(|r| r.pass))
}

/// Inline JSON, or a path to a JSON file.
fn read_json(arg: &str) -> Result<Value> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn rational(v: &Value) -> Result<Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(WonderError::Invalid(format!("not a rational: {v}"))),
    };
    Ok(Rational::from_text(&text)?)
}

/// A nested array of numbers or `"n/d"` strings, or `{rows, cols, entries}`.
fn matrix(v: &Value) -> Result<Matrix> {
    if v.is_object() {
        return Ok(serde_json::from_value(v.clone())?);
    }
    let rows = v
        .as_array()
        .ok_or_else(|| WonderError::Invalid("a matrix is an array of rows".into()))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| WonderError::Invalid("a matrix row is an array".into()))?
                .iter()
                .map(rational)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows)?)
}

fn matrices(v: &Value) -> Result<Vec<Matrix>> {
    v.as_array()
        .ok_or_else(|| WonderError::Invalid("expected an array of matrices".into()))?
        .iter()
        .map(matrix)
        .collect()
}

fn texts(v: &[Rational]) -> Vec<String> {
    v.iter().map(Scalar::to_text).collect()
}

fn splitting(n: usize) -> Result<DoubleSplitting> {
    standard_bd_splitting(&build_sl(n)?)
}

fn dispatch(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Lie(c) => lie(c),
        Command::Geom(c) => geom(c),
        Command::Poisson(c) => poisson(c),
        Command::Invariants(a) => invariants(a),
        Command::Git(c) => git(c),
        Command::Charvar(c) => charvar(c),
        Command::Run(a) => run(a),
    }
}

fn lie(cmd: LieCmd) -> Result<bool> {
    match cmd {
        LieCmd::Build { kind: AlgebraType::Sl, n } => {
            print(&serde_json::to_value(build_sl(n)?.to_json())?)?;
            Ok(true)
        }
        LieCmd::Splitting { standard, l2, n } => {
            let s = match (standard, l2) {
                (_, Some(src)) => {
                    let j: SplittingJson = serde_json::from_value(read_json(&src)?)?;
                    DoubleSplitting::with_l2(double_form(&build_sl(n)?)?, j.parse()?)?
                }
                (true, None) => splitting(n)?,
                (false, None) => return Err(WonderError::Invalid("pass --standard or --l2".into())),
            };
            let d = &s.double;
            let gram = s.duality_gram();
            print(&json!({
                "l2_basis": s.to_json().l2_basis,
                "x": s.x.iter().map(|v| texts(v)).collect::<Vec<_>>(),
                "y": s.y.iter().map(|v| texts(v)).collect::<Vec<_>>(),
                "l1": is_lagrangian(&d.d, &d.form, &s.x),
                "l2": is_lagrangian(&d.d, &d.form, &s.l2_basis),
                "duality_gram": gram,
            }))?;
            Ok(gram == Matrix::identity(s.n()))
        }
    }
}

fn geom(cmd: GeomCmd) -> Result<bool> {
    let s = splitting(2)?;
    match cmd {
        GeomCmd::OrbitDim { model, point } => {
            let m = matrix(&read_json(&point)?)?;
            let l = match model.parse::<Model>()? {
                Model::Pgl2Projective => pgl2_point_to_lagrangian(&s.double.g, &ProjMatrixPoint::new(m)?)?,
                Model::Sl2Grassmann => LagrangianPoint::new(m)?,
            };
            let cert = l.lagrangian_certificate(&s.double);
            print(&json!({
                "lagrangian": l,
                "orbit_dimension": orbit_dimension(&s.double, &l)?,
                "certificate": cert,
            }))?;
            Ok(cert.is_lagrangian)
        }
        GeomCmd::Boundary { sweep } => {
            let out = matrices(&read_json(&sweep)?)?
                .into_iter()
                .map(|m| {
                    let p = ProjMatrixPoint::new(m)?;
                    let b = boundary_detect(&p);
                    let segre = if b {
                        let (u, v) = segre_factor(&p)?;
                        json!({ "u": texts(&u), "v": texts(&v) })
                    } else {
                        Value::Null
                    };
                    Ok(json!({ "point": p, "boundary": b, "segre": segre }))
                })
                .collect::<Result<Vec<_>>>()?;
            print(&Value::Array(out))?;
            Ok(true)
        }
    }
}

fn poisson(cmd: PoissonCmd) -> Result<bool> {
    let s = splitting(2)?;
    let rs = match cmd {
        PoissonCmd::Jacobi(w) => {
            let cfg = ExperimentConfig::new("jacobi", w.model.parse()?, w.samples, w.seed);
            cfg.validate()?;
            wonderland::experiment::jacobi(&s, &cfg)?
        }
        PoissonCmd::Action { sweep: w, n } => {
            let model = w.model.parse()?;
            if n == 1 {
                let cfg = ExperimentConfig::new("action", model, w.samples, w.seed);
                cfg.validate()?;
                wonderland::experiment::action(&s, &cfg)?
            } else {
                diagonal_action_n(&s, model, w.seed, w.samples, n)?
            }
        }
        PoissonCmd::Tangency { divisor, samples, seed } => {
            let d = match divisor {
                DivisorArg::Det0 => Divisor::Det0,
                DivisorArg::Hyperplane => Divisor::Hyperplane,
            };
            tangency_points(&s, seed, samples, d)?
        }
    };
    print_residuals(&rs)
}

fn parse_degree(d: &str) -> Result<Vec<u32>> {
    d.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| WonderError::Invalid(format!("bad degree {d:?}"))))
        .collect()
}

fn invariants(a: InvariantsArgs) -> Result<bool> {
    match a.express {
        None => {
            let spec = ActionSpec::by_name(&a.action)?;
            let mut degree = parse_degree(&a.degree)?;
            if degree.len() == 1 && spec.ngroups() > 1 {
                // a total degree: list every multidegree
                let total = degree[0];
                let spaces = multidegrees(spec.ngroups(), total)
                    .iter()
                    .map(|d| space_json(&invariants_of_degree(&spec, d)?))
                    .collect::<Result<Vec<_>>>()?;
                print(&serde_json::to_value(spaces)?)?;
                return Ok(true);
            }
            if degree.len() != spec.ngroups() {
                degree.resize(spec.ngroups(), 0);
            }
            print(&space_json(&invariants_of_degree(&spec, &degree)?)?)?;
            Ok(true)
        }
        Some(ExpressCmd::Express { target, gens, bound, seed }) => {
            if gens != "standard" {
                return Err(WonderError::Invalid(format!("unknown generator set {gens:?}")));
            }
            let (r, domain) = match target {
                Target::Tra2 | Target::Tra3 => (1, Domain::Affine),
                Target::Traba => (2, Domain::Sl2),
            };
            let (spec, gens) = trace_generators(r)?;
            let v = &spec.vars;
            let f = match target {
                Target::Tra2 => matrix_polys::trace_word(v, &[0, 0]),
                Target::Tra3 => matrix_polys::trace_word(v, &[0, 0, 0]),
                Target::Traba => matrix_polys::trace_word(v, &[0, 4, 0, 4]),
            };
            let expr = express_in_generators(&f, &gens, bound, domain, seed)?;
            print(&json!({
                "target": f.to_string(),
                "generators": gens.iter().map(|(n, p)| json!({ "name": n, "poly": p.to_string() })).collect::<Vec<_>>(),
                "bound": bound,
                "domain": domain,
                "expression": expr.as_ref().map(|p| p.to_string()),
            }))?;
            if expr.is_none() {
                eprintln!("NO-EXPRESSION at bound {bound}");
            }
            Ok(expr.is_some())
        }
    }
}

/// The space with its dimension and readable basis alongside the canonical terms.
fn space_json(space: &InvariantSpace) -> Result<Value> {
    let mut v = serde_json::to_value(space)?;
    v["dim"] = json!(space.dim());
    v["basis_text"] = json!(space.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    Ok(v)
}

/// All `k`-tuples with the given sum.
fn multidegrees(k: usize, total: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .rev()
        .flat_map(|first| {
            multidegrees(k - 1, total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn git(cmd: GitCmd) -> Result<bool> {
    let s = splitting(2)?;
    match cmd {
        GitCmd::Ring { model, r, degree } => {
            if model.parse::<Model>()? != Model::Pgl2Projective {
                return Err(WonderError::Unsupported("rings are built on the ℙ(M₂) model".into()));
            }
            let ring = graded_ring(&ActionSpec::conjugation(r)?, degree)?;
            print(&json!({ "schema": 1, "dims": ring.dims(), "ring": ring }))?;
            Ok(true)
        }
        GitCmd::Glue { charts, samples, seed } => {
            let rs = match charts.replace(' ', "").as_str() {
                "tr,det" | "det,tr" => glue_tr_det(&s, seed, samples)?,
                "trAtrB,trAB" | "trAB,trAtrB" => glue_pair(&s, seed, samples)?,
                other => return Err(WonderError::Invalid(format!("unknown chart pair {other:?}"))),
            };
            print_residuals(&rs)
        }
        GitCmd::Saturation { seed, samples, degree } => {
            let mut cfg = ExperimentConfig::new("saturation", Model::Pgl2Projective, samples, seed);
            cfg.degree = degree;
            cfg.validate()?;
            print_residuals(&wonderland::experiment::saturation(&cfg)?)
        }
    }
}

fn charvar(cmd: CharvarCmd) -> Result<bool> {
    match cmd {
        CharvarCmd::Trace { a, b } => {
            let p = RepresentationPoint::new(vec![matrix(&read_json(&a)?)?, matrix(&read_json(&b)?)?])?;
            let t = trace_point(&p)?;
            print(&json!({ "trA": t[0].to_text(), "trB": t[1].to_text(), "trAB": t[2].to_text(), "coordinates": trace_text(&t) }))?;
            Ok(true)
        }
        CharvarCmd::Stratify { tuple } => {
            let pts = matrices(&read_json(&tuple)?)?
                .into_iter()
                .map(ProjMatrixPoint::new)
                .collect::<Result<Vec<_>>>()?;
            print(&serde_json::to_value(stratify(&pts)?)?)?;
            Ok(true)
        }
        CharvarCmd::Rank1 { degree } => {
            let r = rank1_compactified_model(degree)?;
            print(&serde_json::to_value(&r)?)?;
            Ok(r.generated && r.swap_fixed && r.w_invariant_dims == r.ring_dims)
        }
    }
}

fn run(a: RunArgs) -> Result<bool> {
    let mut cfg = ExperimentConfig::new(&a.experiment, a.model.parse()?, a.samples, a.seed);
    cfg.degree = a.degree;
    cfg.out = a.out.clone();
    let (report, wall) = run_timed(&cfg)?;
    match &a.out {
        Some(path) => {
            write_report(&report, wall, path)?;
            log::info!("wrote {}", path.display());
            emit(&format!("{}: {} pass, {} fail\n", a.experiment, report.summary.pass, report.summary.fail))?;
        }
        None => emit(&report.to_json()?)?,
    }
    Ok(report.passed())
}
