use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::Serialize;

use reglab::bounds::{known_regularity_bound, BoundQuery};
use reglab::harness::run_suite;
use reglab::io::{
    form_terms, parse_scalar, parse_vector, vector_strings, CurveFile, FrameFile, RecipeFile,
    SchemeFile, SeparatorConfigFile, SubspaceFile, TermList,
};
use reglab::normality::{
    check_cor13a, evaluation_matrix_of_forms, finite_scheme_regularity, hilbert_function,
    hilbert_sequence, minimal_normal_degree, normality_threshold_bound, Cor13aVerdict,
};
use reglab::projection::{
    classify_fiber, curve_fiber_scheme, curve_linear_section_length, paper_recipe, project_scheme,
    yk_counts, FiberProfile, RootCluster, RootParam,
};
use reglab::scheme::{invariant_t, max_collinear_length};
use reglab::separation::{
    check_separators, lemma26_separators, recipe_separates, recipe_space, FiberFrame,
    SeparatorCheck,
};
use reglab::{Field, FieldTag, FiniteScheme, Fp, Prime, Rational, DEFAULT_ENUMERATION_CAP};

use crate::{Cli, Command};

pub struct Output {
    pub json: String,
    /// whether every checked property holds
    pub holds: bool,
}

type Res<T> = Result<T, String>;

fn err(e: reglab::Error) -> String {
    e.to_string()
}

fn emit<T: Serialize>(value: &T, holds: bool) -> Res<Output> {
    Ok(Output {
        json: serde_json::to_string(value).map_err(|e| e.to_string())?,
        holds,
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Res<T> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn enumeration_cap() -> Res<usize> {
    match std::env::var("REGLAB_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| format!("REGLAB_CAP must be a nonnegative integer: {e}")),
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
    }
}

pub fn run(cli: &Cli) -> Res<Output> {
    match &cli.command {
        Command::Bounds {
            dim,
            degree,
            codim,
            quadric,
            quadric_generators,
            singular,
        } => bounds(
            *dim,
            *degree,
            *codim,
            *quadric,
            *quadric_generators,
            *singular,
        ),
        Command::Verify { suite, trials } => verify(suite, *trials, cli),
        Command::CurveFiber {
            curve,
            center,
            point,
            param,
        } => {
            rational_only(cli.field)?;
            curve_fiber(curve, center, point, param.as_deref())
        }
        Command::CurveSection { curve, subspace } => {
            rational_only(cli.field)?;
            curve_section(curve, subspace)
        }
        Command::Lemma26 { config } => match cli.field.unwrap_or(FieldTag::Q) {
            FieldTag::Q => lemma26::<Rational>(&(), config),
            FieldTag::Fp(p) => lemma26::<Fp>(&prime(p)?, config),
        },
        cmd => {
            let path = scheme_path(cmd);
            let file: SchemeFile = read_json(path)?;
            match cli.field.unwrap_or(file.field) {
                FieldTag::Q => scheme_command::<Rational>(&(), &file, cmd),
                FieldTag::Fp(p) => scheme_command::<Fp>(&prime(p)?, &file, cmd),
            }
        }
    }
}

fn prime(p: u64) -> Res<Prime> {
    Prime::new(p).map_err(err)
}

fn rational_only(field: Option<FieldTag>) -> Res<()> {
    match field {
        None | Some(FieldTag::Q) => Ok(()),
        Some(f) => Err(format!("curve commands work over Q only, not {f}")),
    }
}

fn scheme_path(cmd: &Command) -> &Path {
    match cmd {
        Command::Hilbert { scheme, .. }
        | Command::Normality { scheme, .. }
        | Command::Regularity { scheme }
        | Command::InvariantT { scheme }
        | Command::Secant { scheme, .. }
        | Command::Separate { scheme, .. }
        | Command::Project { scheme, .. }
        | Command::ClassifyFiber { scheme, .. } => scheme,
        _ => unreachable!("command does not take a scheme"),
    }
}

#[derive(Serialize)]
struct Phi {
    phi: Vec<usize>,
}

#[derive(Serialize)]
struct KNormal {
    k: u32,
    phi: usize,
    normal: bool,
}

#[derive(Serialize)]
struct Normality {
    degree: usize,
    span_dim: usize,
    t: usize,
    minimal_normal_degree: u32,
    threshold_bound: u32,
    bound_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_degree: Option<KNormal>,
}

#[derive(Serialize)]
struct Regularity {
    degree: usize,
    minimal_normal_degree: u32,
    regularity: u32,
}

#[derive(Serialize)]
struct InvariantT {
    degree: usize,
    span_dim: usize,
    t: usize,
}

#[derive(Serialize)]
struct Secant {
    max_collinear: usize,
    line: Option<SubspaceFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    has_secant_of_length: Option<bool>,
    criterion: Cor13aVerdict,
}

#[derive(Serialize)]
struct Separation {
    degree: u32,
    length: usize,
    forms: usize,
    rank: usize,
    separates: bool,
}

#[derive(Serialize)]
struct ProjectedFiber {
    image: Vec<String>,
    length: usize,
    germs: Vec<usize>,
}

#[derive(Serialize)]
struct Projection {
    fibers: Vec<ProjectedFiber>,
    /// number of fibers of length at least k
    yk: BTreeMap<usize, usize>,
}

#[derive(Serialize)]
struct Classified {
    profile: FiberProfile,
    minimal_normal_degree: u32,
    prediction_holds: Option<bool>,
    /// whether the case's recipe separates at the predicted degree in the given frame
    recipe_separates: Option<bool>,
}

fn scheme_command<F: Field>(ctx: &F::Ctx, file: &SchemeFile, cmd: &Command) -> Res<Output> {
    let x: FiniteScheme<F> = file.to_scheme(ctx).map_err(err)?;
    match cmd {
        Command::Hilbert { max_degree, .. } => emit(
            &Phi {
                phi: hilbert_sequence(&x, *max_degree),
            },
            true,
        ),
        Command::Normality { degree, .. } => {
            let cap = enumeration_cap()?;
            let t = invariant_t(&x, cap).map_err(err)?;
            let threshold = normality_threshold_bound(&x, cap).map_err(err)?;
            let minimal = minimal_normal_degree(&x);
            let at_degree = degree.map(|k| {
                let phi = hilbert_function(&x, k);
                KNormal {
                    k,
                    phi,
                    normal: phi == x.degree(),
                }
            });
            let out = Normality {
                degree: x.degree(),
                span_dim: x.span_dim(),
                t,
                minimal_normal_degree: minimal,
                threshold_bound: threshold,
                bound_holds: minimal <= threshold,
                at_degree,
            };
            emit(&out, out.bound_holds)
        }
        Command::Regularity { .. } => emit(
            &Regularity {
                degree: x.degree(),
                minimal_normal_degree: minimal_normal_degree(&x),
                regularity: finite_scheme_regularity(&x),
            },
            true,
        ),
        Command::InvariantT { .. } => {
            let t = invariant_t(&x, enumeration_cap()?).map_err(err)?;
            emit(
                &InvariantT {
                    degree: x.degree(),
                    span_dim: x.span_dim(),
                    t,
                },
                true,
            )
        }
        Command::Secant { length, .. } => {
            let (max_collinear, line) = max_collinear_length(&x);
            let criterion = check_cor13a(&x);
            let holds = criterion.equivalence_holds;
            emit(
                &Secant {
                    max_collinear,
                    line: line.as_ref().map(SubspaceFile::from_subspace),
                    has_secant_of_length: length.map(|s| max_collinear >= s),
                    criterion,
                },
                holds,
            )
        }
        Command::Separate {
            recipe,
            degree,
            frame,
            ..
        } => {
            let recipe = read_json::<RecipeFile>(recipe)?
                .to_recipe::<F>(ctx)
                .map_err(err)?;
            let frame = match frame {
                Some(p) => read_json::<FrameFile>(p)?.to_frame::<F>(ctx).map_err(err)?,
                None => FiberFrame::standard(ctx.clone(), x.ambient(), recipe.t_count()),
            };
            let separates = recipe_separates(&x, &recipe, *degree, &frame).map_err(err)?;
            let forms = recipe_space(&recipe, *degree, &frame).map_err(err)?;
            let rank = evaluation_matrix_of_forms(&x, &forms).rank();
            emit(
                &Separation {
                    degree: *degree,
                    length: x.degree(),
                    forms: forms.len(),
                    rank,
                    separates,
                },
                separates,
            )
        }
        Command::Project { center, .. } => {
            let center = read_json::<SubspaceFile>(center)?
                .to_subspace::<F>(ctx)
                .map_err(err)?;
            let fibers = project_scheme(&x, &center).map_err(err)?;
            let yk = yk_counts(fibers.iter().map(|f| f.length()));
            let fibers = fibers
                .iter()
                .map(|f| ProjectedFiber {
                    image: vector_strings(f.image.coords()),
                    length: f.length(),
                    germs: (0..f.selector.lengths.len())
                        .filter(|&i| f.selector.lengths[i] > 0)
                        .collect(),
                })
                .collect();
            emit(&Projection { fibers, yk }, true)
        }
        Command::ClassifyFiber { n, frame, .. } => {
            let profile = classify_fiber(&x, *n).map_err(err)?;
            let minimal = minimal_normal_degree(&x);
            let prediction_holds = profile.predicted_normality.map(|p| {
                if profile.prediction_is_sharp {
                    minimal == p
                } else {
                    minimal <= p
                }
            });
            let frame = match frame {
                Some(p) => Some(read_json::<FrameFile>(p)?.to_frame::<F>(ctx).map_err(err)?),
                None => (x.ambient() == 2).then(|| FiberFrame::standard(ctx.clone(), 2, 2)),
            };
            let recipe_separates = match (
                paper_recipe::<F>(ctx.clone(), &profile),
                profile.predicted_normality,
                frame,
            ) {
                (Some(r), Some(k), Some(f)) => Some(recipe_separates(&x, &r, k, &f).map_err(err)?),
                _ => None,
            };
            let holds = prediction_holds != Some(false);
            emit(
                &Classified {
                    profile,
                    minimal_normal_degree: minimal,
                    prediction_holds,
                    recipe_separates,
                },
                holds,
            )
        }
        _ => unreachable!("not a scheme command"),
    }
}

#[derive(Serialize)]
struct Separators {
    forms: Vec<TermList>,
    check: SeparatorCheck,
}

fn lemma26<F: Field>(ctx: &F::Ctx, path: &Path) -> Res<Output> {
    let cfg = read_json::<SeparatorConfigFile>(path)?
        .to_config::<F>(ctx)
        .map_err(err)?;
    let forms = lemma26_separators(&cfg).map_err(err)?;
    let check = check_separators(&cfg, &forms).map_err(err)?;
    let holds = check.holds();
    emit(
        &Separators {
            forms: forms.iter().map(form_terms).collect(),
            check,
        },
        holds,
    )
}

#[derive(Serialize)]
struct CurveFiberOut {
    degree: usize,
    image: Vec<String>,
    /// rational parameters with multiplicities
    rational: Vec<(RootParam, usize)>,
    /// roots not defined over Q
    clusters: Vec<RootCluster>,
    total_length: usize,
    /// total length equals the degree; checked for projections to a line
    flat: Option<bool>,
    scheme: Option<SchemeFile>,
}

fn curve_fiber(curve: &Path, center: &Path, point: &[String], param: Option<&str>) -> Res<Output> {
    let c = read_json::<CurveFile>(curve)?.to_curve().map_err(err)?;
    let center = read_json::<SubspaceFile>(center)?
        .to_subspace::<Rational>(&())
        .map_err(err)?;
    let y: Vec<Rational> = match param {
        Some(s) => {
            let p = if s == "inf" {
                RootParam::Infinity
            } else {
                RootParam::Finite(parse_scalar::<Rational>(&(), s).map_err(err)?)
            };
            let x = c.point(&p);
            center
                .forms()
                .iter()
                .map(|f| f.iter().zip(&x).map(|(a, b)| a * b).sum())
                .collect()
        }
        None => parse_vector(&(), point).map_err(err)?,
    };
    let fiber = curve_fiber_scheme(&c, &center, &y).map_err(err)?;
    let flat = (center.forms().len() == 2).then(|| fiber.total_length == c.degree());
    emit(
        &CurveFiberOut {
            degree: c.degree(),
            image: vector_strings(&y),
            rational: fiber.rational,
            clusters: fiber.clusters,
            total_length: fiber.total_length,
            flat,
            scheme: fiber.scheme.as_ref().map(SchemeFile::from_scheme),
        },
        flat != Some(false),
    )
}

#[derive(Serialize)]
struct Section {
    degree: usize,
    subspace_dim: isize,
    length: usize,
    nondegenerate: bool,
    /// `d - (N - 1 - r)` for a nondegenerate curve and an `r`-plane
    bound: Option<i64>,
    holds: Option<bool>,
}

fn curve_section(curve: &Path, subspace: &Path) -> Res<Output> {
    let c = read_json::<CurveFile>(curve)?.to_curve().map_err(err)?;
    let l = read_json::<SubspaceFile>(subspace)?
        .to_subspace::<Rational>(&())
        .map_err(err)?;
    let length = curve_linear_section_length(&c, &l).map_err(err)?;
    let nondegenerate = c.is_nondegenerate();
    let r = l.dim();
    let bound = (nondegenerate && r < c.ambient() as isize)
        .then(|| c.degree() as i64 - (c.ambient() as i64 - 1 - r as i64));
    let holds = bound.map(|b| length as i64 <= b);
    emit(
        &Section {
            degree: c.degree(),
            subspace_dim: r,
            length,
            nondegenerate,
            bound,
            holds,
        },
        holds != Some(false),
    )
}

#[derive(Serialize)]
struct Bounds {
    eisenbud_goto: i64,
    paper: Option<i64>,
    bel: Option<i64>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    conditional: bool,
}

fn bounds(
    n: i64,
    d: i64,
    e: i64,
    quadric: reglab::bounds::Quadric,
    quadric_generators: bool,
    singular: bool,
) -> Res<Output> {
    let mut q = BoundQuery::smooth(n, d, e);
    q.quadric = quadric;
    q.quadric_generators = quadric_generators;
    q.smooth = !singular;
    let b = known_regularity_bound(&q).map_err(err)?;
    emit(
        &Bounds {
            eisenbud_goto: b.eisenbud_goto,
            paper: b.paper,
            bel: b.bel,
            conditional: b.conditional,
        },
        true,
    )
}

fn verify(suite: &str, trials: usize, cli: &Cli) -> Res<Output> {
    let field = cli.field.unwrap_or(FieldTag::Q);
    let start = Instant::now();
    let report = run_suite(suite, trials, cli.seed, cli.jobs, field).map_err(err)?;
    eprintln!(
        "{suite}: {trials} trials in {:.2}s on {} thread(s)",
        start.elapsed().as_secs_f64(),
        cli.jobs.max(1)
    );
    emit(&report, report.passed)
}
