use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::gen::{gen_fiber, gen_separator_config, random_curve, sample_scheme, FIBER_TYPES};
use super::{GeneratorSpec, LengthDist, Trial, DEFAULT_BOX, DEFAULT_REDRAWS};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::io::{CurveFile, SchemeFile, SeparatorConfigFile};
use crate::matrix::Matrix;
use crate::normality::{
    check_cor13a, finite_scheme_regularity, general_position_bound, hilbert_sequence,
    minimal_normal_degree, normality_threshold_bound,
};
use crate::poly::binomial;
use crate::projection::{
    classify_fiber, curve_fiber_scheme, curve_linear_section_length, mather_inequality,
    paper_recipe, CurveFiber, RationalCurve, RootParam,
};
use crate::scheme::{dot, invariant_t, max_collinear_length, FiniteScheme, LinearSubspace};
use crate::separation::{
    check_separators, lemma26_separators, recipe_separates, FiberFrame, SeparatorCase,
};
use crate::{Rational, DEFAULT_ENUMERATION_CAP};

fn scheme_json<F: Field>(x: &FiniteScheme<F>) -> Value {
    serde_json::to_value(SchemeFile::from_scheme(x)).expect("serializable")
}

fn verdict(
    redraws: usize,
    observed: String,
    problem: Option<String>,
    input: impl FnOnce() -> Value,
) -> Trial {
    Trial {
        redraws,
        observed,
        failure: problem.map(|m| (m, input())),
    }
}

fn random_lengths(rng: &mut ChaCha8Rng, max_len: usize) -> LengthDist {
    if rng.gen_bool(0.5) {
        LengthDist::Reduced
    } else {
        LengthDist::Mixed { max_len }
    }
}

/// Draws from `spec` until `accept` holds, accumulating redraws.
fn sample_until<F: Field>(
    ctx: &F::Ctx,
    spec: &GeneratorSpec,
    rng: &mut ChaCha8Rng,
    accept: impl Fn(&FiniteScheme<F>) -> bool,
) -> Result<(FiniteScheme<F>, usize)> {
    let mut redraws = 0;
    for _ in 0..=spec.max_redraws {
        let g = sample_scheme(ctx, spec, rng)?;
        redraws += g.redraws;
        if accept(&g.value) {
            return Ok((g.value, redraws));
        }
        redraws += 1;
    }
    Err(Error::RedrawsExhausted(spec.max_redraws))
}

macro_rules! try_gen {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Trial::exhausted(e),
        }
    };
}

/// First `k >= from` with `seq[k] != d`.
fn first_bad_from(seq: &[usize], from: usize, d: usize) -> Option<usize> {
    (from..seq.len()).find(|&k| seq[k] != d)
}

pub(crate) fn prop1_2<F: Field>(ctx: &F::Ctx, _: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(1..=5);
    let d = rng.gen_range(1..=10);
    let mut spec = GeneratorSpec::new(n, d);
    spec.lengths = random_lengths(rng, 3);
    if n >= 2 && d >= 3 && rng.gen_bool(0.5) {
        spec.collinear = Some(rng.gen_range(3..=d));
        spec.tangent_on_line = spec.lengths != LengthDist::Reduced && rng.gen_bool(0.5);
    }
    let (x, redraws) = try_gen!(sample_until::<F>(ctx, &spec, rng, |_| true));
    let bound = match normality_threshold_bound(&x, DEFAULT_ENUMERATION_CAP) {
        Ok(b) => b as usize,
        Err(e) => {
            return verdict(redraws, String::new(), Some(e.to_string()), || {
                scheme_json(&x)
            })
        }
    };
    let seq = hilbert_sequence(&x, bound.max(d - 1) as u32);
    let problem = first_bad_from(&seq, bound, d).map(|k| {
        format!(
            "not {k}-normal (phi = {}) although k >= threshold {bound}",
            seq[k]
        )
    });
    verdict(redraws, format!("{seq:?} {bound}"), problem, || {
        scheme_json(&x)
    })
}

pub(crate) fn cor1_3a<F: Field>(ctx: &F::Ctx, i: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(2..=5);
    let d = rng.gen_range(n + 2..=10);
    let s = d - n + 1;
    let planted = i.is_multiple_of(2);
    let mut spec = GeneratorSpec::new(n, d);
    spec.lengths = random_lengths(rng, 2);
    if planted {
        spec.collinear = Some(s);
    }
    let (x, redraws) = try_gen!(sample_until::<F>(ctx, &spec, rng, |x| {
        x.span_dim() == n && (planted || max_collinear_length(x).0 < s)
    }));
    let v = check_cor13a(&x);
    let problem = if v.has_secant != planted {
        Some(format!(
            "planted secant {planted} but found max collinear length {}",
            v.max_collinear
        ))
    } else if !v.equivalence_holds {
        Some(format!(
            "(d-N)-normal {} and (d-N-1)-normal {} disagree with {}-secant {}",
            v.is_dn_normal, v.is_dn1_normal, s, v.has_secant
        ))
    } else {
        None
    };
    verdict(
        redraws,
        serde_json::to_string(&v).expect("serializable"),
        problem,
        || scheme_json(&x),
    )
}

pub(crate) fn cor1_3b<F: Field>(ctx: &F::Ctx, _: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(2..=5);
    let d = rng.gen_range(n + 1..=10);
    let mut spec = GeneratorSpec::new(n, d);
    spec.lengths = random_lengths(rng, 2);
    spec.general_position = true;
    let (x, redraws) = try_gen!(sample_until::<F>(ctx, &spec, rng, |_| true));
    let k0 = general_position_bound(&x) as usize;
    let seq = hilbert_sequence(&x, k0.max(d - 1) as u32);
    let problem = first_bad_from(&seq, k0, d).map(|k| {
        format!(
            "general position but not {k}-normal (phi = {}), bound {k0}",
            seq[k]
        )
    });
    verdict(redraws, format!("{seq:?}"), problem, || scheme_json(&x))
}

pub(crate) fn hilbert_shape<F: Field>(ctx: &F::Ctx, _: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(1..=5);
    let d = rng.gen_range(1..=10);
    let mut spec = GeneratorSpec::new(n, d);
    spec.lengths = random_lengths(rng, 4);
    let (x, redraws) = try_gen!(sample_until::<F>(ctx, &spec, rng, |_| true));
    let seq = hilbert_sequence(&x, d as u32 + 1);
    let mut problem = None;
    for k in 0..seq.len() {
        let cap = (binomial((n + k) as u64, k as u64) as usize).min(d);
        if seq[k] > cap {
            problem = Some(format!("phi({k}) = {} exceeds {cap}", seq[k]));
        } else if k > 0 && seq[k] < seq[k - 1] {
            problem = Some(format!("phi drops at {k}"));
        } else if k > 0 && seq[k - 1] == d && seq[k] != d {
            problem = Some(format!("phi leaves d at {k}"));
        }
        if problem.is_some() {
            break;
        }
    }
    if problem.is_none() && seq[d - 1] != d {
        problem = Some(format!("not ({})-normal", d - 1));
    }
    verdict(redraws, format!("{seq:?}"), problem, || scheme_json(&x))
}

fn random_invertible<F: Field>(
    ctx: &F::Ctx,
    rng: &mut ChaCha8Rng,
    size: usize,
) -> (Matrix<F>, usize) {
    let mut redraws = 0;
    loop {
        let rows = (0..size)
            .map(|_| {
                (0..size)
                    .map(|_| F::from_i64_in(ctx, rng.gen_range(-DEFAULT_BOX..=DEFAULT_BOX)))
                    .collect()
            })
            .collect();
        let g = Matrix::from_rows(ctx.clone(), size, rows).expect("square");
        if g.rank() == size {
            return (g, redraws);
        }
        redraws += 1;
    }
}

#[derive(PartialEq, Debug)]
struct Invariants {
    phi: Vec<usize>,
    regularity: u32,
    t: usize,
    max_collinear: usize,
}

fn invariants<F: Field>(x: &FiniteScheme<F>) -> Result<Invariants> {
    Ok(Invariants {
        phi: hilbert_sequence(x, x.degree() as u32),
        regularity: finite_scheme_regularity(x),
        t: invariant_t(x, DEFAULT_ENUMERATION_CAP)?,
        max_collinear: max_collinear_length(x).0,
    })
}

pub(crate) fn invariance<F: Field>(ctx: &F::Ctx, _: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = rng.gen_range(1..=4);
    let d = rng.gen_range(1..=8);
    let mut spec = GeneratorSpec::new(n, d);
    spec.lengths = random_lengths(rng, 3);
    if n >= 2 && d >= 3 && rng.gen_bool(0.3) {
        spec.collinear = Some(rng.gen_range(3..=d));
    }
    let (x, mut redraws) = try_gen!(sample_until::<F>(ctx, &spec, rng, |_| true));
    let (g, r) = random_invertible::<F>(ctx, rng, n + 1);
    redraws += r;
    let input = || json!({ "scheme": scheme_json(&x), "transform": (0..g.rows()).map(|r| crate::io::vector_strings(g.row(r))).collect::<Vec<_>>() });
    let outcome = x
        .transform(&g)
        .and_then(|y| Ok((invariants(&x)?, invariants(&y)?)));
    match outcome {
        Err(e) => verdict(redraws, String::new(), Some(e.to_string()), input),
        Ok((a, b)) => {
            let problem = (a != b).then(|| format!("invariants changed: {a:?} vs {b:?}"));
            verdict(redraws, format!("{a:?}"), problem, input)
        }
    }
}

pub(crate) fn lemma2_6<F: Field>(ctx: &F::Ctx, i: usize, rng: &mut ChaCha8Rng) -> Trial {
    let n = 3 + (i % 8) / 2;
    let case = if i.is_multiple_of(2) {
        SeparatorCase::One
    } else {
        SeparatorCase::Two
    };
    let g = try_gen!(gen_separator_config::<F>(
        ctx,
        n,
        case,
        rng,
        DEFAULT_BOX,
        DEFAULT_REDRAWS
    ));
    let cfg = g.value;
    let input =
        || serde_json::to_value(SeparatorConfigFile::from_config(&cfg)).expect("serializable");
    let check = lemma26_separators(&cfg).and_then(|forms| check_separators(&cfg, &forms));
    match check {
        Err(e) => verdict(g.redraws, String::new(), Some(e.to_string()), input),
        Ok(c) => {
            let problem = (!c.holds()).then(|| format!("separator postconditions fail: {c:?}"));
            verdict(g.redraws, format!("{c:?}"), problem, input)
        }
    }
}

pub(crate) fn fiber_cases<F: Field>(ctx: &F::Ctx, i: usize, rng: &mut ChaCha8Rng) -> Trial {
    let (n, case) = FIBER_TYPES[i % FIBER_TYPES.len()];
    let g = try_gen!(gen_fiber::<F>(
        ctx,
        n,
        case,
        rng,
        DEFAULT_BOX,
        DEFAULT_REDRAWS
    ));
    let x = g.value;
    let run = || -> Result<(String, Option<String>)> {
        let p = classify_fiber(&x, n)?;
        let predicted = p
            .predicted_normality
            .expect("generated types carry a prediction");
        let computed = minimal_normal_degree(&x);
        let recipe = paper_recipe::<F>(ctx.clone(), &p).expect("generated types carry a recipe");
        let frame = FiberFrame::standard(ctx.clone(), 2, 2);
        let separates = recipe_separates(&x, &recipe, predicted, &frame)?;
        let matches = if p.prediction_is_sharp {
            computed == predicted
        } else {
            computed <= predicted
        };
        let problem = if !matches {
            Some(format!(
                "{}: predicted {predicted}, computed {computed}",
                case.label()
            ))
        } else if !separates {
            Some(format!(
                "{}: recipe does not separate at degree {predicted}",
                case.label()
            ))
        } else {
            None
        };
        Ok((format!("{} {computed} {separates}", case.label()), problem))
    };
    match run() {
        Ok((obs, problem)) => verdict(
            g.redraws,
            obs,
            problem,
            || json!({ "n": n, "fiber": scheme_json(&x) }),
        ),
        Err(e) => verdict(
            g.redraws,
            String::new(),
            Some(e.to_string()),
            || json!({ "n": n, "fiber": scheme_json(&x) }),
        ),
    }
}

fn curve_json(c: &RationalCurve) -> Value {
    serde_json::to_value(CurveFile::from_curve(c)).expect("serializable")
}

fn vectors_json(v: &[Vec<Rational>]) -> Value {
    json!(v
        .iter()
        .map(|r| crate::io::vector_strings(r))
        .collect::<Vec<_>>())
}

fn param(rng: &mut ChaCha8Rng) -> RootParam {
    if rng.gen_ratio(1, 8) {
        RootParam::Infinity
    } else {
        RootParam::Finite(Rational::from_integer(
            rng.gen_range(-DEFAULT_BOX..=DEFAULT_BOX).into(),
        ))
    }
}

fn distinct_params(rng: &mut ChaCha8Rng, k: usize) -> Vec<RootParam> {
    let mut out: Vec<RootParam> = Vec::new();
    while out.len() < k {
        let p = param(rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn q_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|_| Rational::from_integer(rng.gen_range(-DEFAULT_BOX..=DEFAULT_BOX).into()))
        .collect()
}

fn fiber_lengths(f: &CurveFiber) -> Vec<usize> {
    let mut out = f.lengths();
    for c in &f.clusters {
        out.extend(std::iter::repeat_n(c.multiplicity, c.degree));
    }
    out
}

fn curve_dims(rng: &mut ChaCha8Rng, min_n: usize) -> (usize, usize) {
    let n = rng.gen_range(min_n..=5);
    (n, rng.gen_range(n..=6))
}

/// Projection of a random space curve to `P^2`, half the time from a center
/// on a secant line so the image acquires a node. Every fiber over the image
/// of a sampled parameter must satisfy the multiple-point inequality for `n = 1`.
pub(crate) fn mather_consistency(i: usize, rng: &mut ChaCha8Rng) -> Trial {
    let (n, d) = curve_dims(rng, 3);
    let g = try_gen!(random_curve(rng, n, d, DEFAULT_BOX, DEFAULT_REDRAWS));
    let curve = g.value;
    let mut redraws = g.redraws;
    let planted = i.is_multiple_of(2);
    for _ in 0..=DEFAULT_REDRAWS {
        let params = distinct_params(rng, 5);
        let mut span: Vec<Vec<Rational>> = (0..n - 2).map(|_| q_vector(rng, n + 1)).collect();
        if planted {
            let (l, m) = (q_vector(rng, 1).remove(0), q_vector(rng, 1).remove(0));
            let (a, b) = (curve.point(&params[0]), curve.point(&params[1]));
            span[0] = a.iter().zip(&b).map(|(x, y)| &l * x + &m * y).collect();
        }
        let Ok(center) = LinearSubspace::spanned_by((), n, &span) else {
            redraws += 1;
            continue;
        };
        if center.dim() != n as isize - 3 {
            redraws += 1;
            continue;
        }
        let input = || json!({ "curve": curve_json(&curve), "center": vectors_json(&span) });
        let mut observed = Vec::new();
        let mut problem = None;
        let mut degenerate = false;
        for (k, p) in params.iter().enumerate() {
            let x = curve.point(p);
            let y: Vec<Rational> = center.forms().iter().map(|f| dot(f, &x)).collect();
            if y.iter().all(|v| v.is_zero()) {
                degenerate = true;
                break;
            }
            match curve_fiber_scheme(&curve, &center, &y) {
                Err(Error::CenterMeetsCurve) | Err(Error::CenterMeetsScheme(_)) => {
                    degenerate = true;
                    break;
                }
                Err(e) => {
                    problem = Some(format!("fiber over the image of {p:?}: {e}"));
                    break;
                }
                Ok(f) => {
                    let lengths = fiber_lengths(&f);
                    let m = mather_inequality(&lengths, 1);
                    observed.push(lengths.clone());
                    if !m.holds {
                        problem = Some(format!("fiber lengths {lengths:?} violate the inequality"));
                        break;
                    }
                    if planted && k == 0 && f.total_length < 2 {
                        problem = Some("planted node does not appear in the fiber".into());
                        break;
                    }
                }
            }
        }
        if degenerate {
            redraws += 1;
            continue;
        }
        return verdict(redraws, format!("{observed:?}"), problem, input);
    }
    Trial::exhausted(Error::RedrawsExhausted(DEFAULT_REDRAWS))
}

/// Projection of a random curve to `P^1` from a codimension-2 center, one of
/// whose forms half the time contains a tangent line; every fiber has length `d`.
pub(crate) fn flatness(i: usize, rng: &mut ChaCha8Rng) -> Trial {
    let (n, d) = curve_dims(rng, 2);
    let g = try_gen!(random_curve(rng, n, d, DEFAULT_BOX, DEFAULT_REDRAWS));
    let curve = g.value;
    let mut redraws = g.redraws;
    let tangent = i.is_multiple_of(2);
    for _ in 0..=DEFAULT_REDRAWS {
        let f0 = q_vector(rng, n + 1);
        let f1 = if tangent {
            let at = param(rng);
            let arc = curve.arc(&at, 2);
            let ker = Matrix::from_rows((), n + 1, arc)
                .expect("rectangular")
                .kernel_basis();
            ker.iter()
                .fold(vec![Rational::from_integer(0.into()); n + 1], |acc, v| {
                    let c = q_vector(rng, 1).remove(0);
                    acc.iter().zip(v).map(|(a, b)| a + &c * b).collect()
                })
        } else {
            q_vector(rng, n + 1)
        };
        let forms = vec![f0, f1];
        let Ok(center) = LinearSubspace::from_forms((), n, forms.clone()) else {
            redraws += 1;
            continue;
        };
        let input = || json!({ "curve": curve_json(&curve), "center_forms": vectors_json(&forms) });
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        let mut ys = vec![vec![one.clone(), zero.clone()], vec![zero, one]];
        ys.push(q_vector(rng, 2));
        let mut observed = Vec::new();
        let mut problem = None;
        let mut degenerate = false;
        for y in ys
            .iter()
            .filter(|y| y.iter().any(|v| *v != Rational::from_integer(0.into())))
        {
            match curve_fiber_scheme(&curve, &center, y) {
                Err(Error::CenterMeetsCurve) => {
                    degenerate = true;
                    break;
                }
                Err(e) => {
                    problem = Some(format!("fiber over {y:?}: {e}"));
                    break;
                }
                Ok(f) => {
                    observed.push(fiber_lengths(&f));
                    if f.total_length != d {
                        problem = Some(format!(
                            "fiber over {y:?} has length {} != {d}",
                            f.total_length
                        ));
                        break;
                    }
                }
            }
        }
        if degenerate {
            redraws += 1;
            continue;
        }
        return verdict(redraws, format!("{observed:?}"), problem, input);
    }
    Trial::exhausted(Error::RedrawsExhausted(DEFAULT_REDRAWS))
}

/// Sections of a random curve by an `r`-plane that is random, spanned by
/// curve points, or spanned by a tangent line and curve points.
pub(crate) fn lemma3_1(i: usize, rng: &mut ChaCha8Rng) -> Trial {
    let (n, d) = curve_dims(rng, 2);
    let g = try_gen!(random_curve(rng, n, d, DEFAULT_BOX, DEFAULT_REDRAWS));
    let curve = g.value;
    let mut redraws = g.redraws;
    let r = rng.gen_range(0..n);
    let variant = if r == 0 { i % 2 } else { i % 3 };
    for _ in 0..=DEFAULT_REDRAWS {
        let params = distinct_params(rng, r + 1);
        let span: Vec<Vec<Rational>> = match variant {
            0 => (0..=r).map(|_| q_vector(rng, n + 1)).collect(),
            1 => params.iter().map(|p| curve.point(p)).collect(),
            _ => {
                let mut v = curve.arc(&params[0], 2);
                v.extend(params[1..r].iter().map(|p| curve.point(p)));
                v
            }
        };
        let Ok(l) = LinearSubspace::spanned_by((), n, &span) else {
            redraws += 1;
            continue;
        };
        if l.dim() != r as isize {
            redraws += 1;
            continue;
        }
        let input = || json!({ "curve": curve_json(&curve), "subspace": vectors_json(&span) });
        let bound = d - (n - 1 - r);
        return match curve_linear_section_length(&curve, &l) {
            Err(e) => verdict(redraws, String::new(), Some(e.to_string()), input),
            Ok(len) => {
                let planted = match variant {
                    0 => 0,
                    1 => r + 1,
                    _ => r + 1,
                };
                let problem = if len > bound {
                    Some(format!(
                        "section length {len} exceeds d - (N-1-r) = {bound}"
                    ))
                } else if len < planted {
                    Some(format!(
                        "section length {len} misses the {planted} planted points"
                    ))
                } else {
                    None
                };
                verdict(redraws, format!("{len} {bound}"), problem, input)
            }
        };
    }
    Trial::exhausted(Error::RedrawsExhausted(DEFAULT_REDRAWS))
}
