//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use reglab::bounds::{
    bel_bound, complete_intersection_regularity, corollary_bounds, integral_surface_bound,
    known_regularity_bound, BoundQuery, Quadric,
};
use reglab::harness::{run_suite, SuiteReport};
use reglab::io::SchemeFile;
use reglab::{FieldTag, QScheme};

struct Outcome {
    ok: bool,
    detail: String,
}

fn bound_table() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut expect = |what: &str, got: i64, want: i64| {
        checked += 1;
        if got != want {
            bad.push(format!("{what}: got {got}, want {want}"));
        }
    };
    for e in 1..=12i64 {
        for d in (e + 2)..=60 {
            let eg = d - e + 1;
            let query = |n, quadric| {
                let mut q = BoundQuery::smooth(n, d, e);
                q.quadric = quadric;
                known_regularity_bound(&q).unwrap()
            };
            if e == 3 {
                expect(
                    &format!("n=5 quadric d={d}"),
                    query(5, Quadric::Yes).paper.unwrap(),
                    d + 4,
                );
                expect(
                    &format!("n=5 no quadric d={d}"),
                    query(5, Quadric::No).paper.unwrap(),
                    d - 5,
                );
                expect(
                    &format!("n=6 quadric d={d}"),
                    query(6, Quadric::Yes).paper.unwrap(),
                    d + 8,
                );
                expect(
                    &format!("n=6 no quadric d={d}"),
                    query(6, Quadric::No).paper.unwrap(),
                    d,
                );
            }
            if e >= 4 {
                expect(
                    &format!("n=5 d={d} e={e}"),
                    query(5, Quadric::Unknown).paper.unwrap(),
                    eg + 10,
                );
                expect(
                    &format!("n=6 d={d} e={e}"),
                    query(6, Quadric::Unknown).paper.unwrap(),
                    eg + 20,
                );
                let cor = |c: i64| eg - 2 * (e - 1) - e * (e - 1) / 2 + c;
                expect(
                    &format!("cor n=5 d={d} e={e}"),
                    corollary_bounds(5, d, e).unwrap(),
                    cor(4),
                );
                expect(
                    &format!("cor n=6 d={d} e={e}"),
                    corollary_bounds(6, d, e).unwrap(),
                    cor(10),
                );
            }
            let s = integral_surface_bound(d, e).unwrap();
            expect(
                &format!("surface d={d} e={e}"),
                s.regularity_bound,
                eg * d - (2 * e + 1),
            );
            expect(
                &format!("surface threshold d={d} e={e}"),
                s.normality_threshold,
                (d - e) * (d + 2) - d - 2,
            );
            for n in 1..=8 {
                expect(
                    &format!("bel n={n} d={d} e={e}"),
                    bel_bound(n, d, e),
                    e.min(n) * d - n + 1,
                );
            }
        }
    }
    for d1 in 1..=8 {
        for d2 in 1..=8 {
            for d3 in 1..=8 {
                expect(
                    &format!("ci {d1},{d2},{d3}"),
                    complete_intersection_regularity(&[d1, d2, d3]).unwrap(),
                    d1 + d2 + d3 - 2,
                );
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: match bad.first() {
            None => format!("{checked} exact values"),
            Some(b) => format!("{} of {checked} mismatches, first {b}", bad.len()),
        },
    }
}

fn suite(
    name: &str,
    trials: usize,
    seed: u64,
    jobs: usize,
    limit: Option<Duration>,
) -> (Outcome, SuiteReport) {
    let start = Instant::now();
    let r = run_suite(name, trials, seed, jobs, FieldTag::Q).expect("known suite");
    let took = start.elapsed();
    let in_time = limit.is_none_or(|l| took <= l);
    let mut detail = format!(
        "{name}: {} trials, {} failures, {} redraws, {:.1}s on {jobs} thread(s)",
        r.trials,
        r.failures.len(),
        r.redraws,
        took.as_secs_f64()
    );
    if let Some(l) = limit {
        detail.push_str(&format!(" (limit {}s)", l.as_secs()));
    }
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first failure trial {}: {}", f.trial, f.message));
    }
    (
        Outcome {
            ok: r.passed && in_time,
            detail,
        },
        r,
    )
}

/// Splits secant-equivalence failures by `d - N`.
fn secant_equivalence() -> Outcome {
    let (mut o, r) = suite("cor1_3a", 600, 7, 1, Some(Duration::from_secs(300)));
    let mut excess = std::collections::BTreeMap::new();
    for f in &r.failures {
        let file: SchemeFile = serde_json::from_value(f.input.clone()).expect("scheme input");
        let x: QScheme = file.to_scheme(&()).expect("valid scheme");
        *excess.entry(x.degree() - x.ambient()).or_insert(0usize) += 1;
    }
    if !excess.is_empty() {
        o.detail
            .push_str(&format!("; failures by d - N: {excess:?}"));
    }
    o
}

fn all(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        ok: parts.iter().all(|o| o.ok),
        detail: parts
            .iter()
            .map(|o| o.detail.as_str())
            .collect::<Vec<_>>()
            .join(" | "),
    }
}

fn determinism() -> Outcome {
    let mut mismatched = Vec::new();
    for (name, trials) in [
        ("prop1_2", 60),
        ("lemma2_6", 40),
        ("fiber_cases", 30),
        ("flatness", 20),
    ] {
        let runs: Vec<String> = [1, 4, 1, 3]
            .iter()
            .map(|&jobs| {
                serde_json::to_string(&run_suite(name, trials, 2024, jobs, FieldTag::Q).unwrap())
                    .unwrap()
            })
            .collect();
        if runs.iter().any(|r| *r != runs[0]) {
            mismatched.push(name);
        }
    }
    Outcome {
        ok: mismatched.is_empty(),
        detail: if mismatched.is_empty() {
            "reports byte-identical across repeated runs and jobs 1/3/4".into()
        } else {
            format!("reports differ for {mismatched:?}")
        },
    }
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let five_min = Some(Duration::from_secs(300));
    let two_min = Some(Duration::from_secs(120));
    let criteria: Vec<Criterion> = vec![
        (
            "bound table",
            Box::new(|| {
                let start = Instant::now();
                let mut o = bound_table();
                let took = start.elapsed();
                o.ok &= took < Duration::from_secs(1);
                o.detail
                    .push_str(&format!(" in {:.3}s", took.as_secs_f64()));
                o
            }),
        ),
        (
            "normality threshold",
            Box::new(move || suite("prop1_2", 1000, 42, 1, five_min).0),
        ),
        ("secant equivalence", Box::new(secant_equivalence)),
        (
            "general position",
            Box::new(|| suite("cor1_3b", 300, 11, 1, None).0),
        ),
        (
            "separating forms",
            Box::new(|| suite("lemma2_6", 4000, 1, 1, None).0),
        ),
        (
            "fiber cases",
            Box::new(|| suite("fiber_cases", 1000, 3, 1, None).0),
        ),
        (
            "curve projections",
            Box::new(move || {
                all(vec![
                    suite("flatness", 100, 5, 1, two_min).0,
                    suite("lemma3_1", 100, 5, 1, two_min).0,
                    suite("mather_consistency", 100, 5, 1, two_min).0,
                ])
            }),
        ),
        (
            "coordinate invariance",
            Box::new(|| suite("invariance", 200, 13, 1, None).0),
        ),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.ok {
            failed += 1;
        }
        println!(
            "{} [{}] {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
