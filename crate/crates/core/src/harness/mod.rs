//! Seeded generators and property suites.
//!
//! Every trial draws from its own ChaCha8 stream seeded by a hash of the
//! master seed and the trial index, so a suite's report depends only on
//! `(name, trials, seed, field)` and not on how trials are scheduled.

mod gen;
mod suites;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldTag, Fp, Prime};
use crate::Rational;

pub use gen::{
    gen_fiber, gen_scheme, gen_separator_config, random_curve, sample_scheme, Generated,
    FIBER_TYPES,
};

/// How germ lengths are drawn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthDist {
    /// every germ a reduced point
    Reduced,
    /// exactly these lengths, in order
    Fixed(Vec<usize>),
    /// half reduced, the rest uniform in `2..=max_len`
    Mixed { max_len: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub ambient: usize,
    pub degree: usize,
    pub lengths: LengthDist,
    /// plant a subscheme of exactly this length on a line
    pub collinear: Option<usize>,
    /// the planted line carries a nonreduced germ tangent to it
    pub tangent_on_line: bool,
    /// require every subscheme of length at most `N + 1` to be independent
    pub general_position: bool,
    /// coordinates are drawn from `[-coord_box, coord_box]`
    pub coord_box: i64,
    pub max_redraws: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(ambient: usize, degree: usize) -> Self {
        GeneratorSpec {
            ambient,
            degree,
            lengths: LengthDist::Reduced,
            collinear: None,
            tangent_on_line: false,
            general_position: false,
            coord_box: DEFAULT_BOX,
            max_redraws: DEFAULT_REDRAWS,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(m.into()));
        if self.ambient == 0 || self.degree == 0 {
            return bad("ambient dimension and degree must be positive");
        }
        if self.coord_box < 1 {
            return bad("coordinate box must be at least 1");
        }
        match &self.lengths {
            LengthDist::Fixed(v) => {
                if v.iter().sum::<usize>() != self.degree || v.contains(&0) {
                    return bad("fixed lengths must be positive and sum to the degree");
                }
            }
            LengthDist::Mixed { max_len } if *max_len == 0 => {
                return bad("max_len must be positive")
            }
            _ => {}
        }
        if let Some(s) = self.collinear {
            if self.ambient < 2 || s < 2 || s > self.degree {
                return bad("planted collinear length needs N >= 2 and 2 <= s <= d");
            }
            if self.general_position && s > 2 {
                return bad("general position excludes three collinear");
            }
            if let LengthDist::Fixed(v) = &self.lengths {
                let mut acc = 0;
                if !v.iter().any(|l| {
                    acc += l;
                    acc == s
                }) {
                    return bad("a prefix of the fixed lengths must sum to the collinear length");
                }
            }
        } else if self.tangent_on_line {
            return bad("tangent_on_line needs a planted line");
        }
        if self.tangent_on_line && self.lengths == LengthDist::Reduced {
            return bad("tangent_on_line needs nonreduced germs");
        }
        if self.general_position && self.degree > crate::DEFAULT_ENUMERATION_CAP {
            return bad("general position check needs degree within the enumeration cap");
        }
        Ok(())
    }
}

pub const DEFAULT_BOX: i64 = 10;
pub const DEFAULT_REDRAWS: usize = 2000;

pub const SUITES: [&str; 10] = [
    "prop1_2",
    "cor1_3a",
    "cor1_3b",
    "lemma2_6",
    "fiber_cases",
    "mather_consistency",
    "flatness",
    "lemma3_1",
    "invariance",
    "hilbert_shape",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub trial_seed: u64,
    pub message: String,
    /// the failing input in its file format, replayable through the CLI
    pub input: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub field: FieldTag,
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub failures: Vec<TrialFailure>,
    pub redraws: usize,
    /// trials rerun over Q to compare with the prime-field result
    pub cross_checked: usize,
    pub cross_check_mismatches: Vec<usize>,
}

/// Outcome of one trial.
pub(crate) struct Trial {
    pub redraws: usize,
    /// a summary of what was computed, compared across fields
    pub observed: String,
    pub failure: Option<(String, serde_json::Value)>,
}

impl Trial {
    fn exhausted(e: Error) -> Self {
        Trial {
            redraws: 0,
            observed: String::new(),
            failure: Some((e.to_string(), serde_json::Value::Null)),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` under master seed `seed`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    splitmix64(splitmix64(seed) ^ (index as u64))
}

pub fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, index))
}

type TrialFn<F> = fn(&<F as Field>::Ctx, usize, &mut ChaCha8Rng) -> Trial;

fn suite_fn<F: Field>(name: &str) -> Option<TrialFn<F>> {
    Some(match name {
        "prop1_2" => suites::prop1_2::<F>,
        "cor1_3a" => suites::cor1_3a::<F>,
        "cor1_3b" => suites::cor1_3b::<F>,
        "lemma2_6" => suites::lemma2_6::<F>,
        "fiber_cases" => suites::fiber_cases::<F>,
        "invariance" => suites::invariance::<F>,
        "hilbert_shape" => suites::hilbert_shape::<F>,
        "mather_consistency" => |_, i, r| suites::mather_consistency(i, r),
        "flatness" => |_, i, r| suites::flatness(i, r),
        "lemma3_1" => |_, i, r| suites::lemma3_1(i, r),
        _ => return None,
    })
}

/// Runs `trials` trials of suite `name` on `jobs` worker threads.
///
/// Over a prime field, every hundredth trial is also run over Q; differing
/// summaries are listed in `cross_check_mismatches` (a bad reduction, not a
/// property failure).
pub fn run_suite(
    name: &str,
    trials: usize,
    seed: u64,
    jobs: usize,
    field: FieldTag,
) -> Result<SuiteReport> {
    let q_fn = suite_fn::<Rational>(name).ok_or_else(|| Error::UnknownSuite(name.into()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;

    let run_q = |i: usize| q_fn(&(), i, &mut trial_rng(seed, i));
    let (results, mismatches, cross_checked) = match field {
        FieldTag::Q => {
            let results: Vec<Trial> =
                pool.install(|| (0..trials).into_par_iter().map(run_q).collect());
            (results, Vec::new(), 0)
        }
        FieldTag::Fp(p) => {
            let prime = Prime::new(p)?;
            let fp_fn = suite_fn::<Fp>(name).expect("same suite list");
            let pairs: Vec<(Trial, Option<bool>)> = pool.install(|| {
                (0..trials)
                    .into_par_iter()
                    .map(|i| {
                        let t = fp_fn(&prime, i, &mut trial_rng(seed, i));
                        let agree = (i % 100 == 0).then(|| run_q(i).observed == t.observed);
                        (t, agree)
                    })
                    .collect()
            });
            let checked = pairs.iter().filter(|(_, a)| a.is_some()).count();
            let mism = pairs
                .iter()
                .enumerate()
                .filter(|(_, (_, a))| *a == Some(false))
                .map(|(i, _)| i)
                .collect();
            (pairs.into_iter().map(|(t, _)| t).collect(), mism, checked)
        }
    };

    let mut failures = Vec::new();
    let mut redraws = 0;
    for (i, t) in results.into_iter().enumerate() {
        redraws += t.redraws;
        if let Some((message, input)) = t.failure {
            failures.push(TrialFailure {
                trial: i,
                trial_seed: trial_seed(seed, i),
                message,
                input,
            });
        }
    }
    Ok(SuiteReport {
        suite: name.into(),
        field,
        seed,
        trials,
        passed: failures.is_empty(),
        failures,
        redraws,
        cross_checked,
        cross_check_mismatches: mismatches,
    })
}
