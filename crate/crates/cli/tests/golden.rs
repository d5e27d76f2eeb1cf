//! Runs the binary on the inputs in `tests/golden` and compares stdout and exit
//! status with the recorded `.out` files. `REGLAB_BLESS=1` rewrites them.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn reglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reglab"))
        .args(args)
        .current_dir(dir())
        .env_remove("REGLAB_CAP")
        .output()
        .expect("binary runs")
}

const CASES: &[(&str, i32, &[&str])] = &[
    (
        "hilbert_collinear5",
        0,
        &[
            "hilbert",
            "--scheme",
            "collinear5.json",
            "--max-degree",
            "5",
        ],
    ),
    (
        "hilbert_fp_file",
        0,
        &["hilbert", "--scheme", "fp_points.json", "--max-degree", "3"],
    ),
    (
        "hilbert_fp_flag",
        0,
        &[
            "--field",
            "fp:7",
            "hilbert",
            "--scheme",
            "collinear5.json",
            "--max-degree",
            "5",
        ],
    ),
    (
        "normality_mixed",
        0,
        &["normality", "--scheme", "mixed.json", "--degree", "1"],
    ),
    (
        "regularity_plane4",
        0,
        &["regularity", "--scheme", "plane4.json"],
    ),
    (
        "invariant_t_collinear5",
        0,
        &["invariant-t", "--scheme", "collinear5.json"],
    ),
    (
        "secant_collinear5",
        0,
        &["secant", "--scheme", "collinear5.json", "--length", "5"],
    ),
    ("secant_plane4", 1, &["secant", "--scheme", "plane4.json"]),
    (
        "separate_full",
        0,
        &[
            "separate",
            "--scheme",
            "plane4.json",
            "--recipe",
            "recipe_full2.json",
            "--degree",
            "2",
        ],
    ),
    (
        "separate_short",
        1,
        &[
            "separate",
            "--scheme",
            "plane4.json",
            "--recipe",
            "recipe_t1.json",
            "--degree",
            "2",
        ],
    ),
    (
        "project_mixed",
        0,
        &[
            "project",
            "--scheme",
            "mixed.json",
            "--center",
            "center_point.json",
        ],
    ),
    (
        "lemma26_case1",
        0,
        &["lemma26", "--config", "config_case1.json"],
    ),
    (
        "classify_collinear5",
        0,
        &["classify-fiber", "--scheme", "collinear5.json", "--n", "5"],
    ),
    (
        "curve_fiber_line",
        0,
        &[
            "curve-fiber",
            "--curve",
            "twisted_cubic.json",
            "--center",
            "curve_line_center.json",
            "--point",
            "1,0",
        ],
    ),
    (
        "curve_fiber_param",
        0,
        &[
            "curve-fiber",
            "--curve",
            "twisted_cubic.json",
            "--center",
            "curve_line_center.json",
            "--param",
            "-1",
        ],
    ),
    (
        "curve_fiber_plane",
        0,
        &[
            "curve-fiber",
            "--curve",
            "twisted_cubic.json",
            "--center",
            "curve_center.json",
            "--param",
            "2",
        ],
    ),
    (
        "curve_section",
        0,
        &[
            "curve-section",
            "--curve",
            "twisted_cubic.json",
            "--subspace",
            "plane_section.json",
        ],
    ),
    (
        "bounds_fivefold",
        0,
        &["bounds", "--dim", "5", "--degree", "12", "--codim", "4"],
    ),
    (
        "bounds_quadric",
        0,
        &[
            "bounds",
            "--dim",
            "5",
            "--degree",
            "12",
            "--codim",
            "3",
            "--quadric",
            "yes",
        ],
    ),
    (
        "bounds_conditional",
        0,
        &[
            "bounds",
            "--dim",
            "5",
            "--degree",
            "12",
            "--codim",
            "3",
            "--quadric-generators",
        ],
    ),
    (
        "bounds_surface",
        0,
        &[
            "bounds",
            "--dim",
            "2",
            "--degree",
            "5",
            "--codim",
            "3",
            "--singular",
        ],
    ),
    (
        "verify_small",
        0,
        &[
            "verify",
            "--suite",
            "hilbert_shape",
            "--trials",
            "8",
            "--seed",
            "3",
        ],
    ),
];

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("REGLAB_BLESS").is_some();
    let mut bad = Vec::new();
    for (name, code, args) in CASES {
        let out = reglab(args);
        let stdout = String::from_utf8(out.stdout).unwrap();
        let path = dir().join(format!("{name}.out"));
        if bless {
            std::fs::write(&path, &stdout).unwrap();
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        if stdout != want || out.status.code() != Some(*code) {
            bad.push(format!(
                "{name}: exit {:?}, stdout {stdout}",
                out.status.code()
            ));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    for args in [
        &["hilbert", "--scheme", "missing.json", "--max-degree", "2"][..],
        &["hilbert", "--scheme", "malformed.json", "--max-degree", "2"],
        &[
            "hilbert",
            "--scheme",
            "collinear5.json",
            "--max-degree",
            "2",
            "--bogus",
        ],
        &[
            "--field",
            "fp:10",
            "hilbert",
            "--scheme",
            "collinear5.json",
            "--max-degree",
            "2",
        ],
        &[
            "--field",
            "fp:7",
            "curve-section",
            "--curve",
            "twisted_cubic.json",
            "--subspace",
            "plane_section.json",
        ],
        &[
            "--field",
            "fp:7",
            "hilbert",
            "--scheme",
            "fp_points.json",
            "--max-degree",
            "2",
        ],
        &["verify", "--suite", "nope"],
        &["frobnicate"],
    ] {
        let out = reglab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn enumeration_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_reglab"))
            .args(["invariant-t", "--scheme", "collinear5.json"])
            .current_dir(dir())
            .env("REGLAB_CAP", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("3").status.code(), Some(2));
    assert_eq!(run("12").status.code(), Some(0));
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_across_runs_and_jobs() {
    for suite in ["prop1_2", "fiber_cases", "flatness"] {
        let outputs: Vec<Vec<u8>> = ["1", "4", "1", "2"]
            .iter()
            .map(|jobs| {
                let out = reglab(&[
                    "verify", "--suite", suite, "--trials", "30", "--seed", "77", "--jobs", jobs,
                ]);
                assert_eq!(out.status.code(), Some(0), "{suite}");
                out.stdout
            })
            .collect();
        assert!(outputs.iter().all(|o| *o == outputs[0]), "{suite}");
    }
    let fp = |jobs| {
        reglab(&[
            "--field",
            "fp:1000003",
            "verify",
            "--suite",
            "hilbert_shape",
            "--trials",
            "120",
            "--seed",
            "5",
            "--jobs",
            jobs,
        ])
        .stdout
    };
    assert_eq!(fp("1"), fp("3"));
}

#[test]
fn emitted_schemes_reparse() {
    let out = reglab(&[
        "curve-fiber",
        "--curve",
        "twisted_cubic.json",
        "--center",
        "curve_line_center.json",
        "--param",
        "-1",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let scheme = v["scheme"].to_string();
    let path = std::env::temp_dir().join(format!("reglab-fiber-{}.json", std::process::id()));
    std::fs::write(&path, &scheme).unwrap();
    let again = reglab(&[
        "hilbert",
        "--scheme",
        path.to_str().unwrap(),
        "--max-degree",
        "2",
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(again.stdout).unwrap().trim(),
        r#"{"phi":[1,3,3]}"#
    );
}
