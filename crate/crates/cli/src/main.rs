//! `reglab`: JSON front end to the reglab library.
//!
//! Every command prints one JSON document on stdout. Exit status is 0 when the
//! computation succeeds and any checked property holds, 1 when a checked
//! property fails (the output then carries the counterexample), and 2 on bad
//! input or usage.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reglab::FieldTag;

#[derive(Parser, Debug)]
#[command(
    name = "reglab",
    version,
    about = "Exact computations with finite schemes and regularity bounds"
)]
pub struct Cli {
    /// Arithmetic field: `q` (default) or `fp:PRIME`. Without it, a scheme
    /// file's own field is used.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<FieldTag>,

    /// Worker threads for `verify`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Master seed for `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert function values phi(0..=K).
    Hilbert {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        max_degree: u32,
    },
    /// Minimal normal degree against the collinearity threshold bound.
    Normality {
        #[arg(long)]
        scheme: PathBuf,
        /// also report k-normality at this degree
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Castelnuovo-Mumford regularity.
    Regularity {
        #[arg(long)]
        scheme: PathBuf,
    },
    /// The invariant t (largest k with every subscheme of length <= k+1 independent).
    InvariantT {
        #[arg(long)]
        scheme: PathBuf,
    },
    /// Longest collinear subscheme and the secant-line criterion.
    Secant {
        #[arg(long)]
        scheme: PathBuf,
        /// report whether an s-secant line exists
        #[arg(long)]
        length: Option<usize>,
    },
    /// Whether a form-space recipe separates a scheme in degree K.
    Separate {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        recipe: PathBuf,
        #[arg(long)]
        degree: u32,
        /// U and T forms; defaults to U = x0, Ti = xi
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Separating forms for an aligned configuration.
    Lemma26 {
        #[arg(long)]
        config: PathBuf,
    },
    /// Fibers of a linear projection of a scheme.
    Project {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        center: PathBuf,
    },
    /// Case analysis of a projection fiber of an n-fold.
    ClassifyFiber {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        n: usize,
        /// U and T forms for the recipe check; defaults to U = x0, T1 = x1, T2 = x2
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Fiber of a projected rational curve over an image point.
    CurveFiber {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        center: PathBuf,
        /// image point coordinates, comma separated
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required_unless_present = "param",
            conflicts_with = "param"
        )]
        point: Vec<String>,
        /// take the image of this curve parameter (a rational or `inf`) instead
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Length of a rational curve's intersection with a linear subspace.
    CurveSection {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        subspace: PathBuf,
    },
    /// Regularity bounds for a projective variety.
    Bounds {
        /// dimension n
        #[arg(long)]
        dim: i64,
        /// degree d
        #[arg(long)]
        degree: i64,
        /// codimension e
        #[arg(long)]
        codim: i64,
        /// containment in a quadric: yes, no or unknown
        #[arg(long, default_value = "unknown", value_parser = parse_quadric)]
        quadric: reglab::bounds::Quadric,
        /// e - 1 minimal generators are quadrics
        #[arg(long)]
        quadric_generators: bool,
        /// integral but possibly singular
        #[arg(long)]
        singular: bool,
    },
    /// Run a property suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    let lower = s.to_ascii_lowercase();
    if lower == "q" {
        return Ok(FieldTag::Q);
    }
    let p = lower
        .strip_prefix("fp:")
        .ok_or_else(|| format!("expected `q` or `fp:PRIME`, got `{s}`"))?
        .parse::<u64>()
        .map_err(|e| format!("bad prime in `{s}`: {e}"))?;
    reglab::Prime::new(p).map_err(|e| e.to_string())?;
    Ok(FieldTag::Fp(p))
}

fn parse_quadric(s: &str) -> Result<reglab::bounds::Quadric, String> {
    use reglab::bounds::Quadric;
    match s {
        "yes" => Ok(Quadric::Yes),
        "no" => Ok(Quadric::No),
        "unknown" => Ok(Quadric::Unknown),
        _ => Err(format!("expected yes, no or unknown, got `{s}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            println!("{}", out.json);
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
