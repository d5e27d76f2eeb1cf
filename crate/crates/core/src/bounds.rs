//! Closed-form regularity bounds.
//!
//! Everything here is exact integer (or rational) arithmetic on the numerical
//! data of a variety: dimension `n`, degree `d`, codimension `e`. Hypotheses
//! such as smoothness or linear normality are the caller's to assert.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Rational;

/// Which vanishing the kernel bundle's dual is assumed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelRegularity {
    /// `(−2)`-regular: `(d−e+1) + Σ_{j≥3} (j−2) dim V_j`
    MinusTwo,
    /// `(−3)`-regular: `(d−e+1) − 2 dim V_1 − dim V_2 + Σ_{j≥4} (j−3) dim V_j`
    MinusThree,
}

/// Dimensions of a form-space recipe as they enter the regularity bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeDims {
    pub case: KernelRegularity,
    pub dim_v1: i64,
    pub dim_v2: i64,
    /// `j ↦ dim V_j` for `j >= 3`
    pub higher: BTreeMap<u32, i64>,
}

pub fn lemma23_bound(d: i64, e: i64, dims: &RecipeDims) -> i64 {
    let base = d - e + 1;
    match dims.case {
        KernelRegularity::MinusTwo => {
            base + dims
                .higher
                .iter()
                .filter(|(&j, _)| j >= 3)
                .map(|(&j, &v)| (j as i64 - 2) * v)
                .sum::<i64>()
        }
        KernelRegularity::MinusThree => {
            base - 2 * dims.dim_v1 - dims.dim_v2
                + dims
                    .higher
                    .iter()
                    .filter(|(&j, _)| j >= 4)
                    .map(|(&j, &v)| (j as i64 - 3) * v)
                    .sum::<i64>()
        }
    }
}

/// The recipes behind each published bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PaperRecipe {
    /// fivefold in `P^8` on a quadric
    FivefoldQuadric,
    /// fivefold in `P^8` on no quadric
    FivefoldNoQuadric,
    /// sixfold in `P^9` on a quadric
    SixfoldQuadric,
    /// sixfold in `P^9` on no quadric
    SixfoldNoQuadric,
    /// fivefold, `e >= 4`
    Fivefold,
    /// sixfold, `e >= 4`
    Sixfold,
    /// fivefold, `e >= 4`, linearly normal, no quadrics, `H^1(O_X) = 0`
    FivefoldLinearlyNormal,
    /// sixfold, `e >= 4`, linearly normal, no quadrics, `H^1(O_X) = 0`
    SixfoldLinearlyNormal,
}

impl PaperRecipe {
    pub const ALL: [PaperRecipe; 8] = [
        PaperRecipe::FivefoldQuadric,
        PaperRecipe::FivefoldNoQuadric,
        PaperRecipe::SixfoldQuadric,
        PaperRecipe::SixfoldNoQuadric,
        PaperRecipe::Fivefold,
        PaperRecipe::Sixfold,
        PaperRecipe::FivefoldLinearlyNormal,
        PaperRecipe::SixfoldLinearlyNormal,
    ];

    /// Recipe dimensions for codimension `e`; the center is `P(V)` with `dim V = e − 1`.
    pub fn dims(self, e: i64) -> RecipeDims {
        use KernelRegularity::*;
        let v = e - 1;
        let s2 = e * (e - 1) / 2;
        let (case, dim_v1, dim_v2, higher): (_, _, _, &[(u32, i64)]) = match self {
            PaperRecipe::FivefoldQuadric => (MinusTwo, v, s2, &[(3, 1), (4, 1), (5, 1)]),
            PaperRecipe::FivefoldNoQuadric => (MinusThree, 2, 3, &[(4, 2), (5, 1)]),
            PaperRecipe::SixfoldQuadric => (MinusTwo, v, s2, &[(3, 1), (4, 1), (5, 1), (6, 1)]),
            PaperRecipe::SixfoldNoQuadric => (MinusThree, 2, 3, &[(4, 2), (5, 2), (6, 1)]),
            PaperRecipe::Fivefold => (MinusTwo, v, s2, &[(3, 3), (4, 2), (5, 1)]),
            PaperRecipe::Sixfold => (MinusTwo, v, s2, &[(3, 4), (4, 3), (5, 2), (6, 1)]),
            PaperRecipe::FivefoldLinearlyNormal => (MinusThree, v, s2, &[(3, 3), (4, 2), (5, 1)]),
            PaperRecipe::SixfoldLinearlyNormal => {
                (MinusThree, v, s2, &[(3, 4), (4, 3), (5, 2), (6, 1)])
            }
        };
        RecipeDims {
            case,
            dim_v1,
            dim_v2,
            higher: higher.iter().copied().collect(),
        }
    }

    pub fn value(self, d: i64, e: i64) -> i64 {
        lemma23_bound(d, e, &self.dims(e))
    }

    pub fn name(self) -> &'static str {
        match self {
            PaperRecipe::FivefoldQuadric => "fivefold-quadric",
            PaperRecipe::FivefoldNoQuadric => "fivefold-no-quadric",
            PaperRecipe::SixfoldQuadric => "sixfold-quadric",
            PaperRecipe::SixfoldNoQuadric => "sixfold-no-quadric",
            PaperRecipe::Fivefold => "fivefold",
            PaperRecipe::Sixfold => "sixfold",
            PaperRecipe::FivefoldLinearlyNormal => "fivefold-linearly-normal",
            PaperRecipe::SixfoldLinearlyNormal => "sixfold-linearly-normal",
        }
    }
}

impl fmt::Display for PaperRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Containment in a quadric hypersurface, when known.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadric {
    Yes,
    No,
    #[default]
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub n: i64,
    pub d: i64,
    pub e: i64,
    /// smooth (otherwise only integrality is assumed)
    pub smooth: bool,
    pub quadric: Quadric,
    /// `e − 1` of the minimal generators of the ideal are quadrics
    pub quadric_generators: bool,
}

impl BoundQuery {
    pub fn smooth(n: i64, d: i64, e: i64) -> Self {
        BoundQuery {
            n,
            d,
            e,
            smooth: true,
            quadric: Quadric::Unknown,
            quadric_generators: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 1 || self.d < 1 || self.e < 1 {
            return Err(Error::InvalidInput(
                "dimension, degree and codimension must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityBound {
    /// `d − e + 1`
    pub eisenbud_goto: i64,
    /// sharpest applicable bound from the case analysis, if any
    pub paper: Option<i64>,
    /// `min{e, n} d − n + 1`, smooth varieties only
    pub bel: Option<i64>,
    pub source: String,
    /// the bound in `paper` rests on hypotheses beyond the query flags
    pub conditional: bool,
}

pub fn bel_bound(n: i64, d: i64, e: i64) -> i64 {
    e.min(n) * d - n + 1
}

/// Best bound for the query, with the general smooth bound as a fallback.
pub fn known_regularity_bound(q: &BoundQuery) -> Result<RegularityBound> {
    q.validate()?;
    let (n, d, e) = (q.n, q.d, q.e);
    let eg = d - e + 1;
    let bel = q.smooth.then(|| bel_bound(n, d, e));
    let pick_pair = |yes: PaperRecipe, no: PaperRecipe| match q.quadric {
        Quadric::Yes => (Some(yes.value(d, e)), yes.name().to_string()),
        Quadric::No => (Some(no.value(d, e)), no.name().to_string()),
        Quadric::Unknown => {
            let (a, b) = (yes.value(d, e), no.value(d, e));
            let (v, r) = if a >= b { (a, yes) } else { (b, no) };
            (Some(v), format!("{r} (quadric unknown)"))
        }
    };
    let mut conditional = false;
    let (paper, source) = match (q.smooth, n, e) {
        (_, 1, _) => (Some(eg), "integral curve".to_string()),
        (false, 2, _) => match integral_surface_bound(d, e) {
            Ok(b) => (Some(b.regularity_bound), "integral surface".to_string()),
            Err(_) => (None, "none".to_string()),
        },
        (false, _, _) => (None, "none".to_string()),
        (true, _, 1) => (Some(d), "hypersurface".to_string()),
        (true, 2, _) => (Some(eg), "smooth surface".to_string()),
        (true, 3, _) => (Some(eg + 1), "smooth threefold".to_string()),
        (true, 4, _) => (Some(eg + 4), "smooth fourfold".to_string()),
        (true, 5, _) if q.quadric_generators => {
            conditional = true;
            (Some(eg), "quadric generators".to_string())
        }
        (true, 5, 3) => pick_pair(PaperRecipe::FivefoldQuadric, PaperRecipe::FivefoldNoQuadric),
        (true, 6, 3) => pick_pair(PaperRecipe::SixfoldQuadric, PaperRecipe::SixfoldNoQuadric),
        (true, 5, e) if e >= 4 => (
            Some(PaperRecipe::Fivefold.value(d, e)),
            "fivefold".to_string(),
        ),
        (true, 6, e) if e >= 4 => (
            Some(PaperRecipe::Sixfold.value(d, e)),
            "sixfold".to_string(),
        ),
        _ => (None, "none".to_string()),
    };
    let source = match (&paper, &bel) {
        (None, Some(_)) => "bel".to_string(),
        _ => source,
    };
    Ok(RegularityBound {
        eisenbud_goto: eg,
        paper,
        bel,
        source,
        conditional,
    })
}

/// Bounds for linearly normal fivefolds (`n = 5`) and sixfolds (`n = 6`) of
/// codimension `e >= 4` on no quadric with `H^1(O_X) = 0`.
pub fn corollary_bounds(n: i64, d: i64, e: i64) -> Result<i64> {
    if e < 4 {
        return Err(Error::InvalidInput(format!(
            "codimension must be at least 4, got {e}"
        )));
    }
    match n {
        5 => Ok(PaperRecipe::FivefoldLinearlyNormal.value(d, e)),
        6 => Ok(PaperRecipe::SixfoldLinearlyNormal.value(d, e)),
        _ => Err(Error::InvalidInput(format!(
            "dimension must be 5 or 6, got {n}"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceBound {
    /// `m`-normal for all `m >= (d−e)(d+2) − d − 2`
    pub normality_threshold: i64,
    /// `(d−e+1)d − (2e+1)`
    pub regularity_bound: i64,
}

/// Integral surfaces of degree `d` and codimension `e` with `d − e >= 2`.
pub fn integral_surface_bound(d: i64, e: i64) -> Result<SurfaceBound> {
    if d - e < 2 {
        return Err(Error::Precondition(format!(
            "need d − e >= 2, got d = {d}, e = {e}"
        )));
    }
    Ok(SurfaceBound {
        normality_threshold: (d - e) * (d + 2) - d - 2,
        regularity_bound: (d - e + 1) * d - (2 * e + 1),
    })
}

/// A Hilbert polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HilbertPolynomial {
    pub coeffs: Vec<Rational>,
}

impl HilbertPolynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        HilbertPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: i64) -> Rational {
        let x = Rational::from_integer(x.into());
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertBound {
    pub value: i64,
    /// the exact value was not an integer and has been rounded up
    pub rounded: bool,
}

/// `(d−e+1) + P(d−e)`, rounded up when `P(d−e)` is not an integer.
pub fn hilbert_polynomial_regularity_bound(
    d: i64,
    e: i64,
    p: &HilbertPolynomial,
) -> Result<HilbertBound> {
    let exact = Rational::from_integer(BigInt::from(d - e + 1)) + p.eval(d - e);
    let rounded = !exact.is_integer();
    let value = exact
        .ceil()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput("bound does not fit in 64 bits".into()))?;
    Ok(HilbertBound { value, rounded })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct C1Check {
    pub c1: i64,
    /// `c1 <= −d`
    pub holds: bool,
}

/// First Chern class `1 − ρ_a − d` of the pushforward of the structure sheaf
/// of a degree-`d` curve of arithmetic genus `ρ_a` under a finite projection to `P^1`.
pub fn pushforward_c1(d: i64, rho_a: i64) -> C1Check {
    let c1 = 1 - rho_a - d;
    C1Check {
        c1,
        holds: c1 <= -d,
    }
}

/// `Σ d_i − r + 1` for a complete intersection of `r` hypersurfaces.
pub fn complete_intersection_regularity(degrees: &[i64]) -> Result<i64> {
    if degrees.is_empty() || degrees.iter().any(|&d| d < 1) {
        return Err(Error::InvalidInput(
            "need at least one positive degree".into(),
        ));
    }
    Ok(degrees.iter().sum::<i64>() - degrees.len() as i64 + 1)
}
