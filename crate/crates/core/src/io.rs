//! JSON file formats. Exact numbers travel as strings (`"p/q"` for rationals,
//! residues for `F_p`) so nothing is lost to floating point.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, FieldTag};
use crate::poly::{Exponent, Form};
use crate::projection::RationalCurve;
use crate::scheme::{CurvilinearGerm, FiniteScheme, LinearSubspace, ProjPoint};
use crate::separation::{FiberFrame, FormSpaceRecipe, SeparatorCase, SeparatorConfig};
use crate::Rational;

/// Parses an exact number into the field given by `ctx`.
pub fn parse_scalar<F: Field>(ctx: &F::Ctx, s: &str) -> Result<F> {
    let q = parse_rational(s)?;
    F::from_rational_in(ctx, &q)
        .ok_or_else(|| Error::InvalidInput(format!("{s} has no image in {}", F::tag(ctx))))
}

pub fn parse_vector<F: Field>(ctx: &F::Ctx, v: &[String]) -> Result<Vec<F>> {
    v.iter().map(|s| parse_scalar(ctx, s)).collect()
}

pub fn vector_strings<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(|c| c.to_canonical_string()).collect()
}

/// Whether data written over `file` can be read into the field of `ctx`.
/// Rational data reduces into any prime field; prime-field data needs the same prime.
fn check_field<F: Field>(file: FieldTag, ctx: &F::Ctx) -> Result<()> {
    let target = F::tag(ctx);
    match (file, target) {
        (FieldTag::Q, _) => Ok(()),
        (a, b) if a == b => Ok(()),
        (a, b) => Err(Error::InvalidInput(format!(
            "file is over {a}, arithmetic is over {b}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermEntry {
    pub point: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<usize>,
    /// `N` affine series in the chart, or `N+1` homogeneous coordinate series.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jet: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub field: FieldTag,
    pub ambient: usize,
    pub germs: Vec<GermEntry>,
}

impl SchemeFile {
    pub fn from_scheme<F: Field>(x: &FiniteScheme<F>) -> Self {
        let germs = x
            .germs()
            .iter()
            .map(|g| {
                let plain = g.len() == 1 && g.chart() == g.support().lead();
                GermEntry {
                    point: vector_strings(g.support().coords()),
                    chart: (!plain).then_some(g.chart()),
                    jet: (!plain).then(|| g.jet().iter().map(|s| vector_strings(s)).collect()),
                }
            })
            .collect();
        SchemeFile {
            field: F::tag(&x.ctx()),
            ambient: x.ambient(),
            germs,
        }
    }

    pub fn to_scheme<F: Field>(&self, ctx: &F::Ctx) -> Result<FiniteScheme<F>> {
        check_field::<F>(self.field, ctx)?;
        let n = self.ambient;
        let mut germs = Vec::with_capacity(self.germs.len());
        for (i, e) in self.germs.iter().enumerate() {
            let ctxerr = |err: Error| Error::InvalidInput(format!("germ {i}: {err}"));
            if e.point.len() != n + 1 {
                return Err(Error::InvalidInput(format!(
                    "germ {i}: point needs {} coordinates, got {}",
                    n + 1,
                    e.point.len()
                )));
            }
            let point = parse_vector::<F>(ctx, &e.point).map_err(ctxerr)?;
            let germ = match &e.jet {
                None => match e.chart {
                    None => CurvilinearGerm::point(point),
                    Some(c) => {
                        let inv = point.get(c).and_then(|v| v.inv()).ok_or_else(|| {
                            ctxerr(Error::InvalidInput(format!(
                                "chart {c} is a zero coordinate"
                            )))
                        })?;
                        let jet = (0..=n)
                            .filter(|&j| j != c)
                            .map(|j| vec![point[j].clone() * inv.clone()])
                            .collect();
                        CurvilinearGerm::from_affine_jet(point, Some(c), jet)
                    }
                },
                Some(series) => {
                    let series = series
                        .iter()
                        .map(|s| parse_vector::<F>(ctx, s))
                        .collect::<Result<Vec<_>>>()
                        .map_err(ctxerr)?;
                    if series.len() == n + 1 {
                        if e.chart.is_some() {
                            return Err(ctxerr(Error::InvalidInput(
                                "chart applies only to affine jets".into(),
                            )));
                        }
                        homogeneous_germ(point, &series)
                    } else {
                        CurvilinearGerm::from_affine_jet(point, e.chart, series)
                    }
                }
            };
            germs.push(germ.map_err(ctxerr)?);
        }
        FiniteScheme::new(n, germs)
    }
}

fn homogeneous_germ<F: Field>(point: Vec<F>, series: &[Vec<F>]) -> Result<CurvilinearGerm<F>> {
    let len = series[0].len();
    if len == 0 || series.iter().any(|s| s.len() != len) {
        return Err(Error::InvalidInput(
            "jet series must share one positive length".into(),
        ));
    }
    let coeffs: Vec<Vec<F>> = (0..len)
        .map(|r| series.iter().map(|s| s[r].clone()).collect())
        .collect();
    let germ = CurvilinearGerm::from_homogeneous(&coeffs)?;
    if *germ.support() != ProjPoint::new(point)? {
        return Err(Error::InvalidInput(
            "constant terms of the homogeneous jet must be the point".into(),
        ));
    }
    Ok(germ)
}

/// A rational curve `P^1 -> P^N`: `forms[i][j]` is the coefficient of
/// `s^{d-j} t^j` in the `i`-th coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub ambient: usize,
    pub degree: usize,
    pub forms: Vec<Vec<String>>,
}

impl CurveFile {
    pub fn from_curve(c: &RationalCurve) -> Self {
        CurveFile {
            ambient: c.ambient(),
            degree: c.degree(),
            forms: c.forms().iter().map(|f| vector_strings(f)).collect(),
        }
    }

    pub fn to_curve(&self) -> Result<RationalCurve> {
        if self.forms.len() != self.ambient + 1 {
            return Err(Error::InvalidInput(format!(
                "curve in P^{} needs {} forms, got {}",
                self.ambient,
                self.ambient + 1,
                self.forms.len()
            )));
        }
        if self.forms.iter().any(|f| f.len() != self.degree + 1) {
            return Err(Error::InvalidInput(format!(
                "each form of degree {} needs {} coefficients",
                self.degree,
                self.degree + 1
            )));
        }
        let forms = self
            .forms
            .iter()
            .map(|f| parse_vector::<Rational>(&(), f))
            .collect::<Result<Vec<_>>>()?;
        let c = RationalCurve::new(forms)?;
        if c.degree() != self.degree {
            return Err(Error::InvalidInput(format!(
                "forms have degree {}, file says {}",
                c.degree(),
                self.degree
            )));
        }
        Ok(c)
    }
}

/// A form as `[coefficient, exponent]` pairs.
pub type TermList = Vec<(String, Exponent)>;

pub fn form_terms<F: Field>(f: &Form<F>) -> TermList {
    f.terms()
        .map(|(e, c)| (c.to_canonical_string(), e.clone()))
        .collect()
}

pub fn form_from_terms<F: Field>(ctx: &F::Ctx, nvars: usize, terms: &TermList) -> Result<Form<F>> {
    let parsed = terms
        .iter()
        .map(|(c, e)| Ok((parse_scalar::<F>(ctx, c)?, e.clone())))
        .collect::<Result<Vec<_>>>()?;
    Form::from_terms(ctx.clone(), nvars, parsed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeFile {
    #[serde(rename = "T_count")]
    pub t_count: usize,
    #[serde(default)]
    pub spaces: BTreeMap<u32, Vec<TermList>>,
    #[serde(default)]
    pub standard: bool,
}

impl RecipeFile {
    pub fn from_recipe<F: Field>(r: &FormSpaceRecipe<F>) -> Self {
        RecipeFile {
            t_count: r.t_count(),
            spaces: r
                .listed()
                .iter()
                .map(|(j, fs)| (*j, fs.iter().map(form_terms).collect()))
                .collect(),
            standard: r.is_standard(),
        }
    }

    pub fn to_recipe<F: Field>(&self, ctx: &F::Ctx) -> Result<FormSpaceRecipe<F>> {
        let mut r = FormSpaceRecipe::new(ctx.clone(), self.t_count, self.standard);
        for (j, fs) in &self.spaces {
            let forms = fs
                .iter()
                .map(|t| form_from_terms(ctx, self.t_count, t))
                .collect::<Result<Vec<_>>>()?;
            r = r.with_space(*j, forms)?;
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparatorConfigFile {
    pub n: usize,
    pub case: SeparatorCase,
    pub aligned_u: Vec<String>,
    pub a: String,
    pub b: String,
    pub off_line: Vec<Vec<String>>,
}

impl SeparatorConfigFile {
    pub fn from_config<F: Field>(c: &SeparatorConfig<F>) -> Self {
        SeparatorConfigFile {
            n: c.n,
            case: c.case,
            aligned_u: vector_strings(&c.aligned_u),
            a: c.a.to_canonical_string(),
            b: c.b.to_canonical_string(),
            off_line: c.off_line.iter().map(|p| vector_strings(p)).collect(),
        }
    }

    pub fn to_config<F: Field>(&self, ctx: &F::Ctx) -> Result<SeparatorConfig<F>> {
        let cfg = SeparatorConfig {
            n: self.n,
            case: self.case,
            aligned_u: parse_vector(ctx, &self.aligned_u)?,
            a: parse_scalar(ctx, &self.a)?,
            b: parse_scalar(ctx, &self.b)?,
            off_line: self
                .off_line
                .iter()
                .map(|p| parse_vector(ctx, p))
                .collect::<Result<Vec<_>>>()?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A linear subspace of `P^N`, given either by cutting forms or by spanning points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub ambient: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forms: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<String>>>,
}

impl SubspaceFile {
    pub fn from_subspace<F: Field>(l: &LinearSubspace<F>) -> Self {
        SubspaceFile {
            ambient: l.ambient(),
            forms: Some(l.forms().iter().map(|f| vector_strings(f)).collect()),
            points: None,
        }
    }

    pub fn to_subspace<F: Field>(&self, ctx: &F::Ctx) -> Result<LinearSubspace<F>> {
        let parse = |rows: &Vec<Vec<String>>| -> Result<Vec<Vec<F>>> {
            rows.iter().map(|r| parse_vector(ctx, r)).collect()
        };
        match (&self.forms, &self.points) {
            (Some(f), None) => LinearSubspace::from_forms(ctx.clone(), self.ambient, parse(f)?),
            (None, Some(p)) => {
                let pts = parse(p)?;
                if pts.iter().any(|v| v.len() != self.ambient + 1) {
                    return Err(Error::InvalidInput(
                        "points must have N+1 coordinates".into(),
                    ));
                }
                LinearSubspace::spanned_by(ctx.clone(), self.ambient, &pts)
            }
            _ => Err(Error::InvalidInput(
                "a subspace needs exactly one of \"forms\" and \"points\"".into(),
            )),
        }
    }
}

/// The forms `U` and `T_1..T_m` of a [`FiberFrame`] in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    #[serde(rename = "U")]
    pub u: Vec<String>,
    #[serde(rename = "T")]
    pub t: Vec<Vec<String>>,
}

impl FrameFile {
    pub fn from_frame<F: Field>(f: &FiberFrame<F>) -> Self {
        FrameFile {
            u: vector_strings(f.u()),
            t: f.t().iter().map(|r| vector_strings(r)).collect(),
        }
    }

    pub fn to_frame<F: Field>(&self, ctx: &F::Ctx) -> Result<FiberFrame<F>> {
        let t = self
            .t
            .iter()
            .map(|r| parse_vector(ctx, r))
            .collect::<Result<Vec<_>>>()?;
        FiberFrame::new(ctx.clone(), parse_vector(ctx, &self.u)?, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Prime};

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn scheme_round_trip() {
        let json = r#"{"field":"Q","ambient":2,"germs":[
            {"point":["1","0","0"]},
            {"point":["2","1","1/2"],"jet":[["1/2","1","0"],["1/4","0","3"]]},
            {"point":["0","1","3"],"jet":[["0","0"],["1","1"],["3","-2"]]}
        ]}"#;
        let file: SchemeFile = serde_json::from_str(json).unwrap();
        let x = file.to_scheme::<Rational>(&()).unwrap();
        assert_eq!(x.degree(), 6);
        let emitted = SchemeFile::from_scheme(&x);
        let text = serde_json::to_string(&emitted).unwrap();
        let again: SchemeFile = serde_json::from_str(&text).unwrap();
        assert_eq!(again, emitted);
        assert_eq!(again.to_scheme::<Rational>(&()).unwrap(), x);
    }

    #[test]
    fn reduced_points_stay_compact() {
        let x =
            FiniteScheme::<Rational>::from_points(vec![
                parse_vector(&(), &s(&["3", "6", "-9"])).unwrap()
            ])
            .unwrap();
        let text = serde_json::to_string(&SchemeFile::from_scheme(&x)).unwrap();
        assert_eq!(
            text,
            r#"{"field":"Q","ambient":2,"germs":[{"point":["1","2","-3"]}]}"#
        );
    }

    #[test]
    fn prime_field_files() {
        let p = Prime::new(101).unwrap();
        let json = r#"{"field":{"Fp":101},"ambient":1,"germs":[{"point":["1","1/2"]}]}"#;
        let file: SchemeFile = serde_json::from_str(json).unwrap();
        let x = file.to_scheme::<Fp>(&p).unwrap();
        assert_eq!(x.germs()[0].support().coords()[1].value(), 51);
        assert!(file.to_scheme::<Rational>(&()).is_err());
        assert!(file.to_scheme::<Fp>(&Prime::new(103).unwrap()).is_err());
    }

    #[test]
    fn malformed_schemes_rejected() {
        for json in [
            r#"{"field":"Q","ambient":2,"germs":[{"point":["1","0"]}]}"#,
            r#"{"field":"Q","ambient":1,"germs":[{"point":["0","0"]}]}"#,
            r#"{"field":"Q","ambient":1,"germs":[{"point":["1","x"]}]}"#,
            r#"{"field":"Q","ambient":1,"germs":[{"point":["1","0"],"jet":[["0","0"]]}]}"#,
            r#"{"field":"Q","ambient":1,"germs":[{"point":["1","0"]},{"point":["2","0"]}]}"#,
        ] {
            let file: SchemeFile = serde_json::from_str(json).unwrap();
            assert!(file.to_scheme::<Rational>(&()).is_err(), "{json}");
        }
        assert!(
            serde_json::from_str::<SchemeFile>(r#"{"field":"R","ambient":1,"germs":[]}"#).is_err()
        );
    }

    #[test]
    fn curve_round_trip() {
        let file = CurveFile {
            ambient: 3,
            degree: 3,
            forms: vec![
                s(&["1", "0", "0", "0"]),
                s(&["0", "1", "0", "0"]),
                s(&["0", "0", "1", "0"]),
                s(&["0", "0", "0", "1"]),
            ],
        };
        let c = file.to_curve().unwrap();
        assert_eq!(CurveFile::from_curve(&c), file);
        let bad = CurveFile { degree: 2, ..file };
        assert!(bad.to_curve().is_err());
    }

    #[test]
    fn recipe_round_trip() {
        let json = r#"{"T_count":2,"spaces":{"3":[[["1",[3,0]]]],"4":[[["2",[4,0]],["-1",[2,2]]]]},"standard":true}"#;
        let file: RecipeFile = serde_json::from_str(json).unwrap();
        let r = file.to_recipe::<Rational>(&()).unwrap();
        assert_eq!(r.dims().get(&4), Some(&1));
        let back = RecipeFile::from_recipe(&r);
        assert_eq!(back.to_recipe::<Rational>(&()).unwrap(), r);
        let mixed = r#"{"T_count":2,"spaces":{"3":[[["1",[2,0]]]]}}"#;
        let file: RecipeFile = serde_json::from_str(mixed).unwrap();
        assert!(file.to_recipe::<Rational>(&()).is_err());
    }

    #[test]
    fn config_round_trip() {
        let json = r#"{"n":3,"case":2,"aligned_u":["1","2","3"],"a":"1","b":"1",
            "off_line":[["1","0","1"],["1","1","0"],["1","2","5"]]}"#;
        let file: SeparatorConfigFile = serde_json::from_str(json).unwrap();
        let cfg = file.to_config::<Rational>(&()).unwrap();
        assert_eq!(cfg.case, SeparatorCase::Two);
        assert_eq!(SeparatorConfigFile::from_config(&cfg), file);
        let bad = r#"{"n":3,"case":3,"aligned_u":[],"a":"1","b":"1","off_line":[]}"#;
        assert!(serde_json::from_str::<SeparatorConfigFile>(bad).is_err());
    }

    #[test]
    fn subspace_files() {
        let by_points: SubspaceFile =
            serde_json::from_str(r#"{"ambient":2,"points":[["1","0","0"],["0","1","0"]]}"#)
                .unwrap();
        let l = by_points.to_subspace::<Rational>(&()).unwrap();
        assert_eq!(l.dim(), 1);
        let by_forms = SubspaceFile::from_subspace(&l);
        assert_eq!(by_forms.to_subspace::<Rational>(&()).unwrap(), l);
        let both = SubspaceFile {
            points: by_points.points.clone(),
            ..by_forms
        };
        assert!(both.to_subspace::<Rational>(&()).is_err());
    }

    #[test]
    fn frame_round_trip() {
        let f: FrameFile =
            serde_json::from_str(r#"{"U":["1","1","0"],"T":[["0","1","0"],["0","0","2"]]}"#)
                .unwrap();
        let frame = f.to_frame::<Rational>(&()).unwrap();
        assert_eq!(FrameFile::from_frame(&frame), f);
        let dependent = FrameFile {
            t: vec![s(&["2", "2", "0"])],
            ..f
        };
        assert!(dependent.to_frame::<Rational>(&()).is_err());
    }
}
