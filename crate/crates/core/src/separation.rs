//! Separating points by restricted spaces of forms.
//!
//! A [`FormSpaceRecipe`] lists, for each degree `j`, a space `V_j` of degree-`j`
//! forms in the variables `T_1..T_m`. Together with an extra linear form `U`
//! it spans the degree-`k` space `{U^{k-j} v : v in V_j}`; the recipe
//! separates a finite scheme when that space restricts onto all of its
//! functionals.
//!
//! [`lemma26_separators`] builds, for an explicit plane configuration of
//! `n+3` points, one degree-`n` form per point vanishing at all the others,
//! using only the `n+4` monomials `U^{n-j}T1^j`, `U^{n-1}T2`, `U^{n-2}T2^2`,
//! `U^{n-2}T1T2`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{AffineSolution, Matrix};
use crate::normality::evaluation_matrix_of_forms;
use crate::poly::{monomials, Exponent, Form};
use crate::scheme::{FiniteScheme, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpaceRecipe<F: Field> {
    t_count: usize,
    spaces: BTreeMap<u32, Vec<Form<F>>>,
    standard: bool,
    ctx: F::Ctx,
}

impl<F: Field> FormSpaceRecipe<F> {
    /// A recipe with only the constants (plus full `V_1`, `V_2` when `standard`).
    pub fn new(ctx: F::Ctx, t_count: usize, standard: bool) -> Self {
        FormSpaceRecipe {
            t_count,
            spaces: BTreeMap::new(),
            standard,
            ctx,
        }
    }

    /// Appends forms to `V_j`.
    pub fn with_space(mut self, j: u32, forms: Vec<Form<F>>) -> Result<Self> {
        if j == 0 {
            return Err(Error::InvalidInput("V_0 is always the constants".into()));
        }
        for f in &forms {
            if f.nvars() != self.t_count {
                return Err(Error::InvalidInput(format!(
                    "form in V_{j} has {} variables, recipe has {}",
                    f.nvars(),
                    self.t_count
                )));
            }
            if !f.is_zero() && f.degree() != j {
                return Err(Error::InvalidInput(format!(
                    "form of degree {} listed in V_{j}",
                    f.degree()
                )));
            }
        }
        self.spaces.entry(j).or_default().extend(forms);
        Ok(self)
    }

    /// `V_j = {T_1^j}` for each `j` in `degrees`.
    pub fn with_first_powers(self, degrees: impl IntoIterator<Item = u32>) -> Self {
        let ctx = self.ctx.clone();
        let m = self.t_count;
        degrees.into_iter().fold(self, |r, j| {
            let mut e = vec![0; m];
            e[0] = j;
            r.with_space(j, vec![Form::monomial(ctx.clone(), e, F::one_in(&ctx))])
                .expect("well-formed power")
        })
    }

    /// Standard recipe with `V_j = {T_1^j}` for `3 <= j <= n`: at degree `n` it
    /// spans exactly the `n+4` separating monomials.
    pub fn lemma26(ctx: F::Ctx, n: u32) -> Self {
        Self::new(ctx, 2, true).with_first_powers(3..=n)
    }

    /// Every `V_j` the full space of degree-`j` forms, up to `k`.
    pub fn full(ctx: F::Ctx, t_count: usize, k: u32) -> Self {
        (1..=k).fold(Self::new(ctx.clone(), t_count, true), |r, j| {
            let forms = monomials(t_count, j)
                .into_iter()
                .map(|e| Form::monomial(ctx.clone(), e, F::one_in(&ctx)))
                .collect();
            r.with_space(j, forms).expect("well-formed monomials")
        })
    }

    pub fn t_count(&self) -> usize {
        self.t_count
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    /// Explicitly listed spaces (not including the implied constants and standard pieces).
    pub fn listed(&self) -> &BTreeMap<u32, Vec<Form<F>>> {
        &self.spaces
    }

    pub fn max_degree(&self) -> u32 {
        let listed = self.spaces.keys().copied().max().unwrap_or(0);
        if self.standard {
            listed.max(2)
        } else {
            listed
        }
    }

    /// Spanning list of `V_j` with the implied pieces filled in.
    pub fn space(&self, j: u32) -> Vec<Form<F>> {
        if j == 0 {
            return vec![Form::constant(
                self.ctx.clone(),
                self.t_count,
                F::one_in(&self.ctx),
            )];
        }
        if self.standard && j <= 2 {
            return monomials(self.t_count, j)
                .into_iter()
                .map(|e| Form::monomial(self.ctx.clone(), e, F::one_in(&self.ctx)))
                .collect();
        }
        self.spaces.get(&j).cloned().unwrap_or_default()
    }

    /// `dim V_j` for `j >= 1`, computed as the rank of the listed forms.
    pub fn dims(&self) -> BTreeMap<u32, usize> {
        (1..=self.max_degree())
            .map(|j| {
                let basis = monomials(self.t_count, j);
                let rows: Vec<Vec<F>> = self
                    .space(j)
                    .iter()
                    .map(|f| f.coordinates_in(&basis).expect("homogeneous of degree j"))
                    .collect();
                let rank = if rows.is_empty() {
                    0
                } else {
                    Matrix::from_rows(self.ctx.clone(), basis.len(), rows)
                        .expect("rectangular")
                        .rank()
                };
                (j, rank)
            })
            .collect()
    }
}

/// The linear forms `U` and `T_1..T_m` in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberFrame<F: Field> {
    u: Vec<F>,
    t: Vec<Vec<F>>,
    ctx: F::Ctx,
}

impl<F: Field> FiberFrame<F> {
    pub fn new(ctx: F::Ctx, u: Vec<F>, t: Vec<Vec<F>>) -> Result<Self> {
        let n = u.len();
        if t.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("frame forms differ in length".into()));
        }
        let mut rows = vec![u.clone()];
        rows.extend(t.iter().cloned());
        let rank = Matrix::from_rows(ctx.clone(), n, rows)?.rank();
        if rank != t.len() + 1 {
            return Err(Error::Precondition(
                "U and the T variables are linearly dependent".into(),
            ));
        }
        Ok(FiberFrame { u, t, ctx })
    }

    /// `U = x_0`, `T_i = x_i` for `i = 1..=t_count`.
    pub fn standard(ctx: F::Ctx, ambient: usize, t_count: usize) -> Self {
        let unit = |i: usize| {
            (0..=ambient)
                .map(|j| {
                    if i == j {
                        F::one_in(&ctx)
                    } else {
                        F::zero_in(&ctx)
                    }
                })
                .collect::<Vec<F>>()
        };
        let t = (1..=t_count).map(unit).collect();
        FiberFrame::new(ctx.clone(), unit(0), t).expect("coordinate frame is independent")
    }

    pub fn u(&self) -> &[F] {
        &self.u
    }

    pub fn t(&self) -> &[Vec<F>] {
        &self.t
    }

    pub fn ambient(&self) -> usize {
        self.u.len() - 1
    }

    fn spans_ambient(&self) -> bool {
        self.t.len() + 1 == self.u.len()
    }
}

/// `{U^{k-j} v : v in V_j, 0 <= j <= k}` as forms in the ambient variables.
pub fn recipe_space<F: Field>(
    recipe: &FormSpaceRecipe<F>,
    k: u32,
    frame: &FiberFrame<F>,
) -> Result<Vec<Form<F>>> {
    if frame.t.len() != recipe.t_count {
        return Err(Error::InvalidInput(format!(
            "recipe uses {} T variables, frame provides {}",
            recipe.t_count,
            frame.t.len()
        )));
    }
    if k < recipe.max_degree() {
        return Err(Error::Precondition(format!(
            "degree {k} below the recipe's top degree {}",
            recipe.max_degree()
        )));
    }
    let ctx = &frame.ctx;
    let u = Form::linear(ctx.clone(), &frame.u);
    let subs: Vec<Form<F>> = frame
        .t
        .iter()
        .map(|t| Form::linear(ctx.clone(), t))
        .collect();
    let mut out = Vec::new();
    for j in 0..=k {
        let upow = u.pow(k - j);
        for v in recipe.space(j) {
            let lifted = if j == 0 {
                Form::constant(
                    ctx.clone(),
                    frame.u.len(),
                    v.coeff(&vec![0; recipe.t_count]),
                )
            } else {
                v.substitute(&subs)
            };
            out.push(upow.mul(&lifted));
        }
    }
    Ok(out)
}

/// Whether the recipe space in degree `k` restricts onto every functional of `x`.
pub fn recipe_separates<F: Field>(
    x: &FiniteScheme<F>,
    recipe: &FormSpaceRecipe<F>,
    k: u32,
    frame: &FiberFrame<F>,
) -> Result<bool> {
    if frame.ambient() != x.ambient() || !frame.spans_ambient() {
        return Err(Error::Precondition(
            "U and the T variables must be coordinates on the scheme's ambient space".into(),
        ));
    }
    let forms = recipe_space(recipe, k, frame)?;
    Ok(evaluation_matrix_of_forms(x, &forms).rank() == x.degree())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum SeparatorCase {
    /// `n+1` points on the line, two off it.
    One,
    /// `n` points on the line, three off it.
    Two,
}

impl SeparatorCase {
    pub fn aligned_count(self, n: usize) -> usize {
        match self {
            SeparatorCase::One => n + 1,
            SeparatorCase::Two => n,
        }
    }

    pub fn off_line_count(self) -> usize {
        match self {
            SeparatorCase::One => 2,
            SeparatorCase::Two => 3,
        }
    }
}

impl TryFrom<u8> for SeparatorCase {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(SeparatorCase::One),
            2 => Ok(SeparatorCase::Two),
            _ => Err(format!("case must be 1 or 2, got {v}")),
        }
    }
}

impl From<SeparatorCase> for u8 {
    fn from(c: SeparatorCase) -> u8 {
        match c {
            SeparatorCase::One => 1,
            SeparatorCase::Two => 2,
        }
    }
}

/// Points `(u_i, a, b)` on the line `a T2 - b T1 = 0` plus points off it, in
/// coordinates `(U, T1, T2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorConfig<F: Field> {
    pub n: usize,
    pub case: SeparatorCase,
    pub aligned_u: Vec<F>,
    pub a: F,
    pub b: F,
    pub off_line: Vec<Vec<F>>,
}

impl<F: Field> SeparatorConfig<F> {
    pub fn ctx(&self) -> F::Ctx {
        self.a.ctx()
    }

    /// Checks the hypotheses on `n`, the counts, `a`, `b`, the `u_i`, and the
    /// off-line points.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.n < 3 {
            return bad(format!("n must be at least 3, got {}", self.n));
        }
        if self.aligned_u.len() != self.case.aligned_count(self.n) {
            return bad(format!(
                "case {} with n = {} needs {} aligned points, got {}",
                u8::from(self.case),
                self.n,
                self.case.aligned_count(self.n),
                self.aligned_u.len()
            ));
        }
        if self.off_line.len() != self.case.off_line_count() {
            return bad(format!(
                "case {} needs {} off-line points, got {}",
                u8::from(self.case),
                self.case.off_line_count(),
                self.off_line.len()
            ));
        }
        if self.a.is_zero() || self.b.is_zero() {
            return bad("a and b must be nonzero".into());
        }
        for (i, u) in self.aligned_u.iter().enumerate() {
            if u.is_zero() {
                return bad(format!("aligned point {i} has u = 0"));
            }
            if self.aligned_u[..i].contains(u) {
                return bad(format!("aligned point {i} repeats u = {u}"));
            }
        }
        let mut seen: Vec<ProjPoint<F>> = Vec::new();
        for (i, q) in self.off_line.iter().enumerate() {
            if q.len() != 3 {
                return bad(format!("off-line point {i} must have 3 coordinates"));
            }
            if self.line_value(q).is_zero() {
                return bad(format!("off-line point {i} lies on the line"));
            }
            let p = ProjPoint::new(q.clone())?;
            if seen.contains(&p) {
                return bad(format!("off-line point {i} is repeated"));
            }
            seen.push(p);
        }
        Ok(())
    }

    /// Genericity beyond the stated hypotheses that the construction relies
    /// on: every off-line point has `U != 0`, and in case 2 the off-line
    /// points are not collinear.
    pub fn is_admissible(&self) -> bool {
        if self.validate().is_err() || self.off_line.iter().any(|q| q[0].is_zero()) {
            return false;
        }
        match self.case {
            SeparatorCase::One => true,
            SeparatorCase::Two => {
                Matrix::from_rows(self.ctx(), 3, self.off_line.clone())
                    .expect("3x3")
                    .rank()
                    == 3
            }
        }
    }

    fn line_value(&self, q: &[F]) -> F {
        self.a.clone() * q[2].clone() - self.b.clone() * q[1].clone()
    }

    /// Aligned points first, then the off-line points.
    pub fn points(&self) -> Vec<Vec<F>> {
        self.aligned_u
            .iter()
            .map(|u| vec![u.clone(), self.a.clone(), self.b.clone()])
            .chain(self.off_line.iter().cloned())
            .collect()
    }
}

/// `U^{n-j}T1^j (0 <= j <= n)`, `U^{n-1}T2`, `U^{n-2}T2^2`, `U^{n-2}T1T2` as
/// exponents in `(U, T1, T2)`.
pub fn lemma26_monomials(n: usize) -> Vec<Exponent> {
    let n = n as u32;
    let mut out: Vec<Exponent> = (0..=n).map(|j| vec![n - j, j, 0]).collect();
    out.push(vec![n - 1, 0, 1]);
    out.push(vec![n - 2, 0, 2]);
    out.push(vec![n - 2, 1, 1]);
    out
}

fn monomial_value<F: Field>(e: &[u32], p: &[F]) -> F {
    e.iter()
        .zip(p)
        .fold(F::one_in(&p[0].ctx()), |acc, (&k, x)| acc * x.pow(k))
}

/// Coefficients (lowest degree first) of `prod (U - r)` over `roots`, times `U` if `extra_u`.
fn root_polynomial<F: Field>(ctx: &F::Ctx, roots: &[&F], extra_u: bool) -> Vec<F> {
    let mut p = vec![F::one_in(ctx)];
    let times_linear = |p: &mut Vec<F>, r: F| {
        let mut next = vec![F::zero_in(ctx); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + c.clone();
            next[i] = next[i].clone() - c.clone() * r.clone();
        }
        *p = next;
    };
    for r in roots {
        times_linear(&mut p, (*r).clone());
    }
    if extra_u {
        times_linear(&mut p, F::zero_in(ctx));
    }
    p
}

/// One degree-`n` form per point, in [`SeparatorConfig::points`] order; form
/// `i` vanishes at every point except the `i`-th.
///
/// The form is pinned on the line by prescribing its restriction (a binary
/// form of degree `n`), which leaves the three-parameter family
/// `(aT2 - bT1) U^{n-2} {U, T1, T2}`; the off-line vanishing conditions are
/// then imposed on that family.
pub fn lemma26_separators<F: Field>(cfg: &SeparatorConfig<F>) -> Result<Vec<Form<F>>> {
    cfg.validate()?;
    let ctx = cfg.ctx();
    let n = cfg.n;
    let mons = lemma26_monomials(n);
    let points = cfg.points();
    let aligned = cfg.aligned_u.len();

    // restriction to the line: coefficient of U^{n-m} is sum over monomials of T-degree m of c a^e1 b^e2
    let line_rows: Vec<Vec<F>> = (0..=n as u32)
        .map(|m| {
            mons.iter()
                .map(|e| {
                    if e[1] + e[2] == m {
                        cfg.a.pow(e[1]) * cfg.b.pow(e[2])
                    } else {
                        F::zero_in(&ctx)
                    }
                })
                .collect()
        })
        .collect();

    let mut out = Vec::with_capacity(points.len());
    for target in 0..points.len() {
        let restriction = if target < aligned {
            let roots: Vec<&F> = cfg
                .aligned_u
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != target)
                .map(|(_, u)| u)
                .collect();
            root_polynomial(&ctx, &roots, cfg.case == SeparatorCase::Two)
        } else {
            match cfg.case {
                SeparatorCase::One => vec![F::zero_in(&ctx); n + 1],
                SeparatorCase::Two => {
                    let roots: Vec<&F> = cfg.aligned_u.iter().collect();
                    root_polynomial(&ctx, &roots, false)
                }
            }
        };
        debug_assert_eq!(restriction.len(), n + 1);

        let mut rows = line_rows.clone();
        let mut rhs: Vec<F> = (0..=n).map(|m| restriction[n - m].clone()).collect();
        for (j, q) in points.iter().enumerate().skip(aligned) {
            if j != target {
                rows.push(mons.iter().map(|e| monomial_value(e, q)).collect());
                rhs.push(F::zero_in(&ctx));
            }
        }
        let system = Matrix::from_rows(ctx.clone(), mons.len(), rows)?;
        let coeffs = match system.solve_affine(&rhs)? {
            AffineSolution::NoSolution => {
                return Err(Error::DegenerateConfiguration(format!(
                    "no admissible form isolates point {target}"
                )))
            }
            AffineSolution::Solutions { particular, kernel } => {
                let value = |c: &[F]| -> F {
                    mons.iter().zip(c).fold(F::zero_in(&ctx), |acc, (e, ci)| {
                        acc + ci.clone() * monomial_value(e, &points[target])
                    })
                };
                let mut candidates = vec![particular.clone()];
                candidates.extend(kernel.iter().map(|k| {
                    particular
                        .iter()
                        .zip(k)
                        .map(|(p, v)| p.clone() + v.clone())
                        .collect()
                }));
                candidates
                    .into_iter()
                    .find(|c| !value(c).is_zero())
                    .ok_or_else(|| {
                        Error::DegenerateConfiguration(format!(
                            "every solution vanishes at point {target}"
                        ))
                    })?
            }
        };
        let form = Form::from_terms(ctx.clone(), 3, coeffs.into_iter().zip(mons.iter().cloned()))?;
        out.push(form);
    }
    Ok(out)
}

/// Postconditions of the separator construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatorCheck {
    /// every form is a combination of the `n+4` listed monomials
    pub confined: bool,
    /// form `i` is nonzero exactly at point `i`
    pub isolates: bool,
    /// rank of the listed monomials evaluated on the `n+3` points
    pub monomial_rank: usize,
    pub points: usize,
}

impl SeparatorCheck {
    pub fn holds(&self) -> bool {
        self.confined && self.isolates && self.monomial_rank == self.points
    }
}

pub fn check_separators<F: Field>(
    cfg: &SeparatorConfig<F>,
    forms: &[Form<F>],
) -> Result<SeparatorCheck> {
    let ctx = cfg.ctx();
    let mons = lemma26_monomials(cfg.n);
    let points = cfg.points();
    let confined = forms.iter().all(|f| f.coordinates_in(&mons).is_some());
    let isolates = forms.len() == points.len()
        && forms.iter().enumerate().all(|(i, f)| {
            points
                .iter()
                .enumerate()
                .all(|(j, p)| f.eval(p).is_zero() != (i == j))
        });
    let scheme = FiniteScheme::from_points(points.clone())?;
    let mon_forms: Vec<Form<F>> = mons
        .iter()
        .map(|e| Form::monomial(ctx.clone(), e.clone(), F::one_in(&ctx)))
        .collect();
    let monomial_rank = evaluation_matrix_of_forms(&scheme, &mon_forms).rank();
    Ok(SeparatorCheck {
        confined,
        isolates,
        monomial_rank,
        points: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::normality::is_k_normal;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_i64_in(&(), v)
    }

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn case_two_example() {
        let cfg = SeparatorConfig {
            n: 3,
            case: SeparatorCase::Two,
            aligned_u: qv(&[1, 2, 3]),
            a: q(1),
            b: q(1),
            off_line: vec![qv(&[1, 1, 2]), qv(&[1, 2, 1]), qv(&[1, 3, 1])],
        };
        let forms = lemma26_separators(&cfg).unwrap();
        assert_eq!(forms.len(), 6);
        let check = check_separators(&cfg, &forms).unwrap();
        assert!(check.holds(), "{check:?}");
        assert_eq!(check.monomial_rank, 6);
    }

    #[test]
    fn case_one_example() {
        let cfg = SeparatorConfig {
            n: 3,
            case: SeparatorCase::One,
            aligned_u: qv(&[1, 2, 3, 4]),
            a: q(1),
            b: q(1),
            off_line: vec![qv(&[1, 1, 2]), qv(&[1, 2, 1])],
        };
        let forms = lemma26_separators(&cfg).unwrap();
        let check = check_separators(&cfg, &forms).unwrap();
        assert!(check.holds(), "{check:?}");
    }

    #[test]
    fn monomial_list_shape() {
        let m = lemma26_monomials(5);
        assert_eq!(m.len(), 9);
        assert!(m.iter().all(|e| e.iter().sum::<u32>() == 5));
        assert!(m.contains(&vec![3, 1, 1]));
    }

    #[test]
    fn hypotheses_rejected() {
        let mut cfg = SeparatorConfig {
            n: 3,
            case: SeparatorCase::Two,
            aligned_u: qv(&[1, 2, 3]),
            a: q(1),
            b: q(1),
            off_line: vec![qv(&[1, 1, 2]), qv(&[1, 2, 1]), qv(&[1, 3, 1])],
        };
        cfg.off_line[0] = qv(&[5, 2, 2]);
        assert!(matches!(
            lemma26_separators(&cfg),
            Err(Error::InvalidInput(_))
        ));
        cfg.off_line[0] = qv(&[1, 1, 2]);
        cfg.a = q(0);
        assert!(lemma26_separators(&cfg).is_err());
    }

    #[test]
    fn point_killed_by_every_monomial_is_degenerate() {
        // (0,0,1) has U = 0, so every listed monomial vanishes there
        let cfg = SeparatorConfig {
            n: 3,
            case: SeparatorCase::Two,
            aligned_u: qv(&[1, 2, 3]),
            a: q(1),
            b: q(1),
            off_line: vec![qv(&[0, 0, 1]), qv(&[1, 2, 1]), qv(&[1, 3, 1])],
        };
        assert!(!cfg.is_admissible());
        assert!(matches!(
            lemma26_separators(&cfg),
            Err(Error::DegenerateConfiguration(_))
        ));
    }

    #[test]
    fn recipe_space_examples() {
        let frame = FiberFrame::standard((), 2, 2);
        let r = FormSpaceRecipe::<Q>::new((), 2, false).with_first_powers([1]);
        let r = r
            .with_space(1, vec![Form::monomial((), vec![0, 1], q(1))])
            .unwrap();
        let forms = recipe_space(&r, 1, &frame).unwrap();
        let expect = [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(forms.len(), 3);
        for (f, e) in forms.iter().zip(expect) {
            assert_eq!(f.coeff(&e), q(1));
        }

        let bare = FormSpaceRecipe::<Q>::new((), 2, false);
        let forms = recipe_space(&bare, 2, &frame).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].coeff(&[2, 0, 0]), q(1));

        // at degree 5 the standard recipe with T1^3..T1^5 is exactly the nine monomials
        let r = FormSpaceRecipe::<Q>::lemma26((), 5);
        let forms = recipe_space(&r, 5, &frame).unwrap();
        let mons = lemma26_monomials(5);
        assert_eq!(forms.len(), 9);
        for e in &mons {
            assert!(forms
                .iter()
                .any(|f| f.coeff(e) == q(1) && f.terms().count() == 1));
        }
        assert_eq!(
            r.dims(),
            BTreeMap::from([(1, 2), (2, 3), (3, 1), (4, 1), (5, 1)])
        );
    }

    #[test]
    fn recipe_separation_examples() {
        let frame = FiberFrame::standard((), 2, 2);
        let line =
            FiniteScheme::from_points((1..=5).map(|u| qv(&[u, u * u - 3, 0])).collect()).unwrap();
        let powers = FormSpaceRecipe::<Q>::new((), 2, false).with_first_powers(1..=4);
        assert!(recipe_separates(&line, &powers, 4, &frame).unwrap());
        let cubic = FormSpaceRecipe::<Q>::new((), 2, false).with_first_powers(1..=3);
        assert!(!recipe_separates(&line, &cubic, 3, &frame).unwrap());
        assert!(recipe_separates(&line, &powers, 3, &frame).is_err());

        let six = FiniteScheme::from_points(vec![
            qv(&[1, 1, 1]),
            qv(&[2, 1, 1]),
            qv(&[3, 1, 1]),
            qv(&[4, 1, 1]),
            qv(&[5, 1, 1]),
            qv(&[1, 2, 5]),
        ])
        .unwrap();
        assert!(recipe_separates(&six, &FormSpaceRecipe::lemma26((), 5), 5, &frame).unwrap());

        let four = FiniteScheme::from_points(vec![
            qv(&[1, 0, 0]),
            qv(&[0, 1, 0]),
            qv(&[0, 0, 1]),
            qv(&[1, 1, 1]),
        ])
        .unwrap();
        let std = FormSpaceRecipe::<Q>::new((), 2, true);
        assert!(recipe_separates(&four, &std, 2, &frame).unwrap());
        assert_eq!(
            recipe_separates(&four, &std, 2, &frame).unwrap(),
            is_k_normal(&four, 2)
        );
    }

    #[test]
    fn frame_must_be_independent() {
        assert!(
            FiberFrame::<Q>::new((), qv(&[1, 0, 0]), vec![qv(&[2, 0, 0]), qv(&[0, 1, 0])]).is_err()
        );
    }
}
