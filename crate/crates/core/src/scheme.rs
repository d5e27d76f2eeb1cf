//! Zero-dimensional subschemes of `P^N` as disjoint unions of curvilinear germs.
//!
//! A germ of length `len` at a point `p` is stored as a smooth parameterized
//! arc truncated mod `t^len`, written in the affine chart `x_chart = 1`.
//! Closed subschemes of such a union are exactly the per-germ truncations,
//! which is what [`SubschemeSelector`] records.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::series;

/// Default ceiling on scheme length for exhaustive subscheme enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// A point of projective space, normalised so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint<F: Field> {
    coords: Vec<F>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(coords: Vec<F>) -> Result<Self> {
        let lead = coords.iter().position(|c| !c.is_zero()).ok_or_else(|| {
            Error::InvalidInput("projective point with all coordinates zero".into())
        })?;
        let inv = coords[lead].inv().expect("nonzero");
        let coords = coords.into_iter().map(|c| c * inv.clone()).collect();
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn ambient(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the leading (normalised) coordinate.
    pub fn lead(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("canonical")
    }
}

/// A curvilinear germ: a smooth arc through `support` truncated mod `t^len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvilinearGerm<F: Field> {
    support: ProjPoint<F>,
    chart: usize,
    /// One truncated series per affine coordinate `j != chart`, in increasing `j`.
    jet: Vec<Vec<F>>,
}

impl<F: Field> CurvilinearGerm<F> {
    /// A reduced point (length 1).
    pub fn point(coords: Vec<F>) -> Result<Self> {
        let support = ProjPoint::new(coords)?;
        let chart = support.lead();
        let jet = support
            .coords
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != chart)
            .map(|(_, c)| vec![c.clone()])
            .collect();
        Ok(CurvilinearGerm {
            support,
            chart,
            jet,
        })
    }

    /// Builds a germ from its affine jet in `chart`; the chart defaults to the
    /// leading coordinate of the support.
    pub fn from_affine_jet(coords: Vec<F>, chart: Option<usize>, jet: Vec<Vec<F>>) -> Result<Self> {
        let support = ProjPoint::new(coords)?;
        let n = support.ambient();
        let chart = chart.unwrap_or_else(|| support.lead());
        if chart > n || support.coords[chart].is_zero() {
            return Err(Error::InvalidInput(format!(
                "chart {chart} is not a nonzero coordinate of the support"
            )));
        }
        if jet.len() != n {
            return Err(Error::InvalidInput(format!(
                "jet needs {n} affine coordinate series, got {}",
                jet.len()
            )));
        }
        let len = jet.first().map_or(1, |s| s.len());
        if len == 0 || jet.iter().any(|s| s.len() != len) {
            return Err(Error::InvalidInput(
                "jet series must share one positive length".into(),
            ));
        }
        let inv = support.coords[chart].inv().expect("nonzero");
        let affine: Vec<F> = (0..=n)
            .filter(|&j| j != chart)
            .map(|j| support.coords[j].clone() * inv.clone())
            .collect();
        for (s, a) in jet.iter().zip(&affine) {
            if s[0] != *a {
                return Err(Error::InvalidInput(
                    "jet constant terms must equal the dehomogenised support".into(),
                ));
            }
        }
        let germ = CurvilinearGerm {
            support,
            chart,
            jet,
        };
        germ.check_curvilinear()?;
        Ok(germ)
    }

    /// Builds a germ from a homogeneous arc `x(t) = sum_i coeffs[i] t^i` (each an
    /// `(N+1)`-vector); the length is `coeffs.len()`.
    pub fn from_homogeneous(coeffs: &[Vec<F>]) -> Result<Self> {
        let p0 = coeffs
            .first()
            .ok_or_else(|| Error::InvalidInput("empty homogeneous jet".into()))?;
        let support = ProjPoint::new(p0.clone())?;
        let n = support.ambient();
        let len = coeffs.len();
        if coeffs.iter().any(|c| c.len() != n + 1) {
            return Err(Error::InvalidInput(
                "homogeneous jet vectors must have N+1 entries".into(),
            ));
        }
        let ctx = p0[0].ctx();
        let chart = support.lead();
        let series_of = |j: usize| -> Vec<F> { coeffs.iter().map(|v| v[j].clone()).collect() };
        let denom = series::inv(&series_of(chart), len, &ctx).expect("leading coordinate nonzero");
        let jet = (0..=n)
            .filter(|&j| j != chart)
            .map(|j| series::mul(&series_of(j), &denom, len, &ctx))
            .collect();
        let germ = CurvilinearGerm {
            support,
            chart,
            jet,
        };
        germ.check_curvilinear()?;
        Ok(germ)
    }

    fn check_curvilinear(&self) -> Result<()> {
        if self.len() >= 2 && self.jet.iter().all(|s| s[1].is_zero()) {
            return Err(Error::NonCurvilinear(
                "linear coefficients of the jet all vanish".into(),
            ));
        }
        Ok(())
    }

    pub fn support(&self) -> &ProjPoint<F> {
        &self.support
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn jet(&self) -> &[Vec<F>] {
        &self.jet
    }

    pub fn len(&self) -> usize {
        self.jet.first().map_or(1, |s| s.len())
    }

    pub fn ambient(&self) -> usize {
        self.support.ambient()
    }

    pub fn ctx(&self) -> F::Ctx {
        self.support.coords[0].ctx()
    }

    /// The `N+1` homogeneous coordinate series with `x_chart = 1`.
    pub fn homogeneous_series(&self) -> Vec<Vec<F>> {
        let ctx = self.ctx();
        let len = self.len();
        let mut out = Vec::with_capacity(self.ambient() + 1);
        let mut it = self.jet.iter();
        for j in 0..=self.ambient() {
            if j == self.chart {
                let mut s = vec![F::zero_in(&ctx); len];
                s[0] = F::one_in(&ctx);
                out.push(s);
            } else {
                out.push(it.next().expect("jet per affine coordinate").clone());
            }
        }
        out
    }

    /// Coefficient vectors of `t^0, ..., t^{len-1}` of the homogeneous arc.
    pub fn homogeneous_coefficients(&self) -> Vec<Vec<F>> {
        let hs = self.homogeneous_series();
        (0..self.len())
            .map(|r| hs.iter().map(|s| s[r].clone()).collect())
            .collect()
    }

    pub fn truncate(&self, len: usize) -> Self {
        assert!(len >= 1 && len <= self.len());
        CurvilinearGerm {
            support: self.support.clone(),
            chart: self.chart,
            jet: self.jet.iter().map(|s| s[..len].to_vec()).collect(),
        }
    }

    /// Image under the linear map `g` (acting on homogeneous coordinates).
    pub fn transform(&self, g: &Matrix<F>) -> Result<Self> {
        let coeffs: Vec<Vec<F>> = self
            .homogeneous_coefficients()
            .iter()
            .map(|v| g.mul_vec(v))
            .collect();
        Self::from_homogeneous(&coeffs)
    }

    /// Substitutes `t -> u(t)` where `u` has zero constant and nonzero linear term.
    pub fn reparameterize(&self, u: &[F]) -> Result<Self> {
        if u.len() < 2 || !u[0].is_zero() || u[1].is_zero() {
            return Err(Error::InvalidInput(
                "reparameterisation must be a unit times t".into(),
            ));
        }
        let len = self.len();
        let ctx = self.ctx();
        let jet = self
            .jet
            .iter()
            .map(|s| series::compose(s, u, len, &ctx))
            .collect();
        Ok(CurvilinearGerm {
            support: self.support.clone(),
            chart: self.chart,
            jet,
        })
    }
}

/// Per-germ truncation lengths describing a closed subscheme.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubschemeSelector {
    pub lengths: Vec<usize>,
}

impl SubschemeSelector {
    pub fn total(&self) -> usize {
        self.lengths.iter().sum()
    }
}

/// A finite subscheme of `P^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteScheme<F: Field> {
    ambient: usize,
    germs: Vec<CurvilinearGerm<F>>,
}

impl<F: Field> FiniteScheme<F> {
    pub fn new(ambient: usize, germs: Vec<CurvilinearGerm<F>>) -> Result<Self> {
        if germs.is_empty() {
            return Err(Error::InvalidInput(
                "a scheme needs at least one germ".into(),
            ));
        }
        if let Some(g) = germs.iter().find(|g| g.ambient() != ambient) {
            return Err(Error::InvalidInput(format!(
                "germ lives in P^{} but the scheme is in P^{ambient}",
                g.ambient()
            )));
        }
        let ctx = germs[0].ctx();
        if germs.iter().any(|g| g.ctx() != ctx) {
            return Err(Error::InvalidInput("germs over different fields".into()));
        }
        for i in 0..germs.len() {
            for j in 0..i {
                if germs[i].support == germs[j].support {
                    return Err(Error::InvalidInput(format!(
                        "germs {j} and {i} share a support point"
                    )));
                }
            }
        }
        Ok(FiniteScheme { ambient, germs })
    }

    /// Reduced scheme of distinct points.
    pub fn from_points(points: Vec<Vec<F>>) -> Result<Self> {
        let ambient = points
            .first()
            .map(|p| p.len().saturating_sub(1))
            .ok_or_else(|| Error::InvalidInput("no points".into()))?;
        let germs = points
            .into_iter()
            .map(CurvilinearGerm::point)
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient, germs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn germs(&self) -> &[CurvilinearGerm<F>] {
        &self.germs
    }

    pub fn ctx(&self) -> F::Ctx {
        self.germs[0].ctx()
    }

    /// Total length `d`.
    pub fn degree(&self) -> usize {
        self.germs.iter().map(|g| g.len()).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.germs.iter().all(|g| g.len() == 1)
    }

    pub fn full_selector(&self) -> SubschemeSelector {
        SubschemeSelector {
            lengths: self.germs.iter().map(|g| g.len()).collect(),
        }
    }

    fn check_selector(&self, sel: &SubschemeSelector) -> Result<()> {
        if sel.lengths.len() != self.germs.len() {
            return Err(Error::SelectorMismatch {
                expected: self.germs.len(),
                got: sel.lengths.len(),
            });
        }
        if let Some((i, _)) = sel
            .lengths
            .iter()
            .zip(&self.germs)
            .enumerate()
            .find(|(_, (l, g))| **l > g.len())
        {
            return Err(Error::InvalidInput(format!(
                "selector asks for more than the length of germ {i}"
            )));
        }
        Ok(())
    }

    /// The selected subscheme as a scheme in its own right (zero-length germs dropped).
    pub fn subscheme(&self, sel: &SubschemeSelector) -> Result<Self> {
        self.check_selector(sel)?;
        let germs: Vec<_> = self
            .germs
            .iter()
            .zip(&sel.lengths)
            .filter(|(_, &l)| l > 0)
            .map(|(g, &l)| g.truncate(l))
            .collect();
        Self::new(self.ambient, germs)
    }

    /// Homogeneous coefficient vectors of the selected subscheme: the rows of
    /// its degree-1 evaluation matrix.
    fn linear_rows(&self, sel: &SubschemeSelector) -> Vec<Vec<F>> {
        self.germs
            .iter()
            .zip(&sel.lengths)
            .flat_map(|(g, &l)| g.homogeneous_coefficients().into_iter().take(l))
            .collect()
    }

    /// `dim <X'>` for the selected subscheme (rank of the linear evaluation − 1).
    pub fn span_dim_of(&self, sel: &SubschemeSelector) -> Result<usize> {
        self.check_selector(sel)?;
        if sel.total() == 0 {
            return Err(Error::InvalidInput(
                "the empty subscheme has no span".into(),
            ));
        }
        let rows = self.linear_rows(sel);
        let m = Matrix::from_rows(self.ctx(), self.ambient + 1, rows)?;
        Ok(m.rank() - 1)
    }

    /// `dim <X>`.
    pub fn span_dim(&self) -> usize {
        self.span_dim_of(&self.full_selector())
            .expect("full selector is valid")
    }

    /// Applies an invertible linear change of coordinates to every germ.
    pub fn transform(&self, g: &Matrix<F>) -> Result<Self> {
        let n = self.ambient + 1;
        if g.rows() != n || g.cols() != n || g.rank() != n {
            return Err(Error::InvalidInput(
                "coordinate change must be an invertible (N+1)x(N+1) matrix".into(),
            ));
        }
        let germs = self
            .germs
            .iter()
            .map(|germ| germ.transform(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.ambient, germs)
    }

    /// Maps every coefficient into another field (e.g. reduction mod p).
    pub fn try_map_field<G: Field>(
        &self,
        mut f: impl FnMut(&F) -> Option<G>,
    ) -> Result<FiniteScheme<G>> {
        let mut germs = Vec::with_capacity(self.germs.len());
        for g in &self.germs {
            let coeffs = g
                .homogeneous_coefficients()
                .iter()
                .map(|v| v.iter().map(&mut f).collect::<Option<Vec<G>>>())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::InvalidInput("coefficient not representable".into()))?;
            germs.push(CurvilinearGerm::from_homogeneous(&coeffs)?);
        }
        FiniteScheme::new(self.ambient, germs)
    }
}

/// Every selector of total length exactly `target`, each exactly once.
pub fn enumerate_subschemes<F: Field>(
    x: &FiniteScheme<F>,
    target: usize,
    cap: usize,
) -> Result<Vec<SubschemeSelector>> {
    let d = x.degree();
    if d > cap {
        return Err(Error::CapExceeded { degree: d, cap });
    }
    if target > d {
        return Err(Error::InvalidInput(format!(
            "cannot select length {target} from a scheme of length {d}"
        )));
    }
    let maxes: Vec<usize> = x.germs.iter().map(|g| g.len()).collect();
    // suffix capacity lets the recursion prune dead branches
    let mut room = vec![0; maxes.len() + 1];
    for i in (0..maxes.len()).rev() {
        room[i] = room[i + 1] + maxes[i];
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(maxes.len());
    fn rec(
        i: usize,
        left: usize,
        maxes: &[usize],
        room: &[usize],
        current: &mut Vec<usize>,
        out: &mut Vec<SubschemeSelector>,
    ) {
        if i == maxes.len() {
            if left == 0 {
                out.push(SubschemeSelector {
                    lengths: current.clone(),
                });
            }
            return;
        }
        if left > room[i] {
            return;
        }
        for l in (0..=maxes[i].min(left)).rev() {
            current.push(l);
            rec(i + 1, left - l, maxes, room, current, out);
            current.pop();
        }
    }
    rec(0, target, &maxes, &room, &mut current, &mut out);
    Ok(out)
}

/// The invariant `t`: the largest `k` such that every subscheme of length at
/// most `k + 1` is linearly independent, clamped to `[1, dim <X>]`.
pub fn invariant_t<F: Field>(x: &FiniteScheme<F>, cap: usize) -> Result<usize> {
    let d = x.degree();
    if d > cap {
        return Err(Error::CapExceeded { degree: d, cap });
    }
    let n = x.span_dim();
    for len in 3..=(n + 1).min(d) {
        for sel in enumerate_subschemes(x, len, cap)? {
            if x.span_dim_of(&sel)? < len - 1 {
                return Ok(len - 2);
            }
        }
    }
    Ok(n.max(1))
}

/// A linear subspace of `P^N` cut out by independent linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace<F: Field> {
    ambient: usize,
    forms: Vec<Vec<F>>,
}

impl<F: Field> LinearSubspace<F> {
    pub fn from_forms(ctx: F::Ctx, ambient: usize, forms: Vec<Vec<F>>) -> Result<Self> {
        if forms.iter().any(|f| f.len() != ambient + 1) {
            return Err(Error::InvalidInput(
                "cutting forms must have N+1 coefficients".into(),
            ));
        }
        let count = forms.len();
        let m = Matrix::from_rows(ctx, ambient + 1, forms.clone())?;
        if m.rank() != count {
            return Err(Error::DependentForms(format!(
                "{count} cutting forms have rank {}",
                m.rank()
            )));
        }
        Ok(LinearSubspace { ambient, forms })
    }

    /// The span of the given homogeneous vectors.
    pub fn spanned_by(ctx: F::Ctx, ambient: usize, vectors: &[Vec<F>]) -> Result<Self> {
        let m = Matrix::from_rows(ctx.clone(), ambient + 1, vectors.to_vec())?;
        let forms = m.kernel_basis();
        Self::from_forms(ctx, ambient, forms)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn forms(&self) -> &[Vec<F>] {
        &self.forms
    }

    /// Projective dimension; `-1` for the empty subspace.
    pub fn dim(&self) -> isize {
        self.ambient as isize - self.forms.len() as isize
    }

    pub fn contains(&self, coords: &[F]) -> bool {
        self.forms.iter().all(|f| dot(f, coords).is_zero())
    }

    /// Length of the intersection of `L` with one germ: the largest `j` such that
    /// every cutting form composed with the jet vanishes mod `t^j`.
    pub fn contact_with_germ(&self, germ: &CurvilinearGerm<F>) -> usize {
        let coeffs = germ.homogeneous_coefficients();
        self.forms
            .iter()
            .map(|f| {
                let s: Vec<F> = coeffs.iter().map(|v| dot(f, v)).collect();
                series::order(&s)
            })
            .min()
            .unwrap_or(germ.len())
    }

    /// Length of `X ∩ L`.
    pub fn contact_length(&self, x: &FiniteScheme<F>) -> usize {
        x.germs.iter().map(|g| self.contact_with_germ(g)).sum()
    }
}

pub(crate) fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    let ctx = a[0].ctx();
    a.iter()
        .zip(b)
        .fold(F::zero_in(&ctx), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Every line spanned by a length-2 subscheme: joins of two supports and
/// tangent lines of nonreduced germs.
pub fn candidate_lines<F: Field>(x: &FiniteScheme<F>) -> Vec<LinearSubspace<F>> {
    let ctx = x.ctx();
    let n = x.ambient;
    let mut lines: Vec<LinearSubspace<F>> = Vec::new();
    let mut push = |l: LinearSubspace<F>| {
        let same = |m: &LinearSubspace<F>| {
            let mut rows = m.forms.clone();
            rows.extend(l.forms.iter().cloned());
            Matrix::from_rows(ctx.clone(), n + 1, rows).unwrap().rank() == m.forms.len()
        };
        if !lines.iter().any(same) {
            lines.push(l);
        }
    };
    let germs = &x.germs;
    for i in 0..germs.len() {
        let hi = germs[i].homogeneous_coefficients();
        if hi.len() >= 2 {
            if let Ok(l) = LinearSubspace::spanned_by(ctx.clone(), n, &hi[..2]) {
                push(l);
            }
        }
        for g in &germs[i + 1..] {
            let vecs = [hi[0].clone(), g.support.coords.clone()];
            if let Ok(l) = LinearSubspace::spanned_by(ctx.clone(), n, &vecs) {
                push(l);
            }
        }
    }
    lines
}

/// Maximum length of a subscheme of `X` contained in a line, with a witness
/// line when that length is at least 2.
pub fn max_collinear_length<F: Field>(x: &FiniteScheme<F>) -> (usize, Option<LinearSubspace<F>>) {
    let mut best = (1, None);
    for line in candidate_lines(x) {
        let c = line.contact_length(x);
        if c > best.0 || best.1.is_none() {
            best = (c, Some(line));
        }
    }
    if x.degree() == 1 {
        return (1, None);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_i64_in(&(), v)
    }

    fn pts(rows: &[&[i64]]) -> FiniteScheme<Q> {
        FiniteScheme::from_points(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Germ `p + t v + t^2 w + ...` given homogeneous integer coefficient vectors.
    fn germ(coeffs: &[&[i64]]) -> CurvilinearGerm<Q> {
        let c: Vec<Vec<Q>> = coeffs
            .iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect();
        CurvilinearGerm::from_homogeneous(&c).unwrap()
    }

    #[test]
    fn points_are_canonical() {
        let p = ProjPoint::new(vec![q(0), q(2), q(4)]).unwrap();
        assert_eq!(p.coords(), &[q(0), q(1), q(2)]);
        assert!(ProjPoint::<Q>::new(vec![q(0), q(0)]).is_err());
    }

    #[test]
    fn span_dim_examples() {
        let two = pts(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(two.span_dim(), 1);

        // length-3 germ along the line through (1,0,0) with direction (0,1,0)
        let g = germ(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let x = FiniteScheme::new(2, vec![g]).unwrap();
        assert_eq!(x.degree(), 3);
        assert_eq!(x.span_dim(), 1);

        let four = pts(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 1]]);
        assert_eq!(four.span_dim(), 3);

        let bad = SubschemeSelector { lengths: vec![1] };
        assert!(matches!(
            four.span_dim_of(&bad),
            Err(Error::SelectorMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let three = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(enumerate_subschemes(&three, 2, 12).unwrap().len(), 3);

        let g3 = FiniteScheme::new(2, vec![germ(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])]).unwrap();
        let sels = enumerate_subschemes(&g3, 2, 12).unwrap();
        assert_eq!(sels, vec![SubschemeSelector { lengths: vec![2] }]);

        // exhaustive: (2,0) and (1,1)
        let mixed = FiniteScheme::new(
            2,
            vec![
                germ(&[&[1, 0, 0], &[0, 1, 0]]),
                CurvilinearGerm::point(vec![q(0), q(0), q(1)]).unwrap(),
            ],
        )
        .unwrap();
        let sels = enumerate_subschemes(&mixed, 2, 12).unwrap();
        assert_eq!(sels.len(), 2);
        assert!(sels.contains(&SubschemeSelector {
            lengths: vec![2, 0]
        }));
        assert!(sels.contains(&SubschemeSelector {
            lengths: vec![1, 1]
        }));

        assert!(matches!(
            enumerate_subschemes(&mixed, 2, 2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn invariant_t_examples() {
        let collinear = pts(&[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0], &[0, 0, 1]]);
        assert_eq!(invariant_t(&collinear, 12).unwrap(), 1);

        let four = pts(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(invariant_t(&four, 12).unwrap(), 3);

        // six points on the twisted cubic: no 3 collinear, no 4 coplanar
        let six = pts(&[
            &[1, 0, 0, 0],
            &[1, 1, 1, 1],
            &[1, 2, 4, 8],
            &[1, 3, 9, 27],
            &[1, -1, 1, -1],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(invariant_t(&six, 12).unwrap(), 3);
    }

    #[test]
    fn collinear_examples() {
        let x = pts(&[
            &[1, 0, 0, 0],
            &[1, 1, 0, 0],
            &[1, 2, 0, 0],
            &[1, 3, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        let (len, line) = max_collinear_length(&x);
        assert_eq!(len, 4);
        let line = line.unwrap();
        assert_eq!(line.dim(), 1);
        assert!(line.contains(&[q(1), q(5), q(0), q(0)]));

        let tri = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(max_collinear_length(&tri).0, 2);

        let g3 = FiniteScheme::new(2, vec![germ(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])]).unwrap();
        let (len, line) = max_collinear_length(&g3);
        assert_eq!(len, 3);
        assert!(line.unwrap().contains(&[q(1), q(1), q(0)]));

        assert_eq!(max_collinear_length(&pts(&[&[1, 2]])).0, 1);
    }

    #[test]
    fn non_curvilinear_rejected() {
        let c = vec![vec![q(1), q(0)], vec![q(2), q(0)]];
        assert!(matches!(
            CurvilinearGerm::from_homogeneous(&c),
            Err(Error::NonCurvilinear(_))
        ));
    }

    #[test]
    fn affine_jet_validation() {
        let ok = CurvilinearGerm::from_affine_jet(
            vec![q(1), q(0), q(0)],
            None,
            vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]],
        );
        assert!(ok.is_ok());
        let wrong_const = CurvilinearGerm::from_affine_jet(
            vec![q(1), q(0), q(0)],
            None,
            vec![vec![q(1), q(1)], vec![q(0), q(0)]],
        );
        assert!(wrong_const.is_err());
        let bad_chart = CurvilinearGerm::from_affine_jet(
            vec![q(1), q(0), q(0)],
            Some(1),
            vec![vec![q(1)], vec![q(0)]],
        );
        assert!(bad_chart.is_err());
    }

    #[test]
    fn duplicate_supports_rejected() {
        let a = CurvilinearGerm::point(vec![q(1), q(1)]).unwrap();
        let b = CurvilinearGerm::point(vec![q(2), q(2)]).unwrap();
        assert!(FiniteScheme::new(1, vec![a, b]).is_err());
    }
}
