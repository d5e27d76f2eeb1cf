//! Evaluation of forms on finite schemes: Hilbert function, k-normality and
//! regularity.
//!
//! The degree-k evaluation matrix of a scheme of length `d` has one row per
//! functional (the coefficients of `t^0..t^{len-1}` of a form restricted to
//! each germ) and one column per degree-k monomial in grlex order. Its rank is
//! `φ_X(k)`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{monomials, series, Exponent, Form};
use crate::scheme::{invariant_t, max_collinear_length, CurvilinearGerm, FiniteScheme};

/// Coefficients of `t^0..t^{len-1}` of `form` restricted to the germ.
pub fn evaluate_form_on_germ<F: Field>(form: &Form<F>, germ: &CurvilinearGerm<F>) -> Vec<F> {
    assert_eq!(
        form.nvars(),
        germ.ambient() + 1,
        "form and germ live in different spaces"
    );
    let ctx = germ.ctx();
    let len = germ.len();
    let hs = germ.homogeneous_series();
    let mut powers: Vec<Vec<Vec<F>>> = hs
        .iter()
        .map(|s| {
            let mut one = vec![F::zero_in(&ctx); len];
            one[0] = F::one_in(&ctx);
            vec![one, s.clone()]
        })
        .collect();
    let mut out = vec![F::zero_in(&ctx); len];
    for (e, c) in form.terms() {
        let mut term = vec![F::zero_in(&ctx); len];
        term[0] = c.clone();
        for (i, &p) in e.iter().enumerate() {
            while powers[i].len() <= p as usize {
                let next = series::mul(powers[i].last().unwrap(), &hs[i], len, &ctx);
                powers[i].push(next);
            }
            term = series::mul(&term, &powers[i][p as usize], len, &ctx);
        }
        for (o, v) in out.iter_mut().zip(term) {
            *o = o.clone() + v;
        }
    }
    out
}

/// Incremental builder of evaluation matrices, degree by degree.
pub struct Evaluator<'a, F: Field> {
    scheme: &'a FiniteScheme<F>,
    series: Vec<Vec<Vec<F>>>,
    degree: u32,
    exponents: Vec<Exponent>,
    /// per monomial: the concatenated functional values on every germ
    values: Vec<Vec<F>>,
}

impl<'a, F: Field> Evaluator<'a, F> {
    pub fn new(scheme: &'a FiniteScheme<F>) -> Self {
        let ctx = scheme.ctx();
        let series: Vec<_> = scheme
            .germs()
            .iter()
            .map(|g| g.homogeneous_series())
            .collect();
        let constant: Vec<F> = scheme
            .germs()
            .iter()
            .flat_map(|g| {
                let mut v = vec![F::zero_in(&ctx); g.len()];
                v[0] = F::one_in(&ctx);
                v
            })
            .collect();
        Evaluator {
            scheme,
            series,
            degree: 0,
            exponents: vec![vec![0; scheme.ambient() + 1]],
            values: vec![constant],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exponents
    }

    /// Advances to the next degree: each monomial is its predecessor times its
    /// first variable.
    pub fn advance(&mut self) {
        let ctx = self.scheme.ctx();
        let nvars = self.scheme.ambient() + 1;
        let index: HashMap<&Exponent, usize> = self
            .exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let next_exps = monomials(nvars, self.degree + 1);
        let next_vals: Vec<Vec<F>> = next_exps
            .iter()
            .map(|e| {
                let var = e.iter().position(|&p| p > 0).expect("positive degree");
                let mut prev = e.clone();
                prev[var] -= 1;
                let base = &self.values[index[&prev]];
                let mut out = Vec::with_capacity(base.len());
                let mut offset = 0;
                for (g, s) in self.scheme.germs().iter().zip(&self.series) {
                    let len = g.len();
                    let chunk = &base[offset..offset + len];
                    if len == 1 {
                        out.push(chunk[0].clone() * s[var][0].clone());
                    } else {
                        out.extend(series::mul(chunk, &s[var], len, &ctx));
                    }
                    offset += len;
                }
                out
            })
            .collect();
        self.degree += 1;
        self.exponents = next_exps;
        self.values = next_vals;
    }

    pub fn advance_to(&mut self, k: u32) {
        assert!(k >= self.degree, "evaluator only moves upward");
        while self.degree < k {
            self.advance();
        }
    }

    /// The current `d x binomial(N+k, k)` evaluation matrix.
    pub fn matrix(&self) -> Matrix<F> {
        let d = self.scheme.degree();
        let cols = self.values.len();
        let mut m = Matrix::zeros(self.scheme.ctx(), d, cols);
        for (c, col) in self.values.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }
}

/// Degree-k evaluation matrix of the full monomial basis.
pub fn evaluation_matrix<F: Field>(x: &FiniteScheme<F>, k: u32) -> Matrix<F> {
    let mut ev = Evaluator::new(x);
    ev.advance_to(k);
    ev.matrix()
}

/// Evaluation matrix restricted to a caller-supplied list of forms (one column each).
pub fn evaluation_matrix_of_forms<F: Field>(x: &FiniteScheme<F>, forms: &[Form<F>]) -> Matrix<F> {
    let d = x.degree();
    let mut m = Matrix::zeros(x.ctx(), d, forms.len());
    for (c, f) in forms.iter().enumerate() {
        let mut r = 0;
        for g in x.germs() {
            for v in evaluate_form_on_germ(f, g) {
                m.set(r, c, v);
                r += 1;
            }
        }
    }
    m
}

/// `φ_X(k)`.
pub fn hilbert_function<F: Field>(x: &FiniteScheme<F>, k: u32) -> usize {
    evaluation_matrix(x, k).rank()
}

/// `φ_X(0), ..., φ_X(max_k)`.
pub fn hilbert_sequence<F: Field>(x: &FiniteScheme<F>, max_k: u32) -> Vec<usize> {
    let mut ev = Evaluator::new(x);
    let mut out = vec![ev.rank()];
    for _ in 0..max_k {
        ev.advance();
        out.push(ev.rank());
    }
    out
}

pub fn is_k_normal<F: Field>(x: &FiniteScheme<F>, k: u32) -> bool {
    hilbert_function(x, k) == x.degree()
}

/// Least `k >= 0` with `φ_X(k) = d`.
pub fn minimal_normal_degree<F: Field>(x: &FiniteScheme<F>) -> u32 {
    let d = x.degree();
    let mut ev = Evaluator::new(x);
    // φ_X(d-1) = d always, so the loop terminates by then
    loop {
        if ev.rank() == d {
            return ev.degree();
        }
        ev.advance();
    }
}

/// Castelnuovo-Mumford regularity of a finite scheme: `1 + min{k : φ_X(k) = d}`.
pub fn finite_scheme_regularity<F: Field>(x: &FiniteScheme<F>) -> u32 {
    minimal_normal_degree(x) + 1
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// `⌈(d − N − 1)/t⌉ + 1` with `N = dim <X>` and `t` the invariant, clamped below at 1.
pub fn normality_threshold_bound<F: Field>(x: &FiniteScheme<F>, cap: usize) -> Result<u32> {
    let t = invariant_t(x, cap)?;
    Ok(threshold_formula(x.degree(), x.span_dim(), t))
}

/// The threshold formula on raw numbers.
pub fn threshold_formula(d: usize, span: usize, t: usize) -> u32 {
    let excess = d.saturating_sub(span + 1);
    (ceil_div(excess, t.max(1)) + 1).max(1) as u32
}

/// `⌈(d − 1)/N⌉` for general-position schemes (`t = N = dim <X>`).
pub fn general_position_bound<F: Field>(x: &FiniteScheme<F>) -> u32 {
    let n = x.span_dim().max(1);
    ceil_div(x.degree().saturating_sub(1), n) as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor13aVerdict {
    pub span_dim: usize,
    pub degree: usize,
    pub is_dn_normal: bool,
    pub is_dn1_normal: bool,
    pub max_collinear: usize,
    pub has_secant: bool,
    pub equivalence_holds: bool,
}

/// `(d−N)`-normal and not `(d−N−1)`-normal  ⇔  a `(d−N+1)`-secant line exists,
/// evaluated with `N = dim <X>`.
pub fn check_cor13a<F: Field>(x: &FiniteScheme<F>) -> Cor13aVerdict {
    let d = x.degree();
    let n = x.span_dim();
    let k = (d - n) as u32;
    let seq = hilbert_sequence(x, k);
    let is_dn_normal = seq[k as usize] == d;
    let is_dn1_normal = k >= 1 && seq[k as usize - 1] == d;
    let (max_collinear, _) = max_collinear_length(x);
    let has_secant = max_collinear > d - n;
    Cor13aVerdict {
        span_dim: n,
        degree: d,
        is_dn_normal,
        is_dn1_normal,
        max_collinear,
        has_secant,
        equivalence_holds: (is_dn_normal && !is_dn1_normal) == has_secant,
    }
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

    fn origin_parabola(len: usize) -> CurvilinearGerm<Q> {
        // affine (x, y) = (t, t^2) in the chart x0 = 1
        let mut x = vec![q(0); len];
        let mut y = vec![q(0); len];
        x[1] = q(1);
        if len > 2 {
            y[2] = q(1);
        }
        CurvilinearGerm::from_affine_jet(vec![q(1), q(0), q(0)], None, vec![x, y]).unwrap()
    }

    #[test]
    fn form_on_germ_examples() {
        let x1_sq = Form::monomial((), vec![0, 2, 0], q(1));
        assert_eq!(
            evaluate_form_on_germ(&x1_sq, &origin_parabola(3)),
            vec![q(0), q(0), q(1)]
        );

        let pt = CurvilinearGerm::point(vec![q(1), q(2), q(3)]).unwrap();
        let f =
            Form::from_terms((), 3, vec![(q(1), vec![1, 1, 0]), (q(5), vec![0, 0, 2])]).unwrap();
        assert_eq!(evaluate_form_on_germ(&f, &pt), vec![q(2 + 45)]);

        // x - y = t - t^2, truncated mod t^2
        let g = origin_parabola(3).truncate(2);
        let lin = Form::linear((), &[q(0), q(1), q(-1)]);
        assert_eq!(evaluate_form_on_germ(&lin, &g), vec![q(0), q(1)]);
    }

    #[test]
    fn hilbert_examples() {
        let four = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert_eq!(hilbert_function(&four, 0), 1);
        assert_eq!(hilbert_function(&four, 1), 3);
        assert_eq!(hilbert_function(&four, 2), 4);

        let five = pts(&[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0], &[1, 3, 0], &[1, 4, 0]]);
        assert_eq!(hilbert_sequence(&five, 5), vec![1, 2, 3, 4, 5, 5]);
        assert!(is_k_normal(&five, 4));
        assert!(!is_k_normal(&five, 3));
        assert_eq!(finite_scheme_regularity(&five), 5);
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(finite_scheme_regularity(&pts(&[&[1, 2, 3]])), 1);
        let simplex = pts(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(finite_scheme_regularity(&simplex), 2);
        assert!(is_k_normal(&simplex, 1));
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_formula(7, 3, 3), 2);
        assert_eq!(threshold_formula(7, 3, 1), 4);
        assert_eq!(threshold_formula(5, 4, 4), 1);
        let simplex = pts(&[
            &[1, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0],
            &[0, 0, 1, 0, 0],
            &[0, 0, 0, 1, 0],
            &[0, 0, 0, 0, 1],
        ]);
        assert_eq!(normality_threshold_bound(&simplex, 12).unwrap(), 1);
    }

    #[test]
    fn cor13a_examples() {
        let three = pts(&[&[1, 0], &[1, 1], &[1, 2]]);
        let v = check_cor13a(&three);
        assert!(v.is_dn_normal && !v.is_dn1_normal && v.has_secant && v.equivalence_holds);

        let planted = pts(&[
            &[1, 0, 0, 0],
            &[1, 1, 0, 0],
            &[1, 2, 0, 0],
            &[1, 3, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        let v = check_cor13a(&planted);
        assert_eq!(
            (v.is_dn_normal, v.is_dn1_normal, v.has_secant),
            (true, false, true)
        );
        assert!(v.equivalence_holds);

        let general = pts(&[
            &[1, 0, 0, 0],
            &[1, 1, 1, 1],
            &[1, 2, 4, 8],
            &[1, 3, 9, 27],
            &[1, -1, 1, -1],
            &[0, 0, 0, 1],
        ]);
        let v = check_cor13a(&general);
        assert!(!v.has_secant && v.equivalence_holds);
        assert!(is_k_normal(&general, 2));
        assert_eq!(general_position_bound(&general), 2);
    }

    #[test]
    fn four_general_plane_points_have_no_trisecant() {
        let four = pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let v = check_cor13a(&four);
        assert!(v.is_dn_normal && !v.is_dn1_normal);
        assert!(!v.has_secant);
        assert!(!v.equivalence_holds);
    }
}
