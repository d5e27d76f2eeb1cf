//! Homogeneous forms, monomial bases and truncated power series.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;

pub type Exponent = Vec<u32>;

/// Number of monomials of degree `k` in `nvars` variables, `binomial(nvars + k - 1, k)`.
pub fn monomial_count(nvars: usize, k: u32) -> usize {
    if nvars == 0 {
        return usize::from(k == 0);
    }
    binomial(nvars as u64 - 1 + k as u64, k as u64) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All exponent vectors of total degree `k` in `nvars` variables, in
/// graded-lexicographic order with `x0 > x1 > ...` (so `x0^k` comes first).
pub fn monomials(nvars: usize, k: u32) -> Vec<Exponent> {
    fn rec(nvars: usize, k: u32, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == nvars {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(nvars, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(monomial_count(nvars, k));
    if nvars > 0 {
        rec(nvars, k, &mut Vec::with_capacity(nvars), &mut out);
    }
    out
}

/// A homogeneous polynomial with sparse coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Form<F: Field> {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, F>,
    ctx: F::Ctx,
}

impl<F: Field> fmt::Debug for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> Form<F> {
    pub fn zero(ctx: F::Ctx, nvars: usize, degree: u32) -> Self {
        Form {
            nvars,
            degree,
            terms: BTreeMap::new(),
            ctx,
        }
    }

    pub fn constant(ctx: F::Ctx, nvars: usize, c: F) -> Self {
        let mut f = Self::zero(ctx, nvars, 0);
        f.add_term(vec![0; nvars], c);
        f
    }

    pub fn monomial(ctx: F::Ctx, exponent: Exponent, coeff: F) -> Self {
        let degree = exponent.iter().sum();
        let mut f = Self::zero(ctx, exponent.len(), degree);
        f.add_term(exponent, coeff);
        f
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(ctx: F::Ctx, coeffs: &[F]) -> Self {
        let n = coeffs.len();
        let mut f = Self::zero(ctx, n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            f.add_term(e, c.clone());
        }
        f
    }

    /// Builds a form from `(coefficient, exponent)` pairs; all exponents must share one degree.
    pub fn from_terms(
        ctx: F::Ctx,
        nvars: usize,
        terms: impl IntoIterator<Item = (F, Exponent)>,
    ) -> crate::Result<Self> {
        let mut degree = None;
        let mut f = Self::zero(ctx, nvars, 0);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(crate::Error::InvalidInput(format!(
                    "exponent {e:?} has {} entries, expected {nvars}",
                    e.len()
                )));
            }
            let d: u32 = e.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(crate::Error::InvalidInput(format!(
                        "form mixes degrees {d0} and {d}"
                    )))
                }
                _ => {}
            }
            f.add_term(e, c);
        }
        f.degree = degree.unwrap_or(0);
        Ok(f)
    }

    fn add_term(&mut self, e: Exponent, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| F::zero_in(&self.ctx))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.ctx.clone(), self.nvars, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.ctx.clone(), self.nvars, self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let one = Self::constant(self.ctx.clone(), self.nvars, F::one_in(&self.ctx));
        (0..k).fold(one, |acc, _| acc.mul(self))
    }

    /// Value at a point of affine `nvars`-space.
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .fold(F::zero_in(&self.ctx), |acc, (e, c)| {
                let m = e
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |m, (&p, x)| m * x.pow(p));
                acc + m
            })
    }

    /// Substitutes variable `i` by the form `subs[i]` (all `subs` share one variable count).
    pub fn substitute(&self, subs: &[Form<F>]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let target_vars = subs.first().map_or(0, |s| s.nvars);
        let subs_degree = subs.first().map_or(0, |s| s.degree);
        let mut out = Self::zero(self.ctx.clone(), target_vars, self.degree * subs_degree);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.ctx.clone(), target_vars, c.clone());
            for (i, &p) in e.iter().enumerate() {
                if p > 0 {
                    term = term.mul(&subs[i].pow(p));
                }
            }
            out = out.add(&term);
        }
        out.degree = self.degree * subs_degree;
        out
    }

    /// Coefficient vector against a list of monomials; `None` if a term lies outside it.
    pub fn coordinates_in(&self, basis: &[Exponent]) -> Option<Vec<F>> {
        if self.terms.keys().any(|e| !basis.contains(e)) {
            return None;
        }
        Some(basis.iter().map(|e| self.coeff(e)).collect())
    }
}

/// Truncated power series in one variable `t`, stored as coefficient vectors.
pub mod series {
    use crate::field::Field;

    /// Product mod `t^len`.
    pub fn mul<F: Field>(a: &[F], b: &[F], len: usize, ctx: &F::Ctx) -> Vec<F> {
        let mut out = vec![F::zero_in(ctx); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        out
    }

    /// Inverse mod `t^len`; `None` when the constant term vanishes.
    pub fn inv<F: Field>(a: &[F], len: usize, ctx: &F::Ctx) -> Option<Vec<F>> {
        let a0inv = a.first()?.inv()?;
        let mut out = vec![F::zero_in(ctx); len];
        if len == 0 {
            return Some(out);
        }
        out[0] = a0inv.clone();
        for n in 1..len {
            let mut s = F::zero_in(ctx);
            for k in 1..=n.min(a.len() - 1) {
                s = s + a[k].clone() * out[n - k].clone();
            }
            out[n] = -(s * a0inv.clone());
        }
        Some(out)
    }

    /// `a(b(t))` mod `t^len`, where `b` has zero constant term.
    pub fn compose<F: Field>(a: &[F], b: &[F], len: usize, ctx: &F::Ctx) -> Vec<F> {
        debug_assert!(b.first().is_none_or(|c| c.is_zero()));
        let mut out = vec![F::zero_in(ctx); len];
        let mut power = vec![F::zero_in(ctx); len];
        if len > 0 {
            power[0] = F::one_in(ctx);
        }
        for c in a.iter().take(len) {
            for (o, p) in out.iter_mut().zip(&power) {
                *o = o.clone() + c.clone() * p.clone();
            }
            power = mul(&power, b, len, ctx);
        }
        out
    }

    /// Index of the first nonzero coefficient, or `len` if all vanish.
    pub fn order<F: Field>(a: &[F]) -> usize {
        a.iter().position(|c| !c.is_zero()).unwrap_or(a.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64_in(&(), v)
    }

    #[test]
    fn grlex_monomials() {
        assert_eq!(
            monomials(3, 2),
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        for n in 1..6 {
            for k in 0..6 {
                assert_eq!(monomials(n, k).len(), monomial_count(n, k));
            }
        }
        assert_eq!(monomials(4, 0), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn form_arithmetic() {
        let x = Form::linear((), &[q(1), q(0)]);
        let y = Form::linear((), &[q(0), q(1)]);
        let s = x.add(&y);
        let sq = s.pow(2);
        assert_eq!(sq.coeff(&[1, 1]), q(2));
        assert_eq!(sq.degree(), 2);
        assert_eq!(sq.eval(&[q(2), q(3)]), q(25));
        let d = x.add(&y.scale(&q(-1)));
        assert!(s.mul(&d).coeff(&[1, 1]).is_zero());
    }

    #[test]
    fn substitution_composes() {
        // f(a, b) = a * b with a = x0 + x1, b = x0 - x1  ->  x0^2 - x1^2
        let f = Form::monomial((), vec![1, 1], q(1));
        let a = Form::linear((), &[q(1), q(1)]);
        let b = Form::linear((), &[q(1), q(-1)]);
        let g = f.substitute(&[a, b]);
        assert_eq!(g.coeff(&[2, 0]), q(1));
        assert_eq!(g.coeff(&[0, 2]), q(-1));
        assert!(g.coeff(&[1, 1]).is_zero());
    }

    #[test]
    fn series_inverse_and_compose() {
        let a = vec![q(1), q(1), q(0), q(0)];
        let ai = series::inv(&a, 4, &()).unwrap();
        assert_eq!(ai, vec![q(1), q(-1), q(1), q(-1)]);
        assert_eq!(series::mul(&a, &ai, 4, &()), vec![q(1), q(0), q(0), q(0)]);
        // (1 + t) with t -> 2t + t^2  =  1 + 2t + t^2
        let b = vec![q(0), q(2), q(1), q(0)];
        assert_eq!(
            series::compose(&a, &b, 4, &()),
            vec![q(1), q(2), q(1), q(0)]
        );
        assert_eq!(series::order(&b), 1);
    }
}
