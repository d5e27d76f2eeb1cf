//! Rational curves `P^1 -> P^N` over Q and their fibers under linear projection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{rational_to_string, Rational};
use crate::matrix::Matrix;
use crate::poly::binomial;
use crate::scheme::{CurvilinearGerm, FiniteScheme, LinearSubspace};

/// Univariate polynomials over Q, coefficients lowest degree first, no trailing zeros.
mod upoly {
    use super::*;

    pub type Poly = Vec<Rational>;

    pub fn trim(mut p: Poly) -> Poly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &Poly) -> Option<usize> {
        p.len().checked_sub(1)
    }

    pub fn sub(a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let z = Rational::zero();
        trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn derivative(p: &Poly) -> Poly {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
        let db = degree(b).expect("division by zero polynomial");
        let lead = b[db].clone();
        let mut r = a.clone();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let mut q = vec![Rational::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] / &lead;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[i + j] = &r[i + j] - &c * bj;
                }
            }
            q[i] = c;
        }
        (trim(q), trim(r))
    }

    pub fn monic(p: Poly) -> Poly {
        match p.last().cloned() {
            Some(l) => p.into_iter().map(|c| c / &l).collect(),
            None => p,
        }
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b);
            a = b;
            b = monic(r);
        }
        monic(a)
    }

    pub fn exact_div(a: &Poly, b: &Poly) -> Poly {
        let (q, r) = divrem(a, b);
        debug_assert!(r.is_empty(), "inexact polynomial division");
        q
    }

    /// Square-free factors `(g_i, i)` with `p = c * prod g_i^i` (Yun).
    pub fn square_free(p: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if degree(p).is_none_or(|d| d == 0) {
            return out;
        }
        let dp = derivative(p);
        let c = gcd(p, &dp);
        let mut w = exact_div(p, &c);
        let mut y = exact_div(&dp, &c);
        let mut z = sub(&y, &derivative(&w));
        let mut i = 1;
        while degree(&w).is_some_and(|d| d > 0) {
            let g = gcd(&w, &z);
            if degree(&g).is_some_and(|d| d > 0) {
                out.push((g.clone(), i));
            }
            w = exact_div(&w, &g);
            y = exact_div(&z, &g);
            z = sub(&y, &derivative(&w));
            i += 1;
        }
        out
    }

    pub fn eval(p: &Poly, x: &Rational) -> Rational {
        p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
        let n = n.abs().to_u128()?;
        let mut divs = vec![1u128];
        for (p, e) in num_prime::nt_funcs::factorize128(n) {
            let mut next = Vec::with_capacity(divs.len() * (e + 1));
            for d in &divs {
                let mut m = *d;
                for _ in 0..=e {
                    next.push(m);
                    m *= p;
                }
            }
            divs = next;
        }
        Some(divs.into_iter().map(BigInt::from).collect())
    }

    /// Rational roots of a square-free polynomial; `None` if its integer
    /// coefficients are too large to factor.
    pub fn rational_roots(p: &Poly) -> Option<Vec<Rational>> {
        let mut roots = Vec::new();
        let mut p = p.clone();
        if p.first().is_some_and(|c| c.is_zero()) {
            roots.push(Rational::zero());
            p.remove(0);
        }
        let den = crate::field::common_denominator(p.iter());
        let ints: Vec<BigInt> = p.iter().map(|c| (c * &den).to_integer()).collect();
        let target = ints.len().saturating_sub(1);
        if target == 0 {
            return Some(roots);
        }
        let (num, den) = (divisors(&ints[0])?, divisors(&ints[target])?);
        let mut found = 0;
        'outer: for q in &den {
            for pn in num.iter().filter(|pn| pn.gcd(q).is_one()) {
                for r in [
                    Rational::new(pn.clone(), q.clone()),
                    Rational::new(-pn, q.clone()),
                ] {
                    if eval(&p, &r).is_zero() {
                        roots.push(r);
                        found += 1;
                        if found == target {
                            break 'outer;
                        }
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

/// A binary form `Σ c_i s^{d−i} t^i` over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "binary form needs at least one coefficient".into(),
            ));
        }
        Ok(BinaryForm {
            degree: coeffs.len() - 1,
            coeffs,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Multiplicity of the root `s = 0`.
    fn s_multiplicity(&self) -> usize {
        match self.dehomogenized().len() {
            0 => self.degree,
            l => self.degree + 1 - l,
        }
    }

    fn dehomogenized(&self) -> upoly::Poly {
        upoly::trim(self.coeffs.clone())
    }

    fn scaled_sub(&self, a: &Rational, other: &Self, b: &Rational) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| a * x - b * y)
                .collect(),
        }
    }
}

/// Greatest common divisor of nonzero binary forms, as `(gcd in t, power of s)`.
fn binary_gcd(forms: &[BinaryForm]) -> Option<(upoly::Poly, usize)> {
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    let first = nonzero.first()?;
    let g = nonzero
        .iter()
        .skip(1)
        .fold(upoly::monic(first.dehomogenized()), |g, f| {
            upoly::gcd(&g, &f.dehomogenized())
        });
    let s = nonzero
        .iter()
        .map(|f| f.s_multiplicity())
        .min()
        .unwrap_or(0);
    Some((g, s))
}

/// A point of `P^1`: `(1 : τ)` or `(0 : 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootParam {
    Finite(Rational),
    Infinity,
}

impl Serialize for RootParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RootParam::Finite(r) => s.serialize_str(&rational_to_string(r)),
            RootParam::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Roots not defined over Q, reported by the degree of their square-free factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootCluster {
    pub degree: usize,
    pub multiplicity: usize,
}

/// A parameterization `P^1 -> P^N` by `N+1` binary forms of degree `d` without common factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurve {
    ambient: usize,
    degree: usize,
    forms: Vec<Vec<Rational>>,
}

impl RationalCurve {
    pub fn new(forms: Vec<Vec<Rational>>) -> Result<Self> {
        if forms.len() < 2 {
            return Err(Error::InvalidInput(
                "a curve needs at least two coordinates".into(),
            ));
        }
        let len = forms[0].len();
        if len < 2 || forms.iter().any(|f| f.len() != len) {
            return Err(Error::InvalidInput(
                "coordinate forms must share a degree of at least 1".into(),
            ));
        }
        let curve = RationalCurve {
            ambient: forms.len() - 1,
            degree: len - 1,
            forms,
        };
        match binary_gcd(&curve.binary_forms()) {
            None => Err(Error::InvalidInput("all coordinate forms vanish".into())),
            Some((g, s)) if upoly::degree(&g).unwrap_or(0) > 0 || s > 0 => Err(
                Error::InvalidInput("coordinate forms share a common factor".into()),
            ),
            _ => Ok(curve),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn forms(&self) -> &[Vec<Rational>] {
        &self.forms
    }

    fn binary_forms(&self) -> Vec<BinaryForm> {
        self.forms
            .iter()
            .map(|c| BinaryForm::new(c.clone()).expect("nonempty"))
            .collect()
    }

    /// Whether the image spans `P^N`.
    pub fn is_nondegenerate(&self) -> bool {
        Matrix::from_rows((), self.degree + 1, self.forms.clone())
            .expect("rectangular")
            .rank()
            == self.ambient + 1
    }

    /// `Σ_j f_j x_j(s, t)` for a linear form `f`.
    pub fn compose(&self, f: &[Rational]) -> BinaryForm {
        let coeffs = (0..=self.degree)
            .map(|i| {
                f.iter()
                    .zip(&self.forms)
                    .fold(Rational::zero(), |acc, (a, x)| acc + a * &x[i])
            })
            .collect();
        BinaryForm::new(coeffs).expect("nonempty")
    }

    pub fn point(&self, param: &RootParam) -> Vec<Rational> {
        self.arc(param, 1).remove(0)
    }

    /// Homogeneous coefficients `[k][j]` of `x_j` at `param` in a local parameter, mod `ε^len`.
    pub fn arc(&self, param: &RootParam, len: usize) -> Vec<Vec<Rational>> {
        let d = self.degree;
        (0..len)
            .map(|k| {
                self.forms
                    .iter()
                    .map(|c| match param {
                        // x(1, τ + ε): Taylor coefficient of ε^k
                        RootParam::Finite(tau) => (k..=d).fold(Rational::zero(), |acc, i| {
                            let b =
                                Rational::from_integer(BigInt::from(binomial(i as u64, k as u64)));
                            acc + &c[i] * b * tau.pow((i - k) as i32)
                        }),
                        // x(ε, 1)
                        RootParam::Infinity => {
                            if k <= d {
                                c[d - k].clone()
                            } else {
                                Rational::zero()
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The curvilinear germ of length `len` of the curve at `param`.
    pub fn germ_at(&self, param: &RootParam, len: usize) -> Result<CurvilinearGerm<Rational>> {
        CurvilinearGerm::from_homogeneous(&self.arc(param, len))
    }
}

/// The fiber of a projected curve over one image point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFiber {
    /// rational parameter values with their multiplicities
    pub rational: Vec<(RootParam, usize)>,
    /// roots over extensions of Q
    pub clusters: Vec<RootCluster>,
    /// germs at the rational parameters; `None` when there are none
    pub scheme: Option<FiniteScheme<Rational>>,
    pub total_length: usize,
}

impl CurveFiber {
    pub fn lengths(&self) -> Vec<usize> {
        self.rational.iter().map(|(_, m)| *m).collect()
    }
}

fn split_roots(g: &upoly::Poly, s_mult: usize) -> (Vec<(RootParam, usize)>, Vec<RootCluster>) {
    let mut rational = Vec::new();
    let mut clusters = Vec::new();
    for (factor, mult) in upoly::square_free(g) {
        let deg = upoly::degree(&factor).unwrap_or(0);
        match upoly::rational_roots(&factor) {
            Some(roots) => {
                let found = roots.len();
                rational.extend(roots.into_iter().map(|r| (RootParam::Finite(r), mult)));
                if found < deg {
                    clusters.push(RootCluster {
                        degree: deg - found,
                        multiplicity: mult,
                    });
                }
            }
            None => clusters.push(RootCluster {
                degree: deg,
                multiplicity: mult,
            }),
        }
    }
    if s_mult > 0 {
        rational.push((RootParam::Infinity, s_mult));
    }
    rational.sort();
    (rational, clusters)
}

/// The fiber over `y in P^{c−1}` of the projection of `curve` from the center
/// cut out by `c >= 2` forms: the common roots of the minors `y_i g_j − y_j g_i`,
/// `g_i` the cutting forms composed with the parameterization.
pub fn curve_fiber_scheme(
    curve: &RationalCurve,
    center: &LinearSubspace<Rational>,
    y: &[Rational],
) -> Result<CurveFiber> {
    let c = center.forms().len();
    if center.ambient() != curve.ambient() || c < 2 || y.len() != c {
        return Err(Error::InvalidInput(
            "center must be cut out by at least two forms matching the image point".into(),
        ));
    }
    if y.iter().all(|v| v.is_zero()) {
        return Err(Error::InvalidInput("image point is zero".into()));
    }
    let g: Vec<BinaryForm> = center.forms().iter().map(|f| curve.compose(f)).collect();
    if let Some((h, s)) = binary_gcd(&g) {
        if upoly::degree(&h).unwrap_or(0) > 0 || s > 0 {
            return Err(Error::CenterMeetsCurve);
        }
    } else {
        return Err(Error::CenterMeetsCurve);
    }
    let mut minors = Vec::new();
    for i in 0..c {
        for j in i + 1..c {
            minors.push(g[j].scaled_sub(&y[i], &g[i], &y[j]));
        }
    }
    let Some((h, s_mult)) = binary_gcd(&minors) else {
        return Err(Error::InvalidInput(
            "projection is constant on the curve".into(),
        ));
    };
    let (rational, clusters) = split_roots(&h, s_mult);
    let total_length = rational.iter().map(|(_, m)| m).sum::<usize>()
        + clusters
            .iter()
            .map(|c| c.degree * c.multiplicity)
            .sum::<usize>();
    let scheme = if rational.is_empty() {
        None
    } else {
        let germs = rational
            .iter()
            .map(|(p, m)| curve.germ_at(p, *m))
            .collect::<Result<Vec<_>>>()?;
        Some(FiniteScheme::new(curve.ambient(), germs)?)
    };
    Ok(CurveFiber {
        rational,
        clusters,
        scheme,
        total_length,
    })
}

/// Length of `C ∩ L` pulled back to `P^1`: the degree of the gcd of the
/// cutting forms of `L` composed with the parameterization.
pub fn curve_linear_section_length(
    curve: &RationalCurve,
    l: &LinearSubspace<Rational>,
) -> Result<usize> {
    if l.ambient() != curve.ambient() {
        return Err(Error::InvalidInput(
            "subspace and curve live in different spaces".into(),
        ));
    }
    let g: Vec<BinaryForm> = l.forms().iter().map(|f| curve.compose(f)).collect();
    match binary_gcd(&g) {
        None => Err(Error::CurveInSubspace),
        Some((h, s)) => Ok(upoly::degree(&h).unwrap_or(0) + s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn q(v: i64) -> Rational {
        Rational::from_i64_in(&(), v)
    }

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn twisted_cubic() -> RationalCurve {
        RationalCurve::new(vec![
            qv(&[1, 0, 0, 0]),
            qv(&[0, 1, 0, 0]),
            qv(&[0, 0, 1, 0]),
            qv(&[0, 0, 0, 1]),
        ])
        .unwrap()
    }

    #[test]
    fn polynomial_helpers() {
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        let p = qv(&[2, -3, 0, 1]);
        assert_eq!(
            upoly::square_free(&p),
            vec![(qv(&[2, 1]), 1), (qv(&[-1, 1]), 2)]
        );
        assert_eq!(upoly::rational_roots(&qv(&[-2, 0, 1])), Some(vec![]));
        assert_eq!(
            upoly::rational_roots(&qv(&[3, -5, 2])),
            Some(vec![q(1), Rational::new(3.into(), 2.into())])
        );
        assert_eq!(
            upoly::rational_roots(&qv(&[0, -1, 1])),
            Some(vec![q(0), q(1)])
        );
    }

    #[test]
    fn curve_validation() {
        assert!(RationalCurve::new(vec![qv(&[1, 1]), qv(&[1, 1])]).is_err());
        // common factor s
        assert!(RationalCurve::new(vec![qv(&[1, 0]), qv(&[2, 0])]).is_err());
        assert!(twisted_cubic().is_nondegenerate());
    }

    #[test]
    fn twisted_cubic_fibers() {
        let c = twisted_cubic();
        let center =
            LinearSubspace::from_forms((), 3, vec![qv(&[1, 0, 0, 1]), qv(&[0, 1, 0, 0])]).unwrap();
        // g1 = s^3 + t^3, g2 = s^2 t: no common root
        let fiber = curve_fiber_scheme(&c, &center, &qv(&[1, 0])).unwrap();
        // y = (1:0): g2 = s^2 t = 0 gives t = 0 (mult 1) and s = 0 (mult 2)
        assert_eq!(fiber.total_length, 3);
        assert_eq!(
            fiber.rational,
            vec![(RootParam::Finite(q(0)), 1), (RootParam::Infinity, 2)]
        );
        assert_eq!(fiber.scheme.as_ref().unwrap().degree(), 3);

        let generic = curve_fiber_scheme(&c, &center, &qv(&[3, 1])).unwrap();
        assert_eq!(generic.total_length, 3);

        let meets =
            LinearSubspace::from_forms((), 3, vec![qv(&[1, 0, 0, 0]), qv(&[0, 1, 0, 0])]).unwrap();
        assert_eq!(
            curve_fiber_scheme(&c, &meets, &qv(&[1, 1])),
            Err(Error::CenterMeetsCurve)
        );
    }

    #[test]
    fn conic_fibers_have_length_two() {
        let conic =
            RationalCurve::new(vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])]).unwrap();
        let center = LinearSubspace::spanned_by((), 2, &[qv(&[0, 1, 0])]).unwrap();
        for y in [[1, 0], [1, 1], [2, -3], [0, 1]] {
            let f = curve_fiber_scheme(&conic, &center, &qv(&y)).unwrap();
            assert_eq!(f.total_length, 2);
        }
    }

    #[test]
    fn section_lengths() {
        let c = twisted_cubic();
        let plane = LinearSubspace::from_forms((), 3, vec![qv(&[1, 2, -1, 3])]).unwrap();
        assert_eq!(curve_linear_section_length(&c, &plane).unwrap(), 3);
        let line =
            LinearSubspace::from_forms((), 3, vec![qv(&[1, 0, 0, 1]), qv(&[0, 1, 0, 0])]).unwrap();
        assert_eq!(curve_linear_section_length(&c, &line).unwrap(), 0);
        // chord through the parameters 1 and 2
        let p1 = c.point(&RootParam::Finite(q(1)));
        let p2 = c.point(&RootParam::Finite(q(2)));
        let chord = LinearSubspace::spanned_by((), 3, &[p1, p2]).unwrap();
        assert_eq!(curve_linear_section_length(&c, &chord).unwrap(), 2);
        let everything = LinearSubspace::<Rational>::from_forms((), 3, vec![]).unwrap();
        assert_eq!(
            curve_linear_section_length(&c, &everything),
            Err(Error::CurveInSubspace)
        );
    }

    #[test]
    fn tangent_fiber_is_a_double_germ() {
        let c = twisted_cubic();
        // second cutting form contains the tangent line at τ = 1: points (1,1,1,1), tangent (0,1,2,3)
        let f2 = qv(&[1, -2, 1, 0]);
        let center = LinearSubspace::from_forms((), 3, vec![qv(&[1, 0, 0, 1]), f2]).unwrap();
        let fiber = curve_fiber_scheme(&c, &center, &qv(&[1, 0])).unwrap();
        assert!(fiber.rational.contains(&(RootParam::Finite(q(1)), 2)));
        assert_eq!(fiber.total_length, 3);
    }
}
