use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GeneratorSpec, LengthDist};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::projection::{classify_fiber, FiberCase, RationalCurve};
use crate::scheme::{invariant_t, max_collinear_length, CurvilinearGerm, FiniteScheme};
use crate::separation::{SeparatorCase, SeparatorConfig};
use crate::{Rational, DEFAULT_ENUMERATION_CAP};

/// A generated value with the number of discarded draws that preceded it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated<T> {
    pub value: T,
    pub redraws: usize,
}

fn retry<T>(max_redraws: usize, mut draw: impl FnMut() -> Option<T>) -> Result<Generated<T>> {
    for redraws in 0..=max_redraws {
        if let Some(value) = draw() {
            return Ok(Generated { value, redraws });
        }
    }
    Err(Error::RedrawsExhausted(max_redraws))
}

fn int(rng: &mut impl Rng, b: i64) -> i64 {
    rng.gen_range(-b..=b)
}

fn nonzero(rng: &mut impl Rng, b: i64) -> i64 {
    loop {
        let v = int(rng, b);
        if v != 0 {
            return v;
        }
    }
}

fn elt<F: Field>(ctx: &F::Ctx, v: i64) -> F {
    F::from_i64_in(ctx, v)
}

fn vector<F: Field>(ctx: &F::Ctx, rng: &mut impl Rng, len: usize, b: i64) -> Vec<F> {
    (0..len).map(|_| elt(ctx, int(rng, b))).collect()
}

fn nonzero_vector<F: Field>(ctx: &F::Ctx, rng: &mut impl Rng, len: usize, b: i64) -> Vec<F> {
    loop {
        let v: Vec<F> = vector(ctx, rng, len, b);
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

fn partition(rng: &mut impl Rng, total: usize, dist: &LengthDist) -> Vec<usize> {
    match dist {
        LengthDist::Fixed(v) => v.clone(),
        LengthDist::Reduced => vec![1; total],
        LengthDist::Mixed { max_len } => {
            let mut out = Vec::new();
            let mut rem = total;
            while rem > 0 {
                let top = (*max_len).min(rem);
                let l = if top < 2 || rng.gen_bool(0.5) {
                    1
                } else {
                    rng.gen_range(2..=top)
                };
                out.push(l);
                rem -= l;
            }
            out
        }
    }
}

/// `[p, v, 0, ..., 0]`: a straight germ of length `len` at `p` in direction `v`.
fn straight<F: Field>(ctx: &F::Ctx, p: Vec<F>, v: &[F], len: usize) -> Vec<Vec<F>> {
    let mut coeffs = vec![p];
    if len > 1 {
        coeffs.push(v.to_vec());
    }
    while coeffs.len() < len {
        coeffs.push(vec![F::zero_in(ctx); v.len()]);
    }
    coeffs
}

fn random_germ<F: Field>(
    ctx: &F::Ctx,
    rng: &mut impl Rng,
    ambient: usize,
    len: usize,
    b: i64,
) -> Option<CurvilinearGerm<F>> {
    let mut coeffs = vec![nonzero_vector(ctx, rng, ambient + 1, b)];
    for _ in 1..len {
        coeffs.push(vector(ctx, rng, ambient + 1, b));
    }
    CurvilinearGerm::from_homogeneous(&coeffs).ok()
}

fn draw_scheme<F: Field>(
    ctx: &F::Ctx,
    spec: &GeneratorSpec,
    rng: &mut impl Rng,
) -> Option<FiniteScheme<F>> {
    let n = spec.ambient;
    let b = spec.coord_box;
    let mut germs = Vec::new();
    let rest = match spec.collinear {
        None => partition(rng, spec.degree, &spec.lengths),
        Some(s) => {
            let (on_line, rest) = match &spec.lengths {
                LengthDist::Fixed(v) => {
                    let mut acc = 0;
                    let k = v.iter().position(|l| {
                        acc += l;
                        acc == s
                    })?;
                    (v[..=k].to_vec(), v[k + 1..].to_vec())
                }
                dist => {
                    let mut line = partition(rng, s, dist);
                    if spec.tangent_on_line && line.iter().all(|&l| l == 1) {
                        line = std::iter::once(2)
                            .chain(partition(rng, s - 2, dist))
                            .collect();
                    }
                    (line, partition(rng, spec.degree - s, dist))
                }
            };
            let p: Vec<F> = nonzero_vector(ctx, rng, n + 1, b);
            let q: Vec<F> = nonzero_vector(ctx, rng, n + 1, b);
            if Matrix::from_rows(ctx.clone(), n + 1, vec![p.clone(), q.clone()])
                .ok()?
                .rank()
                < 2
            {
                return None;
            }
            let mut us: Vec<i64> = (-b..=b).collect();
            us.shuffle(rng);
            for (l, u) in on_line.iter().zip(us) {
                let u = elt::<F>(ctx, u);
                let pt: Vec<F> = p
                    .iter()
                    .zip(&q)
                    .map(|(x, y)| x.clone() + u.clone() * y.clone())
                    .collect();
                germs.push(CurvilinearGerm::from_homogeneous(&straight(ctx, pt, &q, *l)).ok()?);
            }
            rest
        }
    };
    for l in rest {
        germs.push(random_germ(ctx, rng, n, l, b)?);
    }
    let x = FiniteScheme::new(n, germs).ok()?;
    if let Some(s) = spec.collinear {
        if max_collinear_length(&x).0 != s {
            return None;
        }
    }
    if spec.general_position
        && (x.span_dim() != n || invariant_t(&x, DEFAULT_ENUMERATION_CAP).ok()? != n)
    {
        return None;
    }
    Some(x)
}

/// Draws a scheme from `spec` using `rng`; the planted features are verified
/// after the draw and failing draws are redrawn.
pub fn sample_scheme<F: Field>(
    ctx: &F::Ctx,
    spec: &GeneratorSpec,
    rng: &mut impl Rng,
) -> Result<Generated<FiniteScheme<F>>> {
    spec.validate()?;
    retry(spec.max_redraws, || draw_scheme(ctx, spec, rng))
}

/// Draws a scheme from `spec` with the stream seeded by `spec.seed`.
pub fn gen_scheme<F: Field>(
    ctx: &F::Ctx,
    spec: &GeneratorSpec,
) -> Result<Generated<FiniteScheme<F>>> {
    sample_scheme(ctx, spec, &mut ChaCha8Rng::seed_from_u64(spec.seed))
}

/// The fiber types with a predicted normality degree, with the variety dimension.
pub const FIBER_TYPES: [(usize, FiberCase); 10] = [
    (5, FiberCase::FiveCollinear),
    (5, FiberCase::FourOfFiveCollinear),
    (5, FiberCase::FiveGeneral),
    (5, FiberCase::DoublePointLine),
    (5, FiberCase::DoublePointPlane),
    (6, FiberCase::Len5Line),
    (6, FiberCase::Len5Plane),
    (6, FiberCase::Len6Line),
    (6, FiberCase::Len6FiveSecant),
    (6, FiberCase::Len6Support5),
];

/// Plane fiber builder in coordinates `(U, T1, T2)`: aligned germs sit on the
/// line `a T2 = b T1` through `(1, 0, 0)`, everything has `U != 0`.
struct FiberDraw<'a, F: Field, R: Rng> {
    ctx: &'a F::Ctx,
    rng: &'a mut R,
    b: i64,
    a_b: (i64, i64),
    used_u: Vec<i64>,
    germs: Vec<CurvilinearGerm<F>>,
}

impl<'a, F: Field, R: Rng> FiberDraw<'a, F, R> {
    fn new(ctx: &'a F::Ctx, rng: &'a mut R, b: i64) -> Self {
        let a_b = (nonzero(rng, b), nonzero(rng, b));
        FiberDraw {
            ctx,
            rng,
            b,
            a_b,
            used_u: Vec::new(),
            germs: Vec::new(),
        }
    }

    fn v(&self, c: [i64; 3]) -> Vec<F> {
        c.iter().map(|&x| elt(self.ctx, x)).collect()
    }

    fn fresh_u(&mut self) -> i64 {
        loop {
            let u = nonzero(self.rng, self.b);
            if !self.used_u.contains(&u) {
                self.used_u.push(u);
                return u;
            }
        }
    }

    /// A germ of length `len` on the line, tangent to it.
    fn aligned(&mut self, len: usize) -> Option<()> {
        let u = self.fresh_u();
        let (a, b) = self.a_b;
        let coeffs = straight(self.ctx, self.v([u, a, b]), &self.v([1, 0, 0]), len);
        self.germs
            .push(CurvilinearGerm::from_homogeneous(&coeffs).ok()?);
        Some(())
    }

    /// A germ of length `len` at a random point with `U != 0`, random jet.
    fn free(&mut self, len: usize) -> Option<()> {
        let p = [
            nonzero(self.rng, self.b),
            int(self.rng, self.b),
            int(self.rng, self.b),
        ];
        let mut coeffs = vec![self.v(p)];
        for _ in 1..len {
            coeffs.push(vector(self.ctx, self.rng, 3, self.b));
        }
        self.germs
            .push(CurvilinearGerm::from_homogeneous(&coeffs).ok()?);
        Some(())
    }

    fn build(self) -> Option<FiniteScheme<F>> {
        FiniteScheme::new(2, self.germs).ok()
    }
}

fn draw_fiber<F: Field>(
    ctx: &F::Ctx,
    case: FiberCase,
    rng: &mut impl Rng,
    b: i64,
) -> Option<FiniteScheme<F>> {
    use FiberCase::*;
    let variant = rng.gen_range(0..6u32);
    let mut f = FiberDraw::<F, _>::new(ctx, rng, b);
    let (aligned, free): (&[usize], &[usize]) = match (case, variant % 2) {
        (FiveCollinear, _) => (&[1, 1, 1, 1, 1], &[]),
        (FourOfFiveCollinear, _) => (&[1, 1, 1, 1], &[1]),
        (FiveGeneral, _) => (&[], &[1, 1, 1, 1, 1]),
        (DoublePointLine, _) => (&[2, 1, 1, 1], &[]),
        (DoublePointPlane, 0) => (&[2, 1, 1], &[1]),
        (DoublePointPlane, _) => (&[], &[2, 1, 1, 1]),
        (Len5Line, _) => match variant % 4 {
            0 => (&[1, 1, 1, 1, 1], &[]),
            1 => (&[2, 1, 1, 1], &[]),
            2 => (&[2, 2, 1], &[]),
            _ => (&[3, 1, 1], &[]),
        },
        (Len5Plane, _) => match variant {
            0 => (&[1, 1, 1, 1], &[1]),
            1 => (&[], &[1, 1, 1, 1, 1]),
            2 => (&[2, 1, 1], &[1]),
            3 => (&[], &[2, 1, 1, 1]),
            4 => (&[], &[2, 2, 1]),
            _ => (&[], &[3, 1, 1]),
        },
        (Len6Line, 0) => (&[1, 1, 1, 1, 1, 1], &[]),
        (Len6Line, _) => (&[2, 1, 1, 1, 1], &[]),
        (Len6FiveSecant, _) => (&[2, 1, 1, 1], &[1]),
        (Len6Support5, _) => match variant % 3 {
            0 => (&[], &[2, 1, 1, 1, 1]),
            1 => (&[1, 1, 1, 1], &[2]),
            _ => (&[2, 1, 1], &[1, 1]),
        },
        (SixReduced | Impossible | Unenumerated, _) => return None,
    };
    for &l in aligned {
        f.aligned(l)?;
    }
    for &l in free {
        f.free(l)?;
    }
    f.build()
}

/// Whether a long collinear subscheme, if any, lies on a line through
/// `(1, 0, 0)` on which `T1` does not vanish.
fn in_normal_position<F: Field>(x: &FiniteScheme<F>) -> bool {
    let ctx = x.ctx();
    let e = |i: usize| -> Vec<F> {
        (0..3)
            .map(|j| {
                if i == j {
                    F::one_in(&ctx)
                } else {
                    F::zero_in(&ctx)
                }
            })
            .collect()
    };
    match max_collinear_length(x) {
        (m, _) if m < 4 => true,
        (_, Some(line)) => line.contains(&e(0)) && !line.contains(&e(2)),
        _ => false,
    }
}

/// Draws a plane fiber of the given type for an `n`-fold, in normal position.
pub fn gen_fiber<F: Field>(
    ctx: &F::Ctx,
    n: usize,
    case: FiberCase,
    rng: &mut impl Rng,
    b: i64,
    max_redraws: usize,
) -> Result<Generated<FiniteScheme<F>>> {
    if !FIBER_TYPES.contains(&(n, case)) {
        return Err(Error::InvalidInput(format!(
            "no generator for {} with n = {n}",
            case.label()
        )));
    }
    retry(max_redraws, || {
        let x = draw_fiber(ctx, case, rng, b)?;
        let p = classify_fiber(&x, n).ok()?;
        (p.case == case && in_normal_position(&x)).then_some(x)
    })
}

/// Draws an admissible separator configuration.
pub fn gen_separator_config<F: Field>(
    ctx: &F::Ctx,
    n: usize,
    case: SeparatorCase,
    rng: &mut impl Rng,
    b: i64,
    max_redraws: usize,
) -> Result<Generated<SeparatorConfig<F>>> {
    if n < 3 || case.aligned_count(n) > 2 * b as usize {
        return Err(Error::InvalidInput(format!(
            "cannot draw {n} aligned points in the box"
        )));
    }
    retry(max_redraws, || {
        let mut us: Vec<i64> = (-b..=b).filter(|&u| u != 0).collect();
        us.shuffle(rng);
        let cfg = SeparatorConfig {
            n,
            case,
            aligned_u: us[..case.aligned_count(n)]
                .iter()
                .map(|&u| elt(ctx, u))
                .collect(),
            a: elt(ctx, nonzero(rng, b)),
            b: elt(ctx, nonzero(rng, b)),
            off_line: (0..case.off_line_count())
                .map(|_| {
                    let mut p = vector::<F>(ctx, rng, 3, b);
                    p[0] = elt(ctx, nonzero(rng, b));
                    p
                })
                .collect(),
        };
        cfg.is_admissible().then_some(cfg)
    })
}

/// A nondegenerate rational curve of degree `d` in `P^n` with coefficients in the box.
pub fn random_curve(
    rng: &mut impl Rng,
    n: usize,
    d: usize,
    b: i64,
    max_redraws: usize,
) -> Result<Generated<RationalCurve>> {
    if d < n {
        return Err(Error::InvalidInput(format!(
            "a degree-{d} curve cannot span P^{n}"
        )));
    }
    retry(max_redraws, || {
        let forms = (0..=n)
            .map(|_| vector::<Rational>(&(), rng, d + 1, b))
            .collect();
        let c = RationalCurve::new(forms).ok()?;
        (c.degree() == d && c.is_nondegenerate()).then_some(c)
    })
}
