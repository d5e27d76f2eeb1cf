//! Linear projections of finite schemes and rational curves.

mod curve;
mod fiber;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scheme::{dot, FiniteScheme, LinearSubspace, ProjPoint, SubschemeSelector};

pub use curve::{
    curve_fiber_scheme, curve_linear_section_length, BinaryForm, CurveFiber, RationalCurve,
    RootCluster, RootParam,
};
pub use fiber::{classify_fiber, paper_recipe, FiberCase, FiberProfile};

/// One fiber of a projection: the image point and the germs lying over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber<F: Field> {
    pub image: ProjPoint<F>,
    pub selector: SubschemeSelector,
}

impl<F: Field> Fiber<F> {
    pub fn length(&self) -> usize {
        self.selector.total()
    }
}

/// Projects `x` from the center cut out by `center`'s forms onto `P^{c-1}`,
/// `c` the number of cutting forms. Fibers come in order of their first germ.
pub fn project_scheme<F: Field>(
    x: &FiniteScheme<F>,
    center: &LinearSubspace<F>,
) -> Result<Vec<Fiber<F>>> {
    if center.ambient() != x.ambient() {
        return Err(Error::InvalidInput(
            "center and scheme live in different spaces".into(),
        ));
    }
    if center.forms().is_empty() {
        return Err(Error::InvalidInput("the center is the whole space".into()));
    }
    let mut fibers: Vec<Fiber<F>> = Vec::new();
    for (i, g) in x.germs().iter().enumerate() {
        let p = g.support().coords();
        let image: Vec<F> = center.forms().iter().map(|f| dot(f, p)).collect();
        if image.iter().all(|v| v.is_zero()) {
            return Err(Error::CenterMeetsScheme(i));
        }
        let image = ProjPoint::new(image)?;
        match fibers.iter_mut().find(|f| f.image == image) {
            Some(f) => f.selector.lengths[i] = g.len(),
            None => {
                let mut lengths = vec![0; x.germs().len()];
                lengths[i] = g.len();
                fibers.push(Fiber {
                    image,
                    selector: SubschemeSelector { lengths },
                });
            }
        }
    }
    Ok(fibers)
}

/// `k ↦ #{fibers of length >= k}` for `k = 1..=max length`.
pub fn yk_counts(lengths: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
    let lengths: Vec<usize> = lengths.into_iter().collect();
    let top = lengths.iter().copied().max().unwrap_or(0);
    (1..=top)
        .map(|k| (k, lengths.iter().filter(|&&l| l >= k).count()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatherCheck {
    pub sum: usize,
    pub bound: usize,
    pub holds: bool,
}

/// `Σ (δ_x + γ_x)` over curvilinear germs of lengths `lengths`, where
/// `δ_x = len` and `γ_x = len - 1`, against `n + 1`.
pub fn mather_inequality(lengths: &[usize], n: usize) -> MatherCheck {
    let sum = lengths.iter().map(|&l| 2 * l - 1).sum();
    MatherCheck {
        sum,
        bound: n + 1,
        holds: sum <= n + 1,
    }
}

/// Codimension `t(N − k − n + t)` of the Schubert cycle of `k`-planes meeting
/// an `n`-dimensional variety's `t`-secant locus in the expected way.
pub fn schubert_codim(t: i64, big_n: i64, k: i64, n: i64) -> i64 {
    t * (big_n - k - n + t)
}

/// Codimension `q(q+1)` of the locus where the projection has rank drop `q`.
pub fn x_q_codim(q: u64) -> u64 {
    q * (q + 1)
}

/// `n + 1 + k`, bounding the dimension of the locus of `(n+2−k)`-secant lines.
pub fn secant_locus_dim_bound(n: usize, k: usize) -> Result<usize> {
    if k == 0 || k > n + 1 {
        return Err(Error::InvalidInput(format!(
            "need 1 <= k <= n+1, got k = {k}, n = {n}"
        )));
    }
    Ok(n + 1 + k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_i64_in(&(), x)).collect()
    }

    fn pts(rows: &[&[i64]]) -> FiniteScheme<Q> {
        FiniteScheme::from_points(rows.iter().map(|r| qv(r)).collect()).unwrap()
    }

    fn center_point(p: &[i64]) -> LinearSubspace<Q> {
        LinearSubspace::spanned_by((), p.len() - 1, &[qv(p)]).unwrap()
    }

    #[test]
    fn projection_examples() {
        let x = pts(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let fibers = project_scheme(&x, &center_point(&[1, 2, 3, 5])).unwrap();
        assert_eq!(fibers.len(), 3);

        let y = pts(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]);
        // center (0,1,0) lies on the line through the first two points
        let fibers = project_scheme(&y, &center_point(&[0, 1, 0])).unwrap();
        assert_eq!(fibers.len(), 2);
        assert_eq!(fibers[0].length(), 2);
        assert_eq!(fibers.iter().map(|f| f.length()).sum::<usize>(), 3);

        assert_eq!(
            project_scheme(&y, &center_point(&[0, 0, 1])),
            Err(Error::CenterMeetsScheme(2))
        );
    }

    #[test]
    fn yk_examples() {
        assert_eq!(yk_counts([1, 1, 1, 1, 1]), BTreeMap::from([(1, 5)]));
        assert_eq!(
            yk_counts([3, 1, 1]),
            BTreeMap::from([(1, 3), (2, 1), (3, 1)])
        );
        assert_eq!(yk_counts([1]), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn mather_examples() {
        assert_eq!(
            mather_inequality(&[1; 6], 5),
            MatherCheck {
                sum: 6,
                bound: 6,
                holds: true
            }
        );
        assert!(mather_inequality(&[2, 1, 1, 1], 5).holds);
        assert_eq!(mather_inequality(&[2, 1, 1, 1, 1], 5).sum, 7);
        assert!(!mather_inequality(&[2, 1, 1, 1, 1], 5).holds);
    }

    #[test]
    fn codimension_formulas() {
        assert_eq!(x_q_codim(2), 6);
        assert_eq!(schubert_codim(0, 8, 0, 5), 0);
        assert_eq!(schubert_codim(1, 8, 0, 5), 4);
        assert_eq!(secant_locus_dim_bound(5, 1), Ok(7));
        assert_eq!(secant_locus_dim_bound(5, 5), Ok(11));
        assert_eq!(secant_locus_dim_bound(0, 1), Ok(2));
        assert!(secant_locus_dim_bound(5, 7).is_err());
    }
}
