use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scheme::{max_collinear_length, FiniteScheme};
use crate::separation::FormSpaceRecipe;

use super::{mather_inequality, MatherCheck};

/// Fiber types of a generic projection of a fivefold (`n = 5`) or sixfold
/// (`n = 6`) onto a hypersurface, as a plane finite scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberCase {
    /// five distinct collinear points
    FiveCollinear,
    /// five distinct points, exactly four collinear
    FourOfFiveCollinear,
    /// five distinct points, no four collinear
    FiveGeneral,
    /// one double point and three reduced points on a line
    DoublePointLine,
    /// one double point and three reduced points spanning a plane
    DoublePointPlane,
    /// six distinct points over the finite stratum
    SixReduced,
    /// length 5 on a line
    Len5Line,
    /// length 5 spanning a plane
    Len5Plane,
    /// length 6 on a line
    Len6Line,
    /// length 6, nonreduced, spanning a plane, with a 5-secant line
    Len6FiveSecant,
    /// length 6, nonreduced, spanning a plane, five support points, no 5-secant line
    Len6Support5,
    /// excluded by the multiple-point inequality
    Impossible,
    /// a fiber the case list does not cover
    Unenumerated,
}

impl FiberCase {
    pub fn label(self) -> &'static str {
        match self {
            FiberCase::FiveCollinear => "1.i",
            FiberCase::FourOfFiveCollinear => "1.ii",
            FiberCase::FiveGeneral => "1.iii",
            FiberCase::DoublePointLine => "2.i",
            FiberCase::DoublePointPlane => "2.ii",
            FiberCase::SixReduced => "six-reduced",
            FiberCase::Len5Line => "len5-line",
            FiberCase::Len5Plane => "len5-plane",
            FiberCase::Len6Line => "len6-line",
            FiberCase::Len6FiveSecant => "len6-five-secant",
            FiberCase::Len6Support5 => "len6-support5",
            FiberCase::Impossible => "impossible",
            FiberCase::Unenumerated => "unenumerated",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        ALL_CASES.iter().copied().find(|c| c.label() == s)
    }
}

const ALL_CASES: [FiberCase; 13] = [
    FiberCase::FiveCollinear,
    FiberCase::FourOfFiveCollinear,
    FiberCase::FiveGeneral,
    FiberCase::DoublePointLine,
    FiberCase::DoublePointPlane,
    FiberCase::SixReduced,
    FiberCase::Len5Line,
    FiberCase::Len5Plane,
    FiberCase::Len6Line,
    FiberCase::Len6FiveSecant,
    FiberCase::Len6Support5,
    FiberCase::Impossible,
    FiberCase::Unenumerated,
];

impl Serialize for FiberCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberProfile {
    /// `δ_x` per germ
    pub lengths: Vec<usize>,
    /// `γ_x = δ_x − 1` per germ
    pub gammas: Vec<usize>,
    pub total: usize,
    pub support: usize,
    pub span_dim: usize,
    pub max_collinear: usize,
    pub mather: MatherCheck,
    pub case: FiberCase,
    /// least `k` with the fiber `k`-normal, as predicted by the case analysis
    pub predicted_normality: Option<u32>,
    /// `false` when the prediction is only an upper bound
    pub prediction_is_sharp: bool,
}

/// Profiles a fiber of a generic projection of an `n`-fold; case labels are
/// assigned for `n = 5` and `n = 6`.
pub fn classify_fiber<F: Field>(x: &FiniteScheme<F>, n: usize) -> Result<FiberProfile> {
    let total = x.degree();
    if total > n + 2 {
        return Err(Error::Precondition(format!(
            "fiber length {total} exceeds n + 2 = {}",
            n + 2
        )));
    }
    let lengths: Vec<usize> = x.germs().iter().map(|g| g.len()).collect();
    let gammas = lengths.iter().map(|l| l - 1).collect();
    let support = lengths.len();
    let span_dim = x.span_dim();
    let max_collinear = max_collinear_length(x).0;
    let mather = mather_inequality(&lengths, n);
    let reduced = x.is_reduced();

    use FiberCase::*;
    let (case, predicted, sharp) = if !mather.holds {
        (Impossible, None, true)
    } else {
        match (n, total, span_dim) {
            (5, 5, _) if reduced => match (max_collinear, span_dim) {
                (5, _) => (FiveCollinear, Some(4), true),
                (4, 2) => (FourOfFiveCollinear, Some(3), true),
                (_, 2) => (FiveGeneral, Some(2), true),
                _ => (Unenumerated, None, true),
            },
            (5, 5, 1) => (DoublePointLine, Some(4), true),
            (5, 5, 2) => {
                let k = if max_collinear >= 4 { 3 } else { 2 };
                (DoublePointPlane, Some(k), true)
            }
            (5, 6, _) => (SixReduced, None, true),
            (6, 5, 1) => (Len5Line, Some(4), true),
            (6, 5, 2) => {
                let k = if max_collinear >= 4 { 3 } else { 2 };
                (Len5Plane, Some(k), true)
            }
            (6, 6, 1) => (Len6Line, Some(5), true),
            (6, 6, 2) if !reduced && max_collinear >= 5 => (Len6FiveSecant, Some(4), true),
            (6, 6, 2) if !reduced && support == 5 => (Len6Support5, Some(3), false),
            _ => (Unenumerated, None, true),
        }
    };
    Ok(FiberProfile {
        lengths,
        gammas,
        total,
        support,
        span_dim,
        max_collinear,
        mather,
        case,
        predicted_normality: predicted,
        prediction_is_sharp: sharp,
    })
}

/// The form-space recipe (in `T1, T2`) that separates a fiber of the given
/// profile at its predicted degree, with the fiber in normal position: any
/// line carrying the long collinear subscheme passes through `(1, 0, 0)` and
/// `U` vanishes at no support point.
pub fn paper_recipe<F: Field>(ctx: F::Ctx, profile: &FiberProfile) -> Option<FormSpaceRecipe<F>> {
    use FiberCase::*;
    let k = profile.predicted_normality?;
    let line_powers =
        |top: u32| FormSpaceRecipe::new(ctx.clone(), 2, false).with_first_powers(1..=top);
    Some(match profile.case {
        FiveCollinear | DoublePointLine | Len5Line | Len6Line => line_powers(k),
        FourOfFiveCollinear | DoublePointPlane | Len5Plane | Len6Support5 | Len6FiveSecant => {
            FormSpaceRecipe::lemma26(ctx, k)
        }
        FiveGeneral => FormSpaceRecipe::new(ctx, 2, true),
        SixReduced | Impossible | Unenumerated => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::normality::minimal_normal_degree;
    use crate::scheme::CurvilinearGerm;
    use crate::separation::{recipe_separates, FiberFrame};

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_i64_in(&(), v)
    }

    fn pt(v: [i64; 3]) -> CurvilinearGerm<Q> {
        CurvilinearGerm::point(v.iter().map(|&x| q(x)).collect()).unwrap()
    }

    /// Double point at `p` with tangent direction `dir`.
    fn double(p: [i64; 3], dir: [i64; 3]) -> CurvilinearGerm<Q> {
        let c = |v: [i64; 3]| v.iter().map(|&x| q(x)).collect::<Vec<_>>();
        CurvilinearGerm::from_homogeneous(&[c(p), c(dir)]).unwrap()
    }

    fn check(x: &FiniteScheme<Q>, n: usize, case: FiberCase, predicted: u32) {
        let p = classify_fiber(x, n).unwrap();
        assert_eq!(p.case, case);
        assert_eq!(p.predicted_normality, Some(predicted));
        if p.prediction_is_sharp {
            assert_eq!(minimal_normal_degree(x), predicted);
        } else {
            assert!(minimal_normal_degree(x) <= predicted);
        }
        let recipe = paper_recipe::<Q>((), &p).unwrap();
        let frame = FiberFrame::standard((), 2, 2);
        assert!(
            recipe_separates(x, &recipe, predicted, &frame).unwrap(),
            "{case:?}"
        );
    }

    #[test]
    fn five_point_cases() {
        let line = FiniteScheme::new(2, (1..=5).map(|u| pt([u, 1, 0])).collect()).unwrap();
        check(&line, 5, FiberCase::FiveCollinear, 4);

        let mut germs: Vec<_> = (1..=4).map(|u| pt([u, 1, 1])).collect();
        germs.push(pt([1, 2, 5]));
        let four = FiniteScheme::new(2, germs).unwrap();
        check(&four, 5, FiberCase::FourOfFiveCollinear, 3);

        let general = FiniteScheme::new(
            2,
            vec![
                pt([1, 0, 0]),
                pt([1, 1, 0]),
                pt([1, 0, 1]),
                pt([1, 1, 2]),
                pt([1, 3, 1]),
            ],
        )
        .unwrap();
        check(&general, 5, FiberCase::FiveGeneral, 2);
    }

    #[test]
    fn double_point_cases() {
        let on_line = FiniteScheme::new(
            2,
            vec![
                double([1, 1, 0], [0, 1, 0]),
                pt([2, 1, 0]),
                pt([3, 1, 0]),
                pt([4, 1, 0]),
            ],
        )
        .unwrap();
        check(&on_line, 5, FiberCase::DoublePointLine, 4);

        let plane = FiniteScheme::new(
            2,
            vec![
                double([1, 1, 1], [0, 1, 3]),
                pt([1, 2, 1]),
                pt([1, 1, 3]),
                pt([2, 3, 1]),
            ],
        )
        .unwrap();
        check(&plane, 5, FiberCase::DoublePointPlane, 2);

        // tangent along the line through (1,0,0) and two more points on it
        let collinear4 = FiniteScheme::new(
            2,
            vec![
                double([1, 1, 1], [1, 0, 0]),
                pt([2, 1, 1]),
                pt([3, 1, 1]),
                pt([1, 2, 5]),
            ],
        )
        .unwrap();
        check(&collinear4, 5, FiberCase::DoublePointPlane, 3);

        let impossible = FiniteScheme::new(
            2,
            vec![
                double([1, 1, 1], [1, 0, 0]),
                double([1, 2, 1], [0, 0, 1]),
                pt([1, 5, 3]),
            ],
        )
        .unwrap();
        assert_eq!(
            classify_fiber(&impossible, 5).unwrap().case,
            FiberCase::Impossible
        );
    }

    #[test]
    fn sixfold_cases() {
        let five_secant = FiniteScheme::new(
            2,
            vec![
                double([1, 1, 1], [1, 0, 0]),
                pt([2, 1, 1]),
                pt([3, 1, 1]),
                pt([4, 1, 1]),
                pt([1, 2, 5]),
            ],
        )
        .unwrap();
        check(&five_secant, 6, FiberCase::Len6FiveSecant, 4);

        let support5 = FiniteScheme::new(
            2,
            vec![
                double([1, 1, 1], [0, 1, 3]),
                pt([1, 2, 1]),
                pt([1, 1, 3]),
                pt([2, 3, 1]),
                pt([3, 1, 7]),
            ],
        )
        .unwrap();
        check(&support5, 6, FiberCase::Len6Support5, 3);

        let line6 = FiniteScheme::new(
            2,
            vec![
                double([1, 1, 0], [0, 1, 0]),
                pt([2, 1, 0]),
                pt([3, 1, 0]),
                pt([4, 1, 0]),
                pt([5, 1, 0]),
            ],
        )
        .unwrap();
        check(&line6, 6, FiberCase::Len6Line, 5);
    }

    #[test]
    fn labels_round_trip() {
        for c in ALL_CASES {
            assert_eq!(FiberCase::from_label(c.label()), Some(c));
        }
    }
}
