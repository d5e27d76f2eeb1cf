//! Exact computations with finite curvilinear schemes in projective space:
//! Hilbert functions, normality and regularity, separating forms,
//! linear projections and their fibers, and regularity bounds.
//!
//! The algebra is generic over [`Field`]. Rationals are the reference field;
//! prime fields with a runtime modulus are available for speed.

pub mod bounds;
pub mod error;
pub mod field;
pub mod harness;
pub mod io;
pub mod matrix;
pub mod normality;
pub mod poly;
pub mod projection;
pub mod scheme;
pub mod separation;

pub use error::{Error, Result};
pub use field::{Field, FieldTag, Fp, Prime, Rational};
pub use matrix::{AffineSolution, Matrix};
pub use poly::{Exponent, Form};
pub use scheme::{
    CurvilinearGerm, FiniteScheme, LinearSubspace, ProjPoint, SubschemeSelector,
    DEFAULT_ENUMERATION_CAP,
};

pub type QMatrix = Matrix<Rational>;
pub type FpMatrix = Matrix<Fp>;
pub type QForm = Form<Rational>;
pub type FpForm = Form<Fp>;
pub type QGerm = CurvilinearGerm<Rational>;
pub type FpGerm = CurvilinearGerm<Fp>;
pub type QScheme = FiniteScheme<Rational>;
pub type FpScheme = FiniteScheme<Fp>;
