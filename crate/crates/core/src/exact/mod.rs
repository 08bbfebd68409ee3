//! Exact arithmetic: rationals, sparse polynomials, 1-forms, truncated
//! series, projective points and univariate helpers.

pub mod form;
pub mod point;
pub mod poly;
pub mod rational;
pub mod series;
pub mod univariate;

pub use form::OneForm;
pub use point::ProjPoint;
pub use poly::{BiPoly, Poly, TriPoly};
pub use rational::{int, rat, Rational};
pub use series::TruncSeries;
