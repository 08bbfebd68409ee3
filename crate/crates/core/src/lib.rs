//! Exact genus computations for the Reversible and Lotka-Volterra families
//! of foliations on the projective plane.
//!
//! Everything is exact rational arithmetic. The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, sparse polynomials, 1-forms, truncated series.
//! - [`foliation`]: the 1-forms induced by the two first-integral families.
//! - [`local`]: eigenvalues, blow-ups, branch data and multiplicities.
//! - [`genus`]: the Cerveau–Lins-Neto bookkeeping and closed-form genera.
//! - [`oracle`]: an independent genus computation from delta invariants.
//! - [`diophantine`]: the gcd equations and their solution sets.
//! - [`classify`]: the elliptic classification lists.
//! - [`pencil`]: pencils of foliations and their tangency divisors.
//! - [`cli`]: the command-line front end used by the `foliation-genus` binary.

pub mod error;
pub mod classify;
pub mod cli;
pub mod diophantine;
pub mod exact;
pub mod foliation;
pub mod genus;
pub mod local;
pub mod oracle;
pub mod pencil;

pub use error::{Error, Result};
