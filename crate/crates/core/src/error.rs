use crate::exact::TriPoly;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("negative exponent {0} in polynomial power")]
    NegativeExponent(i64),
    #[error("radial contraction identity violated: wedge components disagree")]
    RadialContraction,
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("non-rational singular point: {0}")]
    NonRationalPoint(String),
    #[error("closed-form singular point {0} does not annihilate the form")]
    SingularPointCheck(String),
    #[error("singular points are only available for the built-in families")]
    CustomFamily,
    #[error("nilpotent linear part at the origin; blow up instead")]
    Nilpotent,
    #[error("eigenvalues are not rational multiples of a common number")]
    IrrationalEigenvalues,
    #[error("resonant node with non-diagonal linear part (Dulac epsilon = 1)")]
    ResonantNode,
    #[error("branch is not invariant for the germ")]
    BranchNotInvariant,
    #[error("series truncation order {0} is insufficient")]
    InsufficientTruncation(usize),
    #[error("chart does not see the point of interest")]
    ChartMiss,
    #[error("blow-up relation failed: {0}")]
    BlowupInconsistency(String),
    #[error("tangent direction is irrational with multiplicity > 1")]
    IrrationalTangent,
    #[error("local analysis exceeded {0} blow-ups")]
    RecursionLimit(usize),
    #[error("germ is not reduced")]
    NonReducedGerm,
    #[error("genus inconsistency: {0}")]
    GenusInconsistency(String),
    #[error("singular point outside the candidate list: {0}")]
    IncompleteCandidates(String),
    #[error("forms are proportional")]
    ProportionalForms,
    #[error("tangency polynomial not fully factored; remainder {0}")]
    UnfactoredRemainder(TriPoly),
    #[error("inapplicable map: {0}")]
    InapplicableMap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pencil generators have different degrees: {0} vs {1}")]
    DegreeMismatch(u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
