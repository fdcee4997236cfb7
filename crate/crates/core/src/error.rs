use thiserror::Error;

/// Every failure the library reports. Variants carry just enough context to
/// print a useful message; the CLI maps them to machine-readable codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division is not exact")]
    DivisionNotExact,
    #[error("operands use different scalar realizations")]
    RealizationMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parameter is not a unit")]
    NonUnitLambda,
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("word is not hyperbolic")]
    NonHyperbolic,
    #[error("bounded search exhausted its budget")]
    SearchBudgetExceeded,
    #[error("conversion undefined for periodic degenerate data")]
    PeriodicDegenerate,
    #[error("multiplicity-one degenerate datum corresponds to the eliminated regular module")]
    MultiplicityOne,
    #[error("degenerate datum: (2,2,2)^τ with λ = 1")]
    DegenerateDatum,
    #[error("determinant is not a unit times a power of xyz")]
    NotAFactorOfXYZ,
    #[error("word (2,2,2)^τ is not cylinder-free")]
    NonCylinderFree,
    #[error("no sign witness found")]
    WitnessNotFound,
    #[error("substituted matrix is singular")]
    SingularLambda,
    #[error("pair is not a matrix factorization of xyz")]
    NotAMatrixFactorization,
    #[error("entry is not a unit")]
    NotAUnit,
    #[error("Maurer-Cartan equation violated")]
    MaurerCartanViolated,
    #[error("roots of the parameter are not representable exactly; use numeric mode")]
    RootsNotRepresentable,
    #[error("base change is singular")]
    SingularBaseChange,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable identifier used in JSON error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionNotExact => "DivisionNotExact",
            Error::RealizationMismatch => "RealizationMismatch",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NonUnitLambda => "NonUnitLambda",
            Error::NonUnitConstantTerm => "NonUnitConstantTerm",
            Error::MoveNotApplicable(_) => "MoveNotApplicable",
            Error::NonHyperbolic => "NonHyperbolic",
            Error::SearchBudgetExceeded => "SearchBudgetExceeded",
            Error::PeriodicDegenerate => "PeriodicDegenerate",
            Error::MultiplicityOne => "MultiplicityOne",
            Error::DegenerateDatum => "DegenerateDatum",
            Error::NotAFactorOfXYZ => "NotAFactorOfXYZ",
            Error::NonCylinderFree => "NonCylinderFree",
            Error::WitnessNotFound => "WitnessNotFound",
            Error::SingularLambda => "SingularLambda",
            Error::NotAMatrixFactorization => "NotAMatrixFactorization",
            Error::NotAUnit => "NotAUnit",
            Error::MaurerCartanViolated => "MaurerCartanViolated",
            Error::RootsNotRepresentable => "RootsNotRepresentable",
            Error::SingularBaseChange => "SingularBaseChange",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
