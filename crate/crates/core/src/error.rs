use thiserror::Error;

use crate::lie::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear part is singular")]
    SingularLinearPart,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("eigenvalue is not a Gaussian rational: {0}")]
    EigenvalueNotGaussianRational(String),
    #[error("no common eigenvector: {0}")]
    NotSimultaneouslyTriangularizable(String),
    #[error("ideal fields do not commute: {0}")]
    NonCommuting(String),
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),
    #[error("straightening left a non-constant term: {0}")]
    StraighteningResidue(String),
    #[error("resonance vector search exhausted: {0}")]
    SearchExhausted(String),
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("linear part is not upper triangular: {0}")]
    NotTriangular(String),
    #[error("singular homological system: {0}")]
    SingularHomologicalSystem(String),
    #[error("representation property broken: {0}")]
    RepresentationBroken(String),
    #[error("non-resonant residue: {0}")]
    NonResonantResidue(String),
    #[error("constrained cocycle equation infeasible at degree {degree}: {residual}")]
    ConstrainedCocycleInfeasible { degree: usize, residual: String },
    #[error("input validation failed: {}", .0.failures().join("; "))]
    Validation(Box<ValidationReport>),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid document: {0}")]
    Document(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{stage}: {source}")]
    Stage { stage: &'static str, source: Box<Error> },
}

impl Error {
    pub fn in_stage(self, stage: &'static str) -> Error {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage { stage, source: Box::new(e) },
        }
    }

    /// The innermost error, skipping stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.root() {
            Error::DivisionByZero => "DivisionByZero",
            Error::Parse { .. } => "ParseError",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularLinearPart => "SingularLinearPart",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::EigenvalueNotGaussianRational(_) => "EigenvalueNotGaussianRational",
            Error::NotSimultaneouslyTriangularizable(_) => "NotSimultaneouslyTriangularizable",
            Error::NonCommuting(_) => "NonCommuting",
            Error::DegenerateFrame(_) => "DegenerateFrame",
            Error::StraighteningResidue(_) => "StraighteningResidue",
            Error::SearchExhausted(_) => "SearchExhausted",
            Error::ShapeViolation(_) => "ShapeViolation",
            Error::NotTriangular(_) => "NotTriangular",
            Error::SingularHomologicalSystem(_) => "SingularHomologicalSystem",
            Error::RepresentationBroken(_) => "RepresentationBroken",
            Error::NonResonantResidue(_) => "NonResonantResidue",
            Error::ConstrainedCocycleInfeasible { .. } => "ConstrainedCocycleInfeasible",
            Error::Validation(_) => "ValidationFailed",
            Error::Verification(_) => "VerificationFailed",
            Error::Document(_) => "InvalidDocument",
            Error::Io(_) => "IoError",
            Error::Json(_) => "JsonError",
            Error::Stage { .. } => unreachable!("root never returns a stage wrapper"),
        }
    }

    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::Validation(_)
            | Error::NotSimultaneouslyTriangularizable(_)
            | Error::ShapeViolation(_)
            | Error::NonCommuting(_)
            | Error::DegenerateFrame(_) => 2,
            Error::EigenvalueNotGaussianRational(_) | Error::DivisionByZero => 3,
            Error::Parse { .. } | Error::Document(_) | Error::Io(_) | Error::Json(_) => 5,
            _ => 4,
        }
    }
}
