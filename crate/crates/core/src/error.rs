//! Error type shared by all modules of the crate.

use std::fmt;

/// Errors surfaced by polynomial arithmetic, moment computation, rule
/// synthesis and verification.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// All coefficients of a polynomial are below the trim tolerance.
    ZeroPolynomial,
    /// A multivariate polynomial and a curve disagree on the ambient dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// The operation requires a polynomial parametrization (constant denominator).
    NotPolynomialParametrization,
    /// A density support or an atom touches a real zero of the denominator.
    PoleInSupport { pole: f64 },
    /// Adaptive integration did not reach the requested tolerance within budget.
    IntegrationFailure { detail: String },
    /// Moments are not available up to the degree the operation needs.
    InsufficientDegree { needed: usize, available: usize },
    /// The measure is supported on `depth` atoms or fewer; the requested
    /// construction needs a deeper nondegenerate moment sequence.
    DegenerateMeasure { depth: usize },
    /// A formula was called outside its hypotheses (e.g. `s < d`).
    DomainError { detail: String },
    /// No feasible initialization matching the target moments was found.
    InfeasibleStart { residual: f64 },
    /// The solver exhausted its budget above the exactness tolerance.
    Nonconvergence { residual: f64 },
    /// Basis-exchange pruning could not find a null direction although the
    /// node count still exceeds the rank bound.
    NumericalStall { nodes: usize, rank: usize },
    /// The leftover weight for the mass-correction node is negative.
    MassCorrectionNegative { deficit: f64 },
    /// Input data failed validation (bad JSON content, inconsistent lengths, ...).
    InvalidInput { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotPolynomialParametrization => {
                write!(f, "parametrization has a non-constant denominator")
            }
            Error::PoleInSupport { pole } => {
                write!(f, "denominator zero at t = {pole} lies in the measure support")
            }
            Error::IntegrationFailure { detail } => write!(f, "integration failure: {detail}"),
            Error::InsufficientDegree { needed, available } => {
                write!(f, "moments up to degree {needed} needed, only {available} available")
            }
            Error::DegenerateMeasure { depth } => {
                write!(f, "measure is degenerate: supported on at most {depth} atoms")
            }
            Error::DomainError { detail } => write!(f, "domain error: {detail}"),
            Error::InfeasibleStart { residual } => {
                write!(f, "no feasible start found (best residual {residual:.3e})")
            }
            Error::Nonconvergence { residual } => {
                write!(f, "solver did not converge (residual {residual:.3e})")
            }
            Error::NumericalStall { nodes, rank } => {
                write!(f, "pruning stalled at {nodes} nodes (rank bound {rank})")
            }
            Error::MassCorrectionNegative { deficit } => {
                write!(f, "mass-correction weight is negative ({deficit:.3e})")
            }
            Error::InvalidInput { detail } => write!(f, "invalid input: {detail}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
