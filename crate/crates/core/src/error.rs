//! Error types, one enum per subsystem.

use thiserror::Error;

#[derive(Debug, Error)]
#[error("invalid scalar syntax: {0:?} (expected \"p\" or \"p/q\" with q != 0)")]
pub struct ScalarParseError(pub String);

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix shapes are incompatible")]
    ShapeMismatch,
    #[error("rows have unequal lengths")]
    RaggedRows,
    #[error("invalid matrix JSON: {0}")]
    BadMatrixJson(String),
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("invalid structure constants: {0}")]
    InvalidStructureConstants(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid algebra file: {0}")]
    BadFile(String),
}

#[derive(Debug, Error)]
pub enum ExprError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error(
        "ambiguous product: the algebra is non-associative, parenthesize chains of 3 or more factors"
    )]
    AmbiguousProduct,
    #[error("a bare scalar term needs an identity element, which this algebra lacks")]
    ScalarNeedsIdentity,
}

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("no integration measure exists (certified = {certified})")]
    NoMeasure { certified: bool },
    #[error("gauge pins are infeasible: {reason}")]
    GaugeInfeasible { reason: String },
    #[error("pin index {index} out of range for dimension {dim}")]
    PinOutOfRange { index: usize, dim: usize },
    #[error("moment vector violates the intertwining constraints")]
    NotInMomentSpace,
    #[error("moment matrix M(mu) is singular")]
    SingularMoment,
    #[error("measure file does not match this algebra (content digest mismatch)")]
    StaleMeasure,
    #[error("invalid measure file: {0}")]
    InvalidFile(String),
    #[error("element belongs to a different algebra than the measure")]
    AlgebraMismatch,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("matrix has wrong shape for this algebra")]
    Dimension,
    #[error("transformation matrix is not invertible")]
    NotInvertible,
    #[error("not an automorphism: first failure at (i={i}, j={j}, k={k}): lhs {lhs} != rhs {rhs}")]
    NotAnAutomorphism {
        i: usize,
        j: usize,
        k: usize,
        lhs: String,
        rhs: String,
    },
    #[error("not a derivation: Leibniz fails at (i={i}, j={j}, l={l}): lhs {lhs} != rhs {rhs}")]
    NotADerivation {
        i: usize,
        j: usize,
        l: usize,
        lhs: String,
        rhs: String,
    },
    #[error("C^-1 S^T C S is not a scalar multiple of the identity")]
    NotScalar { t: Vec<Vec<String>> },
    #[error("scale factor k is not set; run the scale-factor check first")]
    ScaleFactorUnset,
    #[error("objects belong to different algebras")]
    AlgebraMismatch,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("matrix has wrong shape for the base algebra")]
    Dimension,
    #[error("algebra dimension {0} is not a perfect square, not a tensor-star product")]
    NotSquareDim(usize),
    #[error("element belongs to a different algebra")]
    AlgebraMismatch,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog algebra {0:?}")]
    UnknownName(String),
    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },
}
