//! Exact integration functionals over finite-dimensional algebras.
//!
//! Given an algebra presented by structure constants `x_i x_j = f_ijk x_k`,
//! this crate decides whether a linear functional satisfying the
//! completeness relation (the integral of `|x><x|` equals the identity)
//! exists, constructs it exactly over the rationals when it does, and
//! verifies the attendant laws: the intertwining of left and right
//! multiplication, automorphism scale factors, integration by parts for
//! derivations, and the second-kind integration on the tensor product with
//! a star copy.
//!
//! All arithmetic is exact rational; every existence decision is a
//! singularity test on an exact matrix, never a numerical threshold.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod expr;
pub mod matrix;
pub mod measure;
pub mod reps;
pub mod scalar;
pub mod symmetry;
pub mod sympoly;
pub mod tensor;

pub use algebra::{AlgebraFile, Element, FiniteAlgebra};
pub use error::{
    AlgebraError, CatalogError, ExprError, LinalgError, MeasureError, ScalarParseError,
    SymmetryError, TensorError,
};
pub use matrix::Matrix;
pub use measure::{find_measure, moment_space, Measure, MeasureFile, MomentSpace};
pub use reps::{build_reps, MultiplicationReps, RepReport};
pub use scalar::Scalar;
pub use symmetry::{
    by_parts, cayley_orthogonal, check_automorphism, check_derivation, scale_factor,
    verify_measure_transform, Automorphism, Derivation,
};
pub use tensor::{
    build_tensor, check_invariance, second_kind_functional_for, second_kind_measure, StarAction,
    TensorAlgebra,
};
