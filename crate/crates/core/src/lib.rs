//! Circuit bases of design model matrices, exact robustness and
//! D-efficiency scoring, and a circuit-driven exchange algorithm for robust
//! fractions.
//!
//! All linear algebra is exact. Floating point appears only when a
//! D-efficiency is rendered and in simulation summaries.

pub mod bitset;
pub mod circuits;
pub mod design;
pub mod error;
pub mod io;
pub mod linalg;
pub mod optimizer;
pub mod robustness;
pub mod sim;

pub use bitset::PointSet;
pub use circuits::{
    circuits_of_model, compute_circuits, symmetry::SymmetryGroup, Circuit, CircuitBasis,
    EnumerationOptions, Strategy,
};
pub use design::{
    build_full_factorial, catalog::catalog, model_matrix, submatrix, CandidateSet, Coding,
    FactorSpec, Fraction, ModelMatrix, ModelSpec, ModelTerm,
};
pub use error::{Error, Result};
pub use linalg::{IntMatrix, IntVector};
