//! Crate-wide error type for the algebraic and numeric layers.
//!
//! Tree construction and parsing has its own [`crate::tree::TreeError`];
//! everything downstream (lifts, representations, model assembly) reports
//! through [`Error`].

use thiserror::Error;

use crate::tree::TreeError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Tree(#[from] TreeError),

    #[error("tensor arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("lift refused: degree {degree} on {leaves} leaves exceeds the cost envelope")]
    CostGuard { degree: u32, leaves: usize },

    #[error("invalid spin: {0}")]
    InvalidSpin(String),

    #[error("tensor arity {arity} does not match spin configuration of length {sites}")]
    SiteCountMismatch { arity: usize, sites: usize },

    #[error("Hilbert-space dimension {dim} exceeds the dense limit {limit}")]
    DimensionOverflow { dim: usize, limit: usize },

    #[error("operator dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (max |A - A^dagger| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-norm {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("unsupported Hamiltonian term: {0}")]
    UnsupportedTerm(String),

    #[error("spectra have different total multiplicity: {left} vs {right}")]
    SpectrumSizeMismatch { left: usize, right: usize },

    #[error("Hamiltonian term {0} is not generated by the common-node algebra")]
    NotInCommonAlgebra(String),

    #[error("expected a configuration with {expected} spins, got {got}")]
    WrongLeafCount { expected: usize, got: usize },
}
