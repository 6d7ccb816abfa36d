//! Commuting spin observables from binary coupling trees.
//!
//! A binary coupling tree fixes a hierarchy of partial uniform couplings on a
//! chain of spins. Lifting the primitive coproduct of the su(2) enveloping
//! algebra along such a tree turns the Casimir element into one conserved
//! total-spin-squared operator per internal node; together with the total
//! `X3` component these operators commute pairwise, so any real combination
//! of them is an integrable Hamiltonian whose spectrum follows from ordinary
//! angular-momentum coupling.
//!
//! The crate provides the full pipeline:
//!
//! * [`tree`] — coupling-tree parsing, grafting, and the exchange/flop
//!   rewrite calculus;
//! * [`algebra`] / [`tensor`] — the symbolic enveloping algebra in ordered
//!   (PBW) form, the primitive coproduct, and its lift along a tree;
//! * [`spin`] / [`matrix`] / [`eig`] — dense matrix representations on
//!   tensor-product spin spaces and a cyclic Jacobi eigensolver;
//! * [`model`] / [`predict`] — commuting families, Hamiltonian assembly,
//!   and the coupling-scheme spectrum prediction they are checked against;
//! * [`superint`] — co-commutativity/co-associativity checks and the
//!   two-tree extended commutation verifier.

pub mod algebra;
pub mod eig;
pub mod error;
pub mod matrix;
pub mod model;
pub mod predict;
pub mod spin;
pub mod superint;
pub mod tensor;
pub mod tree;

pub use algebra::{AlgebraElement, Monomial};
pub use error::Error;
pub use matrix::Operator;
pub use model::{CommutingFamily, ElementKind, HamiltonianSpec, HamiltonianTerm};
pub use predict::SpectrumPrediction;
pub use spin::{Spin, SpinConfig};
pub use tensor::TensorElement;
pub use tree::{CouplingTree, NodeRef, RewriteMove};
