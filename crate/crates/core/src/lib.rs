//! Spectral gap `λ(T)` of finite triangle families.
//!
//! A triangle family is a set of 3-element subsets of an ordered vertex set.
//! Its signed edge-triangle incidence matrix `δ₁` gives the up-Laplacian
//! `δ₁ᵀδ₁` whose smallest positive eigenvalue is `λ(T)`. The crate builds the
//! incidence matrices exactly, extracts spectra with an exact kernel dimension,
//! constructs the extremal families `K_n` and `T_{c,b}`, checks the structural
//! bounds forced by a large `λ`, and computes the exact-budget maximum `φ(t)`
//! for small budgets by isomorphism-free exhaustive search.

pub mod error;
pub mod family;
pub mod format;
pub mod matrix;
pub mod rank;
pub mod incidence;
pub mod eigen;
pub mod spectra;
pub mod constructions;
pub mod extremal;
pub mod mtx;
pub mod random;
pub mod source;
pub mod verify;

pub use constructions::{BudgetDecomposition, GcbSpec};
pub use error::{Error, Result};
pub use extremal::{PhiEntry, PhiTable, SearchConfig};
pub use family::{Edge, SupportGraph, Triangle, TriangleFamily, Vertex};
pub use incidence::{Coboundaries, IntSymMatrix, LaplacianKind, SignedIncidence};
pub use matrix::IntMatrix;
pub use source::construct;
pub use spectra::{lambda, spectral_report, SpectralReport, Spectrum};
