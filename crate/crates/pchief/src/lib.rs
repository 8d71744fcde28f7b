//! Exact computation with finite-dimensional restricted Lie algebras over
//! prime fields F_p.
//!
//! The crate computes p-chief series and the multiplicities of split strongly
//! abelian p-chief factors, first restricted (and ordinary) cohomology, and
//! the representation theory of the restricted enveloping algebra u(L):
//! irreducible modules, the Jacobson radical, the projective cover of the
//! trivial module with its Loewy layers, and the block partition of the
//! irreducibles. All arithmetic is exact over F_p.
//!
//! Modules:
//! - [`ffla`]: dense matrices and subspaces over F_p (rref, affine solving,
//!   subspace arithmetic);
//! - [`reslie`]: restricted Lie algebras given by structure constants and a
//!   p-map on the basis;
//! - [`cohom`]: restricted modules, derivations, H¹ (restricted and
//!   ordinary), Hom/End spaces;
//! - [`chief`]: p-chief series, split factor decision, multiplicity tables;
//! - [`uenv`]: the restricted enveloping algebra on a PBW basis, meataxe
//!   chopping, radical, projective cover, Ext¹, blocks;
//! - [`clikit`]: file formats, the built-in algebra catalog, the
//!   verification harness, and the command-line entry point.

pub mod chief;
pub mod clikit;
pub mod cohom;
pub mod ffla;
pub mod reslie;
pub mod uenv;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("subspace is not a p-ideal: {0}")]
    NotPIdeal(String),
    #[error("subspace is not an ideal: {0}")]
    NotIdeal(String),
    #[error("certification threshold exceeded: {0}")]
    ThresholdExceeded(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("meataxe retry budget exhausted after {0} attempts")]
    MeataxeBudget(u32),
    #[error("internal certification failure: {0}")]
    Certification(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
